#pragma once

#include <stdexcept>
#include <string>

namespace latticeroot {

enum class ErrorCode {
  invalid_input,
  malformed_graph,
  invalid_seifert_data,
  not_definite,
  not_characteristic,
  not_self_conjugate,
  no_wu_representative,
  capacity_exceeded,
  stabilization_not_reached,
  too_many_bad_vertices,
  internal_mismatch,
  parity_mismatch,
  inconsistent_ranks,
  ambiguous,
  conjecture_required,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class MalformedGraph : public Error {
 public:
  enum class Reason {
    empty,
    duplicate_id,
    unknown_vertex,
    self_loop,
    multi_edge,
    cycle,
    disconnected,
  };
  MalformedGraph(Reason reason, const std::string& what)
      : Error(ErrorCode::malformed_graph, what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

#define LATTICEROOT_DEFINE_ERROR(Name, code_value)                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(code_value, what) {} \
  };

LATTICEROOT_DEFINE_ERROR(InvalidInput, ErrorCode::invalid_input)
LATTICEROOT_DEFINE_ERROR(InvalidSeifertData, ErrorCode::invalid_seifert_data)
LATTICEROOT_DEFINE_ERROR(NotDefinite, ErrorCode::not_definite)
LATTICEROOT_DEFINE_ERROR(NotCharacteristic, ErrorCode::not_characteristic)
LATTICEROOT_DEFINE_ERROR(NotSelfConjugate, ErrorCode::not_self_conjugate)
LATTICEROOT_DEFINE_ERROR(NoWuRepresentative, ErrorCode::no_wu_representative)
LATTICEROOT_DEFINE_ERROR(CapacityExceeded, ErrorCode::capacity_exceeded)
LATTICEROOT_DEFINE_ERROR(StabilizationNotReached,
                         ErrorCode::stabilization_not_reached)
LATTICEROOT_DEFINE_ERROR(TooManyBadVertices, ErrorCode::too_many_bad_vertices)
LATTICEROOT_DEFINE_ERROR(InternalMismatch, ErrorCode::internal_mismatch)
LATTICEROOT_DEFINE_ERROR(ParityMismatch, ErrorCode::parity_mismatch)
LATTICEROOT_DEFINE_ERROR(InconsistentRanks, ErrorCode::inconsistent_ranks)
LATTICEROOT_DEFINE_ERROR(Ambiguous, ErrorCode::ambiguous)
LATTICEROOT_DEFINE_ERROR(ConjectureRequired, ErrorCode::conjecture_required)

#undef LATTICEROOT_DEFINE_ERROR

}  // namespace latticeroot
