#include "latticeroot/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "latticeroot/errors.hpp"
#include "latticeroot/graded_root.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/module.hpp"
#include "latticeroot/pin2.hpp"
#include "latticeroot/plumbing.hpp"
#include "latticeroot/render.hpp"
#include "latticeroot/spinc.hpp"
#include "latticeroot/symmetry.hpp"

namespace latticeroot {
namespace {

using nlohmann::json;

const char* kOrientation = "minus-boundary";

json load_json(const std::string& source) {
  std::string text;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw InvalidInput("cannot open " + source);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("JSON parse error: ") + e.what());
  }
}

SeifertData load_seifert(const std::string& source) {
  const json j = load_json(source);
  if (j.is_object() && j.contains("brieskorn")) {
    const json& p = j["brieskorn"];
    if (!p.is_array() || p.size() != 3 || !p[0].is_number_integer() || !p[1].is_number_integer() ||
        !p[2].is_number_integer()) {
      throw InvalidInput("\"brieskorn\" must be three integers");
    }
    return brieskorn(p[0].get<std::int64_t>(), p[1].get<std::int64_t>(), p[2].get<std::int64_t>());
  }
  return SeifertData::from_json(j);
}

PlumbingGraph load_graph(const RunConfig& cfg) {
  if (!cfg.input.empty() && !cfg.seifert.empty()) throw InvalidInput("give either --input or --seifert, not both");
  if (!cfg.seifert.empty()) return from_seifert(load_seifert(cfg.seifert));
  if (cfg.input.empty()) throw InvalidInput("no input: use --input or --seifert");
  return PlumbingGraph::from_json(load_json(cfg.input));
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::malformed_graph:
    case ErrorCode::invalid_seifert_data:
    case ErrorCode::not_characteristic:
      return exit_code::bad_input;
    case ErrorCode::capacity_exceeded:
    case ErrorCode::stabilization_not_reached:
      return exit_code::capacity;
    case ErrorCode::conjecture_required:
      return exit_code::conjecture_required;
    case ErrorCode::ambiguous:
      return exit_code::ambiguous;
    default:
      return exit_code::invalid;
  }
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::text: return "text";
    case OutputFormat::dot: return "dot";
    case OutputFormat::ascii: return "ascii";
  }
  return "?";
}

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out), graph_(load_graph(cfg)), form_(graph_) {}

  int run() {
    const std::string& c = cfg_.command;
    if (c == "validate") return validate_cmd();
    if (c == "seifert") return seifert_cmd();
    if (c != "spinc" && c != "hm" && c != "root" && c != "pin2" && c != "mubar" && c != "gysin") {
      throw InvalidInput("unknown command " + c);
    }
    const bool diagram = cfg_.format == OutputFormat::dot || cfg_.format == OutputFormat::ascii;
    if (diagram && c != "root") throw InvalidInput(format_name(cfg_.format) + " output is only available for root");
    if (!form_.is_negative_definite()) throw NotDefinite("intersection form is not negative definite");
    for (const SpinCOrbit& orbit : selected_orbits()) {
      if (c == "spinc") spinc_cmd(orbit);
      if (c == "hm") hm_cmd(orbit);
      if (c == "root") root_cmd(orbit);
      if (c == "pin2") pin2_cmd(orbit, false);
      if (c == "gysin") pin2_cmd(orbit, true);
      if (c == "mubar") mubar_cmd(orbit);
    }
    return exit_code::ok;
  }

 private:
  std::vector<SpinCOrbit> selected_orbits() {
    std::string sel = cfg_.orbit;
    const std::string& c = cfg_.command;
    if (sel.empty()) sel = (c == "pin2" || c == "mubar" || c == "gysin") ? "self-conjugate" : "all";
    std::vector<SpinCOrbit> all = enumerate_orbits(form_);
    std::vector<SpinCOrbit> out;
    if (sel == "all") return all;
    if (sel == "self-conjugate") {
      for (auto& o : all) {
        if (o.self_conjugate) out.push_back(o);
      }
      return out;
    }
    std::size_t index = 0;
    try {
      std::size_t used = 0;
      index = std::stoul(sel, &used);
      if (used != sel.size()) throw std::invalid_argument(sel);
    } catch (const std::exception&) {
      throw InvalidInput("--orbit must be all, self-conjugate or an orbit index, got " + sel);
    }
    for (auto& o : all) {
      if (o.orbit_index == index) return {o};
    }
    throw InvalidInput("no orbit with index " + sel);
  }

  void require_bad_at_most(std::size_t k) const {
    const std::size_t bad = graph_.bad_vertices().size();
    if (bad > k) {
      throw TooManyBadVertices("graph has " + std::to_string(bad) + " bad vertices; at most " + std::to_string(k) +
                               " are supported here");
    }
  }

  WeightedLattice lattice(const SpinCOrbit& orbit) const {
    WeightedLattice lat(form_, orbit.representative);
    if (cfg_.budget) lat.set_budget(*cfg_.budget);
    return lat;
  }

  LatticeAnalysis analyze(const SpinCOrbit& orbit, std::size_t max_q) const {
    AnalysisOptions opt;
    opt.max_q = max_q;
    opt.max_level = cfg_.max_level;
    return LatticeAnalysis(lattice(orbit), opt);
  }

  std::optional<Rational> mubar_of(const SpinCOrbit& orbit) const {
    try {
      return wu_vector(graph_, orbit).mubar;
    } catch (const NoWuRepresentative&) {
      return std::nullopt;
    }
  }

  json header(const SpinCOrbit& orbit) const {
    return {{"command", cfg_.command},
            {"orbit_index", orbit.orbit_index},
            {"orientation", kOrientation},
            {"sigma", to_string(orbit.sigma)},
            {"self_conjugate", orbit.self_conjugate}};
  }

  std::string text_header(const SpinCOrbit& orbit) const {
    return "orbit " + std::to_string(orbit.orbit_index) + (orbit.self_conjugate ? " (self-conjugate)" : "") +
           ", of " + kOrientation;
  }

  int validate_cmd() {
    const ValidationReport r = validate(graph_);
    if (cfg_.format == OutputFormat::json) {
      out_ << r.to_json().dump() << "\n";
    } else {
      out_ << (r.is_negative_definite ? "negative definite" : "not negative definite") << ", "
           << r.bad_vertex_ids.size() << " bad vertices, det " << to_string(r.determinant) << ", signature "
           << r.signature << "\n";
    }
    return r.is_negative_definite ? exit_code::ok : exit_code::invalid;
  }

  int seifert_cmd() {
    if (cfg_.seifert.empty()) throw InvalidInput("seifert needs --seifert");
    if (cfg_.format == OutputFormat::json) {
      out_ << graph_.to_json().dump() << "\n";
    } else {
      out_ << graph_.size() << " vertices, centre weight " << graph_.weight(0) << "\n" << graph_.to_json().dump() << "\n";
    }
    return exit_code::ok;
  }

  void spinc_cmd(const SpinCOrbit& orbit) {
    std::optional<WuData> wu;
    if (orbit.self_conjugate) {
      try {
        wu = wu_vector(graph_, orbit);
      } catch (const NoWuRepresentative&) {
      }
    }
    if (cfg_.format == OutputFormat::json) {
      json j = header(orbit);
      j["orbit"] = orbit.to_json();
      j["wu"] = wu ? wu->to_json() : json(nullptr);
      out_ << j.dump() << "\n";
      return;
    }
    out_ << text_header(orbit) << ": k^2 = " << to_string(orbit.k_square) << ", sigma = " << to_string(orbit.sigma)
         << ", representative " << json(orbit.representative).dump();
    if (wu) out_ << ", mubar = " << to_string(wu->mubar);
    out_ << "\n";
  }

  // H^1 ranks need the 2-cells only as coboundaries; the J-action on H^1
  // (two bad vertices) needs them stored.
  std::size_t pin_max_q() const { return graph_.bad_vertices().size() <= 1 ? 1 : 2; }

  void hm_cmd(const SpinCOrbit& orbit) {
    require_bad_at_most(2);
    const LatticeAnalysis an = analyze(orbit, 1);
    std::vector<std::pair<std::int64_t, std::size_t>> h1;
    for (std::int64_t n = an.n_min(); n <= an.n_stab(); ++n) h1.emplace_back(n, an.betti().at(n, 1));
    const GradedModule hm = hm_module(an.root(), h1, orbit.sigma);
    const Rational delta = (Rational(static_cast<long>(2 * an.n_min())) + orbit.sigma) / 2;
    if (cfg_.format == OutputFormat::json) {
      json j = header(orbit);
      j["hm"] = hm.to_json();
      j["delta"] = to_string(delta);
      j["text"] = hm.to_text();
      out_ << j.dump() << "\n";
      return;
    }
    out_ << text_header(orbit) << ": HM = " << hm.to_text() << ", delta = " << to_string(delta) << "\n";
  }

  void root_cmd(const SpinCOrbit& orbit) {
    const LatticeAnalysis an = analyze(orbit, orbit.self_conjugate ? 1 : 0);
    const GradedRoot& root = an.root();
    std::optional<SymmetryData> sym;
    if (orbit.self_conjugate) sym = involution_on_slices(an);
    switch (cfg_.format) {
      case OutputFormat::dot:
        out_ << "// " << text_header(orbit) << "\n" << root.to_dot("root" + std::to_string(orbit.orbit_index));
        return;
      case OutputFormat::ascii:
        out_ << text_header(orbit) << "\n" << render_ascii(root, sym ? &*sym : nullptr, orbit.sigma);
        return;
      case OutputFormat::json: {
        json j = header(orbit);
        j["root"] = root.to_json();
        j["canonical_form"] = root.canonical_form();
        if (sym) j["symmetry"] = sym->to_json();
        out_ << j.dump() << "\n";
        return;
      }
      case OutputFormat::text: {
        out_ << text_header(orbit) << ": levels " << root.n_min << ".." << root.n_stab << ", components";
        for (std::int64_t n = root.n_min; n <= root.n_stab; ++n) out_ << " " << root.components(n);
        out_ << ", bars";
        for (const auto& b : root.bars()) out_ << " [" << b.birth << "," << b.death << ")";
        out_ << "\n";
        return;
      }
    }
  }

  PinReport pin_report(const SpinCOrbit& orbit, const LatticeAnalysis& an, const SymmetryData& sym) const {
    const std::optional<Rational> mubar = mubar_of(orbit);
    if (graph_.bad_vertices().size() <= 1) return one_bad_pipeline(an, sym, orbit.sigma, mubar);
    return two_bad_pipeline(an, sym, orbit.sigma, PipelineFlags{cfg_.assume_conjecture}, mubar);
  }

  void pin2_cmd(const SpinCOrbit& orbit, bool gysin_only) {
    require_bad_at_most(2);
    if (!orbit.self_conjugate) throw NotSelfConjugate("orbit " + std::to_string(orbit.orbit_index) + " is not self-conjugate");
    const LatticeAnalysis an = analyze(orbit, pin_max_q());
    const SymmetryData sym = involution_on_slices(an);
    const PinReport rep = pin_report(orbit, an, sym);
    if (cfg_.format == OutputFormat::json) {
      json j = header(orbit);
      if (gysin_only) {
        j["gysin"] = rep.gysin ? rep.gysin->to_json() : json(nullptr);
        j["hm"] = rep.hm.to_json();
        j["a_prime"] = rep.a1.to_json();
        j["a_double_prime"] = rep.a2.to_json();
        j["conjecture_gated"] = rep.conjecture_gated;
      } else {
        j.update(rep.to_json());
      }
      out_ << j.dump() << "\n";
      return;
    }
    const std::string gated = rep.conjecture_gated ? " [conjecture-gated]" : "";
    if (gysin_only) {
      out_ << text_header(orbit) << gated << ": " << (rep.gysin ? rep.gysin->to_string() : "unavailable") << "\n";
      return;
    }
    const CorrectionTerms& t = rep.terms;
    out_ << text_header(orbit) << gated << ": alpha = " << to_string(t.alpha) << ", beta = " << to_string(t.beta)
         << ", gamma = " << to_string(t.gamma) << ", delta = " << to_string(t.delta) << ", rho = " << to_string(t.rho)
         << "\n  HS = " << rep.hs.to_text() << "\n  HM = " << rep.hm.to_text() << "\n";
    if (rep.gysin) out_ << "  Gysin = " << rep.gysin->to_string() << "\n";
  }

  void mubar_cmd(const SpinCOrbit& orbit) {
    if (!orbit.self_conjugate) throw NotSelfConjugate("orbit " + std::to_string(orbit.orbit_index) + " is not self-conjugate");
    const std::optional<WuData> wu = [&]() -> std::optional<WuData> {
      try {
        return wu_vector(graph_, orbit);
      } catch (const NoWuRepresentative&) {
        return std::nullopt;
      }
    }();
    const LatticeAnalysis an = analyze(orbit, 1);
    const SymmetryData sym = involution_on_slices(an);
    std::string check = "not applicable";
    if (wu && graph_.bad_vertices().size() <= 1) check = sym.rho == 2 * wu->mubar ? "passed" : "failed";
    if (cfg_.format == OutputFormat::json) {
      json j = header(orbit);
      j["wu"] = wu ? wu->to_json() : json(nullptr);
      j["mubar"] = wu ? json(to_string(wu->mubar)) : json(nullptr);
      j["rho"] = to_string(sym.rho);
      j["rho_equals_2mubar"] = check;
      out_ << j.dump() << "\n";
      return;
    }
    out_ << text_header(orbit) << ": mubar = " << (wu ? to_string(wu->mubar) : std::string("none")) << ", rho = "
         << to_string(sym.rho) << ", rho = 2 mubar check " << check << "\n";
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  PlumbingGraph graph_;
  IntersectionForm form_;
};

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Session s(config, out);
    return s.run();
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_for(e.code());
  }
}

}  // namespace latticeroot
