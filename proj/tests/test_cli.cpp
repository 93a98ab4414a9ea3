#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "latticeroot/cli.hpp"
#include "latticeroot/render.hpp"
#include "latticeroot/spinc.hpp"
#include "support.hpp"

using namespace latticeroot;
using namespace testing_support;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(const std::string& command, const std::string& input, OutputFormat format = OutputFormat::json,
               bool seifert = false) {
  RunConfig cfg;
  cfg.command = command;
  (seifert ? cfg.seifert : cfg.input) = input;
  cfg.format = format;
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

const std::string kE8 = e8_graph().to_json().dump();
const std::string kFigure3 = figure3_graph().to_json().dump();
const std::string k235 = R"({"brieskorn":[2,3,5]})";

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run_cli("validate", kE8).code == exit_code::ok);
  CHECK(run_cli("validate", single_vertex(1).to_json().dump()).code == exit_code::invalid);
  CHECK(run_cli("validate", "{not json").code == exit_code::bad_input);
  CHECK(run_cli("validate", "/nonexistent/graph.json").code == exit_code::bad_input);
  const std::string cycle =
      R"({"vertices":[{"id":0,"weight":-2},{"id":1,"weight":-2},{"id":2,"weight":-2}],"edges":[[0,1],[1,2],[2,0]]})";
  const Result r = run_cli("validate", cycle);
  CHECK(r.code == exit_code::bad_input);
  CHECK(r.err.rfind("error[MalformedGraph]", 0) == 0);
  CHECK(run_cli("hm", single_vertex(1).to_json().dump()).code == exit_code::invalid);
  CHECK(run_cli("pin2", kFigure3).code == exit_code::conjecture_required);
  CHECK(run_cli("hm", kE8, OutputFormat::dot).code == exit_code::bad_input);
  CHECK(run_cli("frobnicate", kE8).code == exit_code::bad_input);

  RunConfig both;
  both.command = "hm";
  both.input = kE8;
  both.seifert = k235;
  std::ostringstream o, e;
  CHECK(run(both, o, e) == exit_code::bad_input);

  RunConfig tight;
  tight.command = "hm";
  tight.seifert = R"({"brieskorn":[2,7,15]})";
  tight.budget = 5;
  CHECK(run(tight, o, e) == exit_code::capacity);

  RunConfig bad_orbit;
  bad_orbit.command = "pin2";
  bad_orbit.input = single_vertex(-3).to_json().dump();
  bad_orbit.orbit = "1";
  CHECK(run(bad_orbit, o, e) == exit_code::invalid);
  bad_orbit.orbit = "seven";
  CHECK(run(bad_orbit, o, e) == exit_code::bad_input);
}

TEST_CASE("JSON output reparses and carries the orientation") {
  const Result r = run_cli("pin2", k235, OutputFormat::json, true);
  REQUIRE(r.code == 0);
  const auto js = lines(r.out);
  REQUIRE(js.size() == 1);
  CHECK(js[0]["orientation"] == "minus-boundary");
  CHECK(js[0]["rho"] == "-2");
  CHECK(js[0]["mubar"] == "-1");
  CHECK(js[0]["hs"]["text"] == "V+(0) + V+(-1) + V+(-2)");

  const Result spinc = run_cli("spinc", single_vertex(-5).to_json().dump());
  REQUIRE(spinc.code == 0);
  CHECK(lines(spinc.out).size() == 5);

  const Result f3 = [] {
    RunConfig cfg;
    cfg.command = "pin2";
    cfg.input = kFigure3;
    cfg.assume_conjecture = true;
    cfg.format = OutputFormat::json;
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return Result{code, out.str(), err.str()};
  }();
  REQUIRE(f3.code == 0);
  const auto fj = lines(f3.out);
  REQUIRE(fj.size() == 1);
  CHECK(fj[0]["conjecture_gated"] == true);
  CHECK(fj[0]["alpha"] == "2");
}

TEST_CASE("output is deterministic") {
  for (const char* cmd : {"spinc", "hm", "root", "pin2", "gysin", "mubar"}) {
    const Result a = run_cli(cmd, k235, OutputFormat::text, true);
    const Result b = run_cli(cmd, k235, OutputFormat::text, true);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("DOT output is a well-formed digraph") {
  const Result r = run_cli("root", R"({"brieskorn":[2,7,15]})", OutputFormat::dot, true);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("digraph root0 {") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '{') == std::count(r.out.begin(), r.out.end(), '}'));
  // one edge per non-top node: 2 + 4 + 1 + 3 nodes below the top level
  std::size_t edges = 0;
  for (std::size_t p = r.out.find("->"); p != std::string::npos; p = r.out.find("->", p + 2)) ++edges;
  CHECK(edges == 10);
}

TEST_CASE("symmetric layouts mirror J-paired nodes") {
  for (auto [p, q, s] : {std::array<int, 3>{3, 5, 7}, {2, 7, 15}, {2, 3, 11}}) {
    const PlumbingGraph g = from_seifert(brieskorn(p, q, s));
    const IntersectionForm f(g);
    WeightedLattice lat(f, enumerate_orbits(f)[0].representative);
    LatticeAnalysis an(lat, AnalysisOptions{1, std::nullopt});
    const SymmetryData sym = involution_on_slices(an);
    const auto pos = root_layout(an.root(), &sym);
    for (std::int64_t n = an.n_min(); n <= an.n_stab(); ++n) {
      const auto& row = pos[static_cast<std::size_t>(n - an.n_min())];
      const LevelSymmetry& ls = sym.at(n);
      if (ls.fixed) CHECK(row[*ls.fixed] == 0);
      for (auto [a, b] : ls.pairs) {
        CHECK(row[a] == -row[b]);
        CHECK(row[a] != 0);
      }
    }
    std::istringstream in(render_ascii(an.root(), &sym, enumerate_orbits(f)[0].sigma));
    std::vector<std::string> rows;
    for (std::string line; std::getline(in, line);) rows.push_back(line);
    // Drawing columns (before the grading labels) read the same mirrored.
    const std::size_t centre = rows.front().find('|');
    for (const auto& line : rows) {
      std::string draw = line.substr(0, std::min(line.size(), 2 * centre + 1));
      draw.resize(2 * centre + 1, ' ');
      std::string mirrored(draw.rbegin(), draw.rend());
      CHECK(draw == mirrored);
    }
  }
}
