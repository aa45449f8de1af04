#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "comorita/cli.hpp"
#include "fixtures.hpp"

using namespace comorita;
using namespace comorita::cli;
namespace fs = std::filesystem;

namespace {

const fs::path dir = COMORITA_FIXTURES;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".ct") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Outcome exec(const std::string& cmd, const std::string& file, std::vector<std::string> args, Options opt = {}) {
  return run(cmd, slurp(dir / file), file, args, opt);
}

bool same_comodule(const Comodule& a, const Comodule& b) {
  return a.side() == b.side() && a.coalgebra() == b.coalgebra() && a.carrier().same_presentation(b.carrier()) &&
         a.coaction().matrix() == b.coaction().matrix();
}

} // namespace

TEST_CASE("fixture corpus round trips through the canonical form") {
  auto files = corpus();
  REQUIRE(files.size() >= 9);
  for (const auto& p : files) {
    INFO(p.filename().string());
    DefinitionFile a = parse(slurp(p));
    std::string text = render(a);
    DefinitionFile b = parse(text);
    CHECK(same_definitions(a, b));
    CHECK(render(b) == text);
  }
}

TEST_CASE("layout and comments do not change the digest") {
  std::string spaced = "ring GF(5)\n\n# two points\ncoalgebra G   =   grouplike 2\ncomodule P = point right G 1 # last\n";
  std::string tight = "ring GF(5) coalgebra G=grouplike 2 comodule P=point right G 1";
  CHECK(digest(render(parse(spaced))) == digest(render(parse(tight))));
  CHECK(digest(render(parse(spaced))) != digest(render(parse("ring GF(5) coalgebra G=grouplike 2 comodule P=point right G 0"))));
}

TEST_CASE("literal grouplike file builds the grouplike coalgebra") {
  DefinitionFile f = parse(slurp(dir / "grouplike.ct"));
  REQUIRE(f.ring == Ring::prime_field(2));
  CHECK(f.coalgebra("G")->value == grouplike(*f.ring, 2));
  CHECK(check_coalgebra(f.coalgebra("G")->value).passed());
  CHECK_FALSE(check_coalgebra(f.coalgebra("G-bad")->value).passed());
}

TEST_CASE("comatrix fixture matches the programmatic context") {
  for (const char* file : {"comatrix.ct", "comatrix-z4.ct"}) {
    DefinitionFile f = parse(slurp(dir / file));
    const MoritaContext& k = f.context("K")->value;
    MoritaContext ref = fixture::comatrix_context(*f.ring);
    CHECK(k.d == ref.d);
    CHECK(k.c == ref.c);
    CHECK(same_comodule(k.m.as_left(), ref.m.as_left()));
    CHECK(same_comodule(k.m.as_right(), ref.m.as_right()));
    CHECK(same_comodule(k.n.as_left(), ref.n.as_left()));
    CHECK(same_comodule(k.n.as_right(), ref.n.as_right()));
    CHECK(k.f == ref.f);
    CHECK(k.g == ref.g);
  }
  DefinitionFile s = parse(slurp(dir / "comatrix-scaled-g.ct"));
  CHECK(s.context("K")->value.g == fixture::comatrix_context(Ring::rationals(), 1, 2).g);
}

TEST_CASE("parse errors carry positions and names") {
  CHECK_THROWS_WITH_AS(parse(slurp(dir / "invalid/bad-delta.ct")), doctest::Contains("coalgebra B"), DimensionError);
  CHECK_THROWS_WITH_AS(parse(slurp(dir / "invalid/bad-delta.ct")), doctest::Contains("3x2"), DimensionError);
  try {
    parse("ring Q\ncoalgebra G = grouplike 2\n  comodule X { side up }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 21);
  }
  CHECK_THROWS_AS(parse("coalgebra G = grouplike 2"), ParseError);
  CHECK_THROWS_AS(parse("ring R"), ParseError);
  CHECK_THROWS_AS(parse("ring Q coalgebra G = grouplike 2 coalgebra G = grouplike 1"), ParseError);
  CHECK_THROWS_AS(parse("ring Q comodule X = regular right C"), ParseError);
  CHECK_THROWS_AS(parse("ring Q module W { generators 2 relations 1x2 [ 1 ] }"), ParseError);
  CHECK_THROWS_AS(parse("ring Q module W { generators 2 relations 1x2 [ 1 2 3 ] }"), ParseError);
  CHECK_THROWS_AS(parse("ring Q module W { generators 2 relations 1x2 [ 1 1/0 ] }"), ParseError);
  CHECK_THROWS_AS(parse("ring GF(4)"), DomainError);
  CHECK_THROWS_WITH_AS(parse("ring Q coalgebra G = grouplike 2 comodule X = point right G 5"),
                       doctest::Contains("comodule X"), Error);
  CHECK_THROWS_AS(parse("ring Q coalgebra D = matrix 2 comodule X = column D 3"), ParseError);
  CHECK_THROWS_WITH_AS(parse(slurp(dir / "comatrix.ct") + "\ncontext L { d D c C m M n N f 4x1 [ 1 ; 0 ; 0 ; 1 ] g 4x1 [ 1 ; 0 ; 0 ; 1 ] }"),
                       doctest::Contains("context L"), DimensionError);
}

TEST_CASE("rational entries follow the ring") {
  DefinitionFile f = parse("ring GF(5) module W { generators 1 relations 1x1 [ 1/2 ] }");
  CHECK(f.module("W")->value.is_zero());
  CHECK_THROWS(parse("ring Z module W { generators 1 relations 1x1 [ 1/2 ] }"));
}

TEST_CASE("documented command outcomes") {
  struct Row {
    const char* cmd;
    const char* file;
    std::vector<std::string> args;
    int exit;
  };
  const std::vector<Row> table = {
      {"check-coalgebra", "grouplike.ct", {"G"}, 0},
      {"check-coalgebra", "grouplike.ct", {"G-bad"}, 1},
      {"check-comodule", "grouplike.ct", {"P"}, 0},
      {"check-comodule", "comatrix.ct", {"N"}, 0},
      {"cotensor", "comatrix.ct", {"M", "N"}, 0},
      {"purity", "comatrix.ct", {"N", "M"}, 0},
      {"purity", "impure-z4.ct", {"A", "B"}, 1},
      {"assoc", "comatrix.ct", {"M", "N", "M"}, 0},
      {"coflat-probe", "points.ct", {"RG"}, 0},
      {"coflat-probe", "points.ct", {"P"}, 1},
      {"cohom", "comatrix.ct", {"N", "N"}, 0},
      {"coend", "column.ct", {"XL"}, 0},
      {"anti-iso", "column.ct", {"XX"}, 0},
      {"context-verify", "comatrix.ct", {"K"}, 0},
      {"context-verify", "comatrix-scaled-g.ct", {"K"}, 1},
      {"context-verify", "comatrix-z4-half.ct", {"K"}, 0},
      {"context-strict", "comatrix.ct", {"K"}, 0},
      {"context-strict", "comatrix-z4-half.ct", {"K"}, 1},
      {"equivalence", "comatrix.ct", {"K"}, 0},
      {"equivalence", "comatrix-z4-half.ct", {"K"}, 1},
      {"equivalence", "trivial-context.ct", {"T"}, 0},
      {"context-from-comodule", "column.ct", {"X"}, 0},
      {"context-from-comodule", "points.ct", {"P"}, 1},
      {"invertible", "column.ct", {"XL"}, 0},
      {"invertible", "column.ct", {"XXL"}, 1},
      {"invertible", "points.ct", {"BP"}, 1},
      {"frobnicate", "points.ct", {"P"}, 2},
      {"coend", "points.ct", {"NOPE"}, 2},
      {"coend", "points.ct", {"LG"}, 2},
      {"assoc", "comatrix.ct", {"M", "N"}, 2},
      {"check-coalgebra", "invalid/bad-delta.ct", {"B"}, 2},
      {"check-coalgebra", "invalid/syntax.ct", {"G"}, 2},
      {"check-coalgebra", "invalid/two-rings.ct", {"G"}, 2},
  };
  for (const auto& row : table) {
    Outcome o = exec(row.cmd, row.file, row.args);
    CHECK_MESSAGE(o.exit_code == row.exit, row.cmd << " " << row.file << "\n" << o.summary);
  }
}

TEST_CASE("exit status agrees with the verdicts across the corpus") {
  const std::set<std::string> verdicts = {"pass", "fail", "not-certified"};
  std::size_t runs = 0;
  for (const auto& p : corpus()) {
    DefinitionFile f = parse(slurp(p));
    std::vector<std::pair<std::string, std::vector<std::string>>> calls;
    for (const auto& c : f.coalgebras) calls.push_back({"check-coalgebra", {c.name}});
    for (const auto& c : f.comodules) calls.push_back({"check-comodule", {c.name}});
    for (const auto& c : f.bicomodules) calls.push_back({"check-comodule", {c.name}});
    for (const auto& c : f.comodules)
      if (c.value.generators() <= 4) calls.push_back({"coflat-probe", {c.name}});
    for (const auto& k : f.contexts) calls.push_back({"context-verify", {k.name}});
    calls.push_back({"check-coalgebra", {}});
    calls.push_back({"check-comodule", {"missing"}});
    for (const auto& [cmd, args] : calls) {
      Outcome o = run(cmd, slurp(p), p.filename().string(), args);
      const auto& r = o.report;
      INFO(p.filename().string() << " " << cmd);
      CHECK(r["schema"] == "comorita-report/1");
      CHECK(r["exit_code"] == o.exit_code);
      bool all_pass = true;
      for (const auto& c : r["checks"]) {
        CHECK(verdicts.count(c["verdict"].get<std::string>()) == 1);
        all_pass = all_pass && c["verdict"] == "pass";
      }
      if (o.exit_code == 2) {
        CHECK(r.contains("error"));
      } else {
        CHECK((o.exit_code == 0) == all_pass);
        CHECK(r["digest"] == digest(render(f)));
      }
      ++runs;
    }
  }
  CHECK(runs >= 40);
}

TEST_CASE("reports are deterministic") {
  Outcome a = exec("equivalence", "comatrix.ct", {"K"});
  Outcome b = exec("equivalence", "comatrix.ct", {"K"});
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["checks"].size() == 12);
  Options opt;
  opt.tests = {"X", "Y", "X2", "R"};
  opt.seed = 7;
  Outcome c = exec("equivalence", "comatrix.ct", {"K"}, opt);
  CHECK(c.exit_code == 0);
  CHECK(c.report["checks"].size() == 16);
  CHECK(c.report["seed"] == 7);
}

TEST_CASE("scaled g reports the triangle witness") {
  Outcome o = exec("context-verify", "comatrix-scaled-g.ct", {"K"});
  REQUIRE(o.exit_code == 1);
  bool seen = false;
  for (const auto& c : o.report["checks"])
    if (c["name"] == "triangle M") {
      seen = true;
      CHECK(c["verdict"] == "fail");
      CHECK_FALSE(c["witness"].is_null());
    }
  CHECK(seen);
  CHECK(o.report["results"]["triangle_m_defect"] == true);
}

TEST_CASE("quasi-Frobenius commands reject the integers") {
  for (const auto& [cmd, args] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"cohom", {"RG", "RG"}},
           {"coend", {"RG"}},
           {"anti-iso", {"X"}},
           {"context-from-comodule", {"RG"}},
           {"invertible", {"XL"}}}) {
    Outcome o = exec(cmd, "integers.ct", args);
    CHECK_MESSAGE(o.exit_code == 2, cmd);
    CHECK(o.report["error"]["kind"] == "unsupported-ring");
  }
  for (const auto& [cmd, args] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"cotensor", {"RG", "LG"}},
           {"cotensor", {"WRG", "P"}},
           {"purity", {"RG", "LG"}},
           {"purity", {"U", "LE"}},
           {"assoc", {"RG", "BG", "LG"}},
           {"assoc", {"U", "BE", "LE"}}}) {
    Outcome o = exec(cmd, "integers.ct", args);
    CHECK_MESSAGE(o.exit_code == 0, cmd << "\n" << o.summary);
  }
}

TEST_CASE("probe and size options") {
  Options none;
  none.probes = "none";
  Outcome o = exec("coflat-probe", "points.ct", {"P"}, none);
  CHECK(o.exit_code == 1);
  CHECK(o.report["checks"][0]["verdict"] == "not-certified");
  CHECK(exec("context-from-comodule", "column.ct", {"X"}, none).exit_code == 1);

  Options bad;
  bad.probes = "everything";
  CHECK(exec("coflat-probe", "points.ct", {"P"}, bad).exit_code == 2);

  Options one;
  one.probes = "standard:1";
  CHECK(exec("coflat-probe", "points.ct", {"RG"}, one).exit_code == 0);

  Options small;
  small.max_rank = 3;
  CHECK(exec("context-verify", "comatrix.ct", {"K"}, small).exit_code == 2);
  CHECK(exec("check-coalgebra", "grouplike.ct", {"G"}, small).exit_code == 0);

  Options timed;
  timed.timings = true;
  CHECK(exec("check-coalgebra", "grouplike.ct", {"G"}, timed).report.contains("timings"));
  CHECK_FALSE(exec("check-coalgebra", "grouplike.ct", {"G"}).report.contains("timings"));
}
