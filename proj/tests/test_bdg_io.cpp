#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "adic/bdg_io.hpp"
#include "adic/diagram.hpp"
#include "adic/error.hpp"
#include "adic/families.hpp"

using namespace adic;

namespace {

std::string msg_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rationals: parse/print round trip, decimals, junk") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK(parse_rat("0.1") == Rat(1, 10));
  CHECK(parse_rat("2.50") == Rat(5, 2));
  CHECK(parse_rat("-0.125") == Rat(-1, 8));
  CHECK(rat_string(Rat(3, 4)) == "3/4");
  CHECK(rat_string(Rat(5)) == "5");
  CHECK(rat_string(parse_rat(rat_string(Rat(22, 7)))) == "22/7");
  CHECK_THROWS_AS((void)parse_rat("1/0"), error);
  CHECK_THROWS_AS((void)parse_rat("x"), error);
  CHECK_THROWS_AS((void)parse_rat("1.2.3"), error);
}

TEST_CASE("bdg: write then parse is the identity") {
  const DiagramSpec spec = generate({"chacon", {}, 4});
  const BdgFile file = parse_bdg_string(bdg_string(spec));
  REQUIRE(file.spec.has_value());
  const DiagramSpec& back = *file.spec;
  CHECK(back.lo == spec.lo);
  CHECK(back.hi == spec.hi);
  CHECK(back.sizes == spec.sizes);
  CHECK(back.w0_plus == spec.w0_plus);
  CHECK(back.w0_minus == spec.w0_minus);
  for (int set = spec.lo; set <= spec.hi; ++set) {
    if (set == 0) continue;
    CHECK(back.edges(set) == spec.edges(set));
  }
}

TEST_CASE("bdg: family directive resolves like a direct generate call") {
  const BdgFile file = parse_bdg_string("family symmetric 2 k+1 depth 5\n");
  REQUIRE(file.family.has_value());
  CHECK(file.family->name == "symmetric");
  CHECK(file.family->args == std::vector<std::string>{"2", "k+1"});
  CHECK(file.family->depth == 5);
  const DiagramSpec a = resolve(file);
  const DiagramSpec b = generate({"symmetric", {"2", "k+1"}, 5});
  CHECK(a.sizes == b.sizes);
  CHECK(a.w0_plus == b.w0_plus);
  for (int set = a.lo; set <= a.hi; ++set) {
    if (set == 0) continue;
    CHECK(a.edges(set) == b.edges(set));
  }
}

TEST_CASE("bdg: comments and blank lines are ignored") {
  const std::string text =
      "# a diagram\n"
      "\n"
      "levels 0 1\n"
      "level 0 1   # root\n"
      "level 1 1\n"
      "w0+ 0 1\n"
      "w0- 0 1\n"
      "edge 1 0 0 1 1 w=1/2\n"
      "edge 1 0 0 2 2 w=1/2\n";
  const BdgFile file = parse_bdg_string(text);
  REQUIRE(file.spec.has_value());
  CHECK(file.spec->edges(1).size() == 2);
}

TEST_CASE("bdg: malformed input reports the offending line number") {
  auto line_of = [&](const std::string& text) {
    return msg_of([&] { (void)parse_bdg_string(text); });
  };
  // bad integer on line 4
  CHECK(line_of("levels 0 1\nlevel 0 1\nlevel 1 1\nedge 1 0 0 one 1\n")
            .find("line 4") != std::string::npos);
  // a missing levels directive is only detectable at end of input, so the
  // complaint carries no line number
  CHECK(line_of("level 0 1\n").find("missing levels") != std::string::npos);
  // bad weight token on line 3
  CHECK(line_of("levels 0 1\nlevel 0 1\nw0+ 0 nope\n").find("line 3") !=
        std::string::npos);
  // unknown directive
  CHECK(line_of("levels 0 1\nbogus 1 2\n").find("line 2") != std::string::npos);
  // family and explicit data are mutually exclusive
  CHECK_THROWS_AS(
      (void)parse_bdg_string("levels 0 1\nlevel 0 1\nfamily chacon depth 3\n"),
      error);
}

TEST_CASE("bdg: edge set out of the declared window is rejected") {
  const std::string text =
      "levels 0 1\nlevel 0 1\nlevel 1 1\nedge 2 0 0 1 1 w=1\n";
  CHECK_THROWS_AS((void)parse_bdg_string(text), error);
}

TEST_CASE("bdg: load from a file path and from stdin marker") {
  const DiagramSpec spec = generate({"odometer", {"3"}, 3});
  const std::string path = "bdg_io_roundtrip_tmp.bdg";
  {
    std::ofstream out(path);
    write_bdg(out, spec);
  }
  const BdgFile file = load_bdg(path);
  REQUIRE(file.spec.has_value());
  CHECK(file.spec->sizes == spec.sizes);
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)load_bdg("definitely_missing_file.bdg"), error);
}
