#include "doctest.h"

#include <cmath>

#include "adic/error.hpp"
#include "adic/families.hpp"
#include "adic/paths.hpp"
#include "adic/weights.hpp"
#include "oracles.hpp"

using namespace adic;

TEST_CASE("every bundled generator passes both validators") {
  const FamilySpec fams[] = {
      {"odometer", {"2"}, 10},       {"odometer", {"5"}, 10},
      {"chamanara", {"2"}, 10},      {"chamanara", {"3"}, 10},
      {"chacon", {}, 10},            {"chacon_mirror", {}, 10},
      {"pascal", {"1/3"}, 10},       {"pascal", {"1/2"}, 10},
      {"staircase", {}, 10},         {"symmetric", {"2", "3"}, 10},
      {"symmetric", {"3", "k+1"}, 8}, {"explosive", {"2", "2"}, 8},
      {"explosive", {"k+1", "2"}, 8}, {"independent", {"1,2"}, 4},
  };
  for (const auto& f : fams) {
    const DiagramSpec spec = generate(f);
    const auto drep = validate_diagram(spec);
    CHECK_MESSAGE(drep.ok, f.name, ": ", drep.str());
    const auto wrep = check_weight_conditions(spec, spec.hi);
    CHECK_MESSAGE(wrep.ok, f.name, ": ", wrep.str());
  }
}

TEST_CASE("the skyscraper family fails weight validation by design") {
  const DiagramSpec hk = generate({"hajian_kakutani", {}, 6});
  CHECK(validate_diagram(hk).ok);  // the structure itself is sound
  for (int l = hk.lo; l <= hk.hi; ++l) CHECK(hk.size(l) == 2);

  const auto wrep = check_weight_conditions(hk, 6);
  CHECK_FALSE(wrep.ok);
  int positivity = 0, path_indep = 0, edge_sum = 0, other = 0;
  for (const auto& is : wrep.issues) {
    if (is.code == "positivity") ++positivity;
    else if (is.code == "path-independence") ++path_indep;
    else if (is.code == "edge-sum") ++edge_sum;
    else ++other;
  }
  CHECK(positivity == 65);  // the reservoir runs dry from stage 2 on
  CHECK(path_indep == 4);
  CHECK(edge_sum == 4);
  CHECK(other == 0);

  // the odometer factor underneath is perfectly valid
  const DiagramSpec base = hajian_kakutani_base(6);
  CHECK(validate_diagram(base).ok);
  CHECK(check_weight_conditions(base, 6).ok);
  CHECK(check_weight_conditions(with_identity_negative(base), 6).ok);
}

TEST_CASE("odometer structure: one vertex per level, `base` parallel edges") {
  const DiagramSpec spec = generate({"odometer", {"4"}, 6});
  for (int l = spec.lo; l <= spec.hi; ++l) CHECK(spec.size(l) == 1);
  for (int j = 1; j <= spec.hi; ++j) {
    REQUIRE(spec.edges(j).size() == 4);
    for (const auto& e : spec.edges(j)) {
      CHECK(e.src == 0);
      CHECK(e.dst == 0);
      CHECK(e.w == Rat(1, 4));
    }
  }
  CHECK(spec.w0_plus == std::vector<Rat>{Rat(1)});
}

TEST_CASE("weighted-path successor preserves the biased measure exhaustively") {
  for (const char* p : {"1/3", "1/2"}) {
    const Half h = half(generate({"pascal", {p}, 7}), Sign::pos);
    PathOps ops(h);
    for (const auto& path : oracle::all_paths(h, 6)) {
      const auto nxt = ops.successor(path);
      if (!nxt) continue;
      CHECK(measure_of_cylinder(h, path) == measure_of_cylinder(h, *nxt));
    }
  }
}

TEST_CASE("staircase reservoir stays positive at every bundled depth") {
  const DiagramSpec spec = generate({"staircase", {}, 8});
  CHECK(spec.w0_plus == std::vector<Rat>{Rat(1, 5), Rat(4, 5)});
  for (int l = 0; l <= 8; ++l)
    for (int v = 0; v < spec.size(l); ++v)
      CHECK(vertex_weight(spec, l, v) > 0);
}

TEST_CASE("independent construction: columns square each stage") {
  const DiagramSpec spec = generate({"independent", {"1,2"}, 3});
  CHECK(spec.lo == -1);
  CHECK(spec.hi == 3);
  CHECK(spec.size(-1) == 3);
  CHECK(spec.size(0) == 3);  // one vertex per seed level: heights 1 + 2
  CHECK(spec.size(1) == 2);  // the two starting columns
  CHECK(spec.size(2) == 4);
  CHECK(spec.size(3) == 16);
  CHECK(spec.w0_plus == std::vector<Rat>(3, Rat(1, 3)));

  // alias spells the same diagram
  const DiagramSpec alias = generate({"independent_cas", {"1,2"}, 3});
  CHECK(alias.sizes == spec.sizes);
  for (int j = spec.lo; j <= spec.hi; ++j) {
    if (j == 0) continue;
    CHECK(alias.edges(j) == spec.edges(j));
  }
}

TEST_CASE("topological entropy of the independent construction") {
  CHECK(shields_entropy({1, 1}, {Rat(1, 2), Rat(1, 2)}) ==
        doctest::Approx(std::log(2.0)));
  CHECK(shields_entropy({5}, {Rat(1, 5)}) == doctest::Approx(0.0));
  CHECK(shields_entropy({1, 1, 2}, {Rat(1, 4), Rat(1, 4), Rat(1, 4)}) ==
        doctest::Approx(0.75 * std::log(3.0)));
}

TEST_CASE("negative-side bundling: identity tail versus mirror copy") {
  const DiagramSpec plain = generate({"chacon", {}, 5});
  CHECK(plain.lo == -1);
  CHECK(plain.hi == 5);
  REQUIRE(plain.edges(-1).size() == 2);
  for (const auto& e : plain.edges(-1)) {
    CHECK(e.src == e.dst);
    CHECK(e.w == Rat(1));
  }

  const DiagramSpec mirror = generate({"chacon_mirror", {}, 5});
  CHECK(mirror.lo == -5);
  CHECK(mirror.hi == 5);
  for (int j = 1; j <= 5; ++j) CHECK(mirror.edges(j) == plain.edges(j));
  // mirrored set: the copy reads downward, so ends and ranks both swap
  // (stored src sits at the lower level on either side of the window)
  for (int j = 1; j <= 5; ++j) {
    const auto& pos = mirror.edges(j);
    const auto& neg = mirror.edges(-j);
    REQUIRE(pos.size() == neg.size());
    for (size_t i = 0; i < pos.size(); ++i) {
      CHECK(pos[i].dst == neg[i].src);
      CHECK(pos[i].src == neg[i].dst);
      CHECK(pos[i].r_rank == neg[i].s_rank);
      CHECK(pos[i].s_rank == neg[i].r_rank);
      CHECK(pos[i].w == neg[i].w);
    }
  }
}

TEST_CASE("measure-disjoint union carries the declared masses") {
  const DiagramSpec u =
      disjoint_union(odometer_half(2, 4), odometer_half(3, 4), Rat(1, 4));
  CHECK(u.w0_plus == std::vector<Rat>{Rat(1, 4), Rat(3, 4)});
  CHECK(validate_diagram(u).ok);
  CHECK(check_weight_conditions(u, 4).ok);
  const Half h = half(u, Sign::pos);
  // blocks never talk: paths into the two components count independently
  PathOps ops(h);
  CHECK(ops.count_paths_into(0, 4) == 16);
  CHECK(ops.count_paths_into(1, 4) == 81);
}

TEST_CASE("sequence rules parse the four spellings and reject junk") {
  CHECK(parse_rule("3")(7) == 3);
  CHECK(parse_rule("k")(7) == 7);
  CHECK(parse_rule("k+1")(7) == 8);
  CHECK(parse_rule("2k+3")(5) == 13);
  CHECK_THROWS_AS((void)parse_rule("x+y"), adic::error);
  CHECK_THROWS_AS((void)parse_rule(""), adic::error);
}

TEST_CASE("family dispatch rejects what it cannot build") {
  CHECK_THROWS_WITH_AS((void)generate({"bowman", {}, 4}),
                       doctest::Contains("bowman"), adic::error);
  CHECK_THROWS_WITH_AS((void)generate({"nonesuch", {}, 4}),
                       doctest::Contains("unknown family"), adic::error);
  CHECK_THROWS_AS((void)generate({"odometer", {}, 4}), adic::error);
  CHECK_THROWS_AS((void)generate({"odometer", {"2", "3"}, 4}), adic::error);
  CHECK_THROWS_AS((void)generate({"odometer", {"x"}, 4}), adic::error);
}
