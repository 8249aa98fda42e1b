#include "doctest.h"

#include "adic/error.hpp"
#include "adic/families.hpp"
#include "adic/paths.hpp"
#include "adic/weights.hpp"
#include "oracles.hpp"

using namespace adic;

TEST_CASE("odometer successor is binary counting with carry") {
  const Half h = half(generate({"odometer", {"2"}, 5}), Sign::pos);
  PathOps ops(h);
  Path p = ops.min_path_into(0, 4);
  CHECK(r_digits(h, p) == "1.1.1.1");

  auto s1 = ops.successor(p);
  REQUIRE(s1.has_value());
  CHECK(r_digits(h, *s1) == "2.1.1.1");
  auto s2 = ops.successor(*s1);
  REQUIRE(s2.has_value());
  CHECK(r_digits(h, *s2) == "1.2.1.1");  // carry into the second digit

  // iterating from the minimum enumerates all 2^4 paths, then signals
  int steps = 1;
  Path cur = p;
  while (true) {
    auto nxt = ops.successor(cur);
    if (!nxt) break;
    cur = *nxt;
    ++steps;
  }
  CHECK(steps == 16);
  CHECK(r_digits(h, cur) == "2.2.2.2");
  CHECK(ops.is_maximal(cur));
}

TEST_CASE("chacon: the spacer path is a period-1 class that wraps to itself") {
  const Half h = half(generate({"chacon", {}, 5}), Sign::pos);
  PathOps ops(h);
  const Path sp = ops.min_path_into(1, 4);  // vertex 1 = spacer chain
  CHECK(ops.count_paths_into(1, 4) == 1);
  CHECK(ops.is_maximal(sp));
  CHECK(ops.is_minimal(sp));
  const auto nxt = ops.successor(sp);
  REQUIRE(nxt.has_value());
  CHECK(*nxt == sp);
}

TEST_CASE("successor equals the enumeration oracle on every bundled half") {
  struct Case {
    FamilySpec f;
    int depth;
  };
  const Case cases[] = {
      {{"odometer", {"2"}, 6}, 4},  {{"chacon", {}, 6}, 4},
      {{"pascal", {"1/3"}, 6}, 4},  {{"staircase", {}, 6}, 4},
      {{"symmetric", {"2", "2"}, 6}, 4}, {{"explosive", {"k+1", "2"}, 5}, 3},
  };
  for (const auto& c : cases) {
    const Half h = half(generate(c.f), Sign::pos);
    PathOps ops(h);
    for (const auto& p : oracle::all_paths(h, c.depth)) {
      const auto got = ops.successor(p);
      const auto want = oracle::naive_successor(h, p);
      REQUIRE(got.has_value() == want.has_value());
      if (got) CHECK(*got == *want);
    }
  }
}

TEST_CASE("successor is a bijection non-maximal -> non-minimal and keeps measure") {
  const Half h = half(generate({"chacon", {}, 6}), Sign::pos);
  PathOps ops(h);
  std::vector<Path> images;
  for (const auto& p : oracle::all_paths(h, 5)) {
    const auto nxt = ops.successor(p);
    if (ops.is_maximal(p)) continue;
    REQUIRE(nxt.has_value());
    CHECK_FALSE(ops.is_minimal(*nxt));
    CHECK(measure_of_cylinder(h, p) == measure_of_cylinder(h, *nxt));
    images.push_back(*nxt);
  }
  std::sort(images.begin(), images.end(),
            [](const Path& a, const Path& b) { return a.edges < b.edges; });
  CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
  // count check: non-maximal and non-minimal path counts agree
  int nonmin = 0;
  for (const auto& p : oracle::all_paths(h, 5))
    if (!ops.is_minimal(p)) ++nonmin;
  CHECK(static_cast<int>(images.size()) == nonmin);
}

TEST_CASE("min/max paths per endpoint, and the boundary rays of the triangle") {
  const Half odo = half(generate({"odometer", {"2"}, 5}), Sign::pos);
  const auto [omin, omax] = min_max_paths(odo, 4);
  CHECK(omin.size() == 1);
  CHECK(omax.size() == 1);

  const Half cha = half(generate({"chacon", {}, 5}), Sign::pos);
  const auto [cmin, cmax] = min_max_paths(cha, 4);
  CHECK(cmin.size() == 2);
  CHECK(cmax.size() == 2);

  // Pascal-triangle half: one extreme pair per endpoint; the two edge-of-
  // triangle endpoints carry exactly one path each (the boundary rays), so
  // min == max there and nowhere else.
  const Half pas = half(generate({"pascal", {"1/3"}, 6}), Sign::pos);
  PathOps ops(pas);
  const auto [pmin, pmax] = min_max_paths(pas, 5);
  REQUIRE(static_cast<int>(pmin.size()) == pas.size(5));
  int singletons = 0;
  for (int v = 0; v < pas.size(5); ++v) {
    if (pmin[v] == pmax[v]) {
      ++singletons;
      CHECK(ops.count_paths_into(v, 5) == 1);
    }
  }
  CHECK(singletons == 2);
}

TEST_CASE("min and max paths are the extremes of the sorted enumeration") {
  const Half h = half(generate({"staircase", {}, 5}), Sign::pos);
  PathOps ops(h);
  for (int v = 0; v < h.size(4); ++v) {
    const auto sorted = oracle::paths_into_sorted(h, v, 4);
    CHECK(ops.min_path_into(v, 4) == sorted.front());
    CHECK(ops.max_path_into(v, 4) == sorted.back());
    CHECK(ops.count_paths_into(v, 4) == Int(sorted.size()));
  }
}

TEST_CASE("components: chacon splits 1+1, odometer is purely minimal") {
  const Half cha = half(generate({"chacon", {}, 6}), Sign::pos);
  for (int depth = 2; depth <= 6; ++depth) {
    const auto comp = components(cha, depth);
    CHECK(comp.minimal.size() == 1);
    REQUIRE(comp.periodic.size() == 1);
    CHECK(comp.periodic[0].period == 1);
    CHECK(comp.periodic[0].head == 1);
  }

  const Half odo = half(generate({"odometer", {"2"}, 6}), Sign::pos);
  const auto comp = components(odo, 4);
  CHECK(comp.minimal.size() == 1);
  CHECK(comp.periodic.empty());
}

TEST_CASE("components: a measure-disjoint union splits into two minimal parts") {
  const DiagramSpec u =
      disjoint_union(odometer_half(2, 4), odometer_half(3, 4), Rat(1, 2));
  REQUIRE(validate_diagram(u).ok);
  const auto comp = components(half(u, Sign::pos), 4);
  CHECK(comp.periodic.empty());
  CHECK(comp.minimal.size() == 2);
}

TEST_CASE("component supports partition the vertex set at every level") {
  const Half h = half(generate({"pascal", {"1/3"}, 6}), Sign::pos);
  const auto comp = components(h, 5);
  for (int level = 0; level <= 5; ++level)
    for (int v = 0; v < h.size(level); ++v) {
      const int id = comp.owner[level][v];
      CHECK(id >= 0);
      CHECK(id < static_cast<int>(comp.periodic.size() + comp.minimal.size()));
    }
  // triangle: both boundary rays are periodic classes, the interior is one
  // minimal component
  CHECK(comp.periodic.size() == 2);
  CHECK(comp.minimal.size() == 1);
}

TEST_CASE("periodic components report exact class mass") {
  const Half h = half(generate({"chacon", {}, 4}), Sign::pos);
  const auto comp = components(h, 3);
  REQUIRE(comp.periodic.size() == 1);
  // one path of width (1/3)^3 of the spacer's seed mass 1/3
  CHECK(comp.periodic[0].mass == Rat(1, 81));
  CHECK(comp.periodic[0].null_mass);
}
