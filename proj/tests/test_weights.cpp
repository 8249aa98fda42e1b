#include "doctest.h"

#include <random>

#include "adic/error.hpp"
#include "adic/families.hpp"
#include "adic/weights.hpp"
#include "oracles.hpp"

using namespace adic;

TEST_CASE("weight checks: bundled families pass, broken sums fail") {
  CHECK(check_weight_conditions(generate({"odometer", {"2"}, 6}), 6).ok);
  CHECK(check_weight_conditions(generate({"pascal", {"1/3"}, 6}), 6).ok);
  CHECK(check_weight_conditions(generate({"chamanara", {"2"}, 6}), 6).ok);

  DiagramSpec bad = generate({"odometer", {"2"}, 3});
  for (auto& e : bad.edges(2)) e.w = Rat(1, 3);  // sums to 2/3
  const Report rep = check_weight_conditions(bad, 3);
  CHECK_FALSE(rep.ok);
  bool found = false;
  for (const auto& is : rep.issues)
    if (is.code == "edge-sum") found = true;
  CHECK(found);
}

TEST_CASE("weight checks: broken area and level-0 sums carry their own codes") {
  DiagramSpec s = generate({"odometer", {"2"}, 3});
  s.w0_minus[0] = Rat(1, 2);
  bool area = false;
  for (const auto& is : check_weight_conditions(s, 3).issues)
    if (is.code == "area") area = true;
  CHECK(area);

  DiagramSpec t = generate({"odometer", {"2"}, 3});
  t.w0_plus[0] = Rat(1, 2);
  bool lvl = false;
  for (const auto& is : check_weight_conditions(t, 3).issues)
    if (is.code == "level0-sum") lvl = true;
  CHECK(lvl);
}

TEST_CASE("vertex weights: closed forms and the all-paths oracle") {
  const DiagramSpec odo = generate({"odometer", {"2"}, 8});
  Rat pw = 1;
  for (int k = 1; k <= 8; ++k) {
    pw /= 2;
    CHECK(vertex_weight(odo, k, 0) == pw);
  }

  const DiagramSpec sym = generate({"symmetric", {"2", "2"}, 6});
  Rat sw = Rat(1, 2);
  for (int k = 1; k <= 6; ++k) {
    CHECK(vertex_weight(sym, k, 0) == sw);
    CHECK(vertex_weight(sym, k, 1) == sw);
    sw /= 3;
  }

  const DiagramSpec cha = generate({"chacon", {}, 4});
  CHECK(vertex_weight(cha, 1, 0) == Rat(2, 9));

  // every path into the vertex yields the same product
  const Half h = half(odo, Sign::pos);
  for (const auto& p : oracle::all_paths(h, 6)) {
    Rat prod = h.w0[start_vertex(h, p)];
    for (int i = 0; i < p.depth(); ++i) prod *= h.stages[i][p.edges[i]].w;
    CHECK(prod == vertex_weight(odo, 6, endpoint(h, p)));
  }
}

TEST_CASE("cylinder measures: direct values and tail-equivalence invariance") {
  const DiagramSpec odo = generate({"odometer", {"2"}, 4});
  const Half h = half(odo, Sign::pos);
  Path p;
  p.edges = {0, 0, 0};
  CHECK(measure_of_cylinder(h, p) == Rat(1, 8));

  // Pascal: a path's measure is p^(diagonal steps) * (1-p)^(rest)
  const DiagramSpec pas = generate({"pascal", {"1/3"}, 6});
  const Half hp = half(pas, Sign::pos);
  for (const auto& q : oracle::all_paths(hp, 5)) {
    int diag = 0;
    int at = start_vertex(hp, q);
    for (int i = 0; i < q.depth(); ++i) {
      const auto& e = hp.stages[i][q.edges[i]];
      if (e.dst == at) ++diag;  // same index means the "stay" step
      at = e.dst;
    }
    Rat want = 1;
    for (int i = 0; i < diag; ++i) want *= Rat(1, 3);
    for (int i = 0; i < 5 - diag; ++i) want *= Rat(2, 3);
    CHECK(measure_of_cylinder(hp, q) == want);
  }

  // at fixed depth, any two paths into the same vertex bound cylinders of
  // equal measure
  for (int v = 0; v < hp.size(4); ++v) {
    const auto into = oracle::paths_into_sorted(hp, v, 4);
    for (const auto& q : into)
      CHECK(measure_of_cylinder(hp, q) == measure_of_cylinder(hp, into.front()));
  }
}

TEST_CASE("mass conservation: depth-k cylinders partition the full measure") {
  for (const char* name : {"odometer", "chacon", "pascal", "staircase"}) {
    FamilySpec f;
    f.name = name;
    if (std::string(name) == "odometer") f.args = {"2"};
    if (std::string(name) == "pascal") f.args = {"1/2"};
    f.depth = 5;
    const DiagramSpec spec = generate(f);
    const Half h = half(spec, Sign::pos);
    // depth 0 is excluded: the empty path names no start vertex
    for (int k = 1; k <= 5; ++k) {
      Rat total = 0;
      for (const auto& p : oracle::all_paths(h, k)) total += measure_of_cylinder(h, p);
      CHECK(total == Rat(1));
    }
  }
}

TEST_CASE("level weights agree with per-vertex weights on both halves") {
  const DiagramSpec cham = generate({"chamanara", {"2"}, 6});
  for (Sign sg : {Sign::pos, Sign::neg}) {
    const Half h = half(cham, sg);
    for (int k = 0; k <= 6; ++k) {
      const auto lw = level_weights(h, k);
      for (int v = 0; v < h.size(k); ++v)
        CHECK(lw[v] == vertex_weight(cham, sg == Sign::pos ? k : -k, v));
    }
  }
}

TEST_CASE("random sampled paths agree with the vertex weight exactly") {
  const DiagramSpec stair = generate({"staircase", {}, 6});
  const Half h = half(stair, Sign::pos);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    // random walk up
    Path p;
    int at = static_cast<int>(rng() % h.size(0));
    const int start = at;
    for (int k = 0; k < 6; ++k) {
      std::vector<int> outs;
      for (size_t i = 0; i < h.stages[k].size(); ++i)
        if (h.stages[k][i].src == at) outs.push_back(static_cast<int>(i));
      const int pick = outs[rng() % outs.size()];
      p.edges.push_back(pick);
      at = h.stages[k][pick].dst;
    }
    Rat prod = h.w0[start];
    for (int i = 0; i < 6; ++i) prod *= h.stages[i][p.edges[i]].w;
    CHECK(prod == measure_of_cylinder(h, p));
    CHECK(vertex_weight(stair, 6, at) == prod);
  }
}
