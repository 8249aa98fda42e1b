#include "doctest.h"

#include <random>

#include "adic/error.hpp"
#include "adic/families.hpp"
#include "adic/renorm.hpp"
#include "adic/stacks.hpp"
#include "adic/weights.hpp"
#include "oracles.hpp"

using namespace adic;

TEST_CASE("stage 0 lays the seed intervals out left to right") {
  const DiagramSpec spec = generate({"chacon", {}, 4});
  const Half h = half(spec, Sign::pos);
  const auto stages = build_stacks(h, 2);
  REQUIRE(stages.size() == 3);
  const auto& s0 = stages[0].columns;
  REQUIRE(s0.size() == 2);
  CHECK(s0[0].levels.size() == 1);
  CHECK(s0[0].levels[0] == Interval{Rat(0), Rat(2, 3)});
  CHECK(s0[1].levels[0] == Interval{Rat(2, 3), Rat(1)});
}

TEST_CASE("dyadic odometer stage K is one column of 2^K quarter levels") {
  const Half h = half(generate({"odometer", {"2"}, 6}), Sign::pos);
  const auto stages = build_stacks(h, 2);
  const auto& cols = stages[2].columns;
  REQUIRE(cols.size() == 1);
  CHECK(cols[0].width == Rat(1, 4));
  REQUIRE(cols[0].levels.size() == 4);
  for (const auto& lvl : cols[0].levels) CHECK(lvl.width() == Rat(1, 4));
}

TEST_CASE("chacon stage 1: a 4-level main tower plus the spacer") {
  const Half h = half(generate({"chacon", {}, 4}), Sign::pos);
  const auto& cols = build_stacks(h, 1)[1].columns;
  REQUIRE(cols.size() == 2);
  CHECK(cols[0].width == Rat(2, 9));
  CHECK(cols[0].levels.size() == 4);
  CHECK(cols[1].width == Rat(1, 9));
  CHECK(cols[1].levels.size() == 1);
}

TEST_CASE("stacks match the direct cutting-and-stacking oracle") {
  const FamilySpec fams[] = {{"odometer", {"3"}, 5},
                             {"chacon", {}, 5},
                             {"pascal", {"1/3"}, 5},
                             {"staircase", {}, 5},
                             {"symmetric", {"2", "3"}, 5}};
  for (const auto& f : fams) {
    const Half h = half(generate(f), Sign::pos);
    const auto stages = build_stacks(h, 4);
    for (int k = 0; k <= 4; ++k) {
      const auto want = oracle::naive_stacks(h, k);
      REQUIRE(stages[k].columns.size() == want.size());
      for (size_t v = 0; v < want.size(); ++v) {
        const auto& col = stages[k].columns[v];
        REQUIRE(col.levels.size() == want[v].levels.size());
        for (size_t i = 0; i < want[v].levels.size(); ++i) {
          CHECK(col.levels[i].lo == want[v].levels[i].first);
          CHECK(col.levels[i].hi == want[v].levels[i].second);
        }
      }
    }
  }
}

TEST_CASE("a path's interval equals its lex-rank level in the endpoint column") {
  const Half h = half(generate({"staircase", {}, 5}), Sign::pos);
  PathOps ops(h);
  const auto stages = build_stacks(h, 4);
  for (const auto& p : oracle::all_paths(h, 4)) {
    const Interval got = interval_of_path(ops, p);
    const auto want = oracle::naive_interval(h, p);
    CHECK(got.lo == want.first);
    CHECK(got.hi == want.second);
    const Int rank = lex_rank(ops, p);
    const auto& col = stages[4].columns[endpoint(h, p)];
    CHECK(col.levels[static_cast<size_t>(rank)] == got);
  }
}

TEST_CASE("binary-carry map: every depth piece translates per the closed form") {
  const Half h = half(generate({"odometer", {"2"}, 8}), Sign::pos);
  for (int K : {1, 2, 5, 8}) {
    const auto iet = iet_at_depth(h, K);
    int steps = 0, wraps = 0;
    for (const auto& pc : iet.pieces) (pc.wrap ? wraps : steps)++;
    CHECK(steps == (1 << K) - 1);
    CHECK(wraps == 0);
    REQUIRE(iet.undefined.size() == 1);
    CHECK(iet.undefined[0].width() == Rat(Int(1), Int(1) << K));
    for (const auto& pc : iet.pieces) {
      CHECK(pc.src.width() == Rat(Int(1), Int(1) << K));
      // midpoint dodges the shared endpoints of adjacent dyadic strips
      const Rat mid = (pc.src.lo + pc.src.hi) / 2;
      CHECK(mid + pc.offset == oracle::vdc_image(mid));
    }
  }
}

TEST_CASE("binary-carry map at pinned points") {
  const Half h = half(generate({"odometer", {"2"}, 8}), Sign::pos);
  CHECK(apply_iet(iet_at_depth(h, 1), Rat(0)) == Rat(1, 2));
  CHECK(apply_iet(iet_at_depth(h, 1), Rat(1, 2)) == std::nullopt);
  // x = 3/4 sits in the depth-2 top strip, so it needs three stages to map
  CHECK(apply_iet(iet_at_depth(h, 2), Rat(3, 4)) == std::nullopt);
  CHECK(apply_iet(iet_at_depth(h, 3), Rat(3, 4)) == Rat(1, 8));
  CHECK(apply_iet(iet_at_depth(h, 8), Rat(3, 4)) == Rat(1, 8));
  CHECK_THROWS_AS((void)apply_iet(iet_at_depth(h, 2), Rat(2)), adic::error);
}

TEST_CASE("deeper maps extend shallower step pieces") {
  // Step pieces persist: a deeper map agrees wherever the shallow map made a
  // genuine move. Wrap pieces instead shrink as depth grows (the periodic
  // class narrows), so points falling off a wrap are exempt.
  const FamilySpec fams[] = {
      {"odometer", {"2"}, 6}, {"chacon", {}, 6}, {"staircase", {}, 6}};
  std::mt19937 rng(7);
  auto in_step_piece = [](const IntervalExchange& iet, const Rat& x) {
    for (const auto& pc : iet.pieces)
      if (pc.src.lo <= x && x < pc.src.hi) return !pc.wrap;
    return false;
  };
  for (const auto& f : fams) {
    const Half h = half(generate(f), Sign::pos);
    const auto shallow = iet_at_depth(h, 3);
    const auto deep = iet_at_depth(h, 5);
    int hits = 0;
    for (int i = 0; i < 200; ++i) {
      const Rat x(static_cast<int>(rng() % 997), 997);
      if (!in_step_piece(shallow, x)) continue;
      const auto a = apply_iet(shallow, x);
      REQUIRE(a.has_value());
      const auto b = apply_iet(deep, x);
      REQUIRE(b.has_value());
      CHECK(*a == *b);
      ++hits;
    }
    CHECK(hits > 100);  // the sample genuinely exercised the map
  }
}

TEST_CASE("chacon depth 2: twelve step pieces and the spacer wrap") {
  const Half h = half(generate({"chacon", {}, 6}), Sign::pos);
  const auto iet = iet_at_depth(h, 2);
  int steps = 0, wraps = 0;
  for (const auto& pc : iet.pieces) (pc.wrap ? wraps : steps)++;
  CHECK(steps == 12);
  CHECK(wraps == 1);
  const auto wrap =
      std::find_if(iet.pieces.begin(), iet.pieces.end(),
                   [](const IetPiece& p) { return p.wrap; });
  REQUIRE(wrap != iet.pieces.end());
  CHECK(wrap->offset == Rat(0));  // one-level spacer column: wrap is identity
  CHECK(wrap->src.width() == Rat(1, 27));  // the single chain level at stage 2
  CHECK(iet.undefined.size() == 1);
}

TEST_CASE("pieces partition the domain together with the undefined set") {
  const FamilySpec fams[] = {{"chacon", {}, 5},
                             {"pascal", {"1/2"}, 5},
                             {"symmetric", {"2", "2"}, 5}};
  for (const auto& f : fams) {
    const Half h = half(generate(f), Sign::pos);
    for (int K = 1; K <= 4; ++K) {
      const auto iet = iet_at_depth(h, K);
      // sources tile [0,1) together with the undefined remainder
      Rat total(0);
      for (const auto& pc : iet.pieces) total += pc.src.width();
      Rat undef(0);
      for (const auto& u : iet.undefined) undef += u.width();
      CHECK(total + undef == Rat(1));
      // map is injective: sorted image intervals do not overlap
      std::vector<Interval> images;
      for (const auto& pc : iet.pieces)
        images.push_back({pc.src.lo + pc.offset, pc.src.hi + pc.offset});
      std::sort(images.begin(), images.end(),
                [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
      for (size_t i = 1; i < images.size(); ++i)
        CHECK(images[i - 1].hi <= images[i].lo);
    }
  }
}

TEST_CASE("top-level mass at stage K equals the inverse renormalization scale") {
  const DiagramSpec spec = generate({"symmetric", {"2", "3"}, 6});
  const Half h = half(spec, Sign::pos);
  const auto scales = renorm_times(spec, 5);
  const auto stages = build_stacks(h, 5);
  for (int k = 0; k <= 5; ++k) {
    Rat tops(0);
    for (const auto& col : stages[k].columns) tops += col.width;
    CHECK(tops == Rat(1) / scales[k]);
  }
}
