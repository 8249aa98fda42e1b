#include "doctest.h"

#include "adic/error.hpp"
#include "adic/ergodicity.hpp"
#include "adic/families.hpp"
#include "oracles.hpp"

using namespace adic;

TEST_CASE("tunneling distances: chacon reconnects in one stage upward") {
  const DiagramSpec spec = generate({"chacon", {}, 12});
  for (int k = 0; k <= 10; ++k) {
    const auto tp = tunneling(spec, k);
    CHECK(tp.plus.status == TunnelStatus::found);
    CHECK(tp.plus.m == 1);
    if (k == 0) {
      // downward from level 0 only the identity stages remain: the two
      // level-0 vertices provably never reconnect
      CHECK(tp.minus.status == TunnelStatus::disconnected);
    } else {
      CHECK(tp.minus.status == TunnelStatus::found);
      CHECK(tp.minus.m == 1);
    }
  }
}

TEST_CASE("tunneling matches the reachable-set oracle on every bundled family") {
  const FamilySpec fams[] = {{"odometer", {"2"}, 6}, {"chacon", {}, 6},
                             {"pascal", {"1/3"}, 6}, {"staircase", {}, 6},
                             {"symmetric", {"2", "3"}, 6},
                             {"explosive", {"2", "2"}, 5}};
  const int bound = 8;
  for (const auto& f : fams) {
    const DiagramSpec spec = generate(f);
    for (int k = 0; k <= spec.hi - 1; ++k) {
      const auto tp = tunneling(spec, k, bound);
      const int bp = oracle::brute_delta_plus(spec, k, bound);
      const int bm = oracle::brute_delta_minus(spec, k, bound);
      if (tp.plus.status == TunnelStatus::found)
        CHECK(tp.plus.m == bp);
      else
        CHECK(bp == -1);
      if (tp.minus.status == TunnelStatus::found)
        CHECK(tp.minus.m == bm);
      else
        CHECK(bm == -1);
    }
  }
}

TEST_CASE("growth-2 tower rows are exact, including the closed-form tail") {
  const DiagramSpec spec = generate({"symmetric", {"2", "3"}, 8});
  const auto rows = criterion_terms(spec, Rat(1, 10), 5);
  REQUIRE(rows.size() == 6);

  // single seed vertex: the tunneling term drops out of row 0
  CHECK(rows[0].scale == Rat(1));
  CHECK(rows[0].vertices == 1);
  CHECK(rows[0].delta == Rat(1, 2));
  CHECK(rows[0].sigma == Rat(2));
  CHECK(rows[0].eps == Rat(1, 40));
  CHECK(rows[0].summand == Rat(1, 10240000));
  CHECK(rows[0].partial == Rat(1, 10240000));

  CHECK(rows[1].scale == Rat(1));
  CHECK(rows[1].vertices == 2);
  CHECK(rows[1].delta == Rat(1, 2));
  CHECK(rows[1].sigma == Rat(3));
  CHECK(rows[1].eps == Rat(1, 60));
  CHECK(rows[1].summand == Rat(1, 116683204));
  CHECK(rows[1].partial == Rat(Int("31730801"), Int("298709002240000")));

  Rat scale(4);
  for (int k = 2; k <= 5; ++k) {
    CHECK(rows[k].scale == scale);
    scale *= 4;
    CHECK(rows[k].delta == Rat(1, 8));
    CHECK(rows[k].sigma == Rat(3));
    CHECK(rows[k].eps == Rat(1, 60));
    CHECK(rows[k].summand == Rat(1, 116812864));
    CHECK(rows[k].dplus.status == TunnelStatus::found);
    CHECK(rows[k].dplus.m == 1);
    CHECK(rows[k].dminus.status == TunnelStatus::found);
    CHECK(rows[k].dminus.m == 1);
    CHECK(rows[k].partial == rows[k - 1].partial + *rows[k].summand);
  }
}

TEST_CASE("three-column rows are exact; the minus route may be obstructed "
          "while the plus route still yields delta") {
  const DiagramSpec spec = generate({"chacon", {}, 6});
  const auto rows = criterion_terms(spec, Rat(1, 10), 2);
  REQUIRE(rows.size() == 3);

  CHECK(rows[0].scale == Rat(1));
  CHECK(rows[0].dplus.m == 1);
  CHECK(rows[0].dminus.status == TunnelStatus::disconnected);
  CHECK(rows[0].delta == Rat(1, 18));  // min level-1 width 1/9 over 2
  CHECK(rows[0].sigma == Rat(3));
  CHECK(rows[0].eps == Rat(1, 60));
  CHECK(rows[0].summand == Rat(1, 117029124));

  CHECK(rows[1].scale == Rat(3));
  CHECK(rows[1].delta == Rat(1, 6));
  CHECK(rows[1].sigma == Rat(8, 3));
  CHECK(rows[1].eps == Rat(3, 160));
  CHECK(rows[1].summand == Rat(Int("729"), Int("42009421444")));

  CHECK(rows[2].scale == Rat(9));
  CHECK(rows[2].delta == Rat(1, 18));
  CHECK(rows[2].sigma == Rat(23, 9));
  CHECK(rows[2].eps == Rat(9, 460));
  CHECK(rows[2].summand == Rat(Int("531441"), Int("23813638726084")));
}

TEST_CASE("eps saturates at the geometric caps once eta is generous") {
  const DiagramSpec spec = generate({"symmetric", {"2", "3"}, 8});
  const auto rows = criterion_terms(spec, Rat(10), 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].eps == Rat(1, 2));  // min width/2 at the single seed vertex
  CHECK(rows[0].summand == Rat(1, 64));
  CHECK(rows[1].eps == Rat(1, 4));
  CHECK(rows[1].summand == Rat(1, 2500));
  CHECK(rows[1].partial == Rat(641, 40000));

  // shrinking eta never raises a row's eps
  const auto tight = criterion_terms(spec, Rat(1, 100), 1);
  for (size_t i = 0; i < rows.size(); ++i) CHECK(tight[i].eps <= rows[i].eps);
}

TEST_CASE("criterion input validation") {
  const DiagramSpec spec = generate({"chacon", {}, 5});
  CHECK_THROWS_AS((void)criterion_terms(spec, Rat(1, 10), 5), window_error);
  CHECK_THROWS_AS((void)criterion_terms(spec, Rat(0), 2), adic::error);
  CHECK_THROWS_AS((void)criterion_terms(chacon_half(5), Rat(1, 10), 2),
                  window_error);
  CHECK_THROWS_AS((void)tunneling(spec, 7), window_error);
}

TEST_CASE("verdicts: stationarity outranks everything except obstruction") {
  const Rat eta(1, 10);
  auto v = [&](const DiagramSpec& s, int K, const std::string& hint = "") {
    return verdict(s, eta, K, hint).first;
  };
  CHECK(v(generate({"chamanara", {"2"}, 8}), 5) == Verdict::ergodic_by_stationarity);
  CHECK(v(generate({"odometer", {"2"}, 8}), 5) == Verdict::ergodic_by_stationarity);
  CHECK(v(generate({"chacon", {}, 8}), 5) == Verdict::ergodic_by_stationarity);

  // constant-growth towers repeat only from stage 2 on
  CHECK(v(generate({"symmetric", {"2", "3"}, 8}), 5) ==
        Verdict::ergodic_by_eventual_stationarity);

  // rising n_k: no repetition, and no hint means no closed form
  const DiagramSpec grow = generate({"symmetric", {"2", "k+1"}, 8});
  CHECK(v(grow, 5) == Verdict::inconclusive);
  // a bare family name without the boundedness clause stays inconclusive
  CHECK(v(grow, 5, "symmetric") == Verdict::inconclusive);
  CHECK(v(grow, 5, "symmetric, n_k bounded") == Verdict::ergodic_by_closed_form);

  CHECK(v(generate({"explosive", {"2", "2"}, 6}), 4,
          "explosive: n_k bounded, p_k bounded") ==
        Verdict::ergodic_by_closed_form);

  const auto [vd, why] = verdict(grow, eta, 5);
  CHECK(vd == Verdict::inconclusive);
  CHECK(why.find("partial sum") != std::string::npos);
}

TEST_CASE("a disconnected window is an obstruction, not a divergence claim") {
  const DiagramSpec uni = with_identity_negative(
      disjoint_union(odometer_half(2, 5), odometer_half(3, 5), Rat(1, 2)));
  REQUIRE(validate_diagram(uni).ok);

  const auto tp = tunneling(uni, 1);
  CHECK(tp.plus.status == TunnelStatus::disconnected);

  const auto rows = criterion_terms(uni, Rat(1, 10), 3);
  CHECK_FALSE(rows[1].delta.has_value());
  CHECK_FALSE(rows[1].summand.has_value());
  CHECK(rows[1].partial == rows[0].partial);  // undefined rows add nothing

  CHECK(verdict(uni, Rat(1, 10), 3).first == Verdict::obstructed);
}

TEST_CASE("the report bundles rows, verdict and rationale consistently") {
  const DiagramSpec spec = generate({"symmetric", {"2", "3"}, 7});
  const auto rep = ergodicity_report(spec, Rat(1, 10), 4, "symmetric, n_k bounded");
  CHECK(rep.eta == Rat(1, 10));
  CHECK(rep.search_bound == 16);
  REQUIRE(rep.rows.size() == 5);
  const auto rows = criterion_terms(spec, Rat(1, 10), 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rep.rows[i].summand == rows[i].summand);
    CHECK(rep.rows[i].partial == rows[i].partial);
  }
  CHECK(rep.verdict == Verdict::ergodic_by_closed_form);
  CHECK_FALSE(rep.rationale.empty());
  CHECK(verdict_name(rep.verdict) == "ergodic_by_closed_form");
}
