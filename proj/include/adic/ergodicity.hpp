#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adic/diagram.hpp"

namespace adic {

// ---------------------------------------------------------------------------
// Tunneling distances. Delta-plus(k) is the least m such that the product of
// the m upward incidence matrices above level k, M = F_{k+m}...F_{k+1},
// makes M^T M strictly positive: every pair of level-k vertices shares an
// ancestor at level k+m. Delta-minus(k) descends instead (skipping the
// nonexistent set 0) and tests M M^T. A finite search cannot prove the
// distance infinite, so exceeding the bound is reported as such; only a
// window whose level-k vertices live in disjoint connectivity blocks is
// reported as disconnected.
// ---------------------------------------------------------------------------
enum class TunnelStatus { found, exceeds_bound, disconnected };

struct TunnelResult {
  TunnelStatus status = TunnelStatus::exceeds_bound;
  int m = 0;  // the distance, when found
};

struct TunnelPair {
  TunnelResult plus, minus;
};

TunnelPair tunneling(const DiagramSpec& spec, int k, int search_bound = 16);

// One row of the ergodicity criterion at level k. All entries are exact;
// `scale` is exp(t_k). delta/summand are absent when neither tunneling
// distance resolves within the bound.
struct CriterionRow {
  int k = 0;
  Rat scale;
  TunnelResult dplus, dminus;
  std::optional<Rat> delta;  // max over the resolved tunneling routes
  Rat sigma;                 // 1 + sum of rescaled heights
  Rat eps;                   // min(eta/(2 sigma), min heights/2, min widths/2)
  int vertices = 0;          // |V_k|
  std::optional<Rat> summand;  // (sigma/eps^2 + (|V_k|-1)/delta)^-2
  Rat partial;                 // running sum of defined summands
};

enum class Verdict {
  ergodic_by_stationarity,
  ergodic_by_eventual_stationarity,
  ergodic_by_closed_form,
  inconclusive,
  obstructed,
};

std::string verdict_name(Verdict v);

// Rows k = 0..K; requires K <= hi-1 (every row needs a stage above it) and a
// two-sided spec. eta > 0 bounds the diameter term: 2 eps_k sigma_k <= eta.
std::vector<CriterionRow> criterion_terms(const DiagramSpec& spec,
                                          const Rat& eta, int K,
                                          int search_bound = 16);

// The verdict weighs, in order: a disconnection obstruction, exact
// stationarity of the upward stages, eventual stationarity, and a declared
// growth class for the two closed-form families ("symmetric: n_k bounded",
// "explosive: n_k bounded, p_k bounded"). Divergence of the criterion series
// is never inferred from finitely many rows: everything else is
// inconclusive, with the partial sum reported in the rationale.
std::pair<Verdict, std::string> verdict(const DiagramSpec& spec,
                                        const Rat& eta, int K,
                                        const std::string& family_hint = "",
                                        int search_bound = 16);

struct ErgodicityReport {
  Rat eta;
  int search_bound = 16;
  std::vector<CriterionRow> rows;
  Verdict verdict = Verdict::inconclusive;
  std::string rationale;
};

ErgodicityReport ergodicity_report(const DiagramSpec& spec, const Rat& eta,
                                   int K, const std::string& family_hint = "",
                                   int search_bound = 16);

}  // namespace adic
