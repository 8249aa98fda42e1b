#pragma once

#include <string>
#include <vector>

#include "adic/bdg_io.hpp"
#include "adic/diagram.hpp"

namespace adic {

// Closed-form integer sequence a*k + b, parsed from "3", "k", "k+1", "2k+3".
struct SeqRule {
  long long a = 0, b = 0;
  long long operator()(long long k) const { return a * k + b; }
};
SeqRule parse_rule(const std::string& text);

// One-sided positive halves: lo == 0, `depth` stages, weights filled in.
DiagramSpec odometer_half(int base, int depth);
DiagramSpec chacon_half(int depth);
DiagramSpec pascal_half(const Rat& p, int depth);
// Staircase: stage n cuts the main column into n+1 parts and inserts j
// spacers after the j-th part; the initial main column holds width 1/5 so
// the spacer reservoir stays positive at every finite depth.
DiagramSpec staircase_half(int depth);
DiagramSpec symmetric_half(int p, SeqRule n_rule, int depth);
DiagramSpec explosive_half(SeqRule p_rule, SeqRule n_rule, int depth);
// Skyscraper over the dyadic odometer: stage k cuts in two and adds 2^k
// spacers. Its spacer reservoir exhausts at level 2, so the emitted weights
// deliberately fail validation there; the usable dynamics live on the base.
DiagramSpec hajian_kakutani_half(int depth);
DiagramSpec hajian_kakutani_base(int depth);  // the dyadic-odometer factor
// Independent cutting and stacking from q initial columns of the given
// heights (equal widths 1/sum(heights)): each stage cuts every column into
// 2q parts and stacks cut q+i of column j on cut j of column i.
DiagramSpec independent_cas_half(const std::vector<int>& heights, int depth);

// Negative-half bundling.
DiagramSpec identity_half(int c0, int depth = 1);  // stationary one-edge-per-vertex half, unit weights
DiagramSpec with_identity_negative(const DiagramSpec& pos);
DiagramSpec with_mirror_negative(const DiagramSpec& pos);

// Measure-disjoint union of two equal-depth positive halves; the first part
// carries mass alpha, the second 1 - alpha.
DiagramSpec disjoint_union(const DiagramSpec& a, const DiagramSpec& b, const Rat& alpha = Rat(1, 2));

// Topological entropy of the independent construction: (sum of widths) * log q.
double shields_entropy(const std::vector<int>& heights, const std::vector<Rat>& widths);

// Family dispatch for `family` directives and the CLI. All families come
// back two-sided: the negative half defaults to the identity half, and
// "chamanara <base>" welds odometer(base) against a mirror copy of itself.
DiagramSpec generate(const FamilySpec& f);
DiagramSpec resolve(const BdgFile& file);

}  // namespace adic
