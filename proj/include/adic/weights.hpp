#pragma once

#include "adic/diagram.hpp"

namespace adic {

// Width of every depth-k cylinder ending at each vertex of level k, i.e. the
// vertex weights extended downward: W^0 = w0, W^k(v) = W^{k-1}(src) * w(e)
// along the lowest-ranked incoming edge. Well-defined for all incoming edges
// exactly when the path-independence condition holds (check below).
std::vector<Rat> level_weights(const Half& h, int k);
std::vector<std::vector<Rat>> level_weight_table(const Half& h);

// Single vertex weight on either side of a two-sided spec; the sign of
// `level` selects the half.
Rat vertex_weight(const DiagramSpec& spec, int level, int v);

// Exact width of the cylinder named by a finite path from level 0:
// w0(start) * product of edge weights.
Rat measure_of_cylinder(const Half& h, const Path& p);

// Weight-side validation, per half, to depth min(K, side depth):
//   edge-sum            outgoing weights sum to 1 at every vertex
//   path-independence   all paths into a vertex give it one width
//   positivity          strictly positive seed and edge weights
//   level0-sum          forward seed weights form a probability vector
//   area                two-sided pairing sum_v w0+(v) w0-(v) == 1
//   decay               max cylinder width nonincreasing with depth
// Issue codes above appear in the returned report verbatim.
Report check_weight_conditions(const DiagramSpec& spec, int K);

}  // namespace adic
