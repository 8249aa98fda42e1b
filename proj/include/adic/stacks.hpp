#pragma once

#include <optional>
#include <vector>

#include "adic/paths.hpp"

namespace adic {

struct Interval {
  Rat lo, hi;
  Rat width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

// One tower at stage k: the column over `vertex`, its levels listed bottom to
// top, every level an equal-width subinterval of the stage-0 domain.
// Interval endpoints are exact; maps treat levels as half-open [lo, hi).
struct Column {
  int vertex = 0;
  Rat width;
  std::vector<Interval> levels;
};

struct StackStage {
  int k = 0;
  std::vector<Column> columns;  // one per level-k vertex, in vertex order
};

// Stage-by-stage compilation: stage 0 lays the level-0 intervals out left to
// right in vertex order; stage k+1 cuts each column by outgoing rank (widths
// proportional to edge weights) and stacks the slabs by incoming rank.
// Requires weights that pass validation on this half.
std::vector<StackStage> build_stacks(const Half& h, int K);

struct IetPiece {
  Interval src;
  Rat offset;        // image = src translated by offset
  bool wrap = false;  // top-to-bottom piece of a certified periodic column
};

struct IntervalExchange {
  Rat domain_lo, domain_hi;
  std::vector<IetPiece> pieces;     // sorted by src.lo
  std::vector<Interval> undefined;  // top levels of non-periodic columns
};

// The depth-K map: every non-top level steps to the level above it; tops of
// certified periodic columns wrap to their bottoms; other tops are undefined.
// Certification evidence uses the full window of `h`, not just K stages.
IntervalExchange iet_at_depth(const Half& h, int K);

// Exact evaluation on half-open pieces; nullopt when x falls in no piece
// (the undefined set); throws when x lies outside the domain interval.
std::optional<Rat> apply_iet(const IntervalExchange& iet, const Rat& x);

// Independent route to a path's interval: walk the outgoing-rank cuts from
// the path's level-0 interval downward, never touching the stacks. The
// PathOps overload reuses its adjacency index for bulk evaluation.
Interval interval_of_path(const Half& h, const Path& p);
Interval interval_of_path(const PathOps& ops, const Path& p);

// Position of the path's interval in its column, bottom = 0: the number of
// paths into the same endpoint that precede it lexicographically.
Int lex_rank(const PathOps& ops, const Path& p);

}  // namespace adic
