#pragma once

#include <string>
#include <vector>

#include "adic/surface.hpp"

namespace adic {

// ---------------------------------------------------------------------------
// Window shifts. Shifting by k re-roots the diagram at level k: level i of
// the result is level i+k of the input, the first k upward stages rotate to
// the downward side (stored edges unchanged, downward weights derived from
// the height ratios), and the level-0 weight vectors are rescaled so the
// upward seed sums to 1 again. The rescale factor is exp(t_k); because the
// weights are rational we store the factor itself, never the log.
// ---------------------------------------------------------------------------
struct RenormState {
  DiagramSpec spec;        // the shifted diagram
  int offset = 0;          // how far the window moved
  std::vector<Rat> scales; // scales[j] = exp(t_j) for j = 0..offset
};

// scales[k] = exp(t_k) = 1 / (sum of depth-k cylinder widths), k = 0..K,
// exact; scales[0] = 1. Strictly nondecreasing while weights decay.
std::vector<Rat> renorm_times(const DiagramSpec& spec, int K);

// Shift by k in [0, hi-1]. The result passes diagram and weight validation
// whenever the input does; shifting twice composes exactly:
// shift(shift(D, a).spec, b).spec == shift(D, a+b).spec.
RenormState shift(const DiagramSpec& spec, int k);

// Telescope cut selection: walking up from level 0, keep a level only when
// the total cylinder mass has shrunk to at most `ratio` of the mass at the
// previous kept level. The top level is always kept; downward levels are
// kept as they are. Returns the full cut sequence for telescope().
std::vector<int> auto_telescope_cuts(const DiagramSpec& spec,
                                     const Rat& ratio = Rat(1, 2));

// ---------------------------------------------------------------------------
// Functoriality of the shift against the surface construction: building the
// surface of the shifted diagram must equal deforming the original surface
// by exp(t_k) and re-reading it through the stage-k towers. The check
// compares rectangle dimensions exactly and then both gluing maps pointwise
// on random rational samples, routing each expected value through the
// original surface's own maps.
// ---------------------------------------------------------------------------
struct FunctorialityReport {
  int offset = 0;
  unsigned seed = 0;
  bool rect_match = false;
  int checked_plus = 0, agreed_plus = 0;
  int checked_minus = 0, agreed_minus = 0;
  int resampled = 0;  // draws discarded for landing where a map is undefined
  bool ok = false;
  std::string str() const;
};

FunctorialityReport check_functoriality(const DiagramSpec& spec, int k,
                                        int samples, unsigned seed);

}  // namespace adic
