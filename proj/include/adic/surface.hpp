#pragma once

#include <string>
#include <vector>

#include "adic/stacks.hpp"

namespace adic {

// ---------------------------------------------------------------------------
// Flat-surface model over a two-sided diagram: one rectangle per level-0
// vertex, R_i = [X_{i-1}, X_i) x [Y_{i-1}, Y_i) with X the running sums of
// w0_plus and Y those of w0_minus, laid out along the diagonal. The top edge
// at horizontal coordinate x is glued to the bottom edge at t_plus(x); the
// right edge at vertical coordinate y is glued to the left edge at
// t_minus(y). Both gluing maps are the depth-limited interval exchanges of
// the two halves, so the model is exact wherever the weights are rational.
// ---------------------------------------------------------------------------
struct FlatSurfaceModel {
  DiagramSpec spec;         // source diagram (kept for on-demand refinement)
  int depth_plus = 0;       // stages compiled into t_plus
  int depth_minus = 0;      // stages compiled into t_minus
  std::vector<Rat> widths;  // per rectangle, level-0 vertex order
  std::vector<Rat> heights;
  std::vector<Rat> x_edge;  // cumulative widths, size c0 + 1, starts at 0
  std::vector<Rat> y_edge;  // cumulative heights
  IntervalExchange t_plus;
  IntervalExchange t_minus;
  Rat stretch = 1;  // horizontal Teichmuller factor applied so far

  int rect_count() const { return static_cast<int>(widths.size()); }
  int rect_of_x(const Rat& x) const;  // rectangle whose horizontal span holds x
  int rect_of_y(const Rat& y) const;
};

// Compiles both halves to (at most) K stages each; sides shallower than K
// use their full windows. Requires a two-sided spec with valid weights.
FlatSurfaceModel build_surface(const DiagramSpec& spec, int K);

// Exact total area, sum of width x height over the rectangles.
Rat area(const FlatSurfaceModel& s);

// The diagonal deformation with horizontal factor `stretch` (> 0) and
// vertical factor 1/stretch; exact, area-preserving. Deformation time is
// log(stretch).
FlatSurfaceModel teichmuller(const FlatSurfaceModel& s, const Rat& stretch);

// A point in global coordinates. The rectangle is implied: x picks it
// (horizontal spans partition the x-axis) and y must lie in its vertical
// span. Bottom/left edges belong to the rectangle, top/right to the gluing.
struct SurfacePoint {
  Rat x, y;
};

enum class FlowStatus {
  ok,
  singular_hit,    // trajectory crossed an edge exactly at a gluing endpoint
  depth_exceeded,  // crossing fell in a strip the compiled depth cannot map
};

enum class FlowDirection { vertical, horizontal };

// One gluing crossing: at time t the trajectory re-entered rectangle `rect`
// at (x, y).
struct FlowEvent {
  Rat t;
  int rect = 0;
  Rat x, y;
};

struct FlowOptions {
  bool auto_refine = true;  // deepen the gluing map when a crossing needs it
  int max_depth = 64;       // refinement cap (window permitting)
  bool track = true;        // record crossing events
};

struct FlowResult {
  FlowStatus status = FlowStatus::ok;
  SurfacePoint end;     // final point, or the crossing where flow stopped
  Rat t_reached;        // equals t on ok
  int depth_used = 0;   // gluing depth after any refinement
  int suggested_depth = 0;  // next depth to try on depth_exceeded
  std::vector<FlowEvent> events;
};

// Straight-line flow for time t >= 0: vertical flow moves up and applies
// t_plus at top crossings, horizontal moves right and applies t_minus at
// right crossings. Exact; lands exactly on the glued image when t runs out
// on an edge.
FlowResult flow(const FlatSurfaceModel& s, const SurfacePoint& p, const Rat& t,
                FlowDirection dir, const FlowOptions& opt = {});

// Same trajectory walked in double precision; a crossing within eps_hit
// (2^-40) of a gluing endpoint counts as singular.
struct FloatFlowResult {
  FlowStatus status = FlowStatus::ok;
  int rect = 0;
  double x = 0, y = 0;
  double t_reached = 0;
  int depth_used = 0;
};
FloatFlowResult flow_float(const FlatSurfaceModel& s, double x, double y,
                           double t, FlowDirection dir,
                           const FlowOptions& opt = {});

// Axis-aligned box inside one rectangle, global coordinates, half-open on
// both axes.
struct BirkhoffRegion {
  Rat x_lo, x_hi;
  Rat y_lo, y_hi;
};

struct BirkhoffStats {
  FlowStatus status = FlowStatus::ok;
  Rat t_reached;
  Rat time_inside;               // exact occupation time of the region union
  double mean = 0;               // time_inside / t_reached
  std::vector<FlowEvent> samples;  // crossing log, capped
};

// Occupation statistics of the region union along the flow from p for time
// T. A trajectory that signals mid-way reports the statistics up to the
// stopping time together with the signal.
BirkhoffStats birkhoff_average(const FlatSurfaceModel& s, const SurfacePoint& p,
                               const Rat& T,
                               const std::vector<BirkhoffRegion>& region,
                               FlowDirection dir = FlowDirection::vertical,
                               const FlowOptions& opt = {},
                               int sample_cap = 1000);

struct SvgOptions {
  double px_per_unit = 420.0;  // drawing scale
  bool labels = true;          // pair up glued edge segments with labels
  int max_labels = 12;         // per gluing side
};

// Deterministic standalone SVG: the diagonal rectangle layout with matching
// labels (A1, A2, ... for top/bottom pairs, B1, B2, ... for right/left
// pairs) on the widest glued segments. Byte-stable for a given model.
std::string render_svg(const FlatSurfaceModel& s, const SvgOptions& opt = {});

}  // namespace adic
