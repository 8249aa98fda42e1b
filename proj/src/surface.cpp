#include "adic/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "adic/error.hpp"

namespace adic {

namespace {

// Index of the half-open cell [edges[i], edges[i+1]) containing v.
int find_cell(const std::vector<Rat>& edges, const Rat& v, const char* axis) {
  if (edges.size() < 2 || v < edges.front() || v >= edges.back())
    throw error(std::string(axis) + " coordinate lies outside the surface");
  auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return static_cast<int>(it - edges.begin()) - 1;
}

IntervalExchange scale_iet(IntervalExchange iet, const Rat& f) {
  iet.domain_lo *= f;
  iet.domain_hi *= f;
  for (auto& p : iet.pieces) {
    p.src.lo *= f;
    p.src.hi *= f;
    p.offset *= f;
  }
  for (auto& g : iet.undefined) {
    g.lo *= f;
    g.hi *= f;
  }
  return iet;
}

std::vector<Rat> cumulative(const std::vector<Rat>& parts) {
  std::vector<Rat> edges(1, Rat(0));
  edges.reserve(parts.size() + 1);
  for (const auto& p : parts) edges.push_back(edges.back() + p);
  return edges;
}

// Every coordinate at which a crossing meets the boundary of a gluing piece
// or a rectangle corner: hitting one exactly is a singular hit.
std::vector<Rat> breakpoints(const IntervalExchange& glue,
                             const std::vector<Rat>& cross_edges) {
  std::vector<Rat> bp = cross_edges;
  for (const auto& p : glue.pieces) {
    bp.push_back(p.src.lo);
    bp.push_back(p.src.hi);
  }
  for (const auto& g : glue.undefined) {
    bp.push_back(g.lo);
    bp.push_back(g.hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

// Shared per-direction view of the model: the crossing coordinate picks the
// rectangle, the running coordinate moves within it.
struct FlowAxes {
  const std::vector<Rat>* cross_edges;
  const std::vector<Rat>* run_edges;
  IntervalExchange glue;
  int depth;
  int max_avail;
  Sign sign;
  Rat glue_scale;
};

FlowAxes make_axes(const FlatSurfaceModel& s, FlowDirection dir) {
  FlowAxes a;
  const bool vert = dir == FlowDirection::vertical;
  a.cross_edges = vert ? &s.x_edge : &s.y_edge;
  a.run_edges = vert ? &s.y_edge : &s.x_edge;
  a.glue = vert ? s.t_plus : s.t_minus;
  a.depth = vert ? s.depth_plus : s.depth_minus;
  a.max_avail = vert ? s.spec.hi : -s.spec.lo;
  a.sign = vert ? Sign::pos : Sign::neg;
  a.glue_scale = vert ? s.stretch : 1 / s.stretch;
  return a;
}

void refine_axes(FlowAxes& a, const DiagramSpec& spec) {
  a.depth += 1;
  a.glue = scale_iet(iet_at_depth(half(spec, a.sign), a.depth), a.glue_scale);
}

}  // namespace

int FlatSurfaceModel::rect_of_x(const Rat& x) const {
  return find_cell(x_edge, x, "x");
}

int FlatSurfaceModel::rect_of_y(const Rat& y) const {
  return find_cell(y_edge, y, "y");
}

FlatSurfaceModel build_surface(const DiagramSpec& spec, int K) {
  if (K < 0) throw window_error("surface depth must be nonnegative");
  const int c0 = spec.size(0);
  if (static_cast<int>(spec.w0_plus.size()) != c0 ||
      static_cast<int>(spec.w0_minus.size()) != c0)
    throw error("surface needs both level-0 weight vectors, one entry per vertex");
  FlatSurfaceModel s;
  s.spec = spec;
  s.widths = spec.w0_plus;
  s.heights = spec.w0_minus;
  s.x_edge = cumulative(s.widths);
  s.y_edge = cumulative(s.heights);
  const Half pos = half(spec, Sign::pos);
  const Half neg = half(spec, Sign::neg);
  s.depth_plus = std::min(K, pos.depth);
  s.depth_minus = std::min(K, neg.depth);
  s.t_plus = iet_at_depth(pos, s.depth_plus);
  s.t_minus = iet_at_depth(neg, s.depth_minus);
  return s;
}

Rat area(const FlatSurfaceModel& s) {
  Rat a = 0;
  for (size_t i = 0; i < s.widths.size(); ++i) a += s.widths[i] * s.heights[i];
  return a;
}

FlatSurfaceModel teichmuller(const FlatSurfaceModel& s, const Rat& stretch) {
  if (stretch <= 0) throw error("teichmuller stretch must be positive");
  FlatSurfaceModel out = s;
  const Rat inv = 1 / stretch;
  for (auto& w : out.widths) w *= stretch;
  for (auto& x : out.x_edge) x *= stretch;
  for (auto& h : out.heights) h *= inv;
  for (auto& y : out.y_edge) y *= inv;
  out.t_plus = scale_iet(std::move(out.t_plus), stretch);
  out.t_minus = scale_iet(std::move(out.t_minus), inv);
  out.stretch = s.stretch * stretch;
  return out;
}

FlowResult flow(const FlatSurfaceModel& s, const SurfacePoint& p, const Rat& t,
                FlowDirection dir, const FlowOptions& opt) {
  if (t < 0) throw error("flow time must be nonnegative");
  const bool vert = dir == FlowDirection::vertical;
  FlowAxes ax = make_axes(s, dir);
  std::vector<Rat> bp = breakpoints(ax.glue, *ax.cross_edges);

  Rat cross = vert ? p.x : p.y;
  Rat run = vert ? p.y : p.x;
  int cell = find_cell(*ax.cross_edges, cross, vert ? "x" : "y");
  if (run < (*ax.run_edges)[cell] || run > (*ax.run_edges)[cell + 1])
    throw error("point is not on the surface (coordinates name no rectangle)");

  FlowResult res;
  res.depth_used = ax.depth;
  Rat remaining = t;
  const int depth_cap = std::min(opt.max_depth, ax.max_avail);

  for (;;) {
    const Rat dist = (*ax.run_edges)[cell + 1] - run;
    if (remaining < dist) {
      run += remaining;
      remaining = 0;
      break;
    }
    if (remaining == 0) break;  // exactly on the far edge with no time left
    remaining -= dist;

    // Crossing the glued edge at coordinate `cross`.
    bool mapped = false;
    for (;;) {
      if (std::binary_search(bp.begin(), bp.end(), cross)) {
        res.status = FlowStatus::singular_hit;
        break;
      }
      if (auto img = apply_iet(ax.glue, cross)) {
        cross = *img;
        mapped = true;
        break;
      }
      if (!opt.auto_refine || ax.depth >= depth_cap) {
        res.status = FlowStatus::depth_exceeded;
        break;
      }
      refine_axes(ax, s.spec);
      bp = breakpoints(ax.glue, *ax.cross_edges);
    }
    res.depth_used = ax.depth;
    if (!mapped) {
      run = (*ax.run_edges)[cell + 1];  // stop on the crossing edge
      break;
    }
    cell = find_cell(*ax.cross_edges, cross, vert ? "x" : "y");
    run = (*ax.run_edges)[cell];
    if (opt.track) {
      FlowEvent ev;
      ev.t = t - remaining;
      ev.rect = cell;
      ev.x = vert ? cross : run;
      ev.y = vert ? run : cross;
      res.events.push_back(std::move(ev));
    }
  }

  res.t_reached = t - remaining;
  res.end = vert ? SurfacePoint{cross, run} : SurfacePoint{run, cross};
  res.suggested_depth =
      res.status == FlowStatus::depth_exceeded ? ax.depth + 1 : ax.depth;
  return res;
}

FloatFlowResult flow_float(const FlatSurfaceModel& s, double x, double y,
                           double t, FlowDirection dir,
                           const FlowOptions& opt) {
  if (t < 0) throw error("flow time must be nonnegative");
  const bool vert = dir == FlowDirection::vertical;
  const double eps = std::ldexp(1.0, -40);
  FlowAxes ax = make_axes(s, dir);

  std::vector<double> cross_edges, run_edges, bp;
  std::vector<double> plo, phi, poff;
  auto reload = [&] {
    cross_edges.clear();
    run_edges.clear();
    for (const auto& v : *ax.cross_edges) cross_edges.push_back(rat_double(v));
    for (const auto& v : *ax.run_edges) run_edges.push_back(rat_double(v));
    bp.clear();
    for (const auto& v : breakpoints(ax.glue, *ax.cross_edges))
      bp.push_back(rat_double(v));
    plo.clear();
    phi.clear();
    poff.clear();
    for (const auto& pc : ax.glue.pieces) {
      plo.push_back(rat_double(pc.src.lo));
      phi.push_back(rat_double(pc.src.hi));
      poff.push_back(rat_double(pc.offset));
    }
  };
  reload();

  auto near_breakpoint = [&](double v) {
    auto it = std::lower_bound(bp.begin(), bp.end(), v);
    if (it != bp.end() && *it - v <= eps) return true;
    if (it != bp.begin() && v - *(it - 1) <= eps) return true;
    return false;
  };
  auto cell_of = [&](double v) {
    auto it = std::upper_bound(cross_edges.begin(), cross_edges.end(), v);
    int c = static_cast<int>(it - cross_edges.begin()) - 1;
    if (c < 0 || c >= static_cast<int>(cross_edges.size()) - 1)
      throw error("point is not on the surface (coordinates name no rectangle)");
    return c;
  };

  double cross = vert ? x : y;
  double run = vert ? y : x;
  int cell = cell_of(cross);
  FloatFlowResult res;
  double remaining = t;
  const int depth_cap = std::min(opt.max_depth, ax.max_avail);

  for (;;) {
    const double dist = run_edges[cell + 1] - run;
    if (remaining < dist) {
      run += remaining;
      remaining = 0;
      break;
    }
    if (remaining == 0) break;
    remaining -= dist;

    bool mapped = false;
    for (;;) {
      if (near_breakpoint(cross)) {
        res.status = FlowStatus::singular_hit;
        break;
      }
      auto it = std::upper_bound(plo.begin(), plo.end(), cross);
      int pi = static_cast<int>(it - plo.begin()) - 1;
      if (pi >= 0 && cross < phi[pi]) {
        cross += poff[pi];
        mapped = true;
        break;
      }
      if (!opt.auto_refine || ax.depth >= depth_cap) {
        res.status = FlowStatus::depth_exceeded;
        break;
      }
      refine_axes(ax, s.spec);
      reload();
    }
    if (!mapped) {
      run = run_edges[cell + 1];
      break;
    }
    cell = cell_of(cross);
    run = run_edges[cell];
  }

  res.rect = cell;
  res.x = vert ? cross : run;
  res.y = vert ? run : cross;
  res.t_reached = t - remaining;
  res.depth_used = ax.depth;
  return res;
}

BirkhoffStats birkhoff_average(const FlatSurfaceModel& s, const SurfacePoint& p,
                               const Rat& T,
                               const std::vector<BirkhoffRegion>& region,
                               FlowDirection dir, const FlowOptions& opt,
                               int sample_cap) {
  FlowOptions fopt = opt;
  fopt.track = true;
  FlowResult fr = flow(s, p, T, dir, fopt);
  const bool vert = dir == FlowDirection::vertical;

  BirkhoffStats st;
  st.status = fr.status;
  st.t_reached = fr.t_reached;
  st.time_inside = 0;

  // Walk the trajectory as one straight segment per visited rectangle.
  Rat seg_t = 0;
  Rat cross = vert ? p.x : p.y;
  Rat run = vert ? p.y : p.x;
  auto add_segment = [&](const Rat& a, const Rat& b, const Rat& c) {
    // Running interval [a, b) at fixed crossing coordinate c.
    for (const auto& box : region) {
      const Rat& c_lo = vert ? box.x_lo : box.y_lo;
      const Rat& c_hi = vert ? box.x_hi : box.y_hi;
      const Rat& r_lo = vert ? box.y_lo : box.x_lo;
      const Rat& r_hi = vert ? box.y_hi : box.x_hi;
      if (c < c_lo || c >= c_hi) continue;
      const Rat lo = std::max(a, r_lo), hi = std::min(b, r_hi);
      if (hi > lo) st.time_inside += hi - lo;
    }
  };
  for (const auto& ev : fr.events) {
    add_segment(run, run + (ev.t - seg_t), cross);
    seg_t = ev.t;
    cross = vert ? ev.x : ev.y;
    run = vert ? ev.y : ev.x;
  }
  add_segment(run, run + (fr.t_reached - seg_t), cross);

  if (fr.t_reached > 0) st.mean = rat_double(st.time_inside / fr.t_reached);
  const size_t cap = static_cast<size_t>(std::max(sample_cap, 0));
  const auto take =
      static_cast<std::ptrdiff_t>(std::min(fr.events.size(), cap));
  st.samples.assign(fr.events.begin(), fr.events.begin() + take);
  return st;
}

namespace {

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// The labelled subset of a gluing map: widest pieces first, then re-listed
// left to right so labels read in source order.
std::vector<int> pick_labels(const IntervalExchange& iet, int cap) {
  std::vector<int> idx(iet.pieces.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const Rat wa = iet.pieces[a].src.width(), wb = iet.pieces[b].src.width();
    if (wa != wb) return wa > wb;
    return iet.pieces[a].src.lo < iet.pieces[b].src.lo;
  });
  if (static_cast<int>(idx.size()) > cap) idx.resize(cap);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return iet.pieces[a].src.lo < iet.pieces[b].src.lo;
  });
  return idx;
}

}  // namespace

std::string render_svg(const FlatSurfaceModel& s, const SvgOptions& opt) {
  const double M = 24.0;
  const double sc = opt.px_per_unit;
  const double W = rat_double(s.x_edge.back());
  const double H = rat_double(s.y_edge.back());
  const double page_w = 2 * M + W * sc;
  const double page_h = 2 * M + H * sc;
  auto px = [&](double x) { return M + x * sc; };
  auto py = [&](double y) { return M + (H - y) * sc; };  // flip: y up

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f6(page_w) +
         "\" height=\"" + f6(page_h) + "\" viewBox=\"0 0 " + f6(page_w) + " " +
         f6(page_h) + "\">\n";
  out += "<g fill=\"#eef3f7\" stroke=\"#333333\" stroke-width=\"1\">\n";
  for (int i = 0; i < s.rect_count(); ++i) {
    const double x = px(rat_double(s.x_edge[i]));
    const double y = py(rat_double(s.y_edge[i + 1]));
    const double w = rat_double(s.widths[i]) * sc;
    const double h = rat_double(s.heights[i]) * sc;
    out += "<rect x=\"" + f6(x) + "\" y=\"" + f6(y) + "\" width=\"" + f6(w) +
           "\" height=\"" + f6(h) + "\"/>\n";
  }
  out += "</g>\n";

  if (opt.labels) {
    out += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#1a1a66\" "
           "text-anchor=\"middle\">\n";
    int name = 0;
    for (int i : pick_labels(s.t_plus, opt.max_labels)) {
      const IetPiece& pc = s.t_plus.pieces[i];
      const std::string label = "A" + std::to_string(++name);
      const Rat mid = (pc.src.lo + pc.src.hi) / 2;
      const Rat img = mid + pc.offset;
      const int ri = s.rect_of_x(mid);
      const int rj = s.rect_of_x(img);
      out += "<text x=\"" + f6(px(rat_double(mid))) + "\" y=\"" +
             f6(py(rat_double(s.y_edge[ri + 1])) - 3.0) + "\">" + label +
             "</text>\n";
      out += "<text x=\"" + f6(px(rat_double(img))) + "\" y=\"" +
             f6(py(rat_double(s.y_edge[rj])) + 12.0) + "\">" + label +
             "</text>\n";
    }
    out += "</g>\n";
    out += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#66331a\">\n";
    name = 0;
    for (int i : pick_labels(s.t_minus, opt.max_labels)) {
      const IetPiece& pc = s.t_minus.pieces[i];
      const std::string label = "B" + std::to_string(++name);
      const Rat mid = (pc.src.lo + pc.src.hi) / 2;
      const Rat img = mid + pc.offset;
      const int ri = s.rect_of_y(mid);
      const int rj = s.rect_of_y(img);
      out += "<text text-anchor=\"start\" x=\"" +
             f6(px(rat_double(s.x_edge[ri + 1])) + 3.0) + "\" y=\"" +
             f6(py(rat_double(mid)) + 4.0) + "\">" + label + "</text>\n";
      out += "<text text-anchor=\"end\" x=\"" +
             f6(px(rat_double(s.x_edge[rj])) - 3.0) + "\" y=\"" +
             f6(py(rat_double(img)) + 4.0) + "\">" + label + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace adic
