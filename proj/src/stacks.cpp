#include "adic/stacks.hpp"

#include <algorithm>

#include "adic/error.hpp"
#include "adic/weights.hpp"

namespace adic {

std::vector<StackStage> build_stacks(const Half& h, int K) {
  if (K < 0 || K > h.depth) throw window_error("stage outside the window");
  if (static_cast<int>(h.w0.size()) != h.size(0)) throw error("stage construction needs seed weights");

  std::vector<StackStage> stages;
  StackStage s0;
  s0.k = 0;
  Rat acc = 0;
  for (int v = 0; v < h.size(0); ++v) {
    const Rat w = h.w0[static_cast<size_t>(v)];
    s0.columns.push_back(Column{v, w, {Interval{acc, acc + w}}});
    acc += w;
  }
  stages.push_back(std::move(s0));

  const HalfIndex idx(h);
  for (int k = 0; k < K; ++k) {
    const StackStage& prev = stages.back();
    const auto& st = h.stages[static_cast<size_t>(k)];
    // Horizontal cut offsets per source column, keyed by edge position:
    // out-edges in s-rank order split the column proportionally to weight.
    std::vector<Rat> cut_off(st.size());
    for (int u = 0; u < h.size(k); ++u) {
      Rat off = 0;
      for (int e : idx.by_src[static_cast<size_t>(k)][static_cast<size_t>(u)]) {
        cut_off[static_cast<size_t>(e)] = off;
        off += prev.columns[static_cast<size_t>(u)].width * st[static_cast<size_t>(e)].w;
      }
    }
    StackStage next;
    next.k = k + 1;
    for (int v = 0; v < h.size(k + 1); ++v) {
      Column col;
      col.vertex = v;
      for (int e : idx.by_dst[static_cast<size_t>(k)][static_cast<size_t>(v)]) {
        const HalfEdge& he = st[static_cast<size_t>(e)];
        const Column& src = prev.columns[static_cast<size_t>(he.src)];
        const Rat w = src.width * he.w;
        const Rat off = cut_off[static_cast<size_t>(e)];
        for (const Interval& lvl : src.levels)
          col.levels.push_back(Interval{lvl.lo + off, lvl.lo + off + w});
        col.width = w;
      }
      next.columns.push_back(std::move(col));
    }
    stages.push_back(std::move(next));
  }
  return stages;
}

IntervalExchange iet_at_depth(const Half& h, int K) {
  const auto stages = build_stacks(h, K);
  const auto peri = periodic_support(h);
  const StackStage& top = stages.back();

  IntervalExchange iet;
  iet.domain_lo = 0;
  iet.domain_hi = 0;
  for (const Rat& w : h.w0) iet.domain_hi += w;

  for (const Column& col : top.columns) {
    for (size_t i = 0; i + 1 < col.levels.size(); ++i)
      iet.pieces.push_back(
          IetPiece{col.levels[i], col.levels[i + 1].lo - col.levels[i].lo, false});
    if (peri[static_cast<size_t>(K)][static_cast<size_t>(col.vertex)])
      iet.pieces.push_back(
          IetPiece{col.levels.back(), col.levels.front().lo - col.levels.back().lo, true});
    else
      iet.undefined.push_back(col.levels.back());
  }
  std::sort(iet.pieces.begin(), iet.pieces.end(),
            [](const IetPiece& a, const IetPiece& b) { return a.src.lo < b.src.lo; });
  std::sort(iet.undefined.begin(), iet.undefined.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return iet;
}

std::optional<Rat> apply_iet(const IntervalExchange& iet, const Rat& x) {
  if (x < iet.domain_lo || x >= iet.domain_hi) throw error("point outside the map's domain interval");
  auto it = std::upper_bound(iet.pieces.begin(), iet.pieces.end(), x,
                             [](const Rat& v, const IetPiece& p) { return v < p.src.lo; });
  if (it == iet.pieces.begin()) return std::nullopt;
  --it;
  if (x >= it->src.lo && x < it->src.hi) return x + it->offset;
  return std::nullopt;
}

namespace {

Interval cut_walk(const Half& h, const HalfIndex& idx, const Path& p) {
  if (p.depth() < 1) throw error("cut walk needs a path of depth >= 1");
  int u = start_vertex(h, p);
  Rat lo = 0;
  for (int v = 0; v < u; ++v) lo += h.w0[static_cast<size_t>(v)];
  Rat w = h.w0[static_cast<size_t>(u)];
  for (int k = 0; k < p.depth(); ++k) {
    const auto& st = h.stages[static_cast<size_t>(k)];
    const int ei = p.edges[static_cast<size_t>(k)];
    for (int e : idx.by_src[static_cast<size_t>(k)][static_cast<size_t>(u)]) {
      if (e == ei) break;
      lo += w * st[static_cast<size_t>(e)].w;
    }
    w *= st[static_cast<size_t>(ei)].w;
    u = st[static_cast<size_t>(ei)].dst;
  }
  return Interval{lo, lo + w};
}

}  // namespace

Interval interval_of_path(const Half& h, const Path& p) { return cut_walk(h, HalfIndex(h), p); }

Interval interval_of_path(const PathOps& ops, const Path& p) {
  return cut_walk(ops.half_view(), ops.index(), p);
}

Int lex_rank(const PathOps& ops, const Path& p) {
  const Half& h = ops.half_view();
  Int rank = 0;
  int v = endpoint(h, p);
  for (int k = p.depth() - 1; k >= 0; --k) {
    const int ei = p.edges[static_cast<size_t>(k)];
    for (int e : ops.index().by_dst[static_cast<size_t>(k)][static_cast<size_t>(v)]) {
      if (e == ei) break;
      rank += ops.count_paths_into(h.stages[static_cast<size_t>(k)][static_cast<size_t>(e)].src, k);
    }
    v = h.stages[static_cast<size_t>(k)][static_cast<size_t>(ei)].src;
  }
  return rank;
}

}  // namespace adic
