#include "adic/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "adic/error.hpp"

namespace adic {

std::vector<std::vector<Rat>> level_weight_table(const Half& h) {
  std::vector<std::vector<Rat>> w;
  if (static_cast<int>(h.w0.size()) != h.size(0)) throw error("seed weights must list every level-0 vertex");
  w.push_back(h.w0);
  for (int k = 0; k < h.depth; ++k) {
    std::vector<Rat> next(static_cast<size_t>(h.size(k + 1)), Rat(-1));
    for (const HalfEdge& e : h.stages[static_cast<size_t>(k)]) {
      Rat cand = w.back()[static_cast<size_t>(e.src)] * e.w;
      auto& slot = next[static_cast<size_t>(e.dst)];
      if (slot < 0 || cand < slot) slot = cand;  // deterministic pick; validation flags disagreements
    }
    w.push_back(std::move(next));
  }
  return w;
}

std::vector<Rat> level_weights(const Half& h, int k) {
  if (k < 0 || k > h.depth) throw window_error("level " + std::to_string(k) + " outside depth " + std::to_string(h.depth));
  auto table = level_weight_table(h);
  return table[static_cast<size_t>(k)];
}

Rat vertex_weight(const DiagramSpec& spec, int level, int v) {
  const Half h = half(spec, level >= 0 ? Sign::pos : Sign::neg);
  const auto w = level_weights(h, std::abs(level));
  if (v < 0 || v >= static_cast<int>(w.size())) throw error("vertex index out of range");
  return w[static_cast<size_t>(v)];
}

Rat measure_of_cylinder(const Half& h, const Path& p) {
  if (p.depth() == 0) throw error("cylinder measure needs a path of depth >= 1");
  if (p.depth() > h.depth) throw window_error("path deeper than the window");
  Rat m = h.w0.at(static_cast<size_t>(start_vertex(h, p)));
  for (int k = 0; k < p.depth(); ++k)
    m *= h.stages[static_cast<size_t>(k)][static_cast<size_t>(p.edges[static_cast<size_t>(k)])].w;
  return m;
}

namespace {

void check_half(const Half& h, int K, const char* side, Report& rep) {
  const int depth = std::min(K, h.depth);
  const std::string s(side);

  if (static_cast<int>(h.w0.size()) != h.size(0)) {
    rep.fail("w0", 0, s, "seed weights must list every level-0 vertex");
    return;
  }
  for (int v = 0; v < h.size(0); ++v)
    if (h.w0[static_cast<size_t>(v)] <= 0)
      rep.fail("positivity", 0, s + " vertex " + std::to_string(v), "seed weight must be positive");

  // Vertex widths with per-vertex agreement checking (path-independence).
  std::vector<Rat> cur = h.w0;
  Rat prev_max = cur.empty() ? Rat(0) : *std::max_element(cur.begin(), cur.end());
  for (int k = 0; k < depth; ++k) {
    const auto& st = h.stages[static_cast<size_t>(k)];
    std::vector<Rat> sums(static_cast<size_t>(h.size(k)));
    std::vector<Rat> next(static_cast<size_t>(h.size(k + 1)), Rat(-1));
    bool independent = true;
    for (const HalfEdge& e : st) {
      if (e.w <= 0)
        rep.fail("positivity", k + 1, s + " stage " + std::to_string(k + 1), "edge weight must be positive");
      sums[static_cast<size_t>(e.src)] += e.w;
      const Rat cand = cur[static_cast<size_t>(e.src)] * e.w;
      auto& slot = next[static_cast<size_t>(e.dst)];
      if (slot < 0)
        slot = cand;
      else if (slot != cand && independent) {
        rep.fail("path-independence", k + 1, s + " vertex " + std::to_string(e.dst),
                 "two paths give this vertex different widths");
        independent = false;
      }
    }
    for (int v = 0; v < h.size(k); ++v)
      if (sums[static_cast<size_t>(v)] != 1)
        rep.fail("edge-sum", k, s + " vertex " + std::to_string(v),
                 "outgoing weights sum to " + rat_string(sums[static_cast<size_t>(v)]) + ", not 1");
    const Rat cur_max = next.empty() ? Rat(0) : *std::max_element(next.begin(), next.end());
    if (cur_max > prev_max)
      rep.fail("decay", k + 1, s, "max cylinder width grew from level " + std::to_string(k));
    prev_max = cur_max;
    cur = std::move(next);
  }
}

}  // namespace

Report check_weight_conditions(const DiagramSpec& spec, int K) {
  if (K < 0) throw window_error("negative check depth");
  Report rep;
  if (spec.hi > 0) {
    check_half(half(spec, Sign::pos), K, "side +", rep);
    Rat total = 0;
    for (const Rat& w : spec.w0_plus) total += w;
    if (spec.w0_plus.size() == static_cast<size_t>(spec.size(0)) && total != 1)
      rep.fail("level0-sum", 0, "side +", "forward seed weights sum to " + rat_string(total) + ", not 1");
  }
  if (spec.lo < 0) {
    check_half(half(spec, Sign::neg), K, "side -", rep);
    if (spec.hi > 0 && spec.w0_plus.size() == spec.w0_minus.size()) {
      Rat pairing = 0;
      for (size_t i = 0; i < spec.w0_plus.size(); ++i) pairing += spec.w0_plus[i] * spec.w0_minus[i];
      if (pairing != 1)
        rep.fail("area", 0, "both sides", "seed pairing sums to " + rat_string(pairing) + ", not 1");
    }
  }
  return rep;
}

}  // namespace adic
