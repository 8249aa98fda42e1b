#include "adic/diagram.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "adic/error.hpp"

namespace adic {

namespace {

int set_slot(const DiagramSpec& d, int set) {
  if (set >= 1 && set <= d.hi) return set - 1;
  if (set <= -1 && set >= d.lo) return d.hi + (-set - 1);
  throw window_error("edge set " + std::to_string(set) + " outside window [" +
                     std::to_string(d.lo) + ", " + std::to_string(d.hi) + "]");
}

}  // namespace

int DiagramSpec::size(int level) const {
  if (level < lo || level > hi)
    throw window_error("level " + std::to_string(level) + " outside window [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return sizes[static_cast<size_t>(level - lo)];
}

const std::vector<Edge>& DiagramSpec::edges(int set) const { return esets[static_cast<size_t>(set_slot(*this, set))]; }
std::vector<Edge>& DiagramSpec::edges(int set) { return esets[static_cast<size_t>(set_slot(*this, set))]; }

DiagramSpec DiagramSpec::with_window(int lo_, int hi_) {
  if (lo_ > 0 || hi_ < 0 || lo_ == hi_)
    throw window_error("window [" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                       "] must contain 0 and at least one edge set");
  DiagramSpec d;
  d.lo = lo_;
  d.hi = hi_;
  d.sizes.assign(static_cast<size_t>(hi_ - lo_ + 1), 0);
  d.esets.resize(static_cast<size_t>(hi_ - lo_));
  return d;
}

void Report::fail(std::string code, int level, std::string where, std::string message) {
  ok = false;
  issues.push_back(Issue{std::move(code), level, std::move(where), std::move(message)});
}

std::string Report::str() const {
  if (ok) return "ok";
  std::ostringstream os;
  for (const Issue& is : issues)
    os << is.code << " (level " << is.level << ", " << is.where << "): " << is.message << "\n";
  return os.str();
}

IMat IMat::mul(const IMat& rhs) const {
  if (cols != rhs.rows) throw error("matrix shape mismatch in multiply");
  IMat out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

IMat IMat::transposed() const {
  IMat out(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool IMat::all_positive() const {
  for (const Int& v : a)
    if (v <= 0) return false;
  return true;
}

IMat incidence_matrix(const DiagramSpec& spec, int set) {
  const int lower = set > 0 ? set - 1 : set;
  const int upper = lower + 1;
  IMat m(spec.size(upper), spec.size(lower));
  for (const Edge& e : spec.edges(set)) ++m.at(e.dst, e.src);
  return m;
}

Report validate_diagram(const DiagramSpec& spec) {
  Report rep;
  if (spec.lo > 0 || spec.hi < 0 || spec.lo == spec.hi) {
    rep.fail("window", 0, "-", "window must contain level 0 and at least one edge set");
    return rep;
  }
  if (spec.sizes.size() != static_cast<size_t>(spec.hi - spec.lo + 1)) {
    rep.fail("window", 0, "-", "level-size list does not match the window");
    return rep;
  }
  for (int i = spec.lo; i <= spec.hi; ++i)
    if (spec.size(i) <= 0) rep.fail("level-size", i, "-", "level must have at least one vertex");
  if (!rep.ok) return rep;

  const int c0 = spec.size(0);
  if (spec.hi > 0 && static_cast<int>(spec.w0_plus.size()) != c0)
    rep.fail("w0", 0, "w0+", "forward seed weights must list every level-0 vertex");
  if (spec.lo < 0 && static_cast<int>(spec.w0_minus.size()) != c0)
    rep.fail("w0", 0, "w0-", "downward seed weights must list every level-0 vertex");

  for (int set = spec.lo; set <= spec.hi; ++set) {
    if (set == 0) continue;
    const int lower = set > 0 ? set - 1 : set;
    const int upper = lower + 1;
    const int nl = spec.size(lower), nu = spec.size(upper);
    const std::string tag = "set " + std::to_string(set);
    std::vector<std::vector<int>> by_dst(static_cast<size_t>(nu)), by_src(static_cast<size_t>(nl));
    bool in_range = true;
    for (const Edge& e : spec.edges(set)) {
      if (e.src < 0 || e.src >= nl || e.dst < 0 || e.dst >= nu) {
        rep.fail("edge-range", set, tag, "edge endpoint outside its levels");
        in_range = false;
        continue;
      }
      by_dst[static_cast<size_t>(e.dst)].push_back(e.r_rank);
      by_src[static_cast<size_t>(e.src)].push_back(e.s_rank);
    }
    if (!in_range) continue;
    for (int v = 0; v < nu; ++v) {
      auto ranks = by_dst[static_cast<size_t>(v)];
      if (ranks.empty()) {
        rep.fail("degree", upper, tag + " vertex " + std::to_string(v), "vertex has no edge from the level below");
        continue;
      }
      std::sort(ranks.begin(), ranks.end());
      for (size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] != static_cast<int>(i) + 1) {
          rep.fail("r-rank", set, tag + " dst " + std::to_string(v),
                   "incoming ranks are not a permutation of 1..degree");
          break;
        }
    }
    for (int v = 0; v < nl; ++v) {
      auto ranks = by_src[static_cast<size_t>(v)];
      if (ranks.empty()) {
        rep.fail("degree", lower, tag + " vertex " + std::to_string(v), "vertex has no edge to the level above");
        continue;
      }
      std::sort(ranks.begin(), ranks.end());
      for (size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] != static_cast<int>(i) + 1) {
          rep.fail("s-rank", set, tag + " src " + std::to_string(v),
                   "outgoing ranks are not a permutation of 1..degree");
          break;
        }
    }
  }
  return rep;
}

std::vector<std::vector<Rat>> heights(const DiagramSpec& spec, const std::vector<Rat>& h0, int k) {
  if (k < 0 || k > spec.hi) throw window_error("height depth " + std::to_string(k) + " outside window");
  if (static_cast<int>(h0.size()) != spec.size(0)) throw error("height seed must list every level-0 vertex");
  std::vector<std::vector<Rat>> h;
  h.push_back(h0);
  for (int j = 1; j <= k; ++j) {
    std::vector<Rat> next(static_cast<size_t>(spec.size(j)));
    for (const Edge& e : spec.edges(j)) next[static_cast<size_t>(e.dst)] += h.back()[static_cast<size_t>(e.src)];
    h.push_back(std::move(next));
  }
  return h;
}

Half half(const DiagramSpec& spec, Sign sign) {
  Half h;
  if (sign == Sign::pos) {
    h.depth = spec.hi;
    for (int j = 0; j <= spec.hi; ++j) h.sizes.push_back(spec.size(j));
    h.w0 = spec.w0_plus;
    for (int j = 1; j <= spec.hi; ++j) {
      std::vector<HalfEdge> st;
      for (const Edge& e : spec.edges(j)) st.push_back(HalfEdge{e.src, e.dst, e.r_rank, e.s_rank, e.w});
      h.stages.push_back(std::move(st));
    }
  } else {
    h.depth = -spec.lo;
    for (int j = 0; j >= spec.lo; --j) h.sizes.push_back(spec.size(j));
    h.w0 = spec.w0_minus;
    for (int j = 1; j <= -spec.lo; ++j) {
      // Stored set -j joins levels (-j, -j+1); re-orient so the vertex nearer
      // level 0 becomes the source, swapping the two ranks.
      std::vector<HalfEdge> st;
      for (const Edge& e : spec.edges(-j)) st.push_back(HalfEdge{e.dst, e.src, e.s_rank, e.r_rank, e.w});
      h.stages.push_back(std::move(st));
    }
  }
  return h;
}

int endpoint(const Half& h, const Path& p) {
  if (p.depth() == 0) throw error("a depth-0 path has no endpoint edge");
  return h.stages[static_cast<size_t>(p.depth() - 1)][static_cast<size_t>(p.edges.back())].dst;
}

int start_vertex(const Half& h, const Path& p) {
  if (p.depth() == 0) throw error("a depth-0 path has no starting edge");
  return h.stages[0][static_cast<size_t>(p.edges.front())].src;
}

HalfIndex::HalfIndex(const Half& h) {
  by_dst.resize(static_cast<size_t>(h.depth));
  by_src.resize(static_cast<size_t>(h.depth));
  for (int k = 0; k < h.depth; ++k) {
    auto& bd = by_dst[static_cast<size_t>(k)];
    auto& bs = by_src[static_cast<size_t>(k)];
    bd.resize(static_cast<size_t>(h.size(k + 1)));
    bs.resize(static_cast<size_t>(h.size(k)));
    const auto& st = h.stages[static_cast<size_t>(k)];
    for (size_t i = 0; i < st.size(); ++i) {
      bd[static_cast<size_t>(st[i].dst)].push_back(static_cast<int>(i));
      bs[static_cast<size_t>(st[i].src)].push_back(static_cast<int>(i));
    }
    for (auto& v : bd)
      std::sort(v.begin(), v.end(), [&st](int a, int b) { return st[static_cast<size_t>(a)].r_rank < st[static_cast<size_t>(b)].r_rank; });
    for (auto& v : bs)
      std::sort(v.begin(), v.end(), [&st](int a, int b) { return st[static_cast<size_t>(a)].s_rank < st[static_cast<size_t>(b)].s_rank; });
  }
}

namespace {

// Composes the stages of `h` joining level a to level b (a < b) into a single
// stage. Composite ranks are lexicographic over the constituent ranks: the
// incoming rank reads the deepest edge first, the outgoing rank reads the
// shallowest edge first.
std::vector<HalfEdge> composite_stage(const Half& h, int a, int b) {
  struct PathEdge {
    int src, dst;
    std::vector<int> rkey, skey;
    Rat w;
  };
  std::vector<PathEdge> paths;
  std::vector<int> cur;  // edge indices for stages a..b-1

  // Depth-first enumeration of all edge paths from level a to level b.
  auto emit = [&]() {
    PathEdge p;
    p.src = h.stages[static_cast<size_t>(a)][static_cast<size_t>(cur.front())].src;
    p.dst = h.stages[static_cast<size_t>(b - 1)][static_cast<size_t>(cur.back())].dst;
    p.w = 1;
    for (int k = a; k < b; ++k) {
      const HalfEdge& e = h.stages[static_cast<size_t>(k)][static_cast<size_t>(cur[static_cast<size_t>(k - a)])];
      p.skey.push_back(e.s_rank);
      p.w *= e.w;
    }
    for (int k = b - 1; k >= a; --k)
      p.rkey.push_back(h.stages[static_cast<size_t>(k)][static_cast<size_t>(cur[static_cast<size_t>(k - a)])].r_rank);
    paths.push_back(std::move(p));
  };
  std::function<void(int, int)> walk = [&](int k, int v) {
    if (k == b) {
      emit();
      return;
    }
    const auto& st = h.stages[static_cast<size_t>(k)];
    for (size_t i = 0; i < st.size(); ++i)
      if (st[i].src == v) {
        cur.push_back(static_cast<int>(i));
        walk(k + 1, st[i].dst);
        cur.pop_back();
      }
  };
  for (int v = 0; v < h.size(a); ++v) walk(a, v);

  std::vector<HalfEdge> out(paths.size());
  std::vector<int> order(paths.size());
  for (size_t i = 0; i < paths.size(); ++i) order[i] = static_cast<int>(i);

  auto rank_by = [&](auto key_of, auto group_of, auto assign) {
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const auto& px = paths[static_cast<size_t>(x)];
      const auto& py = paths[static_cast<size_t>(y)];
      if (group_of(px) != group_of(py)) return group_of(px) < group_of(py);
      return key_of(px) < key_of(py);
    });
    int group = -1, next = 0;
    for (int idx : order) {
      const auto& p = paths[static_cast<size_t>(idx)];
      if (group_of(p) != group) {
        group = group_of(p);
        next = 1;
      }
      assign(static_cast<size_t>(idx), next++);
    }
  };
  rank_by([](const PathEdge& p) { return p.rkey; }, [](const PathEdge& p) { return p.dst; },
          [&](size_t i, int r) { out[i].r_rank = r; });
  rank_by([](const PathEdge& p) { return p.skey; }, [](const PathEdge& p) { return p.src; },
          [&](size_t i, int r) { out[i].s_rank = r; });
  for (size_t i = 0; i < paths.size(); ++i) {
    out[i].src = paths[i].src;
    out[i].dst = paths[i].dst;
    out[i].w = paths[i].w;
  }
  return out;
}

}  // namespace

DiagramSpec telescope(const DiagramSpec& spec, const std::vector<int>& cuts) {
  if (cuts.size() < 2) throw window_error("telescoping needs at least two cut levels");
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i] >= cuts[i + 1]) throw window_error("cut levels must be strictly increasing");
  if (cuts.front() < spec.lo || cuts.back() > spec.hi) throw window_error("cut level outside the window");
  size_t zero_at = cuts.size();
  for (size_t i = 0; i < cuts.size(); ++i)
    if (cuts[i] == 0) zero_at = i;
  if (zero_at == cuts.size()) throw window_error("cut levels must include level 0");

  DiagramSpec out = DiagramSpec::with_window(-static_cast<int>(zero_at), static_cast<int>(cuts.size() - 1 - zero_at));
  // New level j (j = -zero_at .. cuts.size()-1-zero_at) corresponds to old level cuts[zero_at + j].
  for (int j = out.lo; j <= out.hi; ++j)
    out.sizes[static_cast<size_t>(j - out.lo)] = spec.size(cuts[static_cast<size_t>(static_cast<int>(zero_at) + j)]);
  out.w0_plus = spec.w0_plus;
  out.w0_minus = spec.w0_minus;

  const Half pos = half(spec, Sign::pos);
  for (int j = 1; j <= out.hi; ++j) {
    const int a = cuts[static_cast<size_t>(static_cast<int>(zero_at) + j - 1)];
    const int b = cuts[static_cast<size_t>(static_cast<int>(zero_at) + j)];
    std::vector<Edge> es;
    for (const HalfEdge& e : composite_stage(pos, a, b)) es.push_back(Edge{e.src, e.dst, e.r_rank, e.s_rank, e.w});
    out.edges(j) = std::move(es);
  }
  if (out.lo < 0) {
    const Half neg = half(spec, Sign::neg);
    for (int j = 1; j <= -out.lo; ++j) {
      const int a = -cuts[static_cast<size_t>(static_cast<int>(zero_at) - j + 1)];
      const int b = -cuts[static_cast<size_t>(static_cast<int>(zero_at) - j)];
      std::vector<Edge> es;
      // Back to stored orientation: swap endpoints and ranks (see half()).
      for (const HalfEdge& e : composite_stage(neg, a, b)) es.push_back(Edge{e.dst, e.src, e.s_rank, e.r_rank, e.w});
      out.edges(-j) = std::move(es);
    }
  }
  return out;
}

DiagramSpec weld(const DiagramSpec& pos, const DiagramSpec& neg, bool rescale) {
  if (pos.lo != 0 || neg.lo != 0 || pos.hi < 1 || neg.hi < 1)
    throw error("welding expects two one-sided diagrams with at least one stage each");
  if (pos.size(0) != neg.size(0)) throw error("welding requires matching level-0 sizes");

  DiagramSpec out = DiagramSpec::with_window(-neg.hi, pos.hi);
  for (int j = -neg.hi; j <= pos.hi; ++j)
    out.sizes[static_cast<size_t>(j + neg.hi)] = j >= 0 ? pos.size(j) : neg.size(-j);
  for (int j = 1; j <= pos.hi; ++j) out.edges(j) = pos.edges(j);
  for (int j = 1; j <= neg.hi; ++j) {
    std::vector<Edge> es;
    for (const Edge& e : neg.edges(j)) es.push_back(Edge{e.dst, e.src, e.s_rank, e.r_rank, e.w});
    out.edges(-j) = std::move(es);
  }
  out.w0_plus = pos.w0_plus;
  out.w0_minus = neg.w0_plus;
  if (rescale) {
    if (out.w0_plus.size() != out.w0_minus.size()) throw error("welding requires seed weights on both sides");
    Rat s = 0;
    for (size_t i = 0; i < out.w0_plus.size(); ++i) s += out.w0_plus[i] * out.w0_minus[i];
    if (s <= 0) throw error("welding cannot normalize: seed pairing is not positive");
    for (Rat& w : out.w0_minus) w /= s;
  }
  return out;
}

}  // namespace adic
