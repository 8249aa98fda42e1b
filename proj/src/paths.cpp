#include "adic/paths.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "adic/error.hpp"
#include "adic/weights.hpp"

namespace adic {

Half truncate_half(const Half& h, int depth) {
  if (depth < 0 || depth > h.depth) throw window_error("truncation depth outside the window");
  Half t;
  t.depth = depth;
  t.sizes.assign(h.sizes.begin(), h.sizes.begin() + depth + 1);
  t.stages.assign(h.stages.begin(), h.stages.begin() + depth);
  t.w0 = h.w0;
  return t;
}

std::vector<std::vector<char>> periodic_support(const Half& h) {
  const HalfIndex idx(h);
  std::vector<std::vector<char>> sup(static_cast<size_t>(h.depth) + 1);
  for (int j = 0; j <= h.depth; ++j) sup[static_cast<size_t>(j)].assign(static_cast<size_t>(h.size(j)), 0);
  if (h.depth == 0) return sup;

  // Chains: walk down from every in-degree-1 top vertex while single.
  const int K = h.depth;
  for (int w = 0; w < h.size(K); ++w) {
    if (idx.by_dst[static_cast<size_t>(K - 1)][static_cast<size_t>(w)].size() != 1) continue;
    int j = K, u = w;
    sup[static_cast<size_t>(j)][static_cast<size_t>(u)] = 1;
    while (j > 0) {
      const auto& in = idx.by_dst[static_cast<size_t>(j - 1)][static_cast<size_t>(u)];
      if (in.size() != 1) break;
      u = h.stages[static_cast<size_t>(j - 1)][static_cast<size_t>(in[0])].src;
      --j;
      sup[static_cast<size_t>(j)][static_cast<size_t>(u)] = 1;
    }
  }
  // Closure: a vertex whose every outgoing edge leads into the support is in
  // the support (its whole column stays inside certified classes).
  for (int j = K - 1; j >= 0; --j)
    for (int v = 0; v < h.size(j); ++v) {
      if (sup[static_cast<size_t>(j)][static_cast<size_t>(v)]) continue;
      const auto& out = idx.by_src[static_cast<size_t>(j)][static_cast<size_t>(v)];
      bool all_in = !out.empty();
      for (int e : out)
        if (!sup[static_cast<size_t>(j + 1)][static_cast<size_t>(h.stages[static_cast<size_t>(j)][static_cast<size_t>(e)].dst)]) {
          all_in = false;
          break;
        }
      if (all_in) sup[static_cast<size_t>(j)][static_cast<size_t>(v)] = 1;
    }
  return sup;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

std::vector<Int> path_counts(const Half& h, int depth) {
  std::vector<Int> c(static_cast<size_t>(h.size(0)), Int(1));
  for (int k = 0; k < depth; ++k) {
    std::vector<Int> next(static_cast<size_t>(h.size(k + 1)), Int(0));
    for (const HalfEdge& e : h.stages[static_cast<size_t>(k)])
      next[static_cast<size_t>(e.dst)] += c[static_cast<size_t>(e.src)];
    c = std::move(next);
  }
  return c;
}

}  // namespace

ComponentDecomposition components(const Half& full, int depth) {
  if (depth < 2) throw window_error("component decomposition needs depth >= 2");
  const Half h = truncate_half(full, depth);
  const HalfIndex idx(h);
  const auto sup = periodic_support(h);
  const int K = h.depth;

  ComponentDecomposition dec;
  dec.depth = K;
  dec.owner.resize(static_cast<size_t>(K) + 1);
  for (int j = 0; j <= K; ++j) dec.owner[static_cast<size_t>(j)].assign(static_cast<size_t>(h.size(j)), -1);

  const auto counts = path_counts(h, K);
  std::vector<std::vector<Rat>> widths;
  try {
    widths = level_weight_table(h);
  } catch (const error&) {
    // Weightless halves still decompose; masses are reported as 0.
    widths.assign(static_cast<size_t>(K) + 1, {});
  }

  // Periodic classes, one per certified top vertex.
  for (int w = 0; w < h.size(K); ++w) {
    if (idx.by_dst[static_cast<size_t>(K - 1)][static_cast<size_t>(w)].size() != 1) continue;
    PeriodicComponent pc;
    pc.head = w;
    pc.chain.push_back(w);
    pc.null_mass = false;
    int j = K, u = w;
    while (j > 0) {
      const auto& in = idx.by_dst[static_cast<size_t>(j - 1)][static_cast<size_t>(u)];
      if (in.size() != 1) break;
      const HalfEdge& e = h.stages[static_cast<size_t>(j - 1)][static_cast<size_t>(in[0])];
      if (e.w < 1) pc.null_mass = true;
      u = e.src;
      --j;
      pc.chain.push_back(u);
    }
    std::reverse(pc.chain.begin(), pc.chain.end());
    pc.merge_level = j;
    pc.merge_vertex = u;
    pc.period = counts[static_cast<size_t>(w)];
    pc.mass = widths[static_cast<size_t>(K)].empty()
                  ? Rat(0)
                  : Rat(pc.period) * widths[static_cast<size_t>(K)][static_cast<size_t>(w)];
    const int id = static_cast<int>(dec.periodic.size());
    for (size_t i = 0; i < pc.chain.size(); ++i) {
      auto& slot = dec.owner[static_cast<size_t>(pc.merge_level) + i][static_cast<size_t>(pc.chain[i])];
      if (slot == -1) slot = id;
    }
    dec.periodic.push_back(std::move(pc));
  }
  // Closure vertices (periodic support off the chains) take the component of
  // any continuation; ties go to the smallest id.
  for (int j = K - 1; j >= 0; --j)
    for (int v = 0; v < h.size(j); ++v) {
      if (!sup[static_cast<size_t>(j)][static_cast<size_t>(v)]) continue;
      auto& slot = dec.owner[static_cast<size_t>(j)][static_cast<size_t>(v)];
      if (slot != -1) continue;
      int best = -1;
      for (int e : idx.by_src[static_cast<size_t>(j)][static_cast<size_t>(v)]) {
        const int up = dec.owner[static_cast<size_t>(j + 1)]
                                [static_cast<size_t>(h.stages[static_cast<size_t>(j)][static_cast<size_t>(e)].dst)];
        if (up != -1 && (best == -1 || up < best)) best = up;
      }
      slot = best;
    }

  // Minimal components: connectivity over the non-periodic vertices.
  std::vector<int> base(static_cast<size_t>(K) + 1, 0);
  for (int j = 1; j <= K; ++j) base[static_cast<size_t>(j)] = base[static_cast<size_t>(j - 1)] + h.size(j - 1);
  const int total = base[static_cast<size_t>(K)] + h.size(K);
  UnionFind uf(static_cast<size_t>(total));
  auto id_of = [&](int level, int v) { return base[static_cast<size_t>(level)] + v; };
  for (int j = 0; j < K; ++j)
    for (const HalfEdge& e : h.stages[static_cast<size_t>(j)]) {
      if (sup[static_cast<size_t>(j)][static_cast<size_t>(e.src)] ||
          sup[static_cast<size_t>(j + 1)][static_cast<size_t>(e.dst)])
        continue;
      uf.unite(id_of(j, e.src), id_of(j + 1, e.dst));
    }
  std::vector<int> root_to_comp(static_cast<size_t>(total), -1);
  for (int w = 0; w < h.size(K); ++w) {
    if (sup[static_cast<size_t>(K)][static_cast<size_t>(w)]) continue;
    const int root = uf.find(id_of(K, w));
    int& comp = root_to_comp[static_cast<size_t>(root)];
    if (comp == -1) {
      comp = static_cast<int>(dec.periodic.size() + dec.minimal.size());
      dec.minimal.push_back(MinimalComponent{});
    }
    dec.minimal[static_cast<size_t>(comp) - dec.periodic.size()].heads.push_back(w);
  }
  for (auto& mc : dec.minimal) {
    mc.min_count = Int(static_cast<int>(mc.heads.size()));
    mc.max_count = Int(static_cast<int>(mc.heads.size()));
  }
  for (int j = 0; j <= K; ++j)
    for (int v = 0; v < h.size(j); ++v) {
      if (sup[static_cast<size_t>(j)][static_cast<size_t>(v)]) continue;
      const int root = uf.find(id_of(j, v));
      dec.owner[static_cast<size_t>(j)][static_cast<size_t>(v)] = root_to_comp[static_cast<size_t>(root)];
    }
  return dec;
}

PathOps::PathOps(const Half& h) : h_(&h), idx_(h), peri_(periodic_support(h)) {
  counts_.push_back(std::vector<Int>(static_cast<size_t>(h.size(0)), Int(1)));
  for (int k = 0; k < h.depth; ++k) {
    std::vector<Int> next(static_cast<size_t>(h.size(k + 1)), Int(0));
    for (const HalfEdge& e : h.stages[static_cast<size_t>(k)])
      next[static_cast<size_t>(e.dst)] += counts_.back()[static_cast<size_t>(e.src)];
    counts_.push_back(std::move(next));
  }
}

int PathOps::in_degree(int level, int v) const {
  return static_cast<int>(idx_.by_dst.at(static_cast<size_t>(level - 1)).at(static_cast<size_t>(v)).size());
}

int PathOps::out_degree(int level, int v) const {
  return static_cast<int>(idx_.by_src.at(static_cast<size_t>(level)).at(static_cast<size_t>(v)).size());
}

Path PathOps::min_path_into(int v, int depth) const {
  Path p;
  p.edges.resize(static_cast<size_t>(depth));
  for (int k = depth - 1; k >= 0; --k) {
    const int e = idx_.by_dst[static_cast<size_t>(k)][static_cast<size_t>(v)].front();
    p.edges[static_cast<size_t>(k)] = e;
    v = h_->stages[static_cast<size_t>(k)][static_cast<size_t>(e)].src;
  }
  return p;
}

Path PathOps::max_path_into(int v, int depth) const {
  Path p;
  p.edges.resize(static_cast<size_t>(depth));
  for (int k = depth - 1; k >= 0; --k) {
    const int e = idx_.by_dst[static_cast<size_t>(k)][static_cast<size_t>(v)].back();
    p.edges[static_cast<size_t>(k)] = e;
    v = h_->stages[static_cast<size_t>(k)][static_cast<size_t>(e)].src;
  }
  return p;
}

bool PathOps::is_maximal(const Path& p) const {
  for (int k = 0; k < p.depth(); ++k) {
    const HalfEdge& e = h_->stages[static_cast<size_t>(k)][static_cast<size_t>(p.edges[static_cast<size_t>(k)])];
    if (e.r_rank != in_degree(k + 1, e.dst)) return false;
  }
  return true;
}

bool PathOps::is_minimal(const Path& p) const {
  for (int k = 0; k < p.depth(); ++k)
    if (h_->stages[static_cast<size_t>(k)][static_cast<size_t>(p.edges[static_cast<size_t>(k)])].r_rank != 1)
      return false;
  return true;
}

std::optional<Path> PathOps::successor(const Path& p) const {
  const int n = p.depth();
  if (n == 0 || n > h_->depth) throw error("successor needs a path depth within the window");
  for (int k = 0; k < n; ++k) {
    const int ei = p.edges[static_cast<size_t>(k)];
    const HalfEdge& e = h_->stages[static_cast<size_t>(k)][static_cast<size_t>(ei)];
    const auto& in = idx_.by_dst[static_cast<size_t>(k)][static_cast<size_t>(e.dst)];
    if (e.r_rank < static_cast<int>(in.size())) {
      Path q = p;
      const int bumped = in[static_cast<size_t>(e.r_rank)];  // rank e.r_rank + 1
      q.edges[static_cast<size_t>(k)] = bumped;
      const int src = h_->stages[static_cast<size_t>(k)][static_cast<size_t>(bumped)].src;
      const Path head = min_path_into(src, k);
      std::copy(head.edges.begin(), head.edges.end(), q.edges.begin());
      return q;
    }
  }
  const int v = endpoint(*h_, p);
  if (peri_[static_cast<size_t>(n)][static_cast<size_t>(v)]) return min_path_into(v, n);
  return std::nullopt;
}

std::vector<Path> PathOps::paths_into(int v, int depth) const {
  std::vector<Path> out;
  Path cur;
  cur.edges.assign(static_cast<size_t>(depth), 0);
  // Lexicographic order with the deepest edge most significant.
  std::function<void(int, int)> walk = [&](int k, int u) {
    if (k == 0) {
      out.push_back(cur);
      return;
    }
    for (int e : idx_.by_dst[static_cast<size_t>(k - 1)][static_cast<size_t>(u)]) {
      cur.edges[static_cast<size_t>(k - 1)] = e;
      walk(k - 1, h_->stages[static_cast<size_t>(k - 1)][static_cast<size_t>(e)].src);
    }
  };
  walk(depth, v);
  return out;
}

std::vector<Path> PathOps::all_paths(int depth) const {
  std::vector<Path> out;
  for (int v = 0; v < h_->size(depth); ++v) {
    auto per = paths_into(v, depth);
    out.insert(out.end(), per.begin(), per.end());
  }
  return out;
}

const Int& PathOps::count_paths_into(int v, int depth) const {
  return counts_.at(static_cast<size_t>(depth)).at(static_cast<size_t>(v));
}

std::pair<std::vector<Path>, std::vector<Path>> min_max_paths(const Half& h, int depth) {
  if (depth < 1 || depth > h.depth) throw window_error("path depth outside the window");
  PathOps ops(h);
  std::vector<Path> mins, maxs;
  for (int v = 0; v < h.size(depth); ++v) {
    mins.push_back(ops.min_path_into(v, depth));
    maxs.push_back(ops.max_path_into(v, depth));
  }
  return {std::move(mins), std::move(maxs)};
}

std::string r_digits(const Half& h, const Path& p) {
  std::string out;
  for (int k = 0; k < p.depth(); ++k) {
    if (k) out += '.';
    out += std::to_string(h.stages[static_cast<size_t>(k)][static_cast<size_t>(p.edges[static_cast<size_t>(k)])].r_rank);
  }
  return out;
}

}  // namespace adic
