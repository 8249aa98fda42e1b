#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adic/diagram.hpp"

namespace adic {

// One certified finite (periodic) tail class, as of the inspected window:
// a vertex chain v_m..v_K with in-degree 1 everywhere above the merge
// vertex, so the class of paths into the head never grows inside the window.
struct PeriodicComponent {
  int head = 0;          // vertex at the window's top level
  int merge_level = 0;   // m; the chain is single from m+1 up
  int merge_vertex = 0;  // v at level m where the class's paths merge
  std::vector<int> chain;  // vertices per level merge_level..depth
  Int period;            // class size = number of level-0 paths into head
  Rat mass;              // period * width of one class cylinder at the top level
  bool null_mass = false;  // some chain edge has weight < 1 (mass shrinking)
};

struct MinimalComponent {
  std::vector<int> heads;  // top-level vertices of the component
  Int min_count, max_count;  // lexicographic-extreme path counts into the component
};

// Partition of the depth-K path space into certified periodic classes and
// minimal (connected, growing) components. owner[level][vertex] gives the
// component id: periodic components first (0..), then minimal ones. A vertex
// whose every continuation feeds one certified chain counts as periodic even
// off the chain; in the (unbundled) corner case where supports would overlap,
// the smallest component id wins.
struct ComponentDecomposition {
  int depth = 0;
  std::vector<std::vector<int>> owner;
  std::vector<PeriodicComponent> periodic;
  std::vector<MinimalComponent> minimal;
};

// View of the first `depth` stages (shares no storage; plain copy).
Half truncate_half(const Half& h, int depth);

// periodic_support(h)[level][vertex] != 0 when the vertex's column lies in a
// certified finite class, judged with the full window as evidence.
std::vector<std::vector<char>> periodic_support(const Half& h);

// Decomposition "as of depth K": only levels 0..K are used as evidence.
ComponentDecomposition components(const Half& h, int depth);

// Path algorithms over one half, with the adjacency index and the periodic
// certification built once.
class PathOps {
 public:
  explicit PathOps(const Half& h);

  const Half& half_view() const { return *h_; }
  const HalfIndex& index() const { return idx_; }

  int in_degree(int level, int v) const;   // of vertex v at `level` >= 1
  int out_degree(int level, int v) const;  // of vertex v at `level` < depth

  Path min_path_into(int v, int depth) const;
  Path max_path_into(int v, int depth) const;
  bool is_maximal(const Path& p) const;
  bool is_minimal(const Path& p) const;

  // Vershik successor at fixed depth: bump the shallowest non-maximal edge
  // and reset everything below it to the minimal path. On an all-maximal
  // path: wraps to the minimal path of the class when the endpoint is
  // certified periodic, otherwise nullopt (the MaximalSignal).
  std::optional<Path> successor(const Path& p) const;

  // All depth-n paths into v, in successor (lexicographic) order; and all
  // depth-n paths grouped by endpoint vertex ascending.
  std::vector<Path> paths_into(int v, int depth) const;
  std::vector<Path> all_paths(int depth) const;
  const Int& count_paths_into(int v, int depth) const;

 private:
  const Half* h_;
  HalfIndex idx_;
  std::vector<std::vector<char>> peri_;
  std::vector<std::vector<Int>> counts_;  // [level][vertex] paths from level 0
};

// The unique lexicographic-minimal and -maximal paths at the given depth,
// one of each per endpoint vertex, endpoint ascending.
std::pair<std::vector<Path>, std::vector<Path>> min_max_paths(const Half& h, int depth);

// Path rendered as its stack-rank digits, e.g. "1.3.2".
std::string r_digits(const Half& h, const Path& p);

}  // namespace adic
