#pragma once

#include <string>
#include <vector>

#include "adic/rational.hpp"

namespace adic {

// ---------------------------------------------------------------------------
// Two-sided diagrams, truncated to a level window.
//
// Levels are integers in a window [lo, hi] with lo <= 0 <= hi; level i has
// size(i) vertices identified by 0-based index (the index order IS the total
// order used to lay vertices out left-to-right). Edge sets are indexed by
// i in Z \ {0}:
//   set i > 0 joins levels (i-1, i),
//   set i < 0 joins levels (i, i+1).
// Every stored edge runs with src at the LOWER level and dst at the HIGHER
// level, for both signs. Each edge carries two ranks:
//   r_rank: 1-based position among the edges sharing its dst,
//   s_rank: 1-based position among the edges sharing its src.
// Reading the negative side as an ordinary one-sided diagram swaps the roles
// of src/dst and, with them, the two ranks; half() does this uniformly.
//
// Weights: positive sets carry forward weights (each vertex's outgoing
// weights sum to 1); negative sets carry downward weights (the edges
// entering each lower-side vertex from below sum to 1). w0_plus / w0_minus
// seed the two halves at level 0.
// ---------------------------------------------------------------------------

struct Edge {
  int src = 0;     // vertex index at the lower level
  int dst = 0;     // vertex index at the higher level
  int r_rank = 0;  // 1-based among edges sharing dst
  int s_rank = 0;  // 1-based among edges sharing src
  Rat w;           // forward weight (positive sets) or downward weight (negative sets)

  bool operator==(const Edge&) const = default;
};

struct DiagramSpec {
  int lo = 0;
  int hi = 0;
  std::vector<int> sizes;                // c_i for i = lo..hi
  std::vector<std::vector<Edge>> esets;  // slot order: sets 1..hi, then sets -1..lo
  std::vector<Rat> w0_plus;
  std::vector<Rat> w0_minus;

  int size(int level) const;
  const std::vector<Edge>& edges(int set) const;
  std::vector<Edge>& edges(int set);
  bool has_set(int set) const { return (set >= 1 && set <= hi) || (set <= -1 && set >= lo); }

  // Allocates level/edge-set storage for a window; sizes must be filled next.
  static DiagramSpec with_window(int lo, int hi);
};

// Structured pass/fail result shared by the validators.
struct Issue {
  std::string code;     // short machine-readable tag, e.g. "edge-sum"
  int level = 0;        // level (or edge-set index) the issue is anchored to
  std::string where;    // vertex/edge in human-readable form
  std::string message;
};

struct Report {
  bool ok = true;
  std::vector<Issue> issues;
  void fail(std::string code, int level, std::string where, std::string message);
  std::string str() const;
};

// Exact integer matrices; just enough linear algebra for incidence products.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  IMat mul(const IMat& rhs) const;
  IMat transposed() const;
  bool all_positive() const;
  bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Incidence matrix of one edge set, upper-level x lower-level: entry (u, l)
// counts the edges joining upper vertex u to lower vertex l.
IMat incidence_matrix(const DiagramSpec& spec, int set);

// Window/rank/degree sanity: endpoints in range, ranks are permutations of
// 1..degree, no vertex unreachable from its neighbouring level (no zero
// row/column in any incidence matrix), weight vectors sized to level 0.
Report validate_diagram(const DiagramSpec& spec);

// Tower heights by upward recursion along the positive side: h^0 = h0,
// h^{j} = F_j h^{j-1} entrywise over paths, for j = 1..k. Returns h^0..h^k.
std::vector<std::vector<Rat>> heights(const DiagramSpec& spec, const std::vector<Rat>& h0, int k);

// ---------------------------------------------------------------------------
// One-sided view. Level 0 is the shallow end; stage k joins levels k, k+1
// (so stage k corresponds to edge set k+1 on the positive side and to edge
// set -(k+1), re-oriented, on the negative side).
// ---------------------------------------------------------------------------

enum class Sign { pos, neg };

struct HalfEdge {
  int src = 0;     // vertex at level k (shallow side of the stage)
  int dst = 0;     // vertex at level k+1
  int r_rank = 0;  // among edges sharing dst
  int s_rank = 0;  // among edges sharing src
  Rat w;           // forward weight: outgoing sums are 1 at every vertex
};

struct Half {
  int depth = 0;                              // number of stages
  std::vector<int> sizes;                     // c_j for j = 0..depth
  std::vector<std::vector<HalfEdge>> stages;  // stages[k] joins level k -> k+1
  std::vector<Rat> w0;                        // level-0 vertex weights

  int size(int level) const { return sizes.at(static_cast<size_t>(level)); }
};

Half half(const DiagramSpec& spec, Sign sign);

// A finite path from level 0 of a Half: edges[k] indexes into h.stages[k].
struct Path {
  std::vector<int> edges;
  int depth() const { return static_cast<int>(edges.size()); }
  bool operator==(const Path&) const = default;
};

// Vertex the path ends at (level depth()); the level-0 start of a depth-0
// path is ambiguous, so depth >= 1 is required there.
int endpoint(const Half& h, const Path& p);
int start_vertex(const Half& h, const Path& p);

// Adjacency index over a Half: edge positions grouped per vertex and sorted
// by rank, built once and shared by the path/stack algorithms.
struct HalfIndex {
  // by_dst[k][v]: indices into half.stages[k] with dst == v, sorted by r_rank.
  // by_src[k][v]: indices into half.stages[k] with src == v, sorted by s_rank.
  std::vector<std::vector<std::vector<int>>> by_dst;
  std::vector<std::vector<std::vector<int>>> by_src;
  explicit HalfIndex(const Half& h);
};

// ---------------------------------------------------------------------------
// Window surgery.
// ---------------------------------------------------------------------------

// Composes adjacent edge sets between consecutive cut levels. `cuts` must be
// strictly increasing, contain 0, and stay inside the window. Composite
// ranks are lexicographic: r-ranks with the deepest constituent edge most
// significant, s-ranks with the shallowest most significant (this keeps both
// the stacking order and the cutting order of the composite diagram equal to
// those of the original). Composite weights are products.
DiagramSpec telescope(const DiagramSpec& spec, const std::vector<int>& cuts);

// Joins two one-sided diagrams (each with lo == 0) into a two-sided one,
// identifying level-0 vertices by index (i.e. by their place in the total
// order). The second diagram becomes the negative side with src/dst and
// r/s-ranks swapped into stored orientation. When `rescale` is set the
// negative seed weights are scaled so that sum_v w0+ * w0- == 1 (the area
// normalization); the scale factor does not disturb any edge-level condition.
DiagramSpec weld(const DiagramSpec& pos, const DiagramSpec& neg, bool rescale = true);

}  // namespace adic
