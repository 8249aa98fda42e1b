#include "adic/renorm.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "adic/error.hpp"
#include "adic/paths.hpp"
#include "adic/weights.hpp"

namespace adic {

namespace {

Rat level_mass(const Half& h, int k) {
  Rat sum = 0;
  for (const auto& v : level_weights(h, k)) sum += v;
  return sum;
}

}  // namespace

std::vector<Rat> renorm_times(const DiagramSpec& spec, int K) {
  if (K < 0 || K > spec.hi)
    throw window_error("renormalization depth outside the window");
  const Half pos = half(spec, Sign::pos);
  std::vector<Rat> scales;
  scales.reserve(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    const Rat mass = level_mass(pos, k);
    if (mass <= 0) throw error("cannot renormalize: level mass is not positive");
    scales.push_back(1 / mass);
  }
  return scales;
}

RenormState shift(const DiagramSpec& spec, int k) {
  if (k < 0 || k > spec.hi - 1)
    throw window_error("shift offset must leave at least one upward stage");
  RenormState st;
  st.offset = k;
  st.scales = renorm_times(spec, k);
  if (k == 0) {
    st.spec = spec;
    return st;
  }
  if (spec.w0_minus.size() != static_cast<size_t>(spec.size(0)))
    throw error("shift needs downward seed weights to rotate stages");

  // Height ratios supply the downward weights of the rotated stages: edges
  // into an old vertex b at level i satisfy sum h^{i-1}(src)/h^i(b) = 1.
  const std::vector<std::vector<Rat>> H = heights(spec, spec.w0_minus, k);

  DiagramSpec out = DiagramSpec::with_window(spec.lo - k, spec.hi - k);
  out.sizes = spec.sizes;
  for (int i = 1; i <= out.hi; ++i) out.edges(i) = spec.edges(i + k);
  for (int j = 1; j <= k; ++j) {
    const int i = k - j + 1;  // original upward set rotating to set -j
    std::vector<Edge> es = spec.edges(i);
    for (auto& e : es) e.w = H[i - 1][e.src] / H[i][e.dst];
    out.edges(-j) = std::move(es);
  }
  for (int j = k + 1; j <= -out.lo; ++j) out.edges(-j) = spec.edges(k - j);

  const Half pos = half(spec, Sign::pos);
  const std::vector<Rat> lk = level_weights(pos, k);
  const Rat& sc = st.scales.back();
  out.w0_plus.resize(lk.size());
  out.w0_minus.resize(lk.size());
  for (size_t v = 0; v < lk.size(); ++v) {
    out.w0_plus[v] = sc * lk[v];
    out.w0_minus[v] = H[static_cast<size_t>(k)][v] / sc;
  }
  st.spec = std::move(out);
  return st;
}

std::vector<int> auto_telescope_cuts(const DiagramSpec& spec, const Rat& ratio) {
  if (ratio <= 0 || ratio >= 1)
    throw error("telescoping ratio must lie strictly between 0 and 1");
  const Half pos = half(spec, Sign::pos);
  std::vector<int> cuts;
  for (int j = spec.lo; j <= 0; ++j) cuts.push_back(j);
  Rat kept = level_mass(pos, 0);
  for (int m = 1; m <= spec.hi; ++m) {
    const Rat mass = level_mass(pos, m);
    if (mass <= ratio * kept) {
      cuts.push_back(m);
      kept = mass;
    }
  }
  if (cuts.back() != spec.hi) cuts.push_back(spec.hi);
  return cuts;
}

namespace {

Rat random_unit(std::mt19937& rng) {
  const unsigned den = (rng() % 999983u) + 2u;
  const unsigned num = rng() % den;
  return Rat(num, den);
}

}  // namespace

std::string FunctorialityReport::str() const {
  std::ostringstream os;
  os << "shift by " << offset << ": rectangles "
     << (rect_match ? "match" : "DIFFER") << "; top/bottom gluing "
     << agreed_plus << "/" << checked_plus << "; left/right gluing "
     << agreed_minus << "/" << checked_minus << "; resampled " << resampled
     << "; seed " << seed << "; " << (ok ? "OK" : "MISMATCH");
  return os.str();
}

FunctorialityReport check_functoriality(const DiagramSpec& spec, int k,
                                        int samples, unsigned seed) {
  if (k < 0 || k > spec.hi - 1)
    throw window_error("shift offset must leave at least one upward stage");
  FunctorialityReport rep;
  rep.offset = k;
  rep.seed = seed;

  const RenormState st = shift(spec, k);
  const Rat sc = st.scales.back();
  const FlatSurfaceModel S =
      build_surface(spec, std::max(spec.hi, -spec.lo));
  const FlatSurfaceModel A =
      build_surface(st.spec, std::max(st.spec.hi, -st.spec.lo));

  const Half pos = half(spec, Sign::pos);
  PathOps ops(pos);
  const std::vector<StackStage> stages = build_stacks(pos, k);
  const StackStage& stage = stages[static_cast<size_t>(k)];
  const int nk = spec.size(k);

  // Start vertex of every tower level, in stacking order, plus the running
  // level offsets in the shifted model's vertical units.
  rep.rect_match = true;
  std::vector<std::vector<int>> starts(static_cast<size_t>(nk));
  std::vector<std::vector<Rat>> cum(static_cast<size_t>(nk));
  std::map<Rat, std::pair<int, int>> slab_at;  // interval lo -> (tower, level)
  for (int v = 0; v < nk; ++v) {
    if (k == 0) {
      starts[v] = {v};
    } else {
      for (const Path& p : ops.paths_into(v, k))
        starts[v].push_back(start_vertex(pos, p));
    }
    Rat off = 0;
    const Column& col = stage.columns[static_cast<size_t>(v)];
    for (size_t q = 0; q < col.levels.size(); ++q) {
      cum[v].push_back(off);
      off += spec.w0_minus[static_cast<size_t>(starts[v][q])] / sc;
      slab_at[col.levels[q].lo] = {v, static_cast<int>(q)};
    }
    if (A.heights[static_cast<size_t>(v)] != off ||
        A.widths[static_cast<size_t>(v)] != sc * col.width)
      rep.rect_match = false;
  }

  std::mt19937 rng(seed);
  const int max_attempts = 64 * std::max(samples, 1);

  // Top/bottom gluing: a sample on the shifted bottoms is carried to the top
  // level of its tower, pushed through the original map, and located in the
  // bottom level of the target tower.
  for (int attempt = 0; attempt < max_attempts && rep.checked_plus < samples;
       ++attempt) {
    const Rat xbar = random_unit(rng) * A.x_edge.back();
    const int v = A.rect_of_x(xbar);
    const Rat rel = xbar - A.x_edge[static_cast<size_t>(v)];
    const Column& col = stage.columns[static_cast<size_t>(v)];
    const Rat x_orig = col.levels.back().lo + rel / sc;
    const auto img = apply_iet(S.t_plus, x_orig);
    if (!img) {
      ++rep.resampled;
      continue;
    }
    const auto got = apply_iet(A.t_plus, xbar);
    if (!got) {
      ++rep.resampled;
      continue;
    }
    int v2 = -1;
    for (int w = 0; w < nk; ++w) {
      const Interval& bottom = stage.columns[static_cast<size_t>(w)].levels.front();
      if (*img >= bottom.lo && *img < bottom.hi) {
        v2 = w;
        break;
      }
    }
    ++rep.checked_plus;
    if (v2 < 0) continue;  // image missed every bottom level: disagreement
    const Rat expected =
        A.x_edge[static_cast<size_t>(v2)] +
        (*img - stage.columns[static_cast<size_t>(v2)].levels.front().lo) * sc;
    if (*got == expected) ++rep.agreed_plus;
  }

  // Left/right gluing: a sample on the shifted right edges names a tower
  // level; interior levels glue to the horizontally adjacent level, edge
  // levels route through the original left/right map.
  for (int attempt = 0; attempt < max_attempts && rep.checked_minus < samples;
       ++attempt) {
    const Rat ybar = random_unit(rng) * A.y_edge.back();
    const int v = A.rect_of_y(ybar);
    const Rat rel = ybar - A.y_edge[static_cast<size_t>(v)];
    const Column& col = stage.columns[static_cast<size_t>(v)];
    size_t q = cum[v].size() - 1;
    while (q > 0 && cum[v][q] > rel) --q;
    const Rat eta = rel - cum[v][q];  // within the level, shifted units
    const Interval& slab = col.levels[q];
    const int u = starts[v][q];

    const auto got = apply_iet(A.t_minus, ybar);
    if (!got) {
      ++rep.resampled;
      continue;
    }

    Rat expected;
    bool have_expected = false;
    if (slab.hi < S.x_edge[static_cast<size_t>(u) + 1]) {
      const auto it = slab_at.find(slab.hi);
      if (it != slab_at.end()) {
        const auto [v2, q2] = it->second;
        expected = A.y_edge[static_cast<size_t>(v2)] +
                   cum[static_cast<size_t>(v2)][static_cast<size_t>(q2)] + eta;
        have_expected = true;
      }
    } else {
      const Rat y_orig = S.y_edge[static_cast<size_t>(u)] + eta * sc;
      const auto img = apply_iet(S.t_minus, y_orig);
      if (!img) {
        ++rep.resampled;
        continue;
      }
      const int u2 = S.rect_of_y(*img);
      const Rat eta2 = *img - S.y_edge[static_cast<size_t>(u2)];
      const auto it = slab_at.find(S.x_edge[static_cast<size_t>(u2)]);
      if (it != slab_at.end()) {
        const auto [v2, q2] = it->second;
        expected = A.y_edge[static_cast<size_t>(v2)] +
                   cum[static_cast<size_t>(v2)][static_cast<size_t>(q2)] +
                   eta2 / sc;
        have_expected = true;
      }
    }
    ++rep.checked_minus;
    if (have_expected && *got == expected) ++rep.agreed_minus;
  }

  rep.ok = rep.rect_match && rep.checked_plus == samples &&
           rep.agreed_plus == rep.checked_plus &&
           rep.checked_minus == samples &&
           rep.agreed_minus == rep.checked_minus;
  return rep;
}

}  // namespace adic
