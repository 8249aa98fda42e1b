#include "adic/ergodicity.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "adic/error.hpp"
#include "adic/weights.hpp"

namespace adic {

namespace {

// Edge set joining levels (j, j+1) / (j-1, j).
int set_above(int j) { return j >= 0 ? j + 1 : j; }
int set_below(int j) { return j >= 1 ? j : j - 1; }

IMat identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

// Union-find over the strip of levels [a, b]; true when every level-k vertex
// lands in one block.
bool strip_connected(const DiagramSpec& spec, int a, int b, int k) {
  std::vector<int> base(static_cast<size_t>(b - a) + 2, 0);
  for (int j = a; j <= b; ++j)
    base[static_cast<size_t>(j - a) + 1] =
        base[static_cast<size_t>(j - a)] + spec.size(j);
  std::vector<int> parent(static_cast<size_t>(base.back()));
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int x, int y) { parent[static_cast<size_t>(find(x))] = find(y); };
  for (int j = a; j < b; ++j)
    for (const Edge& e : spec.edges(set_above(j)))
      unite(base[static_cast<size_t>(j - a)] + e.src,
            base[static_cast<size_t>(j - a) + 1] + e.dst);
  const int off = base[static_cast<size_t>(k - a)];
  const int root = find(off);
  for (int v = 1; v < spec.size(k); ++v)
    if (find(off + v) != root) return false;
  return true;
}

TunnelResult tunnel_up(const DiagramSpec& spec, int k, int bound) {
  const int limit = std::min(bound, spec.hi - k);
  IMat m = identity(spec.size(k));
  for (int step = 1; step <= limit; ++step) {
    m = incidence_matrix(spec, set_above(k + step - 1)).mul(m);
    if (m.transposed().mul(m).all_positive())
      return {TunnelStatus::found, step};
  }
  if (!strip_connected(spec, k, spec.hi, k))
    return {TunnelStatus::disconnected, 0};
  return {TunnelStatus::exceeds_bound, 0};
}

TunnelResult tunnel_down(const DiagramSpec& spec, int k, int bound) {
  const int limit = std::min(bound, k - spec.lo);
  IMat m = identity(spec.size(k));
  for (int step = 1; step <= limit; ++step) {
    m = m.mul(incidence_matrix(spec, set_below(k - step + 1)));
    if (m.mul(m.transposed()).all_positive())
      return {TunnelStatus::found, step};
  }
  if (!strip_connected(spec, spec.lo, k, k))
    return {TunnelStatus::disconnected, 0};
  return {TunnelStatus::exceeds_bound, 0};
}

Rat vec_min(const std::vector<Rat>& v) {
  Rat m = v.front();
  for (const auto& x : v) m = std::min(m, x);
  return m;
}

Rat vec_sum(const std::vector<Rat>& v) {
  Rat s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace

TunnelPair tunneling(const DiagramSpec& spec, int k, int search_bound) {
  if (k < spec.lo || k > spec.hi)
    throw window_error("tunneling level outside the window");
  if (k >= spec.hi || k <= spec.lo)
    throw window_error("tunneling needs at least one stage on each side of k");
  if (search_bound < 1) throw error("tunneling search bound must be positive");
  return {tunnel_up(spec, k, search_bound),
          tunnel_down(spec, k, search_bound)};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ergodic_by_stationarity: return "ergodic_by_stationarity";
    case Verdict::ergodic_by_eventual_stationarity:
      return "ergodic_by_eventual_stationarity";
    case Verdict::ergodic_by_closed_form: return "ergodic_by_closed_form";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::obstructed: return "obstructed";
  }
  return "?";
}

std::vector<CriterionRow> criterion_terms(const DiagramSpec& spec,
                                          const Rat& eta, int K,
                                          int search_bound) {
  if (eta <= 0) throw error("eta must be positive");
  if (K < 0 || K > spec.hi - 1)
    throw window_error("criterion depth needs a stage above every row");
  if (spec.lo >= 0) throw window_error("criterion needs a two-sided window");
  if (spec.w0_minus.size() != static_cast<size_t>(spec.size(0)))
    throw error("criterion needs downward seed weights");

  const Half pos = half(spec, Sign::pos);
  const Half neg = half(spec, Sign::neg);
  const std::vector<std::vector<Rat>> H =
      heights(spec, spec.w0_minus, spec.hi);
  // Heights at and above level 0 follow the upward recursion; below level 0
  // they are the downward cylinder widths themselves.
  auto h_at = [&](int j) -> std::vector<Rat> {
    if (j >= 0) return H[static_cast<size_t>(j)];
    return level_weights(neg, -j);
  };

  std::vector<CriterionRow> rows;
  Rat partial = 0;
  for (int k = 0; k <= K; ++k) {
    CriterionRow row;
    row.k = k;
    row.vertices = spec.size(k);
    const std::vector<Rat> lk = level_weights(pos, k);
    row.scale = 1 / vec_sum(lk);

    const TunnelPair tp = tunneling(spec, k, search_bound);
    row.dplus = tp.plus;
    row.dminus = tp.minus;

    std::optional<Rat> delta;
    if (tp.plus.status == TunnelStatus::found) {
      const Rat route =
          row.scale * vec_min(level_weights(pos, k + tp.plus.m)) / 2;
      delta = route;
    }
    if (tp.minus.status == TunnelStatus::found) {
      const Rat route = vec_min(h_at(k - tp.minus.m)) / (2 * row.scale);
      if (!delta || route > *delta) delta = route;
    }
    row.delta = delta;

    const std::vector<Rat> hk = h_at(k);
    Rat hbar_sum = 0, hbar_min;
    for (size_t i = 0; i < hk.size(); ++i) {
      const Rat hb = hk[i] / row.scale;
      hbar_sum += hb;
      hbar_min = i == 0 ? hb : std::min(hbar_min, hb);
    }
    row.sigma = 1 + hbar_sum;
    Rat lbar_min = row.scale * vec_min(lk);
    row.eps = std::min({Rat(eta / (2 * row.sigma)), Rat(hbar_min / 2),
                        Rat(lbar_min / 2)});

    if (row.delta) {
      const Rat inner = row.sigma / (row.eps * row.eps) +
                        Rat(row.vertices - 1) / *row.delta;
      row.summand = 1 / (inner * inner);
      partial += *row.summand;
    }
    row.partial = partial;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

struct Hint {
  bool known_family = false;
  bool symmetric = false;
  bool n_bounded = false;
  bool p_bounded = false;
};

Hint parse_hint(std::string s) {
  Hint h;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s.find("symmetric") != std::string::npos) {
    h.known_family = true;
    h.symmetric = true;
  } else if (s.find("explosive") != std::string::npos) {
    h.known_family = true;
  }
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    const std::string clause = s.substr(pos, end - pos);
    const bool bounded = clause.find("bounded") != std::string::npos;
    if (clause.find("n_k") != std::string::npos && bounded) h.n_bounded = true;
    if (clause.find("p_k") != std::string::npos && bounded) h.p_bounded = true;
    pos = end + 1;
  }
  return h;
}

// First level k0 >= 1 from which every upward stage equals the last one;
// hi+1 when even the top pair differs.
int stationary_from(const DiagramSpec& spec) {
  int k0 = spec.hi;
  for (int i = spec.hi - 1; i >= 1; --i) {
    if (spec.size(i) == spec.size(spec.hi) &&
        spec.size(i - 1) == spec.size(spec.hi - 1) &&
        spec.edges(i) == spec.edges(spec.hi))
      k0 = i;
    else
      break;
  }
  return k0;
}

}  // namespace

std::pair<Verdict, std::string> verdict(const DiagramSpec& spec,
                                        const Rat& eta, int K,
                                        const std::string& family_hint,
                                        int search_bound) {
  const std::vector<CriterionRow> rows =
      criterion_terms(spec, eta, K, search_bound);

  for (const auto& r : rows)
    if (r.dplus.status == TunnelStatus::disconnected)
      return {Verdict::obstructed,
              "level " + std::to_string(r.k) +
                  " splits into blocks no upward path reconnects"};

  const int k0 = stationary_from(spec);
  const bool tail_tunnels = k0 <= K + 1 &&
                            rows[static_cast<size_t>(std::min(k0, K))]
                                    .dplus.status == TunnelStatus::found;
  if (k0 == 1 && spec.hi >= 2 && tail_tunnels)
    return {Verdict::ergodic_by_stationarity,
            "one primitive stage repeats across the whole upward window"};

  // A declared growth class is an explicit request: it outranks the
  // eventual-stationarity detector (constant parameters trip both).
  const Hint h = parse_hint(family_hint);
  if (h.known_family) {
    if (h.symmetric && h.n_bounded)
      return {Verdict::ergodic_by_closed_form,
              "symmetric family with n_k declared bounded: the reciprocal "
              "square series over n_k diverges"};
    if (!h.symmetric && h.n_bounded && h.p_bounded)
      return {Verdict::ergodic_by_closed_form,
              "explosive family with n_k, p_k declared bounded: the "
              "criterion series has terms bounded away from zero"};
  }

  if (k0 <= spec.hi - 1 && tail_tunnels)
    return {Verdict::ergodic_by_eventual_stationarity,
            "upward stages repeat from level " + std::to_string(k0) +
                " on, and the repeated stage tunnels"};

  std::ostringstream os;
  os << "undecided from " << rows.size() << " rows; partial sum "
     << rows.back().partial.str()
     << "; divergence cannot be read off finitely many terms";
  int missing = 0;
  for (const auto& r : rows)
    if (!r.summand) ++missing;
  if (missing > 0) os << " (" << missing << " rows lack a tunneling route)";
  return {Verdict::inconclusive, os.str()};
}

ErgodicityReport ergodicity_report(const DiagramSpec& spec, const Rat& eta,
                                   int K, const std::string& family_hint,
                                   int search_bound) {
  ErgodicityReport rep;
  rep.eta = eta;
  rep.search_bound = search_bound;
  rep.rows = criterion_terms(spec, eta, K, search_bound);
  auto [v, why] = verdict(spec, eta, K, family_hint, search_bound);
  rep.verdict = v;
  rep.rationale = std::move(why);
  return rep;
}

}  // namespace adic
