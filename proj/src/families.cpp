#include "adic/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "adic/error.hpp"

namespace adic {

namespace {

int arg_int(const FamilySpec& f, size_t i) {
  try {
    return std::stoi(f.args.at(i));
  } catch (const std::exception&) {
    throw error("family " + f.name + ": argument '" + f.args.at(i) + "' is not an integer");
  }
}

DiagramSpec one_sided(int depth) {
  if (depth < 1) throw error("family depth must be >= 1");
  return DiagramSpec::with_window(0, depth);
}

long long checked_rule(const SeqRule& rule, long long k, long long min_value, const char* what) {
  const long long v = rule(k);
  if (v < min_value)
    throw error(std::string(what) + " rule gives " + std::to_string(v) + " at k=" + std::to_string(k) +
                ", below the minimum " + std::to_string(min_value));
  return v;
}

}  // namespace

SeqRule parse_rule(const std::string& text) {
  // Grammar: [<int>] 'k' ['+' <int>]  |  <int>
  SeqRule r;
  size_t pos = 0;
  auto read_int = [&]() -> long long {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw error("cannot parse sequence rule '" + text + "'");
    return std::stoll(text.substr(start, pos - start));
  };
  if (text.empty()) throw error("empty sequence rule");
  const size_t kpos = text.find('k');
  if (kpos == std::string::npos) {
    r.a = 0;
    r.b = read_int();
    if (pos != text.size()) throw error("cannot parse sequence rule '" + text + "'");
    return r;
  }
  r.a = kpos == 0 ? 1 : [&] { const long long a = read_int(); return a; }();
  if (pos != kpos) throw error("cannot parse sequence rule '" + text + "'");
  pos = kpos + 1;
  if (pos == text.size()) {
    r.b = 0;
  } else {
    if (text[pos] != '+' && text[pos] != '-') throw error("cannot parse sequence rule '" + text + "'");
    r.b = read_int();
    if (pos != text.size()) throw error("cannot parse sequence rule '" + text + "'");
  }
  return r;
}

DiagramSpec odometer_half(int base, int depth) {
  if (base < 2) throw error("odometer base must be >= 2");
  DiagramSpec d = one_sided(depth);
  for (int j = 0; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = 1;
  d.w0_plus = {Rat(1)};
  for (int j = 1; j <= depth; ++j) {
    auto& es = d.edges(j);
    for (int r = 1; r <= base; ++r) es.push_back(Edge{0, 0, r, r, Rat(1, base)});
  }
  return d;
}

DiagramSpec chacon_half(int depth) {
  DiagramSpec d = one_sided(depth);
  for (int j = 0; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = 2;
  d.w0_plus = {Rat(2, 3), Rat(1, 3)};
  for (int j = 1; j <= depth; ++j) {
    auto& es = d.edges(j);
    // Tower order: main, main, spacer, main.
    es.push_back(Edge{0, 0, 1, 1, Rat(1, 3)});
    es.push_back(Edge{0, 0, 2, 2, Rat(1, 3)});
    es.push_back(Edge{1, 0, 3, 1, Rat(2, 3)});
    es.push_back(Edge{0, 0, 4, 3, Rat(1, 3)});
    es.push_back(Edge{1, 1, 1, 2, Rat(1, 3)});
  }
  return d;
}

DiagramSpec pascal_half(const Rat& p, int depth) {
  if (p <= 0 || p >= 1) throw error("pascal parameter must lie strictly between 0 and 1");
  DiagramSpec d = one_sided(depth);
  for (int j = 0; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = j + 1;
  d.w0_plus = {Rat(1)};
  for (int j = 1; j <= depth; ++j) {
    auto& es = d.edges(j);
    for (int v = 0; v < j; ++v) {
      // "stay" v -> v keeps the index (weight p); "diag" v -> v+1 raises it.
      const int stay_r = v == 0 ? 1 : 2;
      es.push_back(Edge{v, v, stay_r, 1, p});
      const int diag_r = 1;  // the diagonal edge stacks first wherever both meet
      es.push_back(Edge{v, v + 1, v + 1 == j ? 1 : diag_r, 2, 1 - p});
    }
  }
  return d;
}

DiagramSpec staircase_half(int depth) {
  DiagramSpec d = one_sided(depth);
  for (int j = 0; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = 2;
  const Rat M(1, 5);  // initial main-column width; reservoir keeps 4/5
  d.w0_plus = {M, 1 - M};
  Rat w_main = M, w_spacer = 1 - M;
  for (int j = 1; j <= depth; ++j) {
    const int n = j;                 // recipe stage n = j
    const int r = n + 1;             // subcolumn count
    const int m = r * (r + 1) / 2;   // total spacers: 1 + 2 + ... + r
    auto& es = d.edges(j);
    const Rat w_main_next = w_main / r;
    const Rat gamma = w_main_next / w_spacer;
    // Tower order: sub_1, 1 spacer, sub_2, 2 spacers, ..., sub_r, r spacers.
    int rr = 0, s_sp = 0;
    for (int i = 1; i <= r; ++i) {
      es.push_back(Edge{0, 0, ++rr, i, Rat(1, r)});
      for (int t = 0; t < i; ++t) es.push_back(Edge{1, 0, ++rr, ++s_sp, gamma});
    }
    const int total_spacers = s_sp;
    if (total_spacers != m) throw error("staircase spacer bookkeeping is inconsistent");
    es.push_back(Edge{1, 1, 1, total_spacers + 1, 1 - m * gamma});
    w_spacer -= Rat(m) * w_main_next;
    w_main = w_main_next;
    if (w_spacer <= 0) throw error("staircase reservoir exhausted; initial width choice is wrong");
  }
  return d;
}

DiagramSpec symmetric_half(int p, SeqRule n_rule, int depth) {
  if (p < 2) throw error("symmetric family needs at least 2 vertices per level");
  DiagramSpec d = one_sided(depth);
  d.sizes[0] = 1;
  for (int j = 1; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = p;
  d.w0_plus = {Rat(1)};
  for (int i = 0; i < p; ++i) d.edges(1).push_back(Edge{0, i, 1, i + 1, Rat(1, p)});
  for (int j = 2; j <= depth; ++j) {
    const long long n = checked_rule(n_rule, j - 1, 1, "symmetric n_k");
    const Rat w(1, Int(n) + p - 1);
    auto& es = d.edges(j);
    std::vector<int> s_next(static_cast<size_t>(p), 0);
    for (int dst = 0; dst < p; ++dst) {
      int rr = 0;
      // Tower order: n_k copies of the same index, then the others ascending.
      auto add_from = [&](int src, long long copies) {
        for (long long c = 0; c < copies; ++c)
          es.push_back(Edge{src, dst, ++rr, 0, w});
      };
      add_from(dst, n);
      for (int src = 0; src < p; ++src)
        if (src != dst) add_from(src, 1);
    }
    // Outgoing order: by target index, copies in tower order.
    std::stable_sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
      if (a.src != b.src) return a.src < b.src;
      if (a.dst != b.dst) return a.dst < b.dst;
      return a.r_rank < b.r_rank;
    });
    int cur_src = -1, s = 0;
    for (Edge& e : es) {
      if (e.src != cur_src) {
        cur_src = e.src;
        s = 0;
      }
      e.s_rank = ++s;
    }
  }
  return d;
}

DiagramSpec explosive_half(SeqRule p_rule, SeqRule n_rule, int depth) {
  DiagramSpec d = one_sided(depth);
  d.sizes[0] = 1;
  std::vector<long long> p(static_cast<size_t>(depth + 1), 1);
  for (int j = 1; j <= depth; ++j) {
    p[static_cast<size_t>(j)] = checked_rule(p_rule, j, 1, "explosive p_k");
    if (p[static_cast<size_t>(j)] > (1 << 20)) throw error("explosive level size exceeds the supported bound");
    d.sizes[static_cast<size_t>(j)] = static_cast<int>(p[static_cast<size_t>(j)]);
  }
  d.w0_plus = {Rat(1)};
  for (int i = 0; i < d.sizes[1]; ++i)
    d.edges(1).push_back(Edge{0, i, 1, i + 1, Rat(1, Int(p[1]))});
  for (int j = 2; j <= depth; ++j) {
    const long long n = checked_rule(n_rule, j - 1, 1, "explosive n_k");
    const long long pl = p[static_cast<size_t>(j - 1)], pu = p[static_cast<size_t>(j)];
    const Rat w(1, Int(n) * pu);
    auto& es = d.edges(j);
    es.reserve(static_cast<size_t>(n * pl * pu));
    for (long long dst = 0; dst < pu; ++dst)
      for (long long src = 0; src < pl; ++src)
        for (long long c = 0; c < n; ++c)
          es.push_back(Edge{static_cast<int>(src), static_cast<int>(dst),
                            static_cast<int>(src * n + c + 1), static_cast<int>(dst * n + c + 1), w});
  }
  return d;
}

DiagramSpec hajian_kakutani_half(int depth) {
  DiagramSpec d = one_sided(depth);
  for (int j = 0; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = 2;
  d.w0_plus = {Rat(1, 2), Rat(1, 2)};
  Rat w_main(1, 2), w_spacer(1, 2);
  for (int j = 1; j <= depth; ++j) {
    const Int spacers = Int(1) << (j - 1);  // stage k = j-1 adds 2^k spacers
    auto& es = d.edges(j);
    es.push_back(Edge{0, 0, 1, 1, Rat(1, 2)});
    es.push_back(Edge{0, 0, 2, 2, Rat(1, 2)});
    const Rat w_main_next = w_main / 2;
    // Honest bookkeeping: once the reservoir is empty there is no mass left
    // to hand out, so the emitted spacer weights are zero and validation
    // reports the failure (that failure is this family's documented point).
    const Rat gamma = w_spacer > 0 ? w_main_next / w_spacer : Rat(0);
    int rr = 2, s = 0;
    for (Int t = 0; t < spacers; ++t) es.push_back(Edge{1, 0, ++rr, ++s, gamma});
    const Rat beta = w_spacer > 0 ? 1 - Rat(spacers) * gamma : Rat(0);
    es.push_back(Edge{1, 1, 1, s + 1, beta});
    w_spacer = w_spacer > 0 ? w_spacer - Rat(spacers) * w_main_next : Rat(0);
    if (w_spacer < 0) w_spacer = 0;
    w_main = w_main_next;
  }
  return d;
}

DiagramSpec hajian_kakutani_base(int depth) { return odometer_half(2, depth); }

DiagramSpec independent_cas_half(const std::vector<int>& heights, int depth) {
  const int q = static_cast<int>(heights.size());
  if (q < 1) throw error("independent family needs at least one column");
  for (int h : heights)
    if (h < 1) throw error("independent family column heights must be >= 1");
  const long long total = std::accumulate(heights.begin(), heights.end(), 0LL);

  DiagramSpec d = one_sided(depth);
  d.sizes[0] = static_cast<int>(total);
  long long levels_q = q;
  d.sizes[1] = q;
  for (int j = 2; j <= depth; ++j) {
    if (levels_q > (1 << 12)) throw error("independent family level size exceeds the supported bound at this depth");
    levels_q *= levels_q;
    d.sizes[static_cast<size_t>(j)] = static_cast<int>(levels_q);
  }
  d.w0_plus.assign(static_cast<size_t>(total), Rat(1, Int(total)));

  // Stage 0 assembles the initial columns from their unit intervals, listed
  // bottom to top, column by column.
  {
    auto& es = d.edges(1);
    int v = 0;
    for (int i = 0; i < q; ++i)
      for (int lvl = 1; lvl <= heights[static_cast<size_t>(i)]; ++lvl)
        es.push_back(Edge{v++, i, lvl, 1, Rat(1)});
  }
  // Stage k >= 1: cut every column into 2*qk parts; the new column (i, j)
  // stacks part q+i of column j on part j of column i.
  long long qk = q;
  for (int j = 2; j <= depth; ++j) {
    auto& es = d.edges(j);
    const Rat w(1, Int(2) * qk);
    for (long long i = 1; i <= qk; ++i)
      for (long long jj = 1; jj <= qk; ++jj) {
        const int dst = static_cast<int>((i - 1) * qk + (jj - 1));
        es.push_back(Edge{static_cast<int>(i - 1), dst, 1, static_cast<int>(jj), w});
        es.push_back(Edge{static_cast<int>(jj - 1), dst, 2, static_cast<int>(qk + i), w});
      }
    qk *= qk;
  }
  return d;
}

DiagramSpec identity_half(int c0, int depth) {
  if (c0 < 1) throw error("identity half needs at least one vertex");
  DiagramSpec d = one_sided(depth);
  for (int j = 0; j <= depth; ++j) d.sizes[static_cast<size_t>(j)] = c0;
  d.w0_plus.assign(static_cast<size_t>(c0), Rat(1));
  for (int j = 1; j <= depth; ++j)
    for (int v = 0; v < c0; ++v) d.edges(j).push_back(Edge{v, v, 1, 1, Rat(1)});
  return d;
}

DiagramSpec with_identity_negative(const DiagramSpec& pos) {
  return weld(pos, identity_half(pos.size(0)), true);
}

DiagramSpec with_mirror_negative(const DiagramSpec& pos) { return weld(pos, pos, true); }

DiagramSpec disjoint_union(const DiagramSpec& a, const DiagramSpec& b, const Rat& alpha) {
  if (a.lo != 0 || b.lo != 0) throw error("disjoint union expects one-sided diagrams");
  if (a.hi != b.hi) throw error("disjoint union expects equal depths");
  if (alpha <= 0 || alpha >= 1) throw error("disjoint union mass split must lie strictly between 0 and 1");
  DiagramSpec d = one_sided(a.hi);
  for (int j = 0; j <= a.hi; ++j) d.sizes[static_cast<size_t>(j)] = a.size(j) + b.size(j);
  for (int j = 1; j <= a.hi; ++j) {
    auto& es = d.edges(j);
    es = a.edges(j);
    for (const Edge& e : b.edges(j))
      es.push_back(Edge{e.src + a.size(j - 1), e.dst + a.size(j), e.r_rank, e.s_rank, e.w});
  }
  for (const Rat& w : a.w0_plus) d.w0_plus.push_back(w * alpha);
  for (const Rat& w : b.w0_plus) d.w0_plus.push_back(w * (1 - alpha));
  return d;
}

double shields_entropy(const std::vector<int>& heights, const std::vector<Rat>& widths) {
  if (heights.size() != widths.size() || heights.empty())
    throw error("entropy formula needs matching, nonempty height and width lists");
  Rat mass = 0, total_width = 0;
  for (size_t i = 0; i < heights.size(); ++i) {
    if (heights[i] < 1 || widths[i] <= 0) throw error("columns need positive heights and widths");
    mass += Rat(heights[i]) * widths[i];
    total_width += widths[i];
  }
  if (mass != 1) throw error("column mass must be exactly 1, got " + rat_string(mass));
  return rat_double(total_width) * std::log(static_cast<double>(heights.size()));
}

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw error("cannot parse integer list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void need_args(const FamilySpec& f, size_t n) {
  if (f.args.size() != n)
    throw error("family " + f.name + " takes " + std::to_string(n) + " argument(s), got " +
                std::to_string(f.args.size()));
}

}  // namespace

DiagramSpec generate(const FamilySpec& f) {
  const int K = f.depth;
  if (f.name == "odometer") {
    need_args(f, 1);
    return with_identity_negative(odometer_half(arg_int(f, 0), K));
  }
  if (f.name == "chamanara") {
    need_args(f, 1);
    return with_mirror_negative(odometer_half(arg_int(f, 0), K));
  }
  if (f.name == "chacon") {
    need_args(f, 0);
    return with_identity_negative(chacon_half(K));
  }
  if (f.name == "chacon_mirror") {
    need_args(f, 0);
    return with_mirror_negative(chacon_half(K));
  }
  if (f.name == "pascal") {
    need_args(f, 1);
    return with_identity_negative(pascal_half(parse_rat(f.args[0]), K));
  }
  if (f.name == "staircase") {
    need_args(f, 0);
    return with_identity_negative(staircase_half(K));
  }
  if (f.name == "symmetric") {
    need_args(f, 2);
    return with_identity_negative(symmetric_half(arg_int(f, 0), parse_rule(f.args[1]), K));
  }
  if (f.name == "explosive") {
    need_args(f, 2);
    return with_identity_negative(explosive_half(parse_rule(f.args[0]), parse_rule(f.args[1]), K));
  }
  if (f.name == "hajian_kakutani") {
    need_args(f, 0);
    return with_identity_negative(hajian_kakutani_half(K));
  }
  if (f.name == "independent" || f.name == "independent_cas") {
    need_args(f, 1);
    return with_identity_negative(independent_cas_half(parse_int_list(f.args[0]), K));
  }
  if (f.name == "bowman")
    throw error("bowman family: the defining edge data is not available in closed form; no generator is provided");
  throw error("unknown family '" + f.name + "'");
}

DiagramSpec resolve(const BdgFile& file) {
  if (file.spec) return *file.spec;
  if (file.family) return generate(*file.family);
  throw error("empty .bdg content");
}

}  // namespace adic
