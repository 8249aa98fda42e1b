#include "adic/bdg_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "adic/error.hpp"

namespace adic {

namespace {

// Decimal integer, sign allowed. Leading zeros are stripped so the cpp_int
// string constructor cannot reinterpret them as an octal prefix.
Int parse_decimal_int(const std::string& tok) {
  size_t i = 0;
  bool neg = false;
  if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) neg = tok[i++] == '-';
  while (i + 1 < tok.size() && tok[i] == '0') ++i;
  if (i == tok.size()) throw std::invalid_argument("empty integer");
  Int v(tok.substr(i));
  return neg ? Int(-v) : v;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  try {
    if (slash != std::string::npos) {
      const Int num = parse_decimal_int(s.substr(0, slash));
      const Int den = parse_decimal_int(s.substr(slash + 1));
      if (den == 0) throw error("zero denominator in '" + s + "'");
      return Rat(num, den);
    }
    if (dot != std::string::npos) {
      // Decimal literal: shift the point out to get an exact fraction.
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") throw error("empty decimal");
      Int den = 1;
      for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return Rat(parse_decimal_int(digits), den);
    }
    return Rat(parse_decimal_int(s));
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    throw error("cannot parse rational '" + s + "'");
  }
}

std::string rat_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

struct RawEdge {
  int set, src, dst, r_rank, s_rank;
  Rat w;
};

[[noreturn]] void bad_line(int line_no, const std::string& what) {
  throw error("line " + std::to_string(line_no) + ": " + what);
}

int to_int(const std::string& tok, int line_no) {
  try {
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    bad_line(line_no, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

BdgFile parse_bdg(std::istream& in) {
  BdgFile out;
  bool have_levels = false;
  int lo = 0, hi = 0;
  std::map<int, int> level_sizes;
  std::vector<RawEdge> raw_edges;
  std::map<int, Rat> w0p, w0m;
  std::optional<FamilySpec> family;

  std::string line;
  int line_no = 0;
  bool saw_explicit = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;

    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);

    if (kw == "family") {
      if (family) bad_line(line_no, "repeated family directive");
      if (toks.size() < 3 || toks[toks.size() - 2] != "depth")
        bad_line(line_no, "family directive needs: family <name> <args...> depth <K>");
      FamilySpec f;
      f.name = toks[0];
      f.args.assign(toks.begin() + 1, toks.end() - 2);
      f.depth = to_int(toks.back(), line_no);
      if (f.depth < 1) bad_line(line_no, "family depth must be >= 1");
      family = std::move(f);
      continue;
    }

    saw_explicit = true;
    if (kw == "levels") {
      if (toks.size() != 2) bad_line(line_no, "levels directive needs: levels <lo> <hi>");
      lo = to_int(toks[0], line_no);
      hi = to_int(toks[1], line_no);
      if (lo > 0 || hi < 0 || lo == hi) bad_line(line_no, "window must contain 0 and at least one edge set");
      have_levels = true;
    } else if (kw == "level") {
      if (toks.size() != 2) bad_line(line_no, "level directive needs: level <i> <count>");
      const int i = to_int(toks[0], line_no);
      const int c = to_int(toks[1], line_no);
      if (c < 1) bad_line(line_no, "level size must be >= 1");
      if (!level_sizes.emplace(i, c).second) bad_line(line_no, "repeated level " + std::to_string(i));
    } else if (kw == "edge") {
      if (toks.size() != 5 && toks.size() != 6)
        bad_line(line_no, "edge directive needs: edge <set> <src> <dst> <r> <s> [w=p/q]");
      RawEdge e{to_int(toks[0], line_no), to_int(toks[1], line_no), to_int(toks[2], line_no),
                to_int(toks[3], line_no), to_int(toks[4], line_no), Rat(0)};
      if (e.set == 0) bad_line(line_no, "edge set index cannot be 0");
      if (toks.size() == 6) {
        if (toks[5].rfind("w=", 0) != 0) bad_line(line_no, "edge weight must look like w=p/q");
        try {
          e.w = parse_rat(toks[5].substr(2));
        } catch (const error& err) {
          bad_line(line_no, err.what());
        }
      }
      raw_edges.push_back(std::move(e));
    } else if (kw == "w0+" || kw == "w0-") {
      if (toks.size() != 2) bad_line(line_no, "seed weight needs: " + kw + " <v> <p>/<q>");
      const int v = to_int(toks[0], line_no);
      Rat w;
      try {
        w = parse_rat(toks[1]);
      } catch (const error& err) {
        bad_line(line_no, err.what());
      }
      auto& dst = (kw == "w0+") ? w0p : w0m;
      if (!dst.emplace(v, w).second) bad_line(line_no, "repeated " + kw + " for vertex " + std::to_string(v));
    } else {
      bad_line(line_no, "unknown directive '" + kw + "'");
    }
  }

  if (family && saw_explicit) throw error("a .bdg file cannot mix a family directive with explicit diagram data");
  if (family) {
    out.family = std::move(family);
    return out;
  }
  if (!have_levels) throw error("missing levels directive");

  DiagramSpec spec = DiagramSpec::with_window(lo, hi);
  for (int i = lo; i <= hi; ++i) {
    auto it = level_sizes.find(i);
    if (it == level_sizes.end()) throw error("missing level directive for level " + std::to_string(i));
    spec.sizes[static_cast<size_t>(i - lo)] = it->second;
  }
  for (const auto& [i, c] : level_sizes) {
    (void)c;
    if (i < lo || i > hi) throw error("level " + std::to_string(i) + " outside the declared window");
  }
  for (const RawEdge& e : raw_edges) {
    if (!spec.has_set(e.set)) throw error("edge set " + std::to_string(e.set) + " outside the declared window");
    spec.edges(e.set).push_back(Edge{e.src, e.dst, e.r_rank, e.s_rank, e.w});
  }
  // Canonical storage order, independent of the order lines appear in.
  for (int i = lo; i <= hi; ++i) {
    if (i == 0) continue;
    auto& es = spec.edges(i);
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
      if (a.dst != b.dst) return a.dst < b.dst;
      return a.r_rank < b.r_rank;
    });
  }
  const int c0 = spec.size(0);
  auto fill = [&](const std::map<int, Rat>& src, std::vector<Rat>& dst, const char* tag) {
    if (src.empty()) return;
    dst.assign(static_cast<size_t>(c0), Rat(0));
    for (const auto& [v, w] : src) {
      if (v < 0 || v >= c0) throw error(std::string(tag) + " vertex " + std::to_string(v) + " outside level 0");
      dst[static_cast<size_t>(v)] = w;
    }
  };
  fill(w0p, spec.w0_plus, "w0+");
  fill(w0m, spec.w0_minus, "w0-");
  out.spec = std::move(spec);
  return out;
}

BdgFile parse_bdg_string(const std::string& text) {
  std::istringstream in(text);
  return parse_bdg(in);
}

BdgFile load_bdg(const std::string& path) {
  if (path == "-") return parse_bdg(std::cin);
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  return parse_bdg(in);
}

void write_bdg(std::ostream& out, const DiagramSpec& spec) {
  out << "levels " << spec.lo << " " << spec.hi << "\n";
  for (int i = spec.lo; i <= spec.hi; ++i) out << "level " << i << " " << spec.size(i) << "\n";
  for (size_t v = 0; v < spec.w0_plus.size(); ++v) out << "w0+ " << v << " " << rat_string(spec.w0_plus[v]) << "\n";
  for (size_t v = 0; v < spec.w0_minus.size(); ++v) out << "w0- " << v << " " << rat_string(spec.w0_minus[v]) << "\n";
  auto dump_set = [&](int set) {
    std::vector<Edge> es = spec.edges(set);
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
      if (a.dst != b.dst) return a.dst < b.dst;
      return a.r_rank < b.r_rank;
    });
    for (const Edge& e : es) {
      out << "edge " << set << " " << e.src << " " << e.dst << " " << e.r_rank << " " << e.s_rank;
      if (e.w != 0) out << " w=" << rat_string(e.w);
      out << "\n";
    }
  };
  for (int i = 1; i <= spec.hi; ++i) dump_set(i);
  for (int i = -1; i >= spec.lo; --i) dump_set(i);
}

std::string bdg_string(const DiagramSpec& spec) {
  std::ostringstream os;
  write_bdg(os, spec);
  return os.str();
}

}  // namespace adic
