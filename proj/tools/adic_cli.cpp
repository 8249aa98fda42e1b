// Command-line front end: every subcommand loads a .bdg diagram (or
// generates one from a family), runs one library operation, and prints a
// deterministic text report. --json mirrors each report with the same field
// names. All sampling randomness flows from one seed that every report
// prints. Exit codes: 0 success, 1 validation/parse failure or mismatch,
// 2 window/depth errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "adic/bdg_io.hpp"
#include "adic/diagram.hpp"
#include "adic/ergodicity.hpp"
#include "adic/error.hpp"
#include "adic/families.hpp"
#include "adic/paths.hpp"
#include "adic/renorm.hpp"
#include "adic/stacks.hpp"
#include "adic/surface.hpp"
#include "adic/weights.hpp"

namespace {

using adic::Rat;
using json = nlohmann::ordered_json;

constexpr unsigned kDefaultSeed = 1234;

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string rs(const Rat& r) { return adic::rat_string(r); }

adic::DiagramSpec load_spec(const std::string& path) {
  return adic::resolve(adic::load_bdg(path));
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adic::error("cannot open '" + path + "' for writing");
  out << text;
}

adic::Sign parse_side(const std::string& s) {
  if (s == "pos") return adic::Sign::pos;
  if (s == "neg") return adic::Sign::neg;
  throw adic::error("side must be 'pos' or 'neg', got '" + s + "'");
}

json issues_json(const adic::Report& rep) {
  json arr = json::array();
  for (const auto& is : rep.issues)
    arr.push_back({{"code", is.code},
                   {"level", is.level},
                   {"where", is.where},
                   {"message", is.message}});
  return arr;
}

void print_issues(const adic::Report& rep) {
  for (const auto& is : rep.issues)
    std::cout << "  [" << is.code << "] level " << is.level << " " << is.where
              << ": " << is.message << "\n";
}

std::string interval_str(const adic::Interval& iv) {
  return "[" + rs(iv.lo) + ", " + rs(iv.hi) + ")";
}

// --------------------------------------------------------------------------
// gen
// --------------------------------------------------------------------------

struct GenOpts {
  std::string family;
  std::vector<std::string> args;
  int depth = 0;
  std::string out = "-";
};

int run_gen(const GenOpts& o) {
  adic::FamilySpec f{o.family, o.args, o.depth};
  const adic::DiagramSpec spec = adic::generate(f);
  write_text(o.out, adic::bdg_string(spec));
  if (o.out != "-") std::cerr << "wrote: " << o.out << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// validate
// --------------------------------------------------------------------------

struct ValidateOpts {
  std::string input;
  int depth = -1;
  bool as_json = false;
};

int run_validate(const ValidateOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const int depth = o.depth >= 0 ? o.depth : std::max(spec.hi, -spec.lo);
  const adic::Report structure = adic::validate_diagram(spec);
  adic::Report weights;
  if (structure.ok) weights = adic::check_weight_conditions(spec, depth);
  const bool ok = structure.ok && weights.ok;

  if (o.as_json) {
    json j;
    j["command"] = "validate";
    j["input"] = o.input;
    j["window"] = {{"lo", spec.lo}, {"hi", spec.hi}};
    j["depth"] = depth;
    j["structure"] = {{"ok", structure.ok}, {"issues", issues_json(structure)}};
    j["weights"] = {{"ok", weights.ok}, {"issues", issues_json(weights)}};
    j["ok"] = ok;
    j["seed"] = kDefaultSeed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "input: " << o.input << "\n";
    std::cout << "window: [" << spec.lo << ", " << spec.hi << "]\n";
    if (structure.ok) {
      std::cout << "structure: ok\n";
    } else {
      std::cout << "structure: " << structure.issues.size() << " issue(s)\n";
      print_issues(structure);
    }
    if (!structure.ok) {
      std::cout << "weights: skipped (structure invalid)\n";
    } else if (weights.ok) {
      std::cout << "weights: ok (checked to depth " << depth << ")\n";
    } else {
      std::cout << "weights: " << weights.issues.size() << " issue(s)\n";
      print_issues(weights);
    }
    std::cout << "seed: " << kDefaultSeed << "\n";
  }
  return ok ? 0 : 1;
}

// --------------------------------------------------------------------------
// paths
// --------------------------------------------------------------------------

struct PathsOpts {
  std::string input;
  int depth = -1;
  std::string side = "pos";
  int orbit = 0;
  bool as_json = false;
};

int run_paths(const PathsOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const adic::Sign sign = parse_side(o.side);
  const adic::Half h = adic::half(spec, sign);
  const int depth = o.depth >= 0 ? o.depth : h.depth;
  if (depth > h.depth)
    throw adic::window_error("depth " + std::to_string(depth) +
                             " exceeds the " + o.side + " window (" +
                             std::to_string(h.depth) + ")");
  adic::PathOps ops(h);
  const adic::ComponentDecomposition comp = adic::components(h, depth);

  adic::Int total = 0;
  struct VRow {
    int v;
    adic::Int count;
    std::string min_digits, max_digits;
  };
  std::vector<VRow> rows;
  for (int v = 0; v < h.size(depth); ++v) {
    VRow r;
    r.v = v;
    r.count = ops.count_paths_into(v, depth);
    total += r.count;
    if (depth >= 1) {
      r.min_digits = adic::r_digits(h, ops.min_path_into(v, depth));
      r.max_digits = adic::r_digits(h, ops.max_path_into(v, depth));
    }
    rows.push_back(std::move(r));
  }

  std::vector<std::pair<std::string, std::string>> orbit;  // digits, endpoint info
  if (o.orbit > 0) {
    adic::Path p = ops.min_path_into(0, depth);
    for (int i = 0; i < o.orbit; ++i) {
      orbit.emplace_back(adic::r_digits(h, p),
                         std::to_string(adic::endpoint(h, p)));
      auto nxt = ops.successor(p);
      if (!nxt) {
        orbit.emplace_back("(maximal: no successor in this window)", "");
        break;
      }
      p = *nxt;
    }
  }

  if (o.as_json) {
    json j;
    j["command"] = "paths";
    j["side"] = o.side;
    j["depth"] = depth;
    json vj = json::array();
    for (const auto& r : rows)
      vj.push_back({{"vertex", r.v},
                    {"count", r.count.str()},
                    {"min", r.min_digits},
                    {"max", r.max_digits}});
    j["vertices"] = vj;
    j["total"] = total.str();
    json pj = json::array();
    for (const auto& pc : comp.periodic)
      pj.push_back({{"head", pc.head},
                    {"merge_level", pc.merge_level},
                    {"merge_vertex", pc.merge_vertex},
                    {"period", pc.period.str()},
                    {"mass", rs(pc.mass)},
                    {"null_mass", pc.null_mass}});
    json mj = json::array();
    for (const auto& mc : comp.minimal)
      mj.push_back({{"heads", mc.heads},
                    {"min_count", mc.min_count.str()},
                    {"max_count", mc.max_count.str()}});
    j["periodic"] = pj;
    j["minimal"] = mj;
    if (!orbit.empty()) {
      json oj = json::array();
      for (const auto& [digits, ep] : orbit)
        oj.push_back({{"path", digits}, {"endpoint", ep}});
      j["orbit"] = oj;
    }
    j["seed"] = kDefaultSeed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "side: " << o.side << ", depth: " << depth << "\n";
    for (const auto& r : rows) {
      std::cout << "vertex " << r.v << ": count " << r.count.str();
      if (depth >= 1)
        std::cout << ", min " << r.min_digits << ", max " << r.max_digits;
      std::cout << "\n";
    }
    std::cout << "total paths: " << total.str() << "\n";
    std::cout << "components: " << comp.periodic.size() << " periodic, "
              << comp.minimal.size() << " minimal\n";
    for (size_t i = 0; i < comp.periodic.size(); ++i) {
      const auto& pc = comp.periodic[i];
      std::cout << "  periodic " << i << ": head " << pc.head
                << ", merge level " << pc.merge_level << ", period "
                << pc.period.str() << ", mass " << rs(pc.mass)
                << (pc.null_mass ? ", null-mass" : "") << "\n";
    }
    for (size_t i = 0; i < comp.minimal.size(); ++i) {
      const auto& mc = comp.minimal[i];
      std::cout << "  minimal " << i << ": heads";
      for (int hd : mc.heads) std::cout << " " << hd;
      std::cout << ", counts [" << mc.min_count.str() << ", "
                << mc.max_count.str() << "]\n";
    }
    if (!orbit.empty()) {
      std::cout << "orbit (" << o.orbit << " steps from the minimal path into vertex 0):\n";
      for (size_t i = 0; i < orbit.size(); ++i) {
        std::cout << "  " << i << ": " << orbit[i].first;
        if (!orbit[i].second.empty())
          std::cout << " -> vertex " << orbit[i].second;
        std::cout << "\n";
      }
    }
    std::cout << "seed: " << kDefaultSeed << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------------
// iet
// --------------------------------------------------------------------------

struct IetOpts {
  std::string input = "-";
  int depth = -1;
  std::string side = "pos";
  int limit = -1;  // max pieces to list; -1 = all
  bool as_json = false;
};

int run_iet(const IetOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const adic::Sign sign = parse_side(o.side);
  const adic::Half h = adic::half(spec, sign);
  const int depth = o.depth >= 0 ? o.depth : h.depth;
  const adic::IntervalExchange iet = adic::iet_at_depth(h, depth);

  int steps = 0, wraps = 0;
  for (const auto& pc : iet.pieces) (pc.wrap ? wraps : steps)++;

  if (o.as_json) {
    json j;
    j["command"] = "iet";
    j["side"] = o.side;
    j["depth"] = depth;
    j["domain"] = {{"lo", rs(iet.domain_lo)}, {"hi", rs(iet.domain_hi)}};
    j["pieces"] = static_cast<int>(iet.pieces.size());
    j["steps"] = steps;
    j["wraps"] = wraps;
    j["undefined"] = static_cast<int>(iet.undefined.size());
    json pj = json::array();
    const size_t cap =
        o.limit >= 0 ? std::min<size_t>(o.limit, iet.pieces.size())
                     : iet.pieces.size();
    for (size_t i = 0; i < cap; ++i) {
      const auto& pc = iet.pieces[i];
      pj.push_back({{"lo", rs(pc.src.lo)},
                    {"hi", rs(pc.src.hi)},
                    {"offset", rs(pc.offset)},
                    {"kind", pc.wrap ? "wrap" : "step"}});
    }
    j["table"] = pj;
    json uj = json::array();
    for (const auto& iv : iet.undefined)
      uj.push_back({{"lo", rs(iv.lo)}, {"hi", rs(iv.hi)}});
    j["undefined_intervals"] = uj;
    j["seed"] = kDefaultSeed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "side: " << o.side << ", depth: " << depth << "\n";
    std::cout << "domain: [" << rs(iet.domain_lo) << ", " << rs(iet.domain_hi)
              << ")\n";
    std::cout << "pieces: " << iet.pieces.size() << " (" << steps << " steps, "
              << wraps << " wraps), undefined: " << iet.undefined.size()
              << "\n";
    const size_t cap =
        o.limit >= 0 ? std::min<size_t>(o.limit, iet.pieces.size())
                     : iet.pieces.size();
    for (size_t i = 0; i < cap; ++i) {
      const auto& pc = iet.pieces[i];
      const adic::Interval img{pc.src.lo + pc.offset, pc.src.hi + pc.offset};
      std::cout << "  " << (i + 1) << ": " << interval_str(pc.src) << " -> "
                << interval_str(img) << "  offset " << rs(pc.offset) << "  "
                << (pc.wrap ? "wrap" : "step") << "\n";
    }
    if (cap < iet.pieces.size())
      std::cout << "  ... (" << iet.pieces.size() - cap << " more)\n";
    for (const auto& iv : iet.undefined)
      std::cout << "  undefined: " << interval_str(iv) << "\n";
    std::cout << "seed: " << kDefaultSeed << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------------
// surface
// --------------------------------------------------------------------------

struct SurfaceOpts {
  std::string input;
  int depth = -1;
  bool as_json = false;
};

int run_surface(const SurfaceOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const int depth = o.depth >= 0 ? o.depth : std::max(spec.hi, -spec.lo);
  const adic::FlatSurfaceModel s = adic::build_surface(spec, depth);
  const Rat a = adic::area(s);

  if (o.as_json) {
    json j;
    j["command"] = "surface";
    j["depth_plus"] = s.depth_plus;
    j["depth_minus"] = s.depth_minus;
    json rj = json::array();
    for (int v = 0; v < s.rect_count(); ++v)
      rj.push_back({{"vertex", v},
                    {"x_lo", rs(s.x_edge[v])},
                    {"x_hi", rs(s.x_edge[v + 1])},
                    {"y_lo", rs(s.y_edge[v])},
                    {"y_hi", rs(s.y_edge[v + 1])},
                    {"width", rs(s.widths[v])},
                    {"height", rs(s.heights[v])}});
    j["rectangles"] = rj;
    j["area"] = rs(a);
    j["t_plus"] = {{"pieces", static_cast<int>(s.t_plus.pieces.size())},
                   {"undefined", static_cast<int>(s.t_plus.undefined.size())}};
    j["t_minus"] = {{"pieces", static_cast<int>(s.t_minus.pieces.size())},
                    {"undefined", static_cast<int>(s.t_minus.undefined.size())}};
    j["seed"] = kDefaultSeed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "depth: plus " << s.depth_plus << ", minus " << s.depth_minus
              << "\n";
    for (int v = 0; v < s.rect_count(); ++v)
      std::cout << "rect " << v << ": [" << rs(s.x_edge[v]) << ", "
                << rs(s.x_edge[v + 1]) << ") x [" << rs(s.y_edge[v]) << ", "
                << rs(s.y_edge[v + 1]) << ")  (" << rs(s.widths[v]) << " x "
                << rs(s.heights[v]) << ")\n";
    std::cout << "area: " << rs(a) << "\n";
    std::cout << "t_plus: " << s.t_plus.pieces.size() << " pieces, "
              << s.t_plus.undefined.size() << " undefined\n";
    std::cout << "t_minus: " << s.t_minus.pieces.size() << " pieces, "
              << s.t_minus.undefined.size() << " undefined\n";
    std::cout << "seed: " << kDefaultSeed << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------------
// flow
// --------------------------------------------------------------------------

struct FlowOpts {
  std::string input;
  int depth = -1;
  std::string x, y;  // empty = seeded random start
  std::string time = "1";
  std::string dir = "vertical";
  bool use_float = false;
  bool no_refine = false;
  int max_depth = 64;
  int events = 20;
  unsigned seed = kDefaultSeed;
  bool as_json = false;
};

const char* status_name(adic::FlowStatus st) {
  switch (st) {
    case adic::FlowStatus::ok: return "ok";
    case adic::FlowStatus::singular_hit: return "singular_hit";
    case adic::FlowStatus::depth_exceeded: return "depth_exceeded";
  }
  return "?";
}

int run_flow(const FlowOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const int depth = o.depth >= 0 ? o.depth : std::max(spec.hi, -spec.lo);
  const adic::FlatSurfaceModel s = adic::build_surface(spec, depth);

  adic::FlowDirection dir;
  if (o.dir == "vertical") dir = adic::FlowDirection::vertical;
  else if (o.dir == "horizontal") dir = adic::FlowDirection::horizontal;
  else throw adic::error("dir must be 'vertical' or 'horizontal'");

  Rat x, y;
  bool seeded_start = false;
  if (o.x.empty() != o.y.empty())
    throw adic::error("give both --x and --y, or neither");
  if (o.x.empty()) {
    seeded_start = true;
    std::mt19937 rng(o.seed);
    auto unit = [&rng] {
      const unsigned den = (rng() % 999983u) + 2u;
      const unsigned num = rng() % den;
      return Rat(num, den);
    };
    x = unit() * s.x_edge.back();
    const int r = s.rect_of_x(x);
    y = s.y_edge[r] + unit() * (s.y_edge[r + 1] - s.y_edge[r]);
  } else {
    x = adic::parse_rat(o.x);
    y = adic::parse_rat(o.y);
  }
  const Rat t = adic::parse_rat(o.time);

  adic::FlowOptions fopt;
  fopt.auto_refine = !o.no_refine;
  fopt.max_depth = o.max_depth;

  json j;
  j["command"] = "flow";
  j["start"] = {{"x", rs(x)}, {"y", rs(y)}, {"seeded", seeded_start}};
  j["dir"] = o.dir;
  j["time"] = rs(t);
  j["mode"] = o.use_float ? "float" : "exact";

  if (o.use_float) {
    const adic::FloatFlowResult r =
        adic::flow_float(s, adic::rat_double(x), adic::rat_double(y),
                         adic::rat_double(t), dir, fopt);
    if (o.as_json) {
      j["status"] = status_name(r.status);
      j["end"] = {{"rect", r.rect}, {"x", f6(r.x)}, {"y", f6(r.y)}};
      j["t_reached"] = f6(r.t_reached);
      j["depth_used"] = r.depth_used;
      j["seed"] = o.seed;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "start: (" << rs(x) << ", " << rs(y) << ")"
                << (seeded_start ? "  [seeded]" : "") << "\n";
      std::cout << "dir: " << o.dir << ", time: " << rs(t)
                << ", mode: float\n";
      std::cout << "status: " << status_name(r.status) << "\n";
      std::cout << "end: rect " << r.rect << ", (" << f6(r.x) << ", "
                << f6(r.y) << "), t_reached: " << f6(r.t_reached)
                << ", depth used: " << r.depth_used << "\n";
      std::cout << "seed: " << o.seed << "\n";
    }
    return 0;
  }

  const adic::FlowResult r = adic::flow(s, {x, y}, t, dir, fopt);
  if (o.as_json) {
    j["status"] = status_name(r.status);
    j["end"] = {{"x", rs(r.end.x)}, {"y", rs(r.end.y)}};
    j["t_reached"] = rs(r.t_reached);
    j["depth_used"] = r.depth_used;
    if (r.status == adic::FlowStatus::depth_exceeded)
      j["suggested_depth"] = r.suggested_depth;
    json ej = json::array();
    const size_t cap = std::min<size_t>(o.events, r.events.size());
    for (size_t i = 0; i < cap; ++i)
      ej.push_back({{"t", rs(r.events[i].t)},
                    {"rect", r.events[i].rect},
                    {"x", rs(r.events[i].x)},
                    {"y", rs(r.events[i].y)}});
    j["crossings"] = static_cast<int>(r.events.size());
    j["events"] = ej;
    j["seed"] = o.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "start: (" << rs(x) << ", " << rs(y) << ")"
              << (seeded_start ? "  [seeded]" : "") << "\n";
    std::cout << "dir: " << o.dir << ", time: " << rs(t) << ", mode: exact\n";
    std::cout << "status: " << status_name(r.status);
    if (r.status == adic::FlowStatus::depth_exceeded)
      std::cout << " (suggest --depth " << r.suggested_depth << ")";
    std::cout << "\n";
    std::cout << "end: (" << rs(r.end.x) << ", " << rs(r.end.y)
              << "), t_reached: " << rs(r.t_reached) << ", depth used: "
              << r.depth_used << "\n";
    std::cout << "crossings: " << r.events.size() << "\n";
    const size_t cap = std::min<size_t>(o.events, r.events.size());
    for (size_t i = 0; i < cap; ++i)
      std::cout << "  t=" << rs(r.events[i].t) << ", rect "
                << r.events[i].rect << ", (" << rs(r.events[i].x) << ", "
                << rs(r.events[i].y) << ")\n";
    if (cap < r.events.size())
      std::cout << "  ... (" << r.events.size() - cap << " more)\n";
    std::cout << "seed: " << o.seed << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------------
// shift
// --------------------------------------------------------------------------

struct ShiftOpts {
  std::string input;
  int k = 0;
  std::string out;  // empty: diagram to stdout, report to stderr
  bool as_json = false;
};

int run_shift(const ShiftOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const adic::RenormState st = adic::shift(spec, o.k);

  std::ostringstream rep;
  rep << "offset: " << st.offset << "\n";
  rep << "  j  exp(t_j)  t_j\n";
  for (size_t i = 0; i < st.scales.size(); ++i)
    rep << "  " << i << "  " << rs(st.scales[i]) << "  "
        << f6(std::log(adic::rat_double(st.scales[i]))) << "\n";
  rep << "window: [" << st.spec.lo << ", " << st.spec.hi << "]\n";
  rep << "seed: " << kDefaultSeed << "\n";

  if (o.as_json) {
    json j;
    j["command"] = "shift";
    j["offset"] = st.offset;
    json sj = json::array();
    for (size_t i = 0; i < st.scales.size(); ++i)
      sj.push_back({{"j", i},
                    {"exp_t", rs(st.scales[i])},
                    {"t", f6(std::log(adic::rat_double(st.scales[i])))}});
    j["scales"] = sj;
    j["window"] = {{"lo", st.spec.lo}, {"hi", st.spec.hi}};
    if (o.out.empty())
      j["bdg"] = adic::bdg_string(st.spec);
    else
      j["wrote"] = o.out;
    j["seed"] = kDefaultSeed;
    std::cout << j.dump(2) << "\n";
    if (!o.out.empty()) write_text(o.out, adic::bdg_string(st.spec));
  } else if (o.out.empty()) {
    // Keep stdout pipeable: the shifted diagram goes there, the report to
    // stderr.
    std::cerr << rep.str();
    std::cout << adic::bdg_string(st.spec);
  } else {
    write_text(o.out, adic::bdg_string(st.spec));
    std::cout << rep.str();
    std::cout << "wrote: " << o.out << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------------
// functoriality
// --------------------------------------------------------------------------

struct FunctOpts {
  std::string input;
  int k = 1;
  int samples = 100;
  unsigned seed = kDefaultSeed;
  bool as_json = false;
};

int run_functoriality(const FunctOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const adic::FunctorialityReport rep =
      adic::check_functoriality(spec, o.k, o.samples, o.seed);
  if (o.as_json) {
    json j;
    j["command"] = "functoriality";
    j["offset"] = rep.offset;
    j["rect_match"] = rep.rect_match;
    j["checked_plus"] = rep.checked_plus;
    j["agreed_plus"] = rep.agreed_plus;
    j["checked_minus"] = rep.checked_minus;
    j["agreed_minus"] = rep.agreed_minus;
    j["resampled"] = rep.resampled;
    j["ok"] = rep.ok;
    j["seed"] = rep.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.str() << "\n";
    std::cout << "seed: " << rep.seed << "\n";
  }
  return rep.ok ? 0 : 1;
}

// --------------------------------------------------------------------------
// criterion
// --------------------------------------------------------------------------

struct CriterionOpts {
  std::string input;
  std::string eta;
  int depth = -1;
  std::string hint;
  int bound = 16;
  std::string telescope_ratio;  // empty: no telescoped re-run
  bool as_json = false;
};

std::string tunnel_str(const adic::TunnelResult& t, int bound) {
  switch (t.status) {
    case adic::TunnelStatus::found: return std::to_string(t.m);
    case adic::TunnelStatus::exceeds_bound: return ">" + std::to_string(bound);
    case adic::TunnelStatus::disconnected: return "disc";
  }
  return "?";
}

json rows_json(const std::vector<adic::CriterionRow>& rows, int bound) {
  json arr = json::array();
  for (const auto& r : rows) {
    json jr;
    jr["k"] = r.k;
    jr["exp_t"] = rs(r.scale);
    jr["d_plus"] = tunnel_str(r.dplus, bound);
    jr["d_minus"] = tunnel_str(r.dminus, bound);
    jr["delta"] = r.delta ? json(rs(*r.delta)) : json(nullptr);
    jr["sigma"] = rs(r.sigma);
    jr["eps"] = rs(r.eps);
    jr["vertices"] = r.vertices;
    jr["summand"] = r.summand ? json(rs(*r.summand)) : json(nullptr);
    jr["partial"] = rs(r.partial);
    arr.push_back(std::move(jr));
  }
  return arr;
}

void print_rows(const std::vector<adic::CriterionRow>& rows, int bound) {
  std::cout << "  k  exp(t_k)  d+  d-  delta  sigma  eps  summand  partial\n";
  for (const auto& r : rows) {
    std::cout << "  " << r.k << "  " << rs(r.scale) << "  "
              << tunnel_str(r.dplus, bound) << "  "
              << tunnel_str(r.dminus, bound) << "  "
              << (r.delta ? rs(*r.delta) : std::string("-")) << "  "
              << rs(r.sigma) << "  " << rs(r.eps) << "  "
              << (r.summand ? rs(*r.summand) : std::string("-")) << "  "
              << rs(r.partial) << "\n";
  }
}

int run_criterion(const CriterionOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const Rat eta = adic::parse_rat(o.eta);
  const int depth = o.depth >= 0 ? o.depth : std::max(0, spec.hi - 1);
  const adic::ErgodicityReport rep =
      adic::ergodicity_report(spec, eta, depth, o.hint, o.bound);

  std::optional<adic::ErgodicityReport> tele;
  std::vector<int> cuts;
  if (!o.telescope_ratio.empty()) {
    cuts = adic::auto_telescope_cuts(spec, adic::parse_rat(o.telescope_ratio));
    const adic::DiagramSpec tspec = adic::telescope(spec, cuts);
    const int tdepth = std::min(depth, std::max(0, tspec.hi - 1));
    tele = adic::ergodicity_report(tspec, eta, tdepth, o.hint, o.bound);
  }

  if (o.as_json) {
    json j;
    j["command"] = "criterion";
    j["eta"] = rs(rep.eta);
    j["bound"] = rep.search_bound;
    j["depth"] = depth;
    if (!o.hint.empty()) j["family_hint"] = o.hint;
    j["rows"] = rows_json(rep.rows, rep.search_bound);
    j["verdict"] = adic::verdict_name(rep.verdict);
    j["rationale"] = rep.rationale;
    if (tele) {
      json tj;
      tj["ratio"] = o.telescope_ratio;
      tj["cuts"] = cuts;
      tj["rows"] = rows_json(tele->rows, tele->search_bound);
      tj["verdict"] = adic::verdict_name(tele->verdict);
      tj["rationale"] = tele->rationale;
      j["telescoped"] = tj;
    }
    j["seed"] = kDefaultSeed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "eta: " << rs(rep.eta) << ", bound: " << rep.search_bound
              << ", depth: " << depth << "\n";
    if (!o.hint.empty()) std::cout << "family hint: " << o.hint << "\n";
    print_rows(rep.rows, rep.search_bound);
    std::cout << "verdict: " << adic::verdict_name(rep.verdict) << "\n";
    std::cout << "rationale: " << rep.rationale << "\n";
    if (tele) {
      std::cout << "telescoped (ratio " << o.telescope_ratio << "): cuts";
      for (int c : cuts) std::cout << " " << c;
      std::cout << "\n";
      print_rows(tele->rows, tele->search_bound);
      std::cout << "telescoped verdict: " << adic::verdict_name(tele->verdict)
                << "\n";
      std::cout << "telescoped rationale: " << tele->rationale << "\n";
    }
    std::cout << "seed: " << kDefaultSeed << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------------
// render
// --------------------------------------------------------------------------

struct RenderOpts {
  std::string input;
  int depth = -1;
  std::string out = "-";
  double px = 420.0;
  int max_labels = 12;
  bool no_labels = false;
};

int run_render(const RenderOpts& o) {
  const adic::DiagramSpec spec = load_spec(o.input);
  const int depth = o.depth >= 0 ? o.depth : std::max(spec.hi, -spec.lo);
  const adic::FlatSurfaceModel s = adic::build_surface(spec, depth);
  adic::SvgOptions sopt;
  sopt.px_per_unit = o.px;
  sopt.labels = !o.no_labels;
  sopt.max_labels = o.max_labels;
  const std::string svg = adic::render_svg(s, sopt);
  write_text(o.out, svg);
  if (o.out != "-") {
    std::cout << "wrote: " << o.out << " (" << svg.size() << " bytes)\n";
    std::cout << "seed: " << kDefaultSeed << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-infinite ordered diagrams as executable dynamics"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* cgen = app.add_subcommand("gen", "generate a family diagram as .bdg");
  cgen->add_option("family", gen.family, "family name")->required();
  cgen->add_option("args", gen.args, "family parameters");
  cgen->add_option("--depth,-d", gen.depth, "stages to materialize")->required();
  cgen->add_option("--out,-o", gen.out, "output path ('-' = stdout)");

  ValidateOpts val;
  auto* cval = app.add_subcommand("validate", "check structure and weight conditions");
  cval->add_option("input", val.input, ".bdg path ('-' = stdin)")->required();
  cval->add_option("--depth,-d", val.depth, "weight-check depth (default: full window)");
  cval->add_flag("--json", val.as_json, "emit the report as JSON");

  PathsOpts pth;
  auto* cpth = app.add_subcommand("paths", "path counts, extremes, components, orbits");
  cpth->add_option("input", pth.input, ".bdg path ('-' = stdin)")->required();
  cpth->add_option("--depth,-d", pth.depth, "path depth (default: side window)");
  cpth->add_option("--side", pth.side, "pos or neg (default pos)");
  cpth->add_option("--orbit", pth.orbit, "print this many successor steps");
  cpth->add_flag("--json", pth.as_json, "emit the report as JSON");

  IetOpts iet;
  auto* ciet = app.add_subcommand("iet", "interval exchange of one half at a depth");
  ciet->add_option("input", iet.input, ".bdg path ('-' = stdin, default)");
  ciet->add_option("--depth,-d", iet.depth, "stage depth (default: side window)");
  ciet->add_option("--side", iet.side, "pos or neg (default pos)");
  ciet->add_option("--limit", iet.limit, "list at most this many pieces");
  ciet->add_flag("--json", iet.as_json, "emit the report as JSON");

  SurfaceOpts srf;
  auto* csrf = app.add_subcommand("surface", "rectangle layout and gluing summary");
  csrf->add_option("input", srf.input, ".bdg path ('-' = stdin)")->required();
  csrf->add_option("--depth,-d", srf.depth, "gluing depth (default: window)");
  csrf->add_flag("--json", srf.as_json, "emit the report as JSON");

  FlowOpts flw;
  auto* cflw = app.add_subcommand("flow", "straight-line flow on the surface");
  cflw->add_option("input", flw.input, ".bdg path ('-' = stdin)")->required();
  cflw->add_option("--depth,-d", flw.depth, "gluing depth (default: window)");
  cflw->add_option("--x", flw.x, "start x (exact rational; omit for a seeded start)");
  cflw->add_option("--y", flw.y, "start y");
  cflw->add_option("--time,-t", flw.time, "flow time (default 1)");
  cflw->add_option("--dir", flw.dir, "vertical or horizontal (default vertical)");
  cflw->add_flag("--float", flw.use_float, "double-precision trajectory");
  cflw->add_flag("--no-refine", flw.no_refine, "never deepen the gluing maps");
  cflw->add_option("--max-depth", flw.max_depth, "refinement cap (default 64)");
  cflw->add_option("--events", flw.events, "crossings to list (default 20)");
  cflw->add_option("--seed", flw.seed, "seed for the random start");
  cflw->add_flag("--json", flw.as_json, "emit the report as JSON");

  ShiftOpts shf;
  auto* cshf = app.add_subcommand("shift", "re-root the window k levels up");
  cshf->add_option("input", shf.input, ".bdg path ('-' = stdin)")->required();
  cshf->add_option("-k,--offset", shf.k, "shift amount")->required();
  cshf->add_option("--out,-o", shf.out, "write the shifted .bdg here");
  cshf->add_flag("--json", shf.as_json, "emit the report as JSON");

  FunctOpts fnc;
  auto* cfnc = app.add_subcommand("functoriality",
                                  "compare shifted surface against the deformed original");
  cfnc->add_option("input", fnc.input, ".bdg path ('-' = stdin)")->required();
  cfnc->add_option("-k,--offset", fnc.k, "shift amount (default 1)");
  cfnc->add_option("--samples", fnc.samples, "random sample count (default 100)");
  cfnc->add_option("--seed", fnc.seed, "sampling seed");
  cfnc->add_flag("--json", fnc.as_json, "emit the report as JSON");

  CriterionOpts cri;
  auto* ccri = app.add_subcommand("criterion", "ergodicity criterion rows and verdict");
  ccri->add_option("input", cri.input, ".bdg path ('-' = stdin)")->required();
  ccri->add_option("--eta", cri.eta, "diameter bound, exact rational or decimal")->required();
  ccri->add_option("--depth,-d", cri.depth, "rows 0..K (default hi-1)");
  ccri->add_option("--family-hint", cri.hint,
                   "declared growth class, e.g. 'symmetric: n_k bounded'");
  ccri->add_option("--bound", cri.bound, "tunneling search bound (default 16)");
  ccri->add_option("--telescope-ratio", cri.telescope_ratio,
                   "also run on the auto-telescoped diagram with this mass ratio");
  ccri->add_flag("--json", cri.as_json, "emit the report as JSON");

  RenderOpts rnd;
  auto* crnd = app.add_subcommand("render", "SVG picture of the surface");
  crnd->add_option("input", rnd.input, ".bdg path ('-' = stdin)")->required();
  crnd->add_option("--depth,-d", rnd.depth, "gluing depth (default: window)");
  crnd->add_option("--out,-o", rnd.out, "output path ('-' = stdout)");
  crnd->add_option("--px", rnd.px, "pixels per unit (default 420)");
  crnd->add_option("--max-labels", rnd.max_labels, "gluing labels per side (default 12)");
  crnd->add_flag("--no-labels", rnd.no_labels, "skip gluing labels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return run_gen(gen);
    if (cval->parsed()) return run_validate(val);
    if (cpth->parsed()) return run_paths(pth);
    if (ciet->parsed()) return run_iet(iet);
    if (csrf->parsed()) return run_surface(srf);
    if (cflw->parsed()) return run_flow(flw);
    if (cshf->parsed()) return run_shift(shf);
    if (cfnc->parsed()) return run_functoriality(fnc);
    if (ccri->parsed()) return run_criterion(cri);
    if (crnd->parsed()) return run_render(rnd);
  } catch (const adic::window_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const adic::error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "adic: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
