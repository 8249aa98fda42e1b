#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adic/diagram.hpp"

namespace adic {

// A `family` directive found in a .bdg file (or assembled by the CLI):
// the generator name, its raw argument tokens, and the requested depth.
struct FamilySpec {
  std::string name;
  std::vector<std::string> args;
  int depth = 0;
};

// Parsed .bdg content: either explicit diagram data or a family directive,
// never both.
struct BdgFile {
  std::optional<DiagramSpec> spec;
  std::optional<FamilySpec> family;
};

// Text format, one directive per line ('#' starts a comment):
//   levels <lo> <hi>
//   level <i> <count>
//   edge <set> <src> <dst> <r-rank> <s-rank> [w=<p>/<q>]
//   w0+ <v> <p>/<q>
//   w0- <v> <p>/<q>
//   family <name> <args...> depth <K>
// Vertex indices are 0-based, ranks 1-based. Parse errors carry the line
// number.
BdgFile parse_bdg(std::istream& in);
BdgFile parse_bdg_string(const std::string& text);
BdgFile load_bdg(const std::string& path);  // "-" reads stdin

void write_bdg(std::ostream& out, const DiagramSpec& spec);
std::string bdg_string(const DiagramSpec& spec);

}  // namespace adic
