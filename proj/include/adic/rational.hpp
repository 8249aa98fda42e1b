#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace adic {

// All weight/geometry arithmetic is exact. Floats appear only when rendering
// or accumulating statistics, via explicit conversion.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p". Throws adic::error on malformed input.
Rat parse_rat(const std::string& s);

// Canonical "p/q" spelling ("p" when the denominator is 1).
std::string rat_string(const Rat& r);

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace adic
