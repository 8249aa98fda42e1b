#pragma once

#include <stdexcept>
#include <string>

namespace adic {

// Unrecoverable misuse: malformed input, inconsistent diagram data, bad
// arguments. CLI maps this to a nonzero exit.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error("adic: " + what) {}
};

// A request reached past the materialized level window (or a family's
// structural depth cap). Kept distinct so callers can either extend the
// window and retry or report a depth error (CLI exit code 2).
class window_error : public error {
 public:
  explicit window_error(const std::string& what) : error(what) {}
};

}  // namespace adic
