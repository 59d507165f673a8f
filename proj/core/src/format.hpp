#pragma once

#include <string>

#include "mrb/linalg.hpp"

namespace mrb::detail {

// Appends "c * word" with sign handling: coefficient 1 is omitted, -1 becomes
// a bare minus sign.
inline void append_term(std::string& out, const Scalar& c, const std::string& word) {
  const bool first = out.empty();
  Scalar mag = abs(c);
  if (sgn(c) < 0)
    out += first ? "-" : " - ";
  else if (!first)
    out += " + ";
  if (mag != 1) out += mag.get_str() + " * ";
  out += word;
}

}  // namespace mrb::detail
