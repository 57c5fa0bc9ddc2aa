#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>

namespace lincost {

using Rat = mpq_class;

// Renders "p/q", or just "p" when the denominator is 1.
inline std::string rat_str(const Rat& q) {
  return q.get_str();
}

// Parses "p", "-p", "p/q". Returns nullopt on malformed input.
inline std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  bool seen_slash = false;
  for (size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (seen_slash || j + 1 == s.size() || j == i) return std::nullopt;
      seen_slash = true;
    } else if (!isdigit(static_cast<unsigned char>(s[j]))) {
      return std::nullopt;
    }
  }
  Rat q;
  if (q.set_str(s, 10) != 0) return std::nullopt;
  if (seen_slash && mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

}  // namespace lincost
