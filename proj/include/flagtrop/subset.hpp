#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flagtrop {

// Subsets of [n] as bitmasks; element k (1-based) is bit k-1.
using Subset = std::uint32_t;

constexpr int kMaxGround = 9;

inline constexpr Subset element(int k) { return Subset{1} << (k - 1); }
inline constexpr Subset ground_set(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
inline int cardinality(Subset s) { return std::popcount(s); }
inline bool contains(Subset s, int k) { return (s >> (k - 1)) & 1U; }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }

inline std::vector<int> elements(Subset s) {
  std::vector<int> out;
  for (int k = 1; s; ++k, s >>= 1)
    if (s & 1U) out.push_back(k);
  return out;
}

inline Subset from_elements(const std::vector<int>& elems) {
  Subset s = 0;
  for (int k : elems) {
    if (k < 1 || k > 31) throw std::invalid_argument("subset element out of range: " + std::to_string(k));
    s |= element(k);
  }
  return s;
}

// Digit-string rendering ("134"); the empty set renders as "" (callers that
// need a visible token use to_label).
inline std::string to_string(Subset s) {
  std::string out;
  for (int k : elements(s)) out += std::to_string(k);
  return out;
}
inline std::string to_label(Subset s) { return s ? to_string(s) : std::string("{}"); }

inline Subset parse_subset(std::string_view text) {
  Subset s = 0;
  for (char c : text) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad subset digit in \"" + std::string(text) + "\"");
    const Subset bit = element(c - '0');
    if (s & bit) throw std::invalid_argument("repeated element in \"" + std::string(text) + "\"");
    s |= bit;
  }
  return s;
}

// Graded lexicographic order on subsets: smaller sets first, then
// lexicographic on ascending element lists (12 < 13 < 14 < 23).
inline bool graded_lex_less(Subset a, Subset b) {
  const int ca = cardinality(a), cb = cardinality(b);
  if (ca != cb) return ca < cb;
  return elements(a) < elements(b);
}

// All k-subsets of [n] in lexicographic order.
inline std::vector<Subset> k_subsets(int n, int k) {
  std::vector<Subset> out;
  for (Subset s = 0; s <= ground_set(n); ++s)
    if (cardinality(s) == k) out.push_back(s);
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

}  // namespace flagtrop
