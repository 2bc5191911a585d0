#pragma once

// Lattice points in Z^n used as monomial exponents.

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace sgb {

using Int = std::int32_t;
using Point = std::vector<Int>;

inline Point point_add(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point point_sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool point_is_zero(const Point& a) {
  for (Int v : a)
    if (v != 0) return false;
  return true;
}

inline long long point_total(const Point& a) {
  long long s = 0;
  for (Int v : a) s += v;
  return s;
}

/// Plain lexicographic comparison, used for deterministic container ordering.
inline int point_cmp_lex(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return point_cmp_lex(a, b) < 0; }
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ p.size();
    for (Int v : p) h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(v))) * 0x100000001b3ull;
    return h;
  }
};

inline std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  s += ")";
  return s;
}

}  // namespace sgb
