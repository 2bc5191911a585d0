#pragma once

// Pointed affine semigroups generated by the lattice points of a family of
// polytopes, all viewed through one merged generator set.  Provides the
// affine degree (minimal number of generators summing to a point), the
// degree-level monomial sets of the homogenized algebra, homogenization and
// dehomogenization of monomials, and the restricted division relation.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sparsegb/point.hpp"

namespace sgb {

using BigRat = boost::multiprecision::cpp_rational;

/// Monomial X^(s,d) of the homogenized algebra; affine monomials use d = 0.
struct SgMono {
  Point s;
  Int d = 0;

  friend bool operator==(const SgMono& a, const SgMono& b) { return a.d == b.d && a.s == b.s; }
};

struct SgMonoHash {
  std::size_t operator()(const SgMono& m) const {
    return PointHash{}(m.s) * 1000003u + static_cast<std::size_t>(m.d);
  }
};

namespace detail {

// Feasibility of { w in Q^n : w.g >= 1 for all rows g } by Fourier-Motzkin
// elimination; returns a feasible w if one exists.
class PositiveFunctional {
 public:
  static std::optional<std::vector<BigRat>> find(const std::vector<Point>& gens, int n) {
    // constraints: sum_j c[j]*w[j] >= rhs
    struct Cons {
      std::vector<BigRat> c;
      BigRat rhs;
    };
    std::vector<Cons> cons;
    cons.reserve(gens.size());
    for (const Point& g : gens) {
      Cons cc;
      cc.c.assign(g.begin(), g.end());
      cc.rhs = 1;
      cons.push_back(std::move(cc));
    }
    std::vector<std::vector<Cons>> stages;  // constraints alive before eliminating var k
    for (int k = n - 1; k >= 0; --k) {
      stages.push_back(cons);
      std::vector<Cons> lower, upper, rest;  // w_k >= L, w_k <= U, no w_k
      for (auto& cc : cons) {
        if (cc.c[k] > 0) lower.push_back(cc);
        else if (cc.c[k] < 0) upper.push_back(cc);
        else rest.push_back(cc);
      }
      std::vector<Cons> next = rest;
      for (auto& lo : lower) {
        for (auto& up : upper) {
          // combine: eliminate w_k from lo (coef>0) and up (coef<0)
          BigRat a = lo.c[k], b = -up.c[k];
          Cons cc;
          cc.c.resize(n);
          for (int j = 0; j < n; ++j) cc.c[j] = b * lo.c[j] + a * up.c[j];
          cc.rhs = b * lo.rhs + a * up.rhs;
          cc.c[k] = 0;
          next.push_back(std::move(cc));
        }
      }
      cons = std::move(next);
    }
    // all variables eliminated: constraints are 0 >= rhs
    for (auto& cc : cons)
      if (cc.rhs > 0) return std::nullopt;
    // back-substitute, picking a value within [max lower, min upper] per var
    std::vector<BigRat> w(n, 0);
    for (int k = 0; k < n; ++k) {
      const auto& alive = stages[n - 1 - k];
      bool has_lo = false, has_up = false;
      BigRat lo = 0, up = 0;
      for (const auto& cc : alive) {
        BigRat acc = cc.rhs;
        for (int j = 0; j < n; ++j)
          if (j != k) acc -= cc.c[j] * w[j];
        if (cc.c[k] > 0) {
          BigRat bound = acc / cc.c[k];
          if (!has_lo || bound > lo) lo = bound, has_lo = true;
        } else if (cc.c[k] < 0) {
          BigRat bound = acc / cc.c[k];
          if (!has_up || bound < up) up = bound, has_up = true;
        }
      }
      if (has_lo && has_up) w[k] = (lo + up) / 2;
      else if (has_lo) w[k] = lo;
      else if (has_up) w[k] = up;
      else w[k] = 0;
    }
    return w;
  }
};

// Caratheodory search: a nonnegative, nonzero rational combination of the
// generators summing to zero, if one exists among affinely independent
// subsets of size <= n+1.
inline std::optional<std::vector<std::pair<Point, long long>>> zero_combination(
    const std::vector<Point>& gens, int n) {
  const int m = static_cast<int>(gens.size());
  std::vector<int> idx;
  std::optional<std::vector<std::pair<Point, long long>>> found;

  auto try_subset = [&](const std::vector<int>& sub) -> bool {
    // solve sum c_i g_i = 0, sum c_i = 1 exactly
    const int t = static_cast<int>(sub.size());
    std::vector<std::vector<BigRat>> a(n + 1, std::vector<BigRat>(t + 1, 0));
    for (int j = 0; j < t; ++j) {
      for (int i = 0; i < n; ++i) a[i][j] = gens[sub[j]][i];
      a[n][j] = 1;
    }
    a[n][t] = 1;  // rhs
    // Gaussian elimination
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < t && row < n + 1; ++col) {
      int pr = -1;
      for (int r = row; r < n + 1; ++r)
        if (a[r][col] != 0) { pr = r; break; }
      if (pr < 0) continue;
      std::swap(a[row], a[pr]);
      BigRat pv = a[row][col];
      for (int c = col; c <= t; ++c) a[row][c] /= pv;
      for (int r = 0; r < n + 1; ++r) {
        if (r == row || a[r][col] == 0) continue;
        BigRat f = a[r][col];
        for (int c = col; c <= t; ++c) a[r][c] -= f * a[row][c];
      }
      pivot_col.push_back(col);
      ++row;
    }
    for (int r = row; r < n + 1; ++r)
      if (a[r][t] != 0) return false;  // inconsistent
    if (static_cast<int>(pivot_col.size()) != t) return false;  // not unique
    std::vector<BigRat> c(t);
    for (int j = 0; j < t; ++j) c[j] = a[j][t];
    for (const BigRat& v : c)
      if (v < 0) return false;
    // scale to integers
    boost::multiprecision::cpp_int lcm = 1;
    for (const BigRat& v : c) {
      auto den = boost::multiprecision::denominator(v);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<std::pair<Point, long long>> wit;
    for (int j = 0; j < t; ++j) {
      BigRat scaled = c[j] * BigRat(lcm);
      long long mult = boost::multiprecision::numerator(scaled).convert_to<long long>();
      if (mult > 0) wit.emplace_back(gens[sub[j]], mult);
    }
    found = std::move(wit);
    return true;
  };

  std::function<bool(int, int)> rec = [&](int start, int left) -> bool {
    if (left == 0) return try_subset(idx);
    for (int i = start; i + left <= m; ++i) {
      idx.push_back(i);
      if (rec(i + 1, left - 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (int size = 1; size <= std::min(m, n + 1); ++size)
    if (rec(0, size)) return found;
  return std::nullopt;
}

}  // namespace detail

class SemigroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generator data plus the memoized degree levels of the merged semigroup.
/// Immutable after construction; the level cache is internally synchronized.
class SemigroupContext {
 public:
  SemigroupContext(std::vector<std::vector<Point>> polytopes, int ambient_dim,
                   int degree_cap = 64)
      : dim_(ambient_dim), cap_(degree_cap), polytopes_(std::move(polytopes)) {
    if (polytopes_.empty()) throw SemigroupError("semigroup: no polytopes given");
    std::set<Point, PointLess> gen_set;
    for (const auto& poly : polytopes_) {
      if (poly.empty()) throw SemigroupError("semigroup: empty polytope");
      bool has_origin = false;
      for (const Point& p : poly) {
        if (static_cast<int>(p.size()) != dim_)
          throw SemigroupError("semigroup: point dimension mismatch at " + point_str(p));
        if (point_is_zero(p)) has_origin = true;
        else gen_set.insert(p);
      }
      if (!has_origin) throw SemigroupError("semigroup: polytope does not contain the origin");
    }
    generators_.assign(gen_set.begin(), gen_set.end());

    if (!generators_.empty()) {
      auto w = detail::PositiveFunctional::find(generators_, dim_);
      if (!w) {
        std::string msg = "semigroup: not pointed";
        if (auto wit = detail::zero_combination(generators_, dim_)) {
          msg += "; witness: 0 =";
          for (auto& [pt, mult] : *wit)
            msg += " + " + std::to_string(mult) + "*" + point_str(pt);
        }
        throw SemigroupError(msg);
      }
      certificate_ = rational_to_integer_weights(*w);
    } else {
      certificate_.assign(dim_, 1);
    }

    levels_.push_back({Point(dim_, 0)});
    delta_of_.emplace(Point(dim_, 0), 0);
  }

  int ambient_dim() const { return dim_; }
  int degree_cap() const { return cap_; }
  const std::vector<std::vector<Point>>& polytopes() const { return polytopes_; }
  const std::vector<Point>& generators() const { return generators_; }

  /// Integer weight vector strictly positive on every nonzero generator.
  const std::vector<long long>& pointedness_certificate() const { return certificate_; }

  /// delta^A(X^s): minimal d with s a sum of d generators.  Searches levels
  /// up to `limit` (the context cap when limit < 0).
  std::optional<int> delta(const Point& s, int limit = -1) const {
    if (limit < 0 || limit > cap_) limit = cap_;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = delta_of_.find(s);
    if (it != delta_of_.end()) return it->second;
    while (static_cast<int>(levels_.size()) - 1 < limit) {
      grow_one_level();
      it = delta_of_.find(s);
      if (it != delta_of_.end()) return it->second;
    }
    return std::nullopt;
  }

  /// delta^A or an error naming the point.
  int delta_checked(const Point& s, int limit = -1) const {
    auto d = delta(s, limit);
    if (!d) throw SemigroupError("semigroup: point " + point_str(s) +
                                 " not reachable within degree cap");
    return *d;
  }

  bool contains(const Point& s) const { return delta(s).has_value(); }

  /// All points with delta^A <= d, i.e. the exponents of the degree-d
  /// monomials of the homogenized algebra.  Deterministic (lex) order.
  std::vector<Point> points_up_to(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(levels_.size()) - 1 < d) grow_one_level();
    std::vector<Point> out;
    for (int lev = 0; lev <= d; ++lev)
      out.insert(out.end(), levels_[lev].begin(), levels_[lev].end());
    std::sort(out.begin(), out.end(), PointLess{});
    return out;
  }

  std::vector<SgMono> monomials_of_degree(int d) const {
    std::vector<Point> pts = points_up_to(d);
    std::vector<SgMono> out;
    out.reserve(pts.size());
    for (Point& p : pts) out.push_back({std::move(p), d});
    return out;
  }

  /// Homogenization of a single monomial: X^s -> X^(s, delta^A(s)).
  SgMono homogenize_mono(const Point& s) const { return {s, delta_checked(s)}; }

  /// Restricted division in the homogenized algebra: a | b iff a quotient
  /// t with a*t = b exists in the semigroup and sparse degrees add exactly.
  std::optional<SgMono> divides_hom(const SgMono& a, const SgMono& b) const {
    Int dt = b.d - a.d;
    if (dt < 0) return std::nullopt;
    Point t = point_sub(b.s, a.s);
    auto del_t = delta(t, dt);
    if (!del_t || *del_t > dt) return std::nullopt;
    int da = delta_checked(a.s), db = delta_checked(b.s);
    if (da + *del_t != db) return std::nullopt;
    return SgMono{std::move(t), dt};
  }

  /// Affine version, delegating through homogenization.
  std::optional<Point> divides_affine(const Point& a, const Point& b) const {
    int da = delta_checked(a), db = delta_checked(b);
    if (da > db) return std::nullopt;
    Point t = point_sub(b, a);
    auto del_t = delta(t, db - da);
    if (!del_t || da + *del_t != db) return std::nullopt;
    return t;
  }

 private:
  static std::vector<long long> rational_to_integer_weights(const std::vector<BigRat>& w) {
    boost::multiprecision::cpp_int lcm = 1;
    for (const BigRat& v : w) {
      auto den = boost::multiprecision::denominator(v);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<long long> out;
    out.reserve(w.size());
    for (const BigRat& v : w)
      out.push_back(boost::multiprecision::numerator(BigRat(v * BigRat(lcm)))
                        .convert_to<long long>());
    return out;
  }

  // requires mu_ held
  void grow_one_level() const {
    const int next = static_cast<int>(levels_.size());
    std::set<Point, PointLess> fresh;
    for (const Point& base : levels_[next - 1]) {
      for (const Point& g : generators_) {
        Point q = point_add(base, g);
        if (!delta_of_.count(q)) fresh.insert(std::move(q));
      }
    }
    std::vector<Point> level(fresh.begin(), fresh.end());
    for (const Point& p : level) delta_of_.emplace(p, next);
    levels_.push_back(std::move(level));
  }

  int dim_;
  int cap_;
  std::vector<std::vector<Point>> polytopes_;
  std::vector<Point> generators_;  // nonzero, deduplicated, lex-sorted
  std::vector<long long> certificate_;

  mutable std::mutex mu_;
  mutable std::vector<std::vector<Point>> levels_;  // levels_[d] = points first seen at d
  mutable std::unordered_map<Point, int, PointHash> delta_of_;
};

}  // namespace sgb
