#pragma once

// Monomial orders on exponent points, the sparse order (affine degree first,
// then a base monomial order) and its degree grading for the homogenized
// algebra.  The sparse order is a well-order but in general not compatible
// with multiplication.

#include <stdexcept>
#include <string>
#include <vector>

#include "sparsegb/point.hpp"
#include "sparsegb/semigroup.hpp"

namespace sgb {

enum class BaseOrderKind { Grevlex, Lex, Weight };

/// Total order on exponent points satisfying the monomial-order axioms on
/// the semigroups it is validated against.
struct BaseOrder {
  BaseOrderKind kind = BaseOrderKind::Grevlex;
  std::vector<long long> weights;  // Weight kind only; tie-break is lex

  int cmp(const Point& a, const Point& b) const {
    switch (kind) {
      case BaseOrderKind::Grevlex: {
        long long ta = point_total(a), tb = point_total(b);
        if (ta != tb) return ta < tb ? -1 : 1;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
          Int diff = a[i] - b[i];
          if (diff != 0) return diff > 0 ? -1 : 1;  // rightmost positive => smaller
        }
        return 0;
      }
      case BaseOrderKind::Lex: {
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
      }
      case BaseOrderKind::Weight: {
        long long wa = 0, wb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          wa += weights[i] * a[i];
          wb += weights[i] * b[i];
        }
        if (wa != wb) return wa < wb ? -1 : 1;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
      }
    }
    return 0;
  }

  std::string name() const {
    switch (kind) {
      case BaseOrderKind::Grevlex: return "grevlex";
      case BaseOrderKind::Lex: return "lex";
      case BaseOrderKind::Weight: return "weight";
    }
    return "?";
  }

  static BaseOrder grevlex() { return {BaseOrderKind::Grevlex, {}}; }
  static BaseOrder lex() { return {BaseOrderKind::Lex, {}}; }
  static BaseOrder weight(std::vector<long long> w) { return {BaseOrderKind::Weight, std::move(w)}; }
};

/// Affine degree first, base order on ties.  Validated at construction:
/// every nonzero generator must be larger than X^0 under the base order,
/// otherwise the base order is not a monomial order on this semigroup.
struct SparseOrder {
  const SemigroupContext* ctx = nullptr;
  BaseOrder base;

  SparseOrder() = default;
  SparseOrder(const SemigroupContext& context, BaseOrder b) : ctx(&context), base(std::move(b)) {
    Point zero(ctx->ambient_dim(), 0);
    for (const Point& g : ctx->generators()) {
      if (base.cmp(g, zero) <= 0)
        throw std::invalid_argument(
            "orders: base order not a monomial order here (generator " + point_str(g) +
            " <= X^0); use a weight order, e.g. the pointedness certificate");
    }
  }

  int cmp(const Point& a, const Point& b) const {
    int da = ctx->delta_checked(a), db = ctx->delta_checked(b);
    if (da != db) return da < db ? -1 : 1;
    return base.cmp(a, b);
  }

  bool less(const Point& a, const Point& b) const { return cmp(a, b) < 0; }
};

/// Degree-primary grading of the sparse order.  For monomials of equal
/// degree it agrees with the sparse order on the dehomogenizations.
struct GradedSparseOrder {
  SparseOrder sparse;

  GradedSparseOrder() = default;
  explicit GradedSparseOrder(SparseOrder s) : sparse(std::move(s)) {}
  GradedSparseOrder(const SemigroupContext& ctx, BaseOrder b) : sparse(ctx, std::move(b)) {}

  const SemigroupContext& ctx() const { return *sparse.ctx; }

  int cmp(const SgMono& a, const SgMono& b) const {
    if (a.d != b.d) return a.d < b.d ? -1 : 1;
    return sparse.cmp(a.s, b.s);
  }

  bool less(const SgMono& a, const SgMono& b) const { return cmp(a, b) < 0; }
};

/// Total order on degree vectors in N^k: total degree first, then lex.
inline int cmp_degree_vectors_totlex(const std::vector<Int>& a, const std::vector<Int>& b) {
  long long ta = 0, tb = 0;
  for (Int v : a) ta += v;
  for (Int v : b) tb += v;
  if (ta != tb) return ta < tb ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

}  // namespace sgb
