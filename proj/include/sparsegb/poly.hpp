#pragma once

// Sparse polynomials over the semigroup algebra and its homogenization.
// Terms are kept strictly decreasing under the active order, so the leading
// term is the front.  Division uses the restricted division relation, which
// makes every reduction step strictly decrease the leading monomial.

#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sparsegb/field.hpp"
#include "sparsegb/orders.hpp"
#include "sparsegb/semigroup.hpp"

namespace sgb {

enum class SgAmbient { Affine, Homogeneous };

template <FieldType F>
struct SparsePoly {
  using Elem = typename F::Elem;
  using Term = std::pair<SgMono, Elem>;

  const SemigroupContext* ctx = nullptr;
  SgAmbient ambient = SgAmbient::Affine;
  std::vector<Term> terms;  // strictly decreasing under the active order

  bool is_zero() const { return terms.empty(); }

  const Term& leading_term() const {
    if (terms.empty()) throw std::domain_error("poly: leading term of zero polynomial");
    return terms.front();
  }
  const SgMono& lm() const { return leading_term().first; }
  const Elem& lc() const { return leading_term().second; }

  /// Homogeneous degree tag; all terms share it.
  Int degree() const {
    if (ambient != SgAmbient::Homogeneous) throw std::domain_error("poly: affine has no degree tag");
    return leading_term().first.d;
  }
};

namespace polyops {

template <FieldType F>
using TermMap = std::map<SgMono, typename F::Elem, std::function<bool(const SgMono&, const SgMono&)>>;

template <FieldType F>
SparsePoly<F> from_term_map(const F& field, const SemigroupContext& ctx, SgAmbient amb,
                            const std::map<SgMono, typename F::Elem,
                                           std::function<bool(const SgMono&, const SgMono&)>>& acc) {
  SparsePoly<F> out;
  out.ctx = &ctx;
  out.ambient = amb;
  for (auto& [m, c] : acc)
    if (!field.is_zero(c)) out.terms.emplace_back(m, c);
  return out;
}

template <FieldType F>
auto make_acc(const F&, const GradedSparseOrder& ord) {
  // decreasing order so the map front is the leading term
  return std::map<SgMono, typename F::Elem, std::function<bool(const SgMono&, const SgMono&)>>(
      [&ord](const SgMono& a, const SgMono& b) { return ord.cmp(a, b) > 0; });
}

template <FieldType F>
SparsePoly<F> make(const F& field, const SemigroupContext& ctx, const GradedSparseOrder& ord,
                   SgAmbient amb, std::vector<std::pair<SgMono, typename F::Elem>> raw) {
  auto acc = make_acc(field, ord);
  for (auto& [m, c] : raw) {
    if (amb == SgAmbient::Affine) {
      SgMono mm{m.s, 0};
      auto [it, fresh] = acc.emplace(mm, c);
      if (!fresh) it->second = field.add(it->second, c);
    } else {
      auto [it, fresh] = acc.emplace(m, c);
      if (!fresh) it->second = field.add(it->second, c);
    }
  }
  SparsePoly<F> p = from_term_map(field, ctx, amb, acc);
  if (amb == SgAmbient::Homogeneous && !p.terms.empty()) {
    Int d = p.terms.front().first.d;
    for (auto& [m, c] : p.terms)
      if (m.d != d) throw std::invalid_argument("poly: mixed degrees in homogeneous polynomial");
  }
  return p;
}

template <FieldType F>
void check_same_ambient(const SparsePoly<F>& a, const SparsePoly<F>& b) {
  if (a.ctx != b.ctx || a.ambient != b.ambient)
    throw std::invalid_argument("poly: ambient mismatch");
}

template <FieldType F>
SparsePoly<F> add(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& a,
                  const SparsePoly<F>& b) {
  check_same_ambient(a, b);
  auto acc = make_acc(field, ord);
  for (auto& [m, c] : a.terms) acc.emplace(m, c);
  for (auto& [m, c] : b.terms) {
    auto [it, fresh] = acc.emplace(m, c);
    if (!fresh) it->second = field.add(it->second, c);
  }
  return from_term_map(field, *a.ctx, a.ambient, acc);
}

template <FieldType F>
SparsePoly<F> scale(const F& field, const SparsePoly<F>& a, const typename F::Elem& c) {
  SparsePoly<F> out = a;
  if (field.is_zero(c)) {
    out.terms.clear();
    return out;
  }
  for (auto& [m, coef] : out.terms) coef = field.mul(coef, c);
  return out;
}

template <FieldType F>
SparsePoly<F> neg(const F& field, const SparsePoly<F>& a) {
  SparsePoly<F> out = a;
  for (auto& [m, coef] : out.terms) coef = field.neg(coef);
  return out;
}

template <FieldType F>
SparsePoly<F> sub(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& a,
                  const SparsePoly<F>& b) {
  return add(field, ord, a, neg(field, b));
}

/// Multiply by a monomial with coefficient.  Exponents add; the term list is
/// re-sorted since the sparse order is not multiplication-compatible.
template <FieldType F>
SparsePoly<F> mono_mul(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& a,
                       const SgMono& m, const typename F::Elem& c) {
  auto acc = make_acc(field, ord);
  for (auto& [am, ac] : a.terms) {
    SgMono prod{point_add(am.s, m.s), a.ambient == SgAmbient::Affine ? Int{0} : Int(am.d + m.d)};
    acc.emplace(std::move(prod), field.mul(ac, c));
  }
  return from_term_map(field, *a.ctx, a.ambient, acc);
}

template <FieldType F>
SparsePoly<F> mul(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& a,
                  const SparsePoly<F>& b) {
  check_same_ambient(a, b);
  auto acc = make_acc(field, ord);
  for (auto& [am, ac] : a.terms) {
    for (auto& [bm, bc] : b.terms) {
      SgMono prod{point_add(am.s, bm.s), a.ambient == SgAmbient::Affine ? Int{0} : Int(am.d + bm.d)};
      auto [it, fresh] = acc.emplace(std::move(prod), field.mul(ac, bc));
      if (!fresh) it->second = field.add(it->second, field.mul(ac, bc));
    }
  }
  return from_term_map(field, *a.ctx, a.ambient, acc);
}

template <FieldType F>
SparsePoly<F> monic(const F& field, const SparsePoly<F>& a) {
  if (a.is_zero()) return a;
  return scale(field, a, field.inv(a.lc()));
}

template <FieldType F>
bool equal(const F& field, const SparsePoly<F>& a, const SparsePoly<F>& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!(a.terms[i].first == b.terms[i].first)) return false;
    if (!field.eq(a.terms[i].second, b.terms[i].second)) return false;
  }
  return true;
}

/// chi^{-1}: lift every term to the shared degree delta^A(f).
template <FieldType F>
SparsePoly<F> homogenize(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& f) {
  if (f.ambient != SgAmbient::Affine) throw std::invalid_argument("poly: homogenize expects affine");
  if (f.is_zero()) throw std::domain_error("poly: homogenize of zero (degree undefined)");
  const SemigroupContext& ctx = *f.ctx;
  Int deg = 0;
  for (auto& [m, c] : f.terms) deg = std::max<Int>(deg, ctx.delta_checked(m.s));
  std::vector<std::pair<SgMono, typename F::Elem>> raw;
  raw.reserve(f.terms.size());
  for (auto& [m, c] : f.terms) raw.push_back({SgMono{m.s, deg}, c});
  return make(field, ctx, ord, SgAmbient::Homogeneous, std::move(raw));
}

/// chi: drop the degree coordinate.  A ring homomorphism.
template <FieldType F>
SparsePoly<F> dehomogenize(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& f) {
  if (f.ambient != SgAmbient::Homogeneous) return f;
  std::vector<std::pair<SgMono, typename F::Elem>> raw;
  raw.reserve(f.terms.size());
  for (auto& [m, c] : f.terms) raw.push_back({SgMono{m.s, 0}, c});
  return make(field, *f.ctx, ord, SgAmbient::Affine, std::move(raw));
}

template <FieldType F>
struct DivisionResult {
  std::vector<SparsePoly<F>> quotients;
  SparsePoly<F> remainder;
  std::vector<SgMono> lm_trace;  // leading monomials visited, strictly decreasing
};

/// Multivariate division by G under the restricted division relation.
/// Reducer choice: lowest index.  Terminates because each step strictly
/// decreases the current leading monomial under a well-order.
template <FieldType F>
DivisionResult<F> divide(const F& field, const GradedSparseOrder& ord, const SparsePoly<F>& f,
                         const std::vector<SparsePoly<F>>& G) {
  if (G.empty()) throw std::invalid_argument("poly: division by empty set");
  for (const auto& g : G) {
    check_same_ambient(f, g);
    if (g.is_zero()) throw std::invalid_argument("poly: zero divisor polynomial in G");
  }
  const SemigroupContext& ctx = *f.ctx;
  const bool affine = f.ambient == SgAmbient::Affine;

  DivisionResult<F> res;
  res.quotients.assign(G.size(), SparsePoly<F>{f.ctx, f.ambient, {}});
  std::vector<std::vector<std::pair<SgMono, typename F::Elem>>> qraw(G.size());
  std::vector<std::pair<SgMono, typename F::Elem>> rraw;

  SparsePoly<F> p = f;
  while (!p.is_zero()) {
    const SgMono& m = p.lm();
    const auto c = p.lc();
    if (!res.lm_trace.empty()) assert(ord.cmp(m, res.lm_trace.back()) < 0);
    res.lm_trace.push_back(m);

    bool reduced = false;
    for (std::size_t i = 0; i < G.size(); ++i) {
      std::optional<SgMono> t;
      if (affine) {
        auto q = ctx.divides_affine(G[i].lm().s, m.s);
        if (q) t = SgMono{std::move(*q), 0};
      } else {
        t = ctx.divides_hom(G[i].lm(), m);
      }
      if (!t) continue;
      auto coef = field.div(c, G[i].lc());
      qraw[i].push_back({*t, coef});
      p = sub(field, ord, p, mono_mul(field, ord, G[i], *t, coef));
      reduced = true;
      break;
    }
    if (!reduced) {
      rraw.push_back({m, c});
      p.terms.erase(p.terms.begin());
    }
  }

  for (std::size_t i = 0; i < G.size(); ++i)
    res.quotients[i] = make(field, ctx, ord, f.ambient, std::move(qraw[i]));
  res.remainder = make(field, ctx, ord, f.ambient, std::move(rraw));
  return res;
}

}  // namespace polyops
}  // namespace sgb
