#pragma once

// Change of ordering: from multiplication matrices over a monomial basis of
// the quotient to the reduced lexicographic Groebner basis, plus exhaustive
// root extraction over small prime fields.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "sparsegb/densemat.hpp"
#include "sparsegb/field.hpp"
#include "sparsegb/multihom.hpp"
#include "sparsegb/point.hpp"

namespace sgb {

class FglmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lex compare on affine exponent vectors, variable 0 strongest.
inline int aff_lex_cmp(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

inline bool aff_divides(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

template <FieldType F>
struct LexGB {
  std::vector<AffPoly<F>> polys;   // reduced, monic, sorted by leading monomial
  std::vector<Point> staircase;    // normal monomials, lex-increasing
  bool shape_position = false;
};

/// FGLM in matrix form.  mats[i] is the multiplication map of affine
/// variable i in the given basis (row convention: coordinates transform as
/// v -> v * M).  basis must contain the monomial 1.
template <FieldType F>
LexGB<F> lex_gb(const F& field, const std::vector<DenseMat<F>>& mats,
                const std::vector<Point>& basis_aff) {
  using Elem = typename F::Elem;
  const int nvars = static_cast<int>(mats.size());
  const int dim = static_cast<int>(basis_aff.size());
  if (dim == 0) throw FglmError("fglm: empty monomial basis");
  for (const auto& M : mats)
    if (M.n != dim) throw FglmError("fglm: matrix size does not match basis");
  for (int i = 0; i < nvars; ++i)
    for (int j = i + 1; j < nvars; ++j)
      if (!dm::equal(field, dm::mul(field, mats[i], mats[j]), dm::mul(field, mats[j], mats[i])))
        throw FglmError("fglm: multiplication matrices do not commute");

  int one_idx = -1;
  for (int i = 0; i < dim; ++i)
    if (point_is_zero(basis_aff[i])) one_idx = i;
  if (one_idx < 0) throw FglmError("fglm: monomial basis does not contain 1");

  // staircase vectors kept alongside an RREF basis with expansion coefficients
  struct StairEntry {
    Point mono;
    std::vector<Elem> vec;
  };
  std::vector<StairEntry> stair;
  std::vector<std::vector<Elem>> rref_rows;       // reduced vectors, unit pivot
  std::vector<int> pivot_of_row;
  std::vector<int> row_of_pivot(dim, -1);
  std::vector<std::vector<Elem>> combos;          // rref_rows[k] = sum combos[k][t] * stair[t].vec

  auto lex_less = [](const Point& a, const Point& b) { return aff_lex_cmp(a, b) < 0; };
  std::set<Point, decltype(lex_less)> pending(lex_less);
  std::map<Point, std::vector<Elem>, decltype(lex_less)> known_vec(lex_less);

  LexGB<F> out;
  std::vector<Point> gb_lms;

  Point one(nvars, 0);
  pending.insert(one);
  std::vector<Elem> e1(dim, field.zero());
  e1[one_idx] = field.one();
  known_vec.emplace(one, e1);

  while (!pending.empty()) {
    Point m = *pending.begin();
    pending.erase(pending.begin());
    bool skip = false;
    for (const Point& lm : gb_lms)
      if (aff_divides(lm, m)) { skip = true; break; }
    if (skip) continue;

    std::vector<Elem> v;
    if (auto it = known_vec.find(m); it != known_vec.end()) {
      v = it->second;
    } else {
      // divide by the last variable with positive exponent; the parent was
      // processed earlier in lex order and is on the staircase
      int var = -1;
      for (int i = nvars - 1; i >= 0; --i)
        if (m[i] > 0) { var = i; break; }
      Point parent = m;
      parent[var] -= 1;
      auto pit = known_vec.find(parent);
      if (pit == known_vec.end()) throw FglmError("fglm: missing parent vector");
      v = dm::vec_mul(field, pit->second, mats[var]);
      known_vec.emplace(m, v);
    }

    // reduce v against the rref rows, tracking the staircase combination
    std::vector<Elem> red = v;
    std::vector<Elem> lam(stair.size(), field.zero());
    for (std::size_t r = 0; r < rref_rows.size(); ++r) {
      const Elem c = red[pivot_of_row[r]];
      if (field.is_zero(c)) continue;
      for (int j = 0; j < dim; ++j) red[j] = field.sub(red[j], field.mul(c, rref_rows[r][j]));
      for (std::size_t t = 0; t < combos[r].size(); ++t)
        lam[t] = field.add(lam[t], field.mul(c, combos[r][t]));
    }
    int pivot = -1;
    for (int j = 0; j < dim; ++j)
      if (!field.is_zero(red[j])) { pivot = j; break; }

    if (pivot < 0) {
      // dependent: new GB element m - sum lam_t * stair_t
      AffPoly<F> g;
      std::vector<std::pair<Point, Elem>> raw;
      raw.emplace_back(m, field.one());
      for (std::size_t t = 0; t < stair.size(); ++t)
        if (!field.is_zero(lam[t])) raw.emplace_back(stair[t].mono, field.neg(lam[t]));
      std::sort(raw.begin(), raw.end(),
                [](const auto& a, const auto& b) { return aff_lex_cmp(a.first, b.first) > 0; });
      g.terms = std::move(raw);
      out.polys.push_back(std::move(g));
      gb_lms.push_back(m);
    } else {
      // independent: m joins the staircase
      Elem piv_inv = field.inv(red[pivot]);
      std::vector<Elem> row(dim);
      for (int j = 0; j < dim; ++j) row[j] = field.mul(red[j], piv_inv);
      std::vector<Elem> combo(stair.size() + 1, field.zero());
      for (std::size_t t = 0; t < lam.size(); ++t) combo[t] = field.neg(field.mul(lam[t], piv_inv));
      combo[stair.size()] = piv_inv;  // coefficient of the new staircase vector
      stair.push_back(StairEntry{m, v});
      for (auto& cb : combos) cb.resize(stair.size(), field.zero());
      // keep existing rows zero at the new pivot so one reduction pass stays exact
      for (std::size_t r = 0; r < rref_rows.size(); ++r) {
        const Elem c = rref_rows[r][pivot];
        if (field.is_zero(c)) continue;
        for (int j = 0; j < dim; ++j)
          rref_rows[r][j] = field.sub(rref_rows[r][j], field.mul(c, row[j]));
        for (std::size_t t = 0; t < combo.size(); ++t)
          combos[r][t] = field.sub(combos[r][t], field.mul(c, combo[t]));
      }
      rref_rows.push_back(std::move(row));
      combos.push_back(std::move(combo));
      pivot_of_row.push_back(pivot);
      row_of_pivot[pivot] = static_cast<int>(rref_rows.size()) - 1;
      if (static_cast<int>(stair.size()) > dim) throw FglmError("fglm: staircase exceeded dimension");
      for (int var = 0; var < nvars; ++var) {
        Point child = m;
        child[var] += 1;
        pending.insert(child);
      }
    }
  }

  if (static_cast<int>(stair.size()) != dim)
    throw FglmError("fglm: staircase does not span the quotient");
  for (const auto& s : stair) out.staircase.push_back(s.mono);

  std::sort(out.polys.begin(), out.polys.end(), [](const AffPoly<F>& a, const AffPoly<F>& b) {
    return aff_lex_cmp(a.terms.front().first, b.terms.front().first) < 0;
  });

  // shape position: last variable carries a pure power of degree dim, every
  // other variable appears as a degree-1 leading monomial
  {
    int pure_last = 0, linear_others = 0;
    for (const auto& g : out.polys) {
      const Point& lm = g.terms.front().first;
      long long tot = point_total(lm);
      if (lm[nvars - 1] == tot && lm[nvars - 1] == dim) ++pure_last;
      else if (tot == 1 && lm[nvars - 1] == 0) ++linear_others;
    }
    out.shape_position = pure_last == 1 && linear_others == nvars - 1 &&
                         static_cast<int>(out.polys.size()) == nvars;
  }
  return out;
}

/// All F_p-rational points of the (0-dimensional, lex) basis by
/// back-substitution with exhaustive univariate root search.
inline std::vector<std::vector<PrimeField::Elem>> find_roots(const PrimeField& field,
                                                             const LexGB<PrimeField>& gb) {
  if (field.modulus() > (1u << 20))
    throw FglmError("fglm: field too large for exhaustive root search (need p <= 2^20)");
  if (gb.polys.empty()) throw FglmError("fglm: empty basis");
  const int nvars = static_cast<int>(gb.polys.front().terms.front().first.size());

  using Elem = PrimeField::Elem;
  struct Partial {
    std::vector<Elem> vals;  // values for variables var..nvars-1
  };
  std::vector<Partial> states{Partial{{}}};

  for (int var = nvars - 1; var >= 0; --var) {
    std::vector<Partial> next;
    for (const Partial& st : states) {
      // substitute known values; keep polynomials supported on vars >= var
      std::vector<std::vector<Elem>> univs;  // coefficient vectors in x_var
      for (const auto& g : gb.polys) {
        bool in_scope = true;
        for (const auto& [m, c] : g.terms)
          for (int i = 0; i < var; ++i)
            if (m[i] > 0) in_scope = false;
        if (!in_scope) continue;
        std::vector<Elem> coeff;
        for (const auto& [m, c] : g.terms) {
          Elem v = c;
          for (int i = var + 1; i < nvars; ++i)
            for (Int e = 0; e < m[i]; ++e) v = field.mul(v, st.vals[i - var - 1]);
          int deg = m[var];
          if (static_cast<int>(coeff.size()) <= deg) coeff.resize(deg + 1, field.zero());
          coeff[deg] = field.add(coeff[deg], v);
        }
        while (!coeff.empty() && field.is_zero(coeff.back())) coeff.pop_back();
        if (!coeff.empty()) univs.push_back(std::move(coeff));
      }
      if (univs.empty()) throw FglmError("fglm: variable unconstrained; basis not triangular");
      bool any_nonconst = false;
      for (const auto& u : univs)
        if (u.size() > 1) any_nonconst = true;
      if (!any_nonconst) {
        // constants only: consistent iff all zero, but zero polys were dropped
        continue;
      }
      for (Elem c = 0; c < field.modulus(); ++c) {
        bool ok = true;
        for (const auto& u : univs) {
          Elem acc = field.zero();
          for (std::size_t i = u.size(); i-- > 0;) acc = field.add(field.mul(acc, c), u[i]);
          if (!field.is_zero(acc)) { ok = false; break; }
        }
        if (ok) {
          Partial ext;
          ext.vals.push_back(c);
          ext.vals.insert(ext.vals.end(), st.vals.begin(), st.vals.end());
          next.push_back(std::move(ext));
        }
      }
    }
    states = std::move(next);
  }

  std::vector<std::vector<Elem>> roots;
  for (const Partial& st : states) roots.push_back(st.vals);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace sgb
