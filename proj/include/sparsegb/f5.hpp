#pragma once

// Iterative matrix-F5 computation of sparse Groebner bases.  Generators are
// added one at a time; per degree, a Macaulay matrix is assembled from
// (a) one row per monomial divisible by a leading monomial of the basis so
// far, and (b) rows multiplier*f for multipliers not divisible by any such
// leading monomial.  Elimination then yields the new basis elements.

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sparsegb/macaulay.hpp"
#include "sparsegb/orders.hpp"
#include "sparsegb/poly.hpp"

namespace sgb {

struct SgbDegreeStats {
  int step = 0;    // 1-based generator index
  int degree = 0;
  int rows = 0;
  int cols = 0;
  int rank = 0;
  int zero_rows = 0;
  int criterion_rows = 0;
  int new_rows = 0;
};

struct SgbOptions {
  std::vector<int> witness;  // per-generator witness degrees; empty = auto mode
  int degree_cap = 30;       // hard stop for auto mode
  int quiet_window = -1;     // auto mode: stop after this many silent degrees (-1 = max delta)
};

template <FieldType F>
struct SgbResult {
  std::vector<SparsePoly<F>> basis;  // affine, dehomogenized, monic, minimal LMs
  std::vector<SgbDegreeStats> stats;
  std::vector<int> witness_used;   // last degree processed per step
  bool auto_mode = false;
  bool degree_capped = false;      // auto mode hit the hard cap
};

/// Per-(step, degree) capture for cross-validation against unpruned matrices.
template <FieldType F>
struct SgbTraceEntry {
  int step = 0;
  int degree = 0;
  std::vector<SparsePoly<F>> generators;  // basis-so-far homogenized, then the new generator
  MacaulayMatrix<F, SgMono> pruned;       // before elimination
  MacaulayMatrix<F, SgMono> reduced;
};

template <FieldType F>
using SgbTrace = std::vector<SgbTraceEntry<F>>;

namespace f5detail {

/// One row per degree-d monomial divisible by some LM of basis; the chosen
/// reducer minimizes the quotient monomial, ties broken by basis index.
template <FieldType F>
std::vector<std::pair<RowLabel<SgMono>, SparsePoly<F>>> criterion_rows(
    const F& field, const GradedSparseOrder& ord, const std::vector<SparsePoly<F>>& basis_h,
    int d) {
  std::vector<std::pair<RowLabel<SgMono>, SparsePoly<F>>> rows;
  if (basis_h.empty()) return rows;
  const SemigroupContext& ctx = ord.ctx();
  std::vector<SgMono> monos = ctx.monomials_of_degree(d);
  std::sort(monos.begin(), monos.end(),
            [&](const SgMono& a, const SgMono& b) { return ord.cmp(a, b) > 0; });
  for (const SgMono& m : monos) {
    int best = -1;
    SgMono best_q;
    for (std::size_t gi = 0; gi < basis_h.size(); ++gi) {
      auto q = ctx.divides_hom(basis_h[gi].lm(), m);
      if (!q) continue;
      if (best < 0 || ord.cmp(*q, best_q) < 0) {
        best = static_cast<int>(gi);
        best_q = *q;
      }
    }
    if (best >= 0) {
      rows.push_back({RowLabel<SgMono>{best, best_q, false},
                      polyops::mono_mul(field, ord, basis_h[best], best_q, field.one())});
    }
  }
  return rows;
}

/// Rows multiplier*f for every degree-(d - deg f) multiplier monomial not
/// divisible by any LM of the basis.
template <FieldType F>
std::vector<std::pair<RowLabel<SgMono>, SparsePoly<F>>> f5_new_rows(
    const F& field, const GradedSparseOrder& ord, const std::vector<SparsePoly<F>>& basis_h,
    const SparsePoly<F>& f_h, int d) {
  std::vector<std::pair<RowLabel<SgMono>, SparsePoly<F>>> rows;
  const int df = f_h.degree();
  if (d < df) return rows;
  const SemigroupContext& ctx = ord.ctx();
  std::vector<SgMono> mults = ctx.monomials_of_degree(d - df);
  std::sort(mults.begin(), mults.end(),
            [&](const SgMono& a, const SgMono& b) { return ord.cmp(a, b) > 0; });
  const int new_gen = static_cast<int>(basis_h.size());
  for (const SgMono& m : mults) {
    bool divisible = false;
    for (const auto& g : basis_h) {
      if (ctx.divides_hom(g.lm(), m)) {
        divisible = true;
        break;
      }
    }
    if (!divisible) {
      rows.push_back({RowLabel<SgMono>{new_gen, m, false},
                      polyops::mono_mul(field, ord, f_h, m, field.one())});
    }
  }
  return rows;
}

}  // namespace f5detail

/// Sparse Groebner basis of the ideal generated by nonzero affine
/// polynomials, up to the per-generator witness degrees (auto mode iterates
/// until no new leading monomial appears for a window of degrees; that stop
/// rule is a heuristic, not a certificate).
template <FieldType F>
SgbResult<F> sgb_compute(const F& field, const GradedSparseOrder& ord,
                         const std::vector<SparsePoly<F>>& input, const SgbOptions& opts = {},
                         SgbTrace<F>* trace = nullptr) {
  if (input.empty()) throw std::invalid_argument("sgb: empty input system");
  for (const auto& f : input)
    if (f.is_zero()) throw std::invalid_argument("sgb: zero polynomial in input");
  if (!opts.witness.empty() && opts.witness.size() != input.size())
    throw std::invalid_argument("sgb: witness degree count mismatch");

  const SemigroupContext& ctx = ord.ctx();
  SgbResult<F> res;
  res.auto_mode = opts.witness.empty();

  int max_delta = 1;
  std::vector<SparsePoly<F>> input_h;
  for (const auto& f : input) {
    input_h.push_back(polyops::homogenize(field, ord, f));
    max_delta = std::max<int>(max_delta, input_h.back().degree());
  }
  const int quiet_window = opts.quiet_window > 0 ? opts.quiet_window : max_delta;

  std::vector<SparsePoly<F>> basis_h;  // homogenized basis from the previous step
  std::vector<SparsePoly<F>> basis;    // affine basis of the current step

  for (std::size_t i = 0; i < input.size(); ++i) {
    const SparsePoly<F>& f_h = input_h[i];
    basis.clear();
    int quiet = 0;
    int d = 0;
    int last_d = 0;
    while (true) {
      ++d;
      if (!opts.witness.empty()) {
        if (d > opts.witness[i]) break;
      } else {
        if (d > opts.degree_cap) {
          res.degree_capped = true;
          break;
        }
      }
      last_d = d;

      auto rows = f5detail::criterion_rows(field, ord, basis_h, d);
      const int n_crit = static_cast<int>(rows.size());
      auto fresh = f5detail::f5_new_rows(field, ord, basis_h, f_h, d);
      const int n_new = static_cast<int>(fresh.size());
      for (auto& r : fresh) rows.push_back(std::move(r));

      SgbDegreeStats st;
      st.step = static_cast<int>(i) + 1;
      st.degree = d;
      st.criterion_rows = n_crit;
      st.new_rows = n_new;
      st.rows = static_cast<int>(rows.size());

      int added = 0;
      if (!rows.empty()) {
        auto M = build_matrix(field, ord, rows, d);
        auto Mt = rref(field, M);
        st.cols = static_cast<int>(M.col_count());
        st.rank = Mt.rank;
        st.zero_rows = Mt.zero_rows;
        if (trace) {
          SgbTraceEntry<F> te;
          te.step = st.step;
          te.degree = d;
          te.generators = basis_h;
          te.generators.push_back(f_h);
          te.pruned = M;
          te.reduced = Mt;
          trace->push_back(std::move(te));
        }
        // smallest leading monomials first, so divisibility filtering keeps
        // the minimal elements
        for (int r = static_cast<int>(Mt.rows.size()) - 1; r >= 0; --r) {
          SparsePoly<F> h = polyops::dehomogenize(field, ord, row_as_poly<F>(Mt, r, ctx));
          bool covered = false;
          for (const auto& g : basis) {
            if (ctx.divides_affine(g.lm().s, h.lm().s)) {
              covered = true;
              break;
            }
          }
          if (!covered) {
            basis.push_back(polyops::monic(field, h));
            ++added;
          }
        }
      } else {
        st.cols = static_cast<int>(ctx.monomials_of_degree(d).size());
        st.rank = 0;
        st.zero_rows = 0;
      }
      res.stats.push_back(st);

      if (opts.witness.empty()) {
        quiet = added == 0 ? quiet + 1 : 0;
        if (d >= f_h.degree() && quiet >= quiet_window) break;
      }
    }
    res.witness_used.push_back(last_d);

    basis_h.clear();
    for (const auto& g : basis) basis_h.push_back(polyops::homogenize(field, ord, g));
  }

  res.basis = basis;
  return res;
}

}  // namespace sgb
