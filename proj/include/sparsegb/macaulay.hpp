#pragma once

// Labeled Macaulay matrices: columns are monomials in strictly decreasing
// order, rows are labeled polynomial coefficient vectors.  Elimination
// produces the canonical reduced row echelon form of the row space, with
// rank and reduction-to-zero counts as first-class statistics.

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sparsegb/field.hpp"
#include "sparsegb/poly.hpp"

namespace sgb {

template <class Mono>
struct RowLabel {
  int gen = -1;          // generator index, -1 for reduced rows
  Mono multiplier{};
  bool reduced = false;
};

template <FieldType F, class Mono>
struct MacaulayMatrix {
  using Elem = typename F::Elem;
  using SparseRow = std::vector<std::pair<int, Elem>>;  // ascending column index

  std::vector<Mono> columns;  // strictly decreasing under the active order
  std::vector<RowLabel<Mono>> labels;
  std::vector<SparseRow> rows;
  int rank = -1;       // set by rref
  int zero_rows = -1;  // set by rref

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return columns.size(); }
};

namespace mat {

// row -= factor * other, sparse merge
template <FieldType F>
void axpy_sub(const F& field, std::vector<std::pair<int, typename F::Elem>>& row,
              const typename F::Elem& factor,
              const std::vector<std::pair<int, typename F::Elem>>& other) {
  std::vector<std::pair<int, typename F::Elem>> out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].first < row[i].first) {
      out.emplace_back(other[j].first, field.neg(field.mul(factor, other[j].second)));
      ++j;
    } else {
      auto v = field.sub(row[i].second, field.mul(factor, other[j].second));
      if (!field.is_zero(v)) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

}  // namespace mat

/// Canonical reduced row echelon form.  Deterministic: leftmost pivot,
/// first available row; output rows sorted by pivot column.
template <FieldType F, class Mono>
MacaulayMatrix<F, Mono> rref(const F& field, const MacaulayMatrix<F, Mono>& M) {
  using Elem = typename F::Elem;
  const int ncols = static_cast<int>(M.columns.size());

  std::vector<std::vector<std::pair<int, Elem>>> out_rows;
  std::vector<int> pivot_of_row;
  std::vector<int> row_of_pivot(ncols, -1);
  int zero_rows = 0;

  std::vector<Elem> acc(ncols, field.zero());
  for (const auto& row : M.rows) {
    for (auto& [c, v] : row) acc[c] = v;
    int pivot = -1;
    for (int c = 0; c < ncols; ++c) {
      if (field.is_zero(acc[c])) continue;
      int pr = row_of_pivot[c];
      if (pr >= 0) {
        Elem f = acc[c];
        for (auto& [cc, vv] : out_rows[pr]) acc[cc] = field.sub(acc[cc], field.mul(f, vv));
      } else if (pivot < 0) {
        pivot = c;
      }
    }
    if (pivot < 0) {
      ++zero_rows;
    } else {
      Elem piv_inv = field.inv(acc[pivot]);
      std::vector<std::pair<int, Elem>> srow;
      for (int c = 0; c < ncols; ++c) {
        if (!field.is_zero(acc[c])) srow.emplace_back(c, field.mul(acc[c], piv_inv));
      }
      int idx = static_cast<int>(out_rows.size());
      // clear the new pivot column from earlier rows
      for (int r = 0; r < idx; ++r) {
        auto it = std::lower_bound(out_rows[r].begin(), out_rows[r].end(), pivot,
                                   [](const auto& e, int c) { return e.first < c; });
        if (it != out_rows[r].end() && it->first == pivot)
          mat::axpy_sub(field, out_rows[r], it->second, srow);
      }
      out_rows.push_back(std::move(srow));
      pivot_of_row.push_back(pivot);
      row_of_pivot[pivot] = idx;
    }
    std::fill(acc.begin(), acc.end(), field.zero());
  }

  // sort by pivot column (leading monomial decreasing)
  std::vector<int> perm(out_rows.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return pivot_of_row[a] < pivot_of_row[b]; });

  MacaulayMatrix<F, Mono> out;
  out.columns = M.columns;
  for (int i : perm) {
    out.rows.push_back(std::move(out_rows[i]));
    out.labels.push_back(RowLabel<Mono>{-1, Mono{}, true});
  }
  out.rank = static_cast<int>(out.rows.size());
  out.zero_rows = zero_rows;
  return out;
}

/// Rowspace equality via canonical RREF; both matrices must share columns.
template <FieldType F, class Mono>
bool same_rowspace_rref(const F& field, const MacaulayMatrix<F, Mono>& A,
                        const MacaulayMatrix<F, Mono>& B) {
  if (!(A.columns == B.columns)) return false;
  if (A.rows.size() != B.rows.size()) return false;
  for (std::size_t i = 0; i < A.rows.size(); ++i) {
    if (A.rows[i].size() != B.rows[i].size()) return false;
    for (std::size_t j = 0; j < A.rows[i].size(); ++j) {
      if (A.rows[i][j].first != B.rows[i][j].first) return false;
      if (!field.eq(A.rows[i][j].second, B.rows[i][j].second)) return false;
    }
  }
  return true;
}

/// Degree-graded Macaulay matrix over the homogenized semigroup algebra:
/// columns are all monomials of the shared degree, decreasing.
template <FieldType F>
MacaulayMatrix<F, SgMono> build_matrix(
    const F& field, const GradedSparseOrder& ord,
    const std::vector<std::pair<RowLabel<SgMono>, SparsePoly<F>>>& rows, int degree = -1) {
  MacaulayMatrix<F, SgMono> M;
  if (rows.empty() && degree < 0) {
    M.rank = 0;
    M.zero_rows = 0;
    return M;
  }
  const SemigroupContext* ctx = nullptr;
  for (const auto& [lab, p] : rows) {
    if (p.is_zero()) continue;
    if (p.ambient != SgAmbient::Homogeneous)
      throw std::invalid_argument("macaulay: rows must be homogeneous");
    if (degree < 0) degree = p.degree();
    else if (p.degree() != degree)
      throw std::invalid_argument("macaulay: mixed degrees in rows");
    ctx = p.ctx;
  }
  if (!ctx) {
    if (!rows.empty()) ctx = rows.front().second.ctx;
    else { M.rank = 0; M.zero_rows = 0; return M; }
  }

  M.columns = ctx->monomials_of_degree(degree);
  std::sort(M.columns.begin(), M.columns.end(),
            [&](const SgMono& a, const SgMono& b) { return ord.cmp(a, b) > 0; });
  std::unordered_map<SgMono, int, SgMonoHash> col_of;
  col_of.reserve(M.columns.size());
  for (std::size_t i = 0; i < M.columns.size(); ++i) col_of.emplace(M.columns[i], static_cast<int>(i));

  for (const auto& [lab, p] : rows) {
    typename MacaulayMatrix<F, SgMono>::SparseRow r;
    r.reserve(p.terms.size());
    for (const auto& [m, c] : p.terms) {
      auto it = col_of.find(m);
      if (it == col_of.end())
        throw std::logic_error("macaulay: row support outside column monomials");
      r.emplace_back(it->second, c);
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    M.rows.push_back(std::move(r));
    M.labels.push_back(lab);
  }
  return M;
}

/// Read a matrix row back as a homogeneous polynomial (terms are already in
/// decreasing order because columns are).
template <FieldType F>
SparsePoly<F> row_as_poly(const MacaulayMatrix<F, SgMono>& M, std::size_t i,
                          const SemigroupContext& ctx) {
  SparsePoly<F> p;
  p.ctx = &ctx;
  p.ambient = SgAmbient::Homogeneous;
  for (const auto& [c, v] : M.rows[i]) p.terms.emplace_back(M.columns[c], v);
  return p;
}

}  // namespace sgb
