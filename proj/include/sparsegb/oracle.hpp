#pragma once

// Brute-force reference implementations used to cross-check the optimized
// paths.  These share only the field layer and order comparators with the
// main modules: monomial enumeration and elimination are reimplemented here
// in plain dense form.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sparsegb/f5.hpp"
#include "sparsegb/field.hpp"
#include "sparsegb/orders.hpp"
#include "sparsegb/poly.hpp"
#include "sparsegb/point.hpp"

namespace sgb::oracle {

/// Minimal number of generators summing to s, by iterative-deepening search
/// over multiplicity vectors.  Exponential, desk scale only.
inline std::optional<int> delta_bruteforce(const Point& s, const std::vector<Point>& generators,
                                           int cap) {
  std::vector<Point> gens;
  for (const Point& g : generators)
    if (!point_is_zero(g)) gens.push_back(g);
  if (point_is_zero(s)) return 0;

  std::function<bool(const Point&, int, std::size_t)> feasible =
      [&](const Point& target, int budget, std::size_t gi) -> bool {
    if (point_is_zero(target)) return true;
    if (budget == 0 || gi == gens.size()) return false;
    Point t = target;
    for (int used = 0; used <= budget; ++used) {
      if (feasible(t, budget - used, gi + 1)) return true;
      t = point_sub(t, gens[gi]);
    }
    return false;
  };
  for (int k = 1; k <= cap; ++k) {
    if (feasible(s, k, 0)) return k;
  }
  return std::nullopt;
}

/// Dense canonical RREF, textbook form.  Returns reduced rows (zero rows
/// dropped), sorted by pivot column.
template <FieldType F>
std::vector<std::vector<typename F::Elem>> rref_dense(const F& field,
                                                      std::vector<std::vector<typename F::Elem>> rows) {
  using Elem = typename F::Elem;
  if (rows.empty()) return rows;
  const int ncols = static_cast<int>(rows.front().size());
  int r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
    int pr = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (!field.is_zero(rows[i][c])) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(rows[r], rows[pr]);
    Elem inv = field.inv(rows[r][c]);
    for (int j = 0; j < ncols; ++j) rows[r][j] = field.mul(rows[r][j], inv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || field.is_zero(rows[i][c])) continue;
      Elem f = rows[i][c];
      for (int j = 0; j < ncols; ++j) rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return rows;
}

template <FieldType F>
int rank_dense(const F& field, const std::vector<std::vector<typename F::Elem>>& rows) {
  return static_cast<int>(rref_dense(field, rows).size());
}

/// d-fold sumset of the generator points (with the origin), recomputed from
/// scratch with plain set arithmetic.
inline std::vector<Point> sumset(const std::vector<Point>& generators, int dim, int d) {
  std::set<Point, PointLess> cur{Point(dim, 0)};
  std::vector<Point> gens = generators;
  for (int i = 0; i < d; ++i) {
    std::set<Point, PointLess> next = cur;  // 0 is a generator
    for (const Point& p : cur)
      for (const Point& g : gens)
        if (!point_is_zero(g)) next.insert(point_add(p, g));
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

/// Homogeneous degree-d rows of all multiplier shifts of the generators,
/// as dense vectors over a caller-fixed column list.
template <FieldType F>
std::vector<std::vector<typename F::Elem>> full_shift_rows(
    const F& field, const std::vector<SparsePoly<F>>& gens_h, int d,
    const std::vector<SgMono>& columns) {
  using Elem = typename F::Elem;
  if (gens_h.empty()) return {};
  const SemigroupContext& ctx = *gens_h.front().ctx;
  std::map<SgMono, int, std::function<bool(const SgMono&, const SgMono&)>> col_of(
      [](const SgMono& a, const SgMono& b) {
        if (a.d != b.d) return a.d < b.d;
        return point_cmp_lex(a.s, b.s) < 0;
      });
  for (std::size_t i = 0; i < columns.size(); ++i) col_of.emplace(columns[i], static_cast<int>(i));

  std::vector<std::vector<Elem>> rows;
  for (const auto& g : gens_h) {
    if (g.is_zero()) continue;
    int dg = g.degree();
    if (dg > d) continue;
    for (const Point& m : sumset(ctx.generators(), ctx.ambient_dim(), d - dg)) {
      std::vector<Elem> row(columns.size(), field.zero());
      for (const auto& [mono, c] : g.terms) {
        SgMono shifted{point_add(mono.s, m), d};
        row[col_of.at(shifted)] = c;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Canonical RREF of the unpruned degree-d Macaulay rows, as polynomials
/// over the given (decreasing) column order.
template <FieldType F>
std::vector<std::vector<std::pair<SgMono, typename F::Elem>>> full_macaulay_rowspace(
    const F& field, const std::vector<SparsePoly<F>>& gens_h, int d,
    const std::vector<SgMono>& columns) {
  auto rows = full_shift_rows(field, gens_h, d, columns);
  auto red = rref_dense(field, std::move(rows));
  std::vector<std::vector<std::pair<SgMono, typename F::Elem>>> out;
  for (const auto& row : red) {
    std::vector<std::pair<SgMono, typename F::Elem>> poly;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!field.is_zero(row[j])) poly.emplace_back(columns[j], row[j]);
    out.push_back(std::move(poly));
  }
  return out;
}

enum class Membership { Member, NotWithinCap };

/// f in <gens> decided degree by degree: pad the homogenization of f to
/// degree D and test membership in the span of all shifted homogenized
/// generators, for D up to the cap.
template <FieldType F>
Membership ideal_membership_bruteforce(const F& field, const GradedSparseOrder& ord,
                                       const SparsePoly<F>& f,
                                       const std::vector<SparsePoly<F>>& gens, int cap) {
  if (f.is_zero()) return Membership::Member;
  const SemigroupContext& ctx = *f.ctx;
  SparsePoly<F> fh = polyops::homogenize(field, ord, f);
  std::vector<SparsePoly<F>> gens_h;
  for (const auto& g : gens) gens_h.push_back(polyops::homogenize(field, ord, g));

  for (int D = fh.degree(); D <= cap; ++D) {
    std::vector<SgMono> columns;
    for (const Point& p : sumset(ctx.generators(), ctx.ambient_dim(), D))
      columns.push_back(SgMono{p, D});
    auto rows = full_shift_rows(field, gens_h, D, columns);
    // pad f to degree D and append: member iff it reduces to zero
    std::map<Point, int, PointLess> col_of;
    for (std::size_t i = 0; i < columns.size(); ++i) col_of.emplace(columns[i].s, static_cast<int>(i));
    std::vector<typename F::Elem> frow(columns.size(), field.zero());
    for (const auto& [m, c] : fh.terms) frow[col_of.at(m.s)] = c;
    int rank_without = rank_dense(field, rows);
    rows.push_back(frow);
    int rank_with = rank_dense(field, rows);
    if (rank_with == rank_without) return Membership::Member;
  }
  return Membership::NotWithinCap;
}

/// Generic solution count: coefficient of prod z_i^{n_i} in
/// prod_j (sum_i deg(f_j)_i z_i), by truncated polynomial expansion.
inline long long bezout_count(const std::vector<std::vector<Int>>& degs,
                              const std::vector<Int>& blocks) {
  const int r = static_cast<int>(blocks.size());
  // dense table over exponents bounded by blocks
  std::vector<int> strides(r, 1);
  int size = 1;
  for (int i = r - 1; i >= 0; --i) {
    strides[i] = size;
    size *= blocks[i] + 1;
  }
  std::vector<long long> cur(size, 0), next(size);
  cur[0] = 1;
  for (const auto& dg : degs) {
    std::fill(next.begin(), next.end(), 0);
    for (int idx = 0; idx < size; ++idx) {
      if (cur[idx] == 0) continue;
      int rem = idx;
      std::vector<int> e(r);
      for (int i = 0; i < r; ++i) {
        e[i] = rem / strides[i];
        rem %= strides[i];
      }
      for (int i = 0; i < r; ++i) {
        if (dg[i] == 0 || e[i] + 1 > blocks[i]) continue;
        next[idx + strides[i]] += cur[idx] * dg[i];
      }
    }
    cur = next;
  }
  return cur[size - 1];
}

/// Rank over Q via fraction-free (Bareiss) elimination on an integer lift.
inline int bareiss_rank(std::vector<std::vector<boost::multiprecision::cpp_int>> m) {
  using boost::multiprecision::cpp_int;
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m.front().size());
  cpp_int prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

/// Degree-d column monomials from the oracle's own sumset enumeration,
/// sorted with the shared comparator.
template <FieldType F>
std::vector<SgMono> enumerate_columns(const F&, const SemigroupContext& ctx,
                                      const GradedSparseOrder& ord, int d) {
  std::vector<SgMono> cols;
  for (const Point& p : sumset(ctx.generators(), ctx.ambient_dim(), d))
    cols.push_back(SgMono{p, d});
  std::sort(cols.begin(), cols.end(),
            [&](const SgMono& a, const SgMono& b) { return ord.cmp(a, b) > 0; });
  return cols;
}

/// Canonical reduced rows of the full (unpruned) degree-d matrix, in the
/// same sparse format the library's rref emits.
template <FieldType F>
std::vector<std::vector<std::pair<int, typename F::Elem>>> reduced_rows_sparse(
    const F& field, const std::vector<SparsePoly<F>>& gens_h, int d,
    const std::vector<SgMono>& cols) {
  auto dense = full_shift_rows(field, gens_h, d, cols);
  auto red = rref_dense(field, std::move(dense));
  std::vector<std::vector<std::pair<int, typename F::Elem>>> out;
  for (const auto& row : red) {
    std::vector<std::pair<int, typename F::Elem>> srow;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!field.is_zero(row[j])) srow.emplace_back(static_cast<int>(j), row[j]);
    out.push_back(std::move(srow));
  }
  return out;
}

/// Rowspace agreement of every captured pruned matrix with the unpruned
/// matrix built from the same generator snapshot.
template <FieldType F>
bool trace_matches(const F& field, const GradedSparseOrder& ord, const SgbTrace<F>& trace) {
  const SemigroupContext& ctx = ord.ctx();
  for (const auto& te : trace) {
    auto cols = enumerate_columns(field, ctx, ord, te.degree);
    if (!(cols == te.pruned.columns)) return false;
    auto want = reduced_rows_sparse(field, te.generators, te.degree, cols);
    if (want.size() != te.reduced.rows.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (want[i].size() != te.reduced.rows[i].size()) return false;
      for (std::size_t j = 0; j < want[i].size(); ++j) {
        if (want[i][j].first != te.reduced.rows[i][j].first) return false;
        if (!field.eq(want[i][j].second, te.reduced.rows[i][j].second)) return false;
      }
    }
  }
  return true;
}

/// Degree-wise non-zero-divisor check: multiplication by f is injective on
/// the quotient by <gens_h> in every degree up to the cap.  Uses only full
/// shift matrices and the dense elimination above.
template <FieldType F>
bool nonzerodivisor_up_to(const F& field, const std::vector<SparsePoly<F>>& gens_h,
                          const SparsePoly<F>& f_h, int cap) {
  const SemigroupContext& ctx = f_h.ctx ? *f_h.ctx : *gens_h.front().ctx;
  const int df = f_h.degree();
  for (int d = df; d <= cap; ++d) {
    std::vector<SgMono> columns;
    for (const Point& p : sumset(ctx.generators(), ctx.ambient_dim(), d))
      columns.push_back(SgMono{p, d});
    auto rows_ideal = full_shift_rows(field, gens_h, d, columns);
    const long long dim_d = static_cast<long long>(columns.size());
    const int rank_ideal = rank_dense(field, rows_ideal);

    std::vector<SgMono> columns_low;
    for (const Point& p : sumset(ctx.generators(), ctx.ambient_dim(), d - df))
      columns_low.push_back(SgMono{p, d - df});
    auto rows_low = full_shift_rows(field, gens_h, d - df, columns_low);
    const long long dim_low = static_cast<long long>(columns_low.size());
    const int rank_low = rank_dense(field, rows_low);

    std::vector<SparsePoly<F>> with_f = gens_h;
    with_f.push_back(f_h);
    auto rows_both = full_shift_rows(field, with_f, d, columns);
    const int rank_both = rank_dense(field, rows_both);

    if (rank_both - rank_ideal != dim_low - rank_low) return false;
  }
  return true;
}

}  // namespace sgb::oracle
