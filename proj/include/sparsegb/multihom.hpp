#pragma once

// Multigraded algebra over a product of projective spaces and the recursive
// Macaulay-matrix construction for square 0-dimensional multihomogeneous
// systems: degree bound, monomial basis of the dehomogenized quotient, and
// multiplication maps of multilinear forms via a Schur complement read off
// a single shared elimination.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sparsegb/densemat.hpp"
#include "sparsegb/field.hpp"
#include "sparsegb/macaulay.hpp"
#include "sparsegb/point.hpp"

namespace sgb {

class MultihomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolutionsAtInfinityError : public MultihomError {
 public:
  using MultihomError::MultihomError;
};

/// Variable blocks x_i = {x_{i,0}, ..., x_{i,n_i}}; exponent vectors are
/// flattened block by block with the homogenizing variable x_{i,0} first
/// within its block.
struct MultihomRing {
  std::vector<Int> blocks;   // n_1, ..., n_r
  std::vector<int> offsets;  // start slot of each block

  explicit MultihomRing(std::vector<Int> ns) : blocks(std::move(ns)) {
    if (blocks.empty()) throw MultihomError("multihom: no blocks");
    int off = 0;
    for (Int n : blocks) {
      if (n < 1) throw MultihomError("multihom: block size must be >= 1");
      offsets.push_back(off);
      off += n + 1;
    }
    nvars_ = off;
  }

  int r() const { return static_cast<int>(blocks.size()); }
  int nvars() const { return nvars_; }
  int affine_vars() const { return nvars_ - r(); }  // N = sum n_i

  int var_slot(int block, int j) const { return offsets[block] + j; }

  /// Affine slot of x_{block,j}/x_{block,0}, block-major.
  int affine_slot(int block, int j) const {
    int s = 0;
    for (int b = 0; b < block; ++b) s += blocks[b];
    return s + (j - 1);
  }

  std::vector<Int> multidegree(const Point& mono) const {
    std::vector<Int> d(r(), 0);
    for (int b = 0; b < r(); ++b)
      for (int j = 0; j <= blocks[b]; ++j) d[b] += mono[var_slot(b, j)];
    return d;
  }

  /// x_h = prod_i x_{i,0}, the multilinear monomial of the hom variables.
  Point hom_monomial() const {
    Point m(nvars(), 0);
    for (int b = 0; b < r(); ++b) m[var_slot(b, 0)] = 1;
    return m;
  }

  std::string var_name(int block, int j) const {
    return "x_" + std::to_string(block + 1) + "_" + std::to_string(j);
  }

 private:
  int nvars_ = 0;
};

/// Monomial order on the flattened exponents.  Comparison runs over a
/// permuted variable list: affine variables block-major first, then the
/// homogenizing variables, so the all-hom monomial is minimal within every
/// multidegree class.
struct XOrder {
  const MultihomRing* ring = nullptr;
  BaseOrderKind kind = BaseOrderKind::Grevlex;
  std::vector<int> perm;  // comparison position -> variable slot

  XOrder() = default;
  XOrder(const MultihomRing& rg, BaseOrderKind k) : ring(&rg), kind(k) {
    for (int b = 0; b < rg.r(); ++b)
      for (int j = 1; j <= rg.blocks[b]; ++j) perm.push_back(rg.var_slot(b, j));
    for (int b = 0; b < rg.r(); ++b) perm.push_back(rg.var_slot(b, 0));
  }

  int cmp(const Point& a, const Point& b) const {
    if (kind == BaseOrderKind::Grevlex) {
      long long ta = point_total(a), tb = point_total(b);
      if (ta != tb) return ta < tb ? -1 : 1;
      for (int i = static_cast<int>(perm.size()) - 1; i >= 0; --i) {
        Int diff = a[perm[i]] - b[perm[i]];
        if (diff != 0) return diff > 0 ? -1 : 1;
      }
      return 0;
    }
    for (std::size_t i = 0; i < perm.size(); ++i) {
      Int diff = a[perm[i]] - b[perm[i]];
      if (diff != 0) return diff < 0 ? -1 : 1;
    }
    return 0;
  }

  bool less(const Point& a, const Point& b) const { return cmp(a, b) < 0; }
};

template <FieldType F>
struct XPoly {
  using Elem = typename F::Elem;
  const MultihomRing* ring = nullptr;
  std::vector<std::pair<Point, Elem>> terms;  // strictly decreasing under the active order

  bool is_zero() const { return terms.empty(); }
  const Point& lm() const {
    if (terms.empty()) throw std::domain_error("xpoly: leading monomial of zero");
    return terms.front().first;
  }

  std::vector<Int> multidegree() const {
    if (terms.empty()) throw std::domain_error("xpoly: multidegree of zero");
    return ring->multidegree(terms.front().first);
  }
};

namespace xops {

template <FieldType F>
XPoly<F> make(const F& field, const MultihomRing& ring, const XOrder& ord,
              std::vector<std::pair<Point, typename F::Elem>> raw) {
  std::map<Point, typename F::Elem, std::function<bool(const Point&, const Point&)>> acc(
      [&ord](const Point& a, const Point& b) { return ord.cmp(a, b) > 0; });
  for (auto& [m, c] : raw) {
    auto [it, fresh] = acc.emplace(m, c);
    if (!fresh) it->second = field.add(it->second, c);
  }
  XPoly<F> p;
  p.ring = &ring;
  for (auto& [m, c] : acc)
    if (!field.is_zero(c)) p.terms.emplace_back(m, c);
  return p;
}

template <FieldType F>
bool is_multihomogeneous(const XPoly<F>& p) {
  if (p.is_zero()) return true;
  auto d = p.ring->multidegree(p.terms.front().first);
  for (const auto& [m, c] : p.terms)
    if (p.ring->multidegree(m) != d) return false;
  return true;
}

template <FieldType F>
XPoly<F> add(const F& field, const XOrder& ord, const XPoly<F>& a, const XPoly<F>& b) {
  auto raw = a.terms;
  raw.insert(raw.end(), b.terms.begin(), b.terms.end());
  return make(field, *a.ring, ord, std::move(raw));
}

template <FieldType F>
XPoly<F> scale(const F& field, const XPoly<F>& a, const typename F::Elem& c) {
  XPoly<F> out = a;
  if (field.is_zero(c)) {
    out.terms.clear();
    return out;
  }
  for (auto& [m, v] : out.terms) v = field.mul(v, c);
  return out;
}

template <FieldType F>
XPoly<F> mul(const F& field, const XOrder& ord, const XPoly<F>& a, const XPoly<F>& b) {
  std::vector<std::pair<Point, typename F::Elem>> raw;
  raw.reserve(a.terms.size() * b.terms.size());
  for (const auto& [am, ac] : a.terms)
    for (const auto& [bm, bc] : b.terms) raw.emplace_back(point_add(am, bm), field.mul(ac, bc));
  return make(field, *a.ring, ord, std::move(raw));
}

template <FieldType F>
XPoly<F> mono_mul(const F& field, const XPoly<F>& a, const Point& m) {
  // multiplication by a monomial preserves a monomial order
  XPoly<F> out = a;
  for (auto& [mm, c] : out.terms) mm = point_add(mm, m);
  return out;
}

/// x_h as a polynomial.
template <FieldType F>
XPoly<F> hom_var(const F& field, const MultihomRing& ring) {
  XPoly<F> p;
  p.ring = &ring;
  p.terms.emplace_back(ring.hom_monomial(), field.one());
  return p;
}

}  // namespace xops

/// All exponent vectors of the given multidegree (empty if any component is
/// negative).  Deterministic enumeration order.
inline std::vector<Point> monomials_of_multidegree(const MultihomRing& ring,
                                                   const std::vector<Int>& d) {
  for (Int v : d)
    if (v < 0) return {};
  std::vector<Point> acc{Point(ring.nvars(), 0)};
  for (int b = 0; b < ring.r(); ++b) {
    std::vector<Point> next;
    // compositions of d[b] into blocks[b]+1 parts
    std::vector<Point> comps;
    Point cur(ring.blocks[b] + 1, 0);
    std::function<void(int, Int)> rec = [&](int pos, Int left) {
      if (pos == ring.blocks[b]) {
        cur[pos] = left;
        comps.push_back(cur);
        return;
      }
      for (Int v = 0; v <= left; ++v) {
        cur[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, d[b]);
    for (const Point& base : acc) {
      for (const Point& comp : comps) {
        Point m = base;
        for (int j = 0; j <= ring.blocks[b]; ++j) m[ring.var_slot(b, j)] = comp[j];
        next.push_back(std::move(m));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

inline long long dim_of_multidegree(const MultihomRing& ring, const std::vector<Int>& d) {
  long long total = 1;
  for (int b = 0; b < ring.r(); ++b) {
    if (d[b] < 0) return 0;
    // C(d + n, n)
    long long c = 1;
    for (Int i = 1; i <= ring.blocks[b]; ++i) c = c * (d[b] + i) / i;
    total *= c;
  }
  return total;
}

/// D_k = sum of the multidegrees minus the block sizes, componentwise.
inline std::vector<Int> macaulay_bound(const std::vector<std::vector<Int>>& degs,
                                       const std::vector<Int>& blocks) {
  std::vector<Int> d(blocks.size(), 0);
  for (const auto& dg : degs)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += dg[i];
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= blocks[i];
  return d;
}

struct M3hStats {
  int k = 0;
  std::vector<Int> degree;
  int rows = 0, cols = 0, rank = 0, zero_rows = 0;
};

/// Memoized recursive Macaulay-matrix builder.  matrix(k, d) holds the rows
/// for the first k system polynomials at multidegree d; multipliers of the
/// k-th polynomial are filtered by the leading monomials of the eliminated
/// prefix matrix at the shifted degree.
template <FieldType F>
class M3hEngine {
 public:
  using Matrix = MacaulayMatrix<F, Point>;

  M3hEngine(const F& field, const MultihomRing& ring, XOrder ord, std::vector<XPoly<F>> sys)
      : field_(field), ring_(ring), ord_(std::move(ord)), sys_(std::move(sys)) {
    for (const auto& f : sys_) {
      if (f.is_zero()) throw MultihomError("m3h: zero polynomial in system");
      if (!xops::is_multihomogeneous(f))
        throw MultihomError("m3h: system polynomial is not multihomogeneous");
    }
  }

  const MultihomRing& ring() const { return ring_; }
  const XOrder& order() const { return ord_; }
  const std::vector<XPoly<F>>& system() const { return sys_; }

  const std::vector<Point>& columns(const std::vector<Int>& d) {
    auto it = columns_.find(d);
    if (it != columns_.end()) return it->second;
    std::vector<Point> cols = monomials_of_multidegree(ring_, d);
    std::sort(cols.begin(), cols.end(),
              [&](const Point& a, const Point& b) { return ord_.cmp(a, b) > 0; });
    return columns_.emplace(d, std::move(cols)).first->second;
  }

  const Matrix& matrix(int k, const std::vector<Int>& d) {
    auto key = std::make_pair(k, d);
    auto it = mat_.find(key);
    if (it != mat_.end()) return it->second;
    if (k < 1 || k > static_cast<int>(sys_.size()))
      throw MultihomError("m3h: bad prefix length");

    Matrix M;
    M.columns = columns(d);
    std::unordered_map<Point, int, PointHash> col_of;
    col_of.reserve(M.columns.size());
    for (std::size_t i = 0; i < M.columns.size(); ++i)
      col_of.emplace(M.columns[i], static_cast<int>(i));

    const std::set<Point, PointLess>* skip = nullptr;
    if (k > 1) {
      const Matrix& prev = matrix(k - 1, d);
      M.rows = prev.rows;
      M.labels = prev.labels;
      std::vector<Int> shifted(d.size());
      auto fdeg = sys_[k - 1].multidegree();
      for (std::size_t i = 0; i < d.size(); ++i) shifted[i] = d[i] - fdeg[i];
      skip = &lm_set(k - 1, shifted);
    }

    auto fdeg = sys_[k - 1].multidegree();
    std::vector<Int> mult_deg(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) mult_deg[i] = d[i] - fdeg[i];
    std::vector<Point> mults = monomials_of_multidegree(ring_, mult_deg);
    std::sort(mults.begin(), mults.end(),
              [&](const Point& a, const Point& b) { return ord_.cmp(a, b) > 0; });
    for (const Point& beta : mults) {
      if (skip && skip->count(beta)) continue;
      typename Matrix::SparseRow row;
      row.reserve(sys_[k - 1].terms.size());
      for (const auto& [m, c] : sys_[k - 1].terms) row.emplace_back(col_of.at(point_add(m, beta)), c);
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      M.rows.push_back(std::move(row));
      M.labels.push_back(RowLabel<Point>{k - 1, beta, false});
    }
    return mat_.emplace(std::move(key), std::move(M)).first->second;
  }

  const Matrix& reduced(int k, const std::vector<Int>& d) {
    auto key = std::make_pair(k, d);
    auto it = red_.find(key);
    if (it != red_.end()) return it->second;
    const Matrix& M = matrix(k, d);
    Matrix R = rref(field_, M);
    stats_.push_back(M3hStats{k, d, static_cast<int>(M.row_count()),
                              static_cast<int>(M.col_count()), R.rank, R.zero_rows});
    return red_.emplace(std::move(key), std::move(R)).first->second;
  }

  const std::set<Point, PointLess>& lm_set(int k, const std::vector<Int>& d) {
    auto key = std::make_pair(k, d);
    auto it = lms_.find(key);
    if (it != lms_.end()) return it->second;
    const Matrix& R = reduced(k, d);
    std::set<Point, PointLess> s;
    for (const auto& row : R.rows)
      if (!row.empty()) s.insert(R.columns[row.front().first]);
    return lms_.emplace(std::move(key), std::move(s)).first->second;
  }

  const std::vector<M3hStats>& stats() const { return stats_; }

 private:
  const F& field_;
  const MultihomRing& ring_;
  XOrder ord_;
  std::vector<XPoly<F>> sys_;
  std::map<std::vector<Int>, std::vector<Point>> columns_;
  std::map<std::pair<int, std::vector<Int>>, Matrix> mat_;
  std::map<std::pair<int, std::vector<Int>>, Matrix> red_;
  std::map<std::pair<int, std::vector<Int>>, std::set<Point, PointLess>> lms_;
  std::vector<M3hStats> stats_;
};

/// Affine polynomial in the dehomogenized variables (block-major slots).
template <FieldType F>
struct AffPoly {
  using Elem = typename F::Elem;
  std::vector<std::pair<Point, Elem>> terms;  // lex-decreasing

  bool is_zero() const { return terms.empty(); }
};

template <FieldType F>
AffPoly<F> dehomogenize_x(const F& field, const MultihomRing& ring, const XPoly<F>& f) {
  std::map<Point, typename F::Elem, PointLess> acc;
  for (const auto& [m, c] : f.terms) {
    Point a(ring.affine_vars(), 0);
    for (int b = 0; b < ring.r(); ++b)
      for (int j = 1; j <= ring.blocks[b]; ++j) a[ring.affine_slot(b, j)] = m[ring.var_slot(b, j)];
    auto [it, fresh] = acc.emplace(std::move(a), c);
    if (!fresh) it->second = field.add(it->second, c);
  }
  AffPoly<F> out;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (!field.is_zero(it->second)) out.terms.emplace_back(it->first, it->second);
  return out;
}

template <FieldType F>
typename F::Elem eval_aff(const F& field, const AffPoly<F>& p,
                          const std::vector<typename F::Elem>& point) {
  auto total = field.zero();
  for (const auto& [m, c] : p.terms) {
    auto v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (Int e = 0; e < m[i]; ++e) v = field.mul(v, point[i]);
    total = field.add(total, v);
  }
  return total;
}

/// Evaluate at commuting matrices, one per affine variable.
template <FieldType F>
DenseMat<F> eval_aff_at_matrices(const F& field, const AffPoly<F>& p,
                                 const std::vector<DenseMat<F>>& mats, int size) {
  DenseMat<F> total(field, size);
  for (const auto& [m, c] : p.terms) {
    DenseMat<F> prod = DenseMat<F>::identity(field, size);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (Int e = 0; e < m[i]; ++e) prod = dm::mul(field, prod, mats[i]);
    total = dm::add(field, total, dm::scale(field, prod, c));
  }
  return total;
}

/// Shared pipeline for a square system: monomial basis, infinity check and
/// Schur-complement multiplication maps off one elimination of the
/// f-rows at degree D_{N+1}.
template <FieldType F>
class MultihomSolver {
 public:
  MultihomSolver(const F& field, const MultihomRing& ring, XOrder ord, std::vector<XPoly<F>> sys)
      : field_(field), ring_(ring), ord_(ord) {
    if (static_cast<int>(sys.size()) != ring.affine_vars())
      throw MultihomError("multihom: system is not square (need N = sum n_i polynomials)");
    sys_ext_ = std::move(sys);
    sys_ext_.push_back(xops::hom_var(field_, ring_));
    engine_ = std::make_unique<M3hEngine<F>>(field_, ring_, ord_, sys_ext_);

    std::vector<std::vector<Int>> degs;
    for (int i = 0; i < ring.affine_vars(); ++i) degs.push_back(sys_ext_[i].multidegree());
    dN_ = macaulay_bound(degs, ring.blocks);
    dN1_ = dN_;
    for (auto& v : dN1_) v += 1;
  }

  const std::vector<Int>& bound_n() const { return dN_; }
  const std::vector<Int>& bound_n1() const { return dN1_; }
  M3hEngine<F>& engine() { return *engine_; }
  int n_polys() const { return ring_.affine_vars(); }

  /// Degree-D_N monomials outside the leading-monomial set, decreasing.
  const std::vector<Point>& basis() {
    if (!basis_.empty() || basis_computed_) return basis_;
    const int N = n_polys();
    const auto& lms = engine_->lm_set(N, dN_);
    for (const Point& m : engine_->columns(dN_))
      if (!lms.count(m)) basis_.push_back(m);
    basis_computed_ = true;
    return basis_;
  }

  long long quotient_dim_at(const std::vector<Int>& d) {
    const auto& R = engine_->reduced(n_polys(), d);
    return static_cast<long long>(engine_->columns(d).size()) - R.rank;
  }

  /// True iff the system extended by x_h spans everything at D_{N+1}.
  bool check_no_infinity() {
    const auto& R = engine_->reduced(n_polys() + 1, dN1_);
    return R.rank == static_cast<int>(engine_->columns(dN1_).size());
  }

  /// Monomial basis with the stabilization and infinity checks.
  const std::vector<Point>& monomial_basis() {
    if (quotient_dim_at(dN_) != quotient_dim_at(dN1_))
      throw MultihomError(
          "multihom: Hilbert function not constant between D_N and D_N+1; "
          "solution set looks infinite");
    if (!check_no_infinity())
      throw SolutionsAtInfinityError(
          "multihom: solutions at infinity detected; apply a generic coordinate change");
    return basis();
  }

  /// The permuted-column Macaulay matrix for a multilinear f0: the f-rows of
  /// the system at D_{N+1} followed by the f0-rows indexed by the basis.
  MacaulayMatrix<F, Point> blocked_matrix(const XPoly<F>& f0) {
    ensure_schur_ready();
    MacaulayMatrix<F, Point> M;
    M.columns = perm_columns_;
    const auto& base = engine_->matrix(n_polys(), dN1_);
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
      M.rows.push_back(remap_row(base.rows[i]));
      M.labels.push_back(base.labels[i]);
    }
    for (const Point& beta : basis()) {
      M.rows.push_back(remap_new_row(xops::mono_mul(field_, f0, beta)));
      M.labels.push_back(RowLabel<Point>{n_polys(), beta, false});
    }
    return M;
  }

  /// Multiplication map of the dehomogenization of a multilinear f0 on the
  /// quotient, in the dehomogenized monomial basis.
  DenseMat<F> mul_matrix(const XPoly<F>& f0) {
    std::vector<Int> ones(ring_.r(), 1);
    if (f0.is_zero() || f0.multidegree() != ones)
      throw MultihomError("multihom: multiplication map needs a multilinear form");
    ensure_schur_ready();
    const auto& b = basis();
    const int m = static_cast<int>(b.size());
    DenseMat<F> out(field_, m);
    std::vector<typename F::Elem> acc(perm_columns_.size(), field_.zero());
    for (int i = 0; i < m; ++i) {
      for (auto& [c, v] : remap_new_row(xops::mono_mul(field_, f0, b[i]))) acc[c] = v;
      for (int c = 0; c < n_block1_; ++c) {
        if (field_.is_zero(acc[c])) continue;
        int pr = schur_row_of_pivot_[c];
        // every block-1 column has a pivot once ensure_schur_ready passed
        auto f = acc[c];
        for (auto& [cc, vv] : schur_rows_[pr]) acc[cc] = field_.sub(acc[cc], field_.mul(f, vv));
      }
      for (int j = 0; j < m; ++j) out.at(i, j) = acc[n_block1_ + j];
      std::fill(acc.begin(), acc.end(), field_.zero());
    }
    return out;
  }

  /// Multiplication maps of every affine variable (block-major), computed
  /// against the one shared elimination.
  std::vector<DenseMat<F>> variable_mul_matrices() {
    std::vector<DenseMat<F>> out;
    for (int b = 0; b < ring_.r(); ++b) {
      for (int j = 1; j <= ring_.blocks[b]; ++j) {
        // x_{b,j} * prod_{l != b} x_{l,0}
        Point mono(ring_.nvars(), 0);
        mono[ring_.var_slot(b, j)] = 1;
        for (int l = 0; l < ring_.r(); ++l)
          if (l != b) mono[ring_.var_slot(l, 0)] = 1;
        XPoly<F> f0;
        f0.ring = &ring_;
        f0.terms.emplace_back(std::move(mono), field_.one());
        out.push_back(mul_matrix(f0));
      }
    }
    return out;
  }

 private:
  void ensure_schur_ready() {
    if (schur_ready_) return;
    const auto& b = basis();
    // permuted columns: all degree-D_{N+1} monomials with the x_h * basis
    // monomials moved to the back, both parts order-decreasing
    const Point xh = ring_.hom_monomial();
    std::set<Point, PointLess> b2;
    std::vector<Point> b2_cols;
    for (const Point& beta : b) {
      Point m = point_add(xh, beta);
      b2.insert(m);
      b2_cols.push_back(std::move(m));
    }
    perm_columns_.clear();
    for (const Point& m : engine_->columns(dN1_))
      if (!b2.count(m)) perm_columns_.push_back(m);
    n_block1_ = static_cast<int>(perm_columns_.size());
    perm_columns_.insert(perm_columns_.end(), b2_cols.begin(), b2_cols.end());
    col_of_.clear();
    col_of_.reserve(perm_columns_.size());
    for (std::size_t i = 0; i < perm_columns_.size(); ++i)
      col_of_.emplace(perm_columns_[i], static_cast<int>(i));

    // eliminate the f-rows once over the permuted columns
    MacaulayMatrix<F, Point> M;
    M.columns = perm_columns_;
    const auto& base = engine_->matrix(n_polys(), dN1_);
    for (const auto& row : base.rows) M.rows.push_back(remap_row(row));
    M.labels = base.labels;
    MacaulayMatrix<F, Point> R = rref(field_, M);

    schur_rows_.clear();
    schur_row_of_pivot_.assign(perm_columns_.size(), -1);
    int pivots_in_block1 = 0;
    for (std::size_t i = 0; i < R.rows.size(); ++i) {
      if (R.rows[i].empty()) continue;
      int pc = R.rows[i].front().first;
      schur_row_of_pivot_[pc] = static_cast<int>(schur_rows_.size());
      schur_rows_.push_back(R.rows[i]);
      if (pc < n_block1_) ++pivots_in_block1;
    }
    if (pivots_in_block1 != n_block1_ ||
        static_cast<int>(schur_rows_.size()) != pivots_in_block1)
      throw SolutionsAtInfinityError(
          "multihom: singular reduction (solutions at infinity); "
          "apply a generic coordinate change");
    schur_ready_ = true;
  }

  typename MacaulayMatrix<F, Point>::SparseRow remap_row(
      const typename MacaulayMatrix<F, Point>::SparseRow& row) {
    const auto& old_cols = engine_->columns(dN1_);
    typename MacaulayMatrix<F, Point>::SparseRow out;
    out.reserve(row.size());
    for (auto& [c, v] : row) out.emplace_back(col_of_.at(old_cols[c]), v);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  typename MacaulayMatrix<F, Point>::SparseRow remap_new_row(const XPoly<F>& p) {
    typename MacaulayMatrix<F, Point>::SparseRow out;
    out.reserve(p.terms.size());
    for (const auto& [m, c] : p.terms) out.emplace_back(col_of_.at(m), c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  const F& field_;
  const MultihomRing& ring_;
  XOrder ord_;
  std::vector<XPoly<F>> sys_ext_;  // system plus x_h
  std::unique_ptr<M3hEngine<F>> engine_;
  std::vector<Int> dN_, dN1_;
  std::vector<Point> basis_;
  bool basis_computed_ = false;

  bool schur_ready_ = false;
  std::vector<Point> perm_columns_;
  int n_block1_ = 0;
  std::unordered_map<Point, int, PointHash> col_of_;
  std::vector<typename MacaulayMatrix<F, Point>::SparseRow> schur_rows_;
  std::vector<int> schur_row_of_pivot_;
};

/// Random invertible block-wise change of coordinates; the substitution
/// matrices are returned for logging and for mapping solutions back.
template <FieldType F>
struct CoordChange {
  std::vector<XPoly<F>> system;
  std::vector<DenseMat<F>> matrices;  // one per block, size (n_i+1)
  std::uint64_t seed = 0;
};

/// Substitute x_{b,j} -> sum_l A_b[j][l] x_{b,l} in every polynomial.
template <FieldType F>
std::vector<XPoly<F>> apply_block_substitution(const F& field, const MultihomRing& ring,
                                               const XOrder& ord, const std::vector<XPoly<F>>& sys,
                                               const std::vector<DenseMat<F>>& mats) {
  std::vector<std::vector<XPoly<F>>> forms(ring.r());
  for (int b = 0; b < ring.r(); ++b) {
    for (int j = 0; j <= ring.blocks[b]; ++j) {
      std::vector<std::pair<Point, typename F::Elem>> raw;
      for (int l = 0; l <= ring.blocks[b]; ++l) {
        if (field.is_zero(mats[b].at(j, l))) continue;
        Point m(ring.nvars(), 0);
        m[ring.var_slot(b, l)] = 1;
        raw.emplace_back(std::move(m), mats[b].at(j, l));
      }
      forms[b].push_back(xops::make(field, ring, ord, std::move(raw)));
    }
  }
  std::vector<XPoly<F>> out;
  for (const auto& f : sys) {
    XPoly<F> g;
    g.ring = &ring;
    for (const auto& [m, c] : f.terms) {
      XPoly<F> term;
      term.ring = &ring;
      term.terms.emplace_back(Point(ring.nvars(), 0), c);
      for (int b = 0; b < ring.r(); ++b)
        for (int j = 0; j <= ring.blocks[b]; ++j)
          for (Int e = 0; e < m[ring.var_slot(b, j)]; ++e)
            term = xops::mul(field, ord, term, forms[b][j]);
      g = xops::add(field, ord, g, term);
    }
    out.push_back(std::move(g));
  }
  return out;
}

template <FieldType F>
CoordChange<F> change_coords(const F& field, const MultihomRing& ring, const XOrder& ord,
                             const std::vector<XPoly<F>>& sys, std::uint64_t seed,
                             int max_retries = 32) {
  std::mt19937_64 rng(seed);
  CoordChange<F> out;
  out.seed = seed;
  for (int b = 0; b < ring.r(); ++b) {
    const int sz = ring.blocks[b] + 1;
    DenseMat<F> A(field, sz);
    int tries = 0;
    do {
      if (++tries > max_retries)
        throw MultihomError("multihom: could not sample an invertible substitution");
      for (auto& v : A.a) v = field.random(rng);
    } while (!dm::invertible(field, A));
    out.matrices.push_back(std::move(A));
  }
  out.system = apply_block_substitution(field, ring, ord, sys, out.matrices);
  return out;
}

}  // namespace sgb
