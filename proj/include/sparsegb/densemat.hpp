#pragma once

// Small dense square-matrix arithmetic over an exact field; used for
// multiplication maps and the change-of-order step.

#include <stdexcept>
#include <vector>

#include "sparsegb/field.hpp"

namespace sgb {

template <FieldType F>
struct DenseMat {
  using Elem = typename F::Elem;
  int n = 0;
  std::vector<Elem> a;  // row-major

  DenseMat() = default;
  DenseMat(const F& field, int size) : n(size), a(static_cast<std::size_t>(size) * size, field.zero()) {}

  Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Elem& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static DenseMat identity(const F& field, int size) {
    DenseMat m(field, size);
    for (int i = 0; i < size; ++i) m.at(i, i) = field.one();
    return m;
  }
};

namespace dm {

template <FieldType F>
DenseMat<F> mul(const F& field, const DenseMat<F>& A, const DenseMat<F>& B) {
  if (A.n != B.n) throw std::invalid_argument("densemat: size mismatch");
  DenseMat<F> C(field, A.n);
  for (int i = 0; i < A.n; ++i) {
    for (int k = 0; k < A.n; ++k) {
      if (field.is_zero(A.at(i, k))) continue;
      const auto aik = A.at(i, k);
      for (int j = 0; j < A.n; ++j)
        C.at(i, j) = field.add(C.at(i, j), field.mul(aik, B.at(k, j)));
    }
  }
  return C;
}

template <FieldType F>
DenseMat<F> add(const F& field, const DenseMat<F>& A, const DenseMat<F>& B) {
  if (A.n != B.n) throw std::invalid_argument("densemat: size mismatch");
  DenseMat<F> C(field, A.n);
  for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = field.add(A.a[i], B.a[i]);
  return C;
}

template <FieldType F>
DenseMat<F> scale(const F& field, const DenseMat<F>& A, const typename F::Elem& c) {
  DenseMat<F> C = A;
  for (auto& v : C.a) v = field.mul(v, c);
  return C;
}

template <FieldType F>
DenseMat<F> pow(const F& field, const DenseMat<F>& A, int e) {
  DenseMat<F> R = DenseMat<F>::identity(field, A.n);
  for (int i = 0; i < e; ++i) R = mul(field, R, A);
  return R;
}

template <FieldType F>
bool equal(const F& field, const DenseMat<F>& A, const DenseMat<F>& B) {
  if (A.n != B.n) return false;
  for (std::size_t i = 0; i < A.a.size(); ++i)
    if (!field.eq(A.a[i], B.a[i])) return false;
  return true;
}

template <FieldType F>
bool is_zero(const F& field, const DenseMat<F>& A) {
  for (const auto& v : A.a)
    if (!field.is_zero(v)) return false;
  return true;
}

/// Row vector times matrix.
template <FieldType F>
std::vector<typename F::Elem> vec_mul(const F& field, const std::vector<typename F::Elem>& v,
                                      const DenseMat<F>& A) {
  std::vector<typename F::Elem> out(A.n, field.zero());
  for (int i = 0; i < A.n; ++i) {
    if (field.is_zero(v[i])) continue;
    for (int j = 0; j < A.n; ++j) out[j] = field.add(out[j], field.mul(v[i], A.at(i, j)));
  }
  return out;
}

/// Rank by plain Gaussian elimination; input copied.
template <FieldType F>
int rank(const F& field, DenseMat<F> A) {
  int r = 0;
  for (int c = 0; c < A.n && r < A.n; ++c) {
    int pr = -1;
    for (int i = r; i < A.n; ++i)
      if (!field.is_zero(A.at(i, c))) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < A.n; ++j) std::swap(A.at(r, j), A.at(pr, j));
    auto inv = field.inv(A.at(r, c));
    for (int j = 0; j < A.n; ++j) A.at(r, j) = field.mul(A.at(r, j), inv);
    for (int i = 0; i < A.n; ++i) {
      if (i == r || field.is_zero(A.at(i, c))) continue;
      auto f = A.at(i, c);
      for (int j = 0; j < A.n; ++j) A.at(i, j) = field.sub(A.at(i, j), field.mul(f, A.at(r, j)));
    }
    ++r;
  }
  return r;
}

template <FieldType F>
bool invertible(const F& field, const DenseMat<F>& A) {
  return rank(field, A) == A.n;
}

}  // namespace dm
}  // namespace sgb
