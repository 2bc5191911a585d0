#pragma once

// Test-only reference pipeline: the same generator-by-generator iteration as
// the pruned computation, but with unpruned matrices (all multiplier shifts)
// eliminated by the oracle's dense routine.

#include <vector>

#include "sparsegb/f5.hpp"
#include "sparsegb/oracle.hpp"

namespace sgbtest {

using namespace sgb;

/// Reference basis: same iteration and filtering as sgb_compute, full
/// matrices, dense elimination.
template <FieldType F>
std::vector<SparsePoly<F>> oracle_sgb(const F& field, const GradedSparseOrder& ord,
                                      const std::vector<SparsePoly<F>>& input,
                                      const std::vector<int>& witness) {
  const SemigroupContext& ctx = ord.ctx();
  std::vector<SparsePoly<F>> basis_h, basis;
  for (std::size_t i = 0; i < input.size(); ++i) {
    auto f_h = polyops::homogenize(field, ord, input[i]);
    basis.clear();
    for (int d = 1; d <= witness[i]; ++d) {
      auto gens = basis_h;
      gens.push_back(f_h);
      auto cols = oracle::enumerate_columns(field, ctx, ord, d);
      auto rows = oracle::reduced_rows_sparse(field, gens, d, cols);
      for (int r = static_cast<int>(rows.size()) - 1; r >= 0; --r) {
        SparsePoly<F> hpoly;
        hpoly.ctx = &ctx;
        hpoly.ambient = SgAmbient::Homogeneous;
        for (auto& [c, v] : rows[r]) hpoly.terms.emplace_back(cols[c], v);
        auto h = polyops::dehomogenize(field, ord, hpoly);
        bool covered = false;
        for (const auto& g : basis)
          if (ctx.divides_affine(g.lm().s, h.lm().s)) { covered = true; break; }
        if (!covered) basis.push_back(polyops::monic(field, h));
      }
    }
    basis_h.clear();
    for (const auto& g : basis) basis_h.push_back(polyops::homogenize(field, ord, g));
  }
  return basis;
}

template <FieldType F>
bool trace_matches_oracle(const F& field, const GradedSparseOrder& ord, const SgbTrace<F>& trace) {
  return oracle::trace_matches(field, ord, trace);
}

}  // namespace sgbtest
