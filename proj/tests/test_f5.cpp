#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle_pipeline.hpp"
#include "sparsegb/f5.hpp"
#include "sparsegb/oracle.hpp"

using namespace sgb;
using P = SparsePoly<PrimeField>;

namespace {

struct Fixture {
  PrimeField field{65521};
  SemigroupContext ctx;
  GradedSparseOrder ord;

  explicit Fixture(std::vector<std::vector<Point>> polys, int dim)
      : ctx(std::move(polys), dim, 40), ord(ctx, BaseOrder::grevlex()) {}

  P aff(std::vector<std::pair<Point, long long>> terms) const {
    std::vector<std::pair<SgMono, PrimeField::Elem>> raw;
    for (auto& [p, c] : terms) raw.push_back({SgMono{p, 0}, field.from_int(c)});
    return polyops::make(field, ctx, ord, SgAmbient::Affine, std::move(raw));
  }

  P random_level1(std::mt19937_64& rng) const {
    std::vector<std::pair<SgMono, PrimeField::Elem>> raw;
    for (const auto& m : ctx.monomials_of_degree(1))
      raw.push_back({SgMono{m.s, 0}, field.random_nonzero(rng)});
    return polyops::make(field, ctx, ord, SgAmbient::Affine, std::move(raw));
  }
};

Fixture square() { return Fixture({{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}, 2); }
Fixture simplex() { return Fixture({{{0, 0}, {1, 0}, {0, 1}}}, 2); }

}  // namespace

TEST_CASE("principal ideal over the simplex: basis is the generator alone") {
  auto fx = simplex();
  auto f = fx.aff({{{1, 0}, 2}, {{0, 1}, 3}, {{0, 0}, 1}});
  auto res = sgb_compute(fx.field, fx.ord, {f}, SgbOptions{{4}, 30, -1});
  REQUIRE(res.basis.size() == 1);
  CHECK(polyops::equal(fx.field, res.basis[0], polyops::monic(fx.field, f)));
  // row counts never exceed the multiplier count
  for (const auto& st : res.stats) CHECK(st.rows <= st.cols);
}

TEST_CASE("principal ideal over the square polytope needs extra basis elements") {
  // X^(2,0) + X^(1,1) alone is not a sparse basis of its own ideal: the
  // restricted division misses products like X^(0,1)*f, whose leading
  // monomial X^(2,1) has no divisor of matching sparse degree
  auto fx = square();
  auto f = fx.aff({{{2, 0}, 1}, {{1, 1}, 1}});
  auto res = sgb_compute(fx.field, fx.ord, {f}, SgbOptions{{4}, 30, -1});
  CHECK(res.basis.size() > 1);
  // every element is a member of the principal ideal
  for (const auto& g : res.basis)
    CHECK(oracle::ideal_membership_bruteforce(fx.field, fx.ord, g, {f}, 8) ==
          oracle::Membership::Member);
  // and f reduces to zero against the basis
  auto div = polyops::divide(fx.field, fx.ord, f, res.basis);
  CHECK(div.remainder.is_zero());
}

TEST_CASE("witness degrees are honored verbatim") {
  auto fx = square();
  std::mt19937_64 rng(2);
  auto f1 = fx.random_level1(rng), f2 = fx.random_level1(rng);
  auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{3, 4}, 30, -1});
  CHECK(res.witness_used == std::vector<int>{3, 4});
  int max_deg_step1 = 0, max_deg_step2 = 0;
  for (const auto& st : res.stats) {
    if (st.step == 1) max_deg_step1 = std::max(max_deg_step1, st.degree);
    if (st.step == 2) max_deg_step2 = std::max(max_deg_step2, st.degree);
  }
  CHECK(max_deg_step1 == 3);
  CHECK(max_deg_step2 == 4);
}

TEST_CASE("pruned matrices span the unpruned row spaces at every degree") {
  std::mt19937_64 rng(4242);
  for (int rep = 0; rep < 4; ++rep) {
    auto fx = square();
    auto f1 = fx.random_level1(rng), f2 = fx.random_level1(rng);
    SgbTrace<PrimeField> trace;
    auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{4, 4}, 30, -1}, &trace);
    CHECK(sgbtest::trace_matches_oracle(fx.field, fx.ord, trace));
    // identical basis from the unpruned reference iteration
    auto ref = sgbtest::oracle_sgb(fx.field, fx.ord, {f1, f2}, {4, 4});
    REQUIRE(res.basis.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
      CHECK(polyops::equal(fx.field, res.basis[i], ref[i]));
  }
}

TEST_CASE("no reductions to zero on oracle-certified regular inputs") {
  std::mt19937_64 rng(515151);
  int accepted = 0;
  for (int rep = 0; rep < 6; ++rep) {
    auto fx = square();
    auto f1 = fx.random_level1(rng), f2 = fx.random_level1(rng);
    auto f1h = polyops::homogenize(fx.field, fx.ord, f1);
    auto f2h = polyops::homogenize(fx.field, fx.ord, f2);
    if (!oracle::nonzerodivisor_up_to<PrimeField>(fx.field, {}, f1h, 4)) continue;
    if (!oracle::nonzerodivisor_up_to<PrimeField>(fx.field, {f1h}, f2h, 4)) continue;
    ++accepted;
    auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{4, 4}, 30, -1});
    for (const auto& st : res.stats) {
      INFO("step " << st.step << " degree " << st.degree);
      CHECK(st.zero_rows == 0);
    }
  }
  CHECK(accepted >= 3);
}

TEST_CASE("unmixed dense square system over the simplex matches the reference basis") {
  auto fx = simplex();
  std::mt19937_64 rng(333);
  auto rand_dense = [&]() {
    std::vector<std::pair<SgMono, PrimeField::Elem>> raw;
    for (const auto& m : fx.ctx.monomials_of_degree(2))
      raw.push_back({SgMono{m.s, 0}, fx.field.random_nonzero(rng)});
    return polyops::make(fx.field, fx.ctx, fx.ord, SgAmbient::Affine, std::move(raw));
  };
  auto f1 = rand_dense(), f2 = rand_dense();
  auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{5, 5}, 30, -1});
  auto ref = sgbtest::oracle_sgb(fx.field, fx.ord, {f1, f2}, {5, 5});
  REQUIRE(res.basis.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(res.basis[i].lm() == ref[i].lm());
    CHECK(polyops::equal(fx.field, res.basis[i], ref[i]));
  }
}

TEST_CASE("membership agreement with the degree-by-degree oracle") {
  auto fx = square();
  std::mt19937_64 rng(808);
  auto f1 = fx.random_level1(rng), f2 = fx.random_level1(rng);
  auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{5, 5}, 30, -1});

  // explicit combinations are members and reduce to zero
  for (int i = 0; i < 5; ++i) {
    auto a = fx.random_level1(rng), b = fx.random_level1(rng);
    auto h = polyops::add(fx.field, fx.ord, polyops::mul(fx.field, fx.ord, a, f1),
                          polyops::mul(fx.field, fx.ord, b, f2));
    if (h.is_zero()) continue;
    CHECK(oracle::ideal_membership_bruteforce(fx.field, fx.ord, h, {f1, f2}, 6) ==
          oracle::Membership::Member);
    auto div = polyops::divide(fx.field, fx.ord, h, res.basis);
    CHECK(div.remainder.is_zero());
  }
  // the input generators themselves reduce to zero
  for (const auto& f : {f1, f2})
    CHECK(polyops::divide(fx.field, fx.ord, f, res.basis).remainder.is_zero());
}

TEST_CASE("remainders are invariant under adding ideal elements") {
  auto fx = square();
  std::mt19937_64 rng(606);
  auto f1 = fx.random_level1(rng), f2 = fx.random_level1(rng);
  auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{5, 5}, 30, -1});
  REQUIRE_FALSE(res.basis.empty());
  for (int i = 0; i < 10; ++i) {
    auto f = fx.random_level1(rng);
    auto h = fx.random_level1(rng);
    auto shifted = polyops::add(fx.field, fx.ord, f,
                                polyops::mul(fx.field, fx.ord, h, res.basis[i % res.basis.size()]));
    auto r1 = polyops::divide(fx.field, fx.ord, f, res.basis).remainder;
    auto r2 = polyops::divide(fx.field, fx.ord, shifted, res.basis).remainder;
    CHECK(polyops::equal(fx.field, r1, r2));
  }
}

TEST_CASE("auto witness mode stabilizes on the explicit-witness basis") {
  auto fx = square();
  std::mt19937_64 rng(99);
  auto f1 = fx.random_level1(rng), f2 = fx.random_level1(rng);
  auto res_auto = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{}, 12, -1});
  CHECK(res_auto.auto_mode);
  CHECK_FALSE(res_auto.degree_capped);
  auto res_expl = sgb_compute(fx.field, fx.ord, {f1, f2},
                              SgbOptions{res_auto.witness_used, 30, -1});
  REQUIRE(res_auto.basis.size() == res_expl.basis.size());
  for (std::size_t i = 0; i < res_auto.basis.size(); ++i)
    CHECK(polyops::equal(fx.field, res_auto.basis[i], res_expl.basis[i]));
}

TEST_CASE("empty input is rejected") {
  auto fx = square();
  CHECK_THROWS_AS(sgb_compute(fx.field, fx.ord, std::vector<P>{}, SgbOptions{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sgb_compute(fx.field, fx.ord, {fx.aff({})}, SgbOptions{}),
                  std::invalid_argument);
}

TEST_CASE("mixed supports: polynomials over different polytopes") {
  // two polytopes merged into one ambient; each polynomial supported on its own
  Fixture fx({{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 1}, {1, 0}}}, 2);
  std::mt19937_64 rng(7);
  auto f1 = fx.aff({{{1, 0}, 3}, {{0, 1}, 5}, {{0, 0}, 1}});
  auto f2 = fx.aff({{{1, 1}, 2}, {{1, 0}, 7}, {{0, 0}, 4}});
  SgbTrace<PrimeField> trace;
  auto res = sgb_compute(fx.field, fx.ord, {f1, f2}, SgbOptions{{4, 4}, 30, -1}, &trace);
  CHECK_FALSE(res.basis.empty());
  CHECK(sgbtest::trace_matches_oracle(fx.field, fx.ord, trace));
  for (const auto& f : {f1, f2})
    CHECK(polyops::divide(fx.field, fx.ord, f, res.basis).remainder.is_zero());
}
