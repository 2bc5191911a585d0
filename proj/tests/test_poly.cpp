#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sparsegb/poly.hpp"

using namespace sgb;
using P = SparsePoly<PrimeField>;

namespace {

struct Fixture {
  PrimeField field{65521};
  SemigroupContext ctx{{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}, 2, 32};
  GradedSparseOrder ord{ctx, BaseOrder::grevlex()};

  P aff(std::vector<std::pair<Point, long long>> terms) const {
    std::vector<std::pair<SgMono, PrimeField::Elem>> raw;
    for (auto& [p, c] : terms) raw.push_back({SgMono{p, 0}, field.from_int(c)});
    return polyops::make(field, ctx, ord, SgAmbient::Affine, std::move(raw));
  }

  P random_aff(std::mt19937_64& rng, int maxc = 3, int nterms = 3) const {
    std::vector<std::pair<SgMono, PrimeField::Elem>> raw;
    for (int i = 0; i < nterms; ++i) {
      Point p{Int(rng() % maxc), Int(rng() % maxc)};
      raw.push_back({SgMono{p, 0}, field.random(rng)});
    }
    auto out = polyops::make(field, ctx, ord, SgAmbient::Affine, std::move(raw));
    if (out.is_zero()) return aff({{{0, 0}, 1}});
    return out;
  }
};

}  // namespace

TEST_CASE("monomial product adds exponents") {
  Fixture fx;
  auto f = fx.aff({{{1, 0}, 1}});
  auto g = fx.aff({{{0, 1}, 1}});
  auto h = polyops::mul(fx.field, fx.ord, f, g);
  REQUIRE(h.terms.size() == 1);
  CHECK(h.lm().s == Point{1, 1});
}

TEST_CASE("additive inverse and distributivity") {
  Fixture fx;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto f = fx.random_aff(rng), g = fx.random_aff(rng), h = fx.random_aff(rng);
    CHECK(polyops::add(fx.field, fx.ord, f, polyops::neg(fx.field, f)).is_zero());
    auto lhs = polyops::mul(fx.field, fx.ord, f, polyops::add(fx.field, fx.ord, g, h));
    auto rhs = polyops::add(fx.field, fx.ord, polyops::mul(fx.field, fx.ord, f, g),
                            polyops::mul(fx.field, fx.ord, f, h));
    CHECK(polyops::equal(fx.field, lhs, rhs));
  }
}

TEST_CASE("ambient mismatch is an error") {
  Fixture fx;
  auto f = fx.aff({{{1, 0}, 1}});
  auto fh = polyops::homogenize(fx.field, fx.ord, f);
  CHECK_THROWS_AS(polyops::add(fx.field, fx.ord, f, fh), std::invalid_argument);
}

TEST_CASE("leading monomial under the sparse order") {
  Fixture fx;
  // X^(2,0) + X^(1,1): delta 2 beats delta 1
  auto f = fx.aff({{{2, 0}, 1}, {{1, 1}, 1}});
  CHECK(f.lm().s == Point{2, 0});
  auto single = fx.aff({{{1, 1}, 7}});
  CHECK(single.lm().s == Point{1, 1});
  CHECK(single.lc() == 7);
  // stable under nonzero scalar multiples
  auto scaled = polyops::scale(fx.field, f, fx.field.from_int(1234));
  CHECK(scaled.lm().s == f.lm().s);
  CHECK_THROWS_AS(fx.aff({}).lm(), std::domain_error);
}

TEST_CASE("homogenization lifts to the shared affine degree") {
  Fixture fx;
  auto f = fx.aff({{{2, 0}, 1}, {{1, 1}, 1}});
  auto fh = polyops::homogenize(fx.field, fx.ord, f);
  REQUIRE(fh.terms.size() == 2);
  CHECK(fh.degree() == 2);
  for (auto& [m, c] : fh.terms) CHECK(m.d == 2);
  // round trip
  auto back = polyops::dehomogenize(fx.field, fx.ord, fh);
  CHECK(polyops::equal(fx.field, back, f));
  CHECK_THROWS_AS(polyops::homogenize(fx.field, fx.ord, fx.aff({})), std::domain_error);
}

TEST_CASE("dehomogenization is a ring homomorphism") {
  Fixture fx;
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    auto f = fx.random_aff(rng), g = fx.random_aff(rng);
    auto fh = polyops::homogenize(fx.field, fx.ord, f);
    auto gh = polyops::homogenize(fx.field, fx.ord, g);
    auto prod_hom = polyops::mul(fx.field, fx.ord, fh, gh);
    auto lhs = polyops::dehomogenize(fx.field, fx.ord, prod_hom);
    auto rhs = polyops::mul(fx.field, fx.ord, f, g);
    CHECK(polyops::equal(fx.field, lhs, rhs));
  }
}

TEST_CASE("distinct same-degree monomials stay distinct under dehomogenization") {
  Fixture fx;
  auto monos = fx.ctx.monomials_of_degree(2);
  std::set<Point, PointLess> images;
  for (const auto& m : monos) images.insert(m.s);
  CHECK(images.size() == monos.size());
}

TEST_CASE("division: self, no divisor, and the correctness identity") {
  Fixture fx;
  auto g = fx.aff({{{2, 0}, 3}, {{1, 1}, 5}});
  auto r1 = polyops::divide(fx.field, fx.ord, g, {g});
  CHECK(r1.remainder.is_zero());
  REQUIRE(r1.quotients[0].terms.size() == 1);
  CHECK(point_is_zero(r1.quotients[0].lm().s));
  CHECK(r1.quotients[0].lc() == 1);

  // nothing divides: remainder is the input
  auto f = fx.aff({{{0, 1}, 2}, {{0, 0}, 1}});
  auto big = fx.aff({{{2, 2}, 1}});
  auto r2 = polyops::divide(fx.field, fx.ord, f, {big});
  CHECK(polyops::equal(fx.field, r2.remainder, f));

  std::mt19937_64 rng(77);
  for (int i = 0; i < 40; ++i) {
    auto p = fx.random_aff(rng, 4, 4);
    std::vector<P> G{fx.random_aff(rng), fx.random_aff(rng)};
    auto res = polyops::divide(fx.field, fx.ord, p, G);
    // f = sum q_i g_i + rem, re-verified by arithmetic
    auto acc = res.remainder;
    for (std::size_t k = 0; k < G.size(); ++k)
      acc = polyops::add(fx.field, fx.ord, acc, polyops::mul(fx.field, fx.ord, res.quotients[k], G[k]));
    CHECK(polyops::equal(fx.field, acc, p));
    // strictly decreasing leading-monomial trace
    for (std::size_t k = 1; k < res.lm_trace.size(); ++k)
      CHECK(fx.ord.cmp(res.lm_trace[k], res.lm_trace[k - 1]) < 0);
    // no remainder monomial is divisible by any leading monomial of G
    for (const auto& [m, c] : res.remainder.terms)
      for (const auto& gg : G) CHECK_FALSE(fx.ctx.divides_affine(gg.lm().s, m.s).has_value());
  }
}
