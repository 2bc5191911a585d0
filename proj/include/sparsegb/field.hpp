#pragma once

// Exact coefficient arithmetic: prime fields F_p (odd p < 2^31) and
// arbitrary-precision rationals behind one compile-time field concept.

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sgb {

template <class F>
concept FieldType = requires(const F f, typename F::Elem a, std::mt19937_64 rng) {
  { f.zero() } -> std::convertible_to<typename F::Elem>;
  { f.one() } -> std::convertible_to<typename F::Elem>;
  { f.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.div(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.inv(a) } -> std::convertible_to<typename F::Elem>;
  { f.neg(a) } -> std::convertible_to<typename F::Elem>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.eq(a, a) } -> std::convertible_to<bool>;
  { f.from_int(1) } -> std::convertible_to<typename F::Elem>;
  { f.from_string(std::string{}) } -> std::convertible_to<typename F::Elem>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.random(rng) } -> std::convertible_to<typename F::Elem>;
};

/// F_p with a fixed odd prime p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 3 || p >= (1ull << 31))
      throw std::invalid_argument("PrimeField: modulus must satisfy 3 <= p < 2^31");
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus is not prime");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    Elem r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }  // p < 2^31 keeps a*b in range

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // extended Euclid, signed intermediates fit in int64
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }

  Elem div(Elem a, Elem b) const {
    if (b == 0) throw std::domain_error("PrimeField: division by zero");
    return mul(a, inv(b));
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1, base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Elem from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<Elem>(m);
  }

  Elem from_string(const std::string& s) const {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("PrimeField: bad coefficient '" + s + "'");
    return from_int(v);
  }

  std::string to_string(Elem a) const { return std::to_string(a); }

  /// Uniform over [0, p). Deterministic for a seeded generator.
  Elem random(std::mt19937_64& rng) const { return rng() % p_; }

  Elem random_nonzero(std::mt19937_64& rng) const {
    Elem r;
    do { r = random(rng); } while (r == 0);
    return r;
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint64_t p_;
};

/// Q with reduced-fraction canonical form (boost cpp_rational keeps gcd = 1,
/// positive denominator).
class RationalField {
 public:
  using Elem = boost::multiprecision::cpp_rational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }

  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("RationalField: inverse of zero");
    return Elem(1) / a;
  }

  Elem div(const Elem& a, const Elem& b) const {
    if (b == 0) throw std::domain_error("RationalField: division by zero");
    return a / b;
  }

  Elem from_int(long long v) const { return Elem(v); }

  /// Accepts "a" or "a/b" in decimal.
  Elem from_string(const std::string& s) const {
    try {
      return Elem(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("RationalField: bad coefficient '" + s + "'");
    }
  }

  std::string to_string(const Elem& a) const { return a.str(); }

  /// Uniform integer numerator in [0, 65521), denominator 1.
  Elem random(std::mt19937_64& rng) const { return Elem(rng() % 65521); }

  Elem random_nonzero(std::mt19937_64& rng) const {
    Elem r;
    do { r = random(rng); } while (r == 0);
    return r;
  }
};

}  // namespace sgb
