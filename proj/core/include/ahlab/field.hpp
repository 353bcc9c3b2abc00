#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ahlab {

/// Default modulus for prime-field rank computations (2^31 - 1).
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

/// Prime-field moduli must fit in 32 bits so that a product of two reduced
/// elements fits in a 64-bit word.
inline constexpr std::uint64_t kMaxPrime = 4294967295ULL;

/// Smallest modulus accepted unless the caller explicitly allows small primes.
inline constexpr std::uint64_t kMinDefaultPrime = 1ULL << 20;

enum class FieldKind { rationals, prime_field };

/// Raised when a value cannot be represented in the configured field, e.g. a
/// rational whose denominator is divisible by the prime.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which exact field a computation runs over. `prime` is meaningful only for
/// prime fields.
struct FieldConfig {
  FieldKind kind = FieldKind::prime_field;
  std::uint64_t prime = kDefaultPrime;
  bool allow_small_prime = false;

  static FieldConfig rationals() { return {FieldKind::rationals, 0, false}; }
  static FieldConfig prime_field(std::uint64_t p, bool allow_small = false) {
    return {FieldKind::prime_field, p, allow_small};
  }

  /// Throws FieldError when the configuration is unusable for forms of
  /// degree `degree` (composite modulus, modulus <= degree, out of range).
  void validate(unsigned degree = 0) const;

  std::string kind_name() const {
    return kind == FieldKind::rationals ? "rationals" : "prime";
  }

  bool operator==(const FieldConfig&) const = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n, or 0 when none fits below kMaxPrime.
std::uint64_t next_prime(std::uint64_t n);

/// The rationals. Elements are GMP rationals kept canonical.
class Rationals {
 public:
  using Element = mpq_class;

  FieldConfig config() const { return FieldConfig::rationals(); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(long long v) const { return Element(mpz_class(static_cast<long>(v))); }
  Element from_rational(const mpq_class& q) const { return q; }
  mpq_class to_rational(const Element& e) const { return e; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::string to_string(const Element& a) const { return a.get_str(); }
};

/// Z/pZ for a prime p < 2^32, elements stored as canonical residues in [0, p).
/// Reduction of 64-bit products uses a precomputed Barrett constant.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p = kDefaultPrime, bool allow_small = false);

  std::uint64_t prime() const { return p_; }
  FieldConfig config() const { return FieldConfig::prime_field(p_, allow_small_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(long long v) const;
  Element from_integer(const mpz_class& v) const;
  /// Throws FieldError when the denominator vanishes mod p.
  Element from_rational(const mpq_class& q) const;
  mpq_class to_rational(Element e) const { return mpq_class(mpz_class(std::to_string(e))); }

  Element reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }
  Element add(Element a, Element b) const {
    const Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const { return reduce(a * b); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  std::string to_string(Element a) const { return std::to_string(a); }

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
  bool allow_small_;
};

/// Runs fn with a field object built from cfg and returns its result.
template <class Fn>
decltype(auto) with_field(const FieldConfig& cfg, Fn&& fn) {
  if (cfg.kind == FieldKind::rationals) return fn(Rationals{});
  return fn(PrimeField(cfg.prime, cfg.allow_small_prime));
}

}  // namespace ahlab
