#include "ahlab/field.hpp"

#include <array>
#include <string>

namespace ahlab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact for all n < 3.3e24.
  constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t a : witnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  for (std::uint64_t c = n + 1; c <= kMaxPrime && c > n; ++c) {
    if (is_prime(c)) return c;
  }
  return 0;
}

void FieldConfig::validate(unsigned degree) const {
  if (kind == FieldKind::rationals) return;
  if (prime > kMaxPrime) {
    throw FieldError("prime " + std::to_string(prime) + " exceeds the 32-bit limit");
  }
  if (!is_prime(prime)) throw FieldError(std::to_string(prime) + " is not prime");
  if (!allow_small_prime && prime <= kMinDefaultPrime) {
    throw FieldError("prime " + std::to_string(prime) + " is below 2^20; pass allow_small_prime to use it");
  }
  if (prime <= degree) {
    throw FieldError("prime " + std::to_string(prime) + " must exceed the degree " + std::to_string(degree));
  }
}

PrimeField::PrimeField(std::uint64_t p, bool allow_small) : p_(p), barrett_(0), allow_small_(allow_small) {
  FieldConfig::prime_field(p, allow_small).validate();
  barrett_ = ~0ULL / p_;
}

PrimeField::Element PrimeField::from_integer(long long v) const {
  const long long m = static_cast<long long>(p_);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_integer(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p_));
  return r.get_ui();
}

PrimeField::Element PrimeField::from_rational(const mpq_class& q) const {
  const Element den = from_integer(q.get_den());
  if (den == 0) {
    throw FieldError("value " + q.get_str() + " has a denominator divisible by " + std::to_string(p_));
  }
  return div(from_integer(q.get_num()), den);
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Extended Euclid on signed 64-bit values; p < 2^32 keeps everything in range.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<Element>(t);
}

}  // namespace ahlab
