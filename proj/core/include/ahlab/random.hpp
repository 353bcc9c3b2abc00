#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ahlab/field.hpp"

namespace ahlab {

/// The engine is fully specified by the standard; the bounded draws below are
/// done by hand because std::uniform_int_distribution is implementation-defined.
using Rng = std::mt19937_64;

/// Default magnitude bound for random rational coordinates.
inline constexpr long kDefaultCoordinateBound = 1000;

/// Uniform integer in [0, n).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = n == 0 ? 0 : (~0ULL - (~0ULL % n));
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Uniform integer in [-bound, bound].
inline long uniform_symmetric(Rng& rng, long bound) {
  return static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(2 * bound + 1))) - bound;
}

/// A random field element: uniform in [0, p) for prime fields, a uniform
/// integer in [-bound, bound] for the rationals.
inline Rationals::Element random_element(const Rationals& f, Rng& rng, long bound = kDefaultCoordinateBound) {
  return f.from_integer(uniform_symmetric(rng, bound));
}

inline PrimeField::Element random_element(const PrimeField& f, Rng& rng, long = kDefaultCoordinateBound) {
  return uniform_below(rng, f.prime());
}

template <class F>
typename F::Element random_nonzero(const F& f, Rng& rng, long bound = kDefaultCoordinateBound) {
  for (;;) {
    auto e = random_element(f, rng, bound);
    if (!f.is_zero(e)) return e;
  }
}

template <class F>
std::vector<typename F::Element> random_vector(const F& f, Rng& rng, std::size_t len,
                                               long bound = kDefaultCoordinateBound) {
  std::vector<typename F::Element> v;
  v.reserve(len);
  for (std::size_t i = 0; i < len; ++i) v.push_back(random_element(f, rng, bound));
  return v;
}

}  // namespace ahlab
