#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ahlab/exactlinalg.hpp"
#include "ahlab/field.hpp"
#include "ahlab/polyspace.hpp"
#include "ahlab/random.hpp"
#include "ahlab/schemes.hpp"

namespace ahlab {

enum class Verdict { independent, fills, defective_evidence };
enum class Certification { char0_lower_bound_certified, exact_over_q, evidence_only };

std::string to_string(Verdict v);
std::string to_string(Certification c);
Verdict verdict_from_string(const std::string& s);
Certification certification_from_string(const std::string& s);

struct HilbertOptions {
  FieldConfig field = FieldConfig::prime_field(kDefaultPrime);
  std::uint64_t seed = 1;
  unsigned trials = 3;
  /// On a rank below the expected value, rerun once with a fresh seed and the next prime.
  bool retry = true;
  long bound = kDefaultCoordinateBound;
};

struct HilbertReport {
  unsigned n = 0;
  unsigned d = 0;
  std::optional<std::size_t> k;  // set when the scheme is k general double points
  SchemeSummary summary;
  std::size_t space_dim = 0;
  std::size_t degree = 0;
  std::size_t expected = 0;
  std::size_t computed = 0;
  std::size_t defect = 0;
  Verdict verdict = Verdict::independent;
  Certification certification = Certification::evidence_only;
  FieldConfig field;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  bool retried = false;
  double elapsed_ms = 0;
  bool cached = false;

  nlohmann::json to_json() const;
  static HilbertReport from_json(const nlohmann::json& j);
};

/// min((n+1)k, C(n+d, n)).
std::size_t expected_codim(unsigned n, unsigned d, std::size_t k);

/// C(n+d, n).
std::size_t space_dimension(unsigned n, unsigned d);

/// dim I_X(d) = C(n+d, n) - rank of the condition matrix; for d = 0 it is 1
/// for the empty scheme and 0 otherwise.
template <class F>
std::size_t ideal_dimension(const F& f, const SchemeSpec<F>& spec, unsigned d);

/// k random double points of P^n.
template <class F>
SchemeSpec<F> random_double_points(const F& f, unsigned n, std::size_t k, Rng& rng,
                                   long bound = kDefaultCoordinateBound);

/// Fills in degree, expected value, defect, verdict and certification from
/// the raw rank.
void finish_report(HilbertReport& r);

/// Seed and field used for the single retry after a low rank.
std::uint64_t retry_seed(std::uint64_t seed);
FieldConfig retry_field(const FieldConfig& cfg);

/// Hilbert function of a scheme family in degree d. `sample(field, rng)`
/// returns a fresh SchemeSpec over the given field; generic positions are
/// drawn from rng, so every trial re-samples them. The reported rank is the
/// maximum over trials.
template <class Sampler>
HilbertReport hilbert_function(unsigned n, unsigned d, Sampler&& sample, const HilbertOptions& opt) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (opt.trials < 1) throw std::invalid_argument("at least one trial is required");
  opt.field.validate(d);
  const auto start = std::chrono::steady_clock::now();
  HilbertReport r;
  r.n = n;
  r.d = d;
  r.space_dim = space_dimension(n, d);

  const auto attempt = [&](const FieldConfig& cfg, std::uint64_t seed) {
    return with_field(cfg, [&](const auto& f) {
      Rng rng(seed);
      unsigned used = 0;
      std::size_t best = 0;
      for (unsigned t = 0; t < opt.trials; ++t) {
        const auto spec = sample(f, rng);
        if (spec.n != n) throw std::invalid_argument("sampled scheme lives in the wrong projective space");
        if (t == 0) {
          r.summary = summarize(spec);
          r.degree = scheme_degree(spec);
        }
        ++used;
        best = std::max(best, rank(condition_matrix(f, spec, d)));
        if (best == std::min(r.degree, r.space_dim)) break;
      }
      r.trials += used;
      return best;
    });
  };

  r.field = opt.field;
  r.seed = opt.seed;
  r.computed = attempt(opt.field, opt.seed);
  if (r.computed < std::min(r.degree, r.space_dim) && opt.retry) {
    const FieldConfig next = retry_field(opt.field);
    const std::size_t again = attempt(next, retry_seed(opt.seed));
    r.retried = true;
    r.field = next;
    r.computed = std::max(r.computed, again);
  }
  finish_report(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// k general double points in P^n.
HilbertReport hilbert_double_points(unsigned n, unsigned d, std::size_t k, const HilbertOptions& opt = {});

/// A fixed scheme with exact coordinates; no resampling, so a single trial.
HilbertReport hilbert_fixed(const SchemeSpec<Rationals>& spec, unsigned d, const HilbertOptions& opt = {});

struct SecantReport {
  unsigned n = 0;
  unsigned d = 0;
  std::size_t k = 0;
  long dimension = 0;           // projective dimension of the k-th secant variety
  long expected_dimension = 0;  // min(k(n+1), C(n+d,n)) - 1
  long ambient_dimension = 0;   // C(n+d,n) - 1
  HilbertReport hilbert;

  nlohmann::json to_json() const;
};

/// dim sigma_k(V^{d,n}) = h(k double points, d) - 1.
SecantReport secant_dimension(unsigned n, unsigned d, std::size_t k, const HilbertOptions& opt = {});

struct TerraciniResult {
  std::size_t jacobian_rank = 0;
  std::size_t tangent_rank = 0;
  std::size_t rows = 0;
};

/// Rank of the Jacobian of (tau, lambda) -> sum_i lambda_i (x_0 + tau_i . x)^d
/// with lambda_k = 1, stacked with the value itself, at seeded random
/// parameters; alongside the rank of the stacked tangent rows at the same points.
TerraciniResult terracini_jacobian_rank(unsigned n, unsigned d, std::size_t k, std::uint64_t seed,
                                        const FieldConfig& field = FieldConfig::prime_field(kDefaultPrime));

struct CastelnuovoBound {
  std::size_t residual_dim = 0;  // dim I_residual(d-1)
  std::size_t trace_dim = 0;     // dim I_trace(d) on H
  std::size_t upper_bound = 0;   // their sum, bounding dim I_X(d)
  std::size_t space_dim = 0;
  std::size_t residual_h = 0;    // h(residual, d-1)
  std::size_t trace_h = 0;       // h(trace, d)
  std::size_t h_lower = 0;       // residual_h + trace_h <= h(X, d)

  nlohmann::json to_json() const;
};

template <class F>
CastelnuovoBound castelnuovo_upper_bound(const F& f, const SchemeSpec<F>& spec, const Hyperplane<F>& h,
                                         unsigned d);

}  // namespace ahlab
