#include "ahlab/interpolation.hpp"

#include <stdexcept>

namespace ahlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::independent:
      return "independent";
    case Verdict::fills:
      return "fills";
    case Verdict::defective_evidence:
      return "defective-evidence";
  }
  return "unknown";
}

std::string to_string(Certification c) {
  switch (c) {
    case Certification::char0_lower_bound_certified:
      return "char0-lower-bound-certified";
    case Certification::exact_over_q:
      return "exact-over-Q";
    case Certification::evidence_only:
      return "evidence-only";
  }
  return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "independent") return Verdict::independent;
  if (s == "fills") return Verdict::fills;
  if (s == "defective-evidence") return Verdict::defective_evidence;
  throw std::invalid_argument("unknown verdict \"" + s + "\"");
}

Certification certification_from_string(const std::string& s) {
  if (s == "char0-lower-bound-certified") return Certification::char0_lower_bound_certified;
  if (s == "exact-over-Q") return Certification::exact_over_q;
  if (s == "evidence-only") return Certification::evidence_only;
  throw std::invalid_argument("unknown certification \"" + s + "\"");
}

nlohmann::json HilbertReport::to_json() const {
  nlohmann::json c = {{"n", n}, {"d", d}, {"k", nullptr}};
  if (k) c["k"] = *k;
  nlohmann::json fj = {{"kind", field.kind_name()}, {"prime", nullptr}};
  if (field.kind == FieldKind::prime_field) fj["prime"] = field.prime;
  return {{"case", c},
          {"summary", summary.to_json()},
          {"space_dim", space_dim},
          {"degree", degree},
          {"expected", expected},
          {"computed", computed},
          {"defect", defect},
          {"verdict", to_string(verdict)},
          {"certification", to_string(certification)},
          {"field", fj},
          {"seed", seed},
          {"trials", trials},
          {"retried", retried},
          {"cached", cached},
          {"elapsed_ms", elapsed_ms}};
}

HilbertReport HilbertReport::from_json(const nlohmann::json& j) {
  HilbertReport r;
  const auto& c = j.at("case");
  r.n = c.at("n").get<unsigned>();
  r.d = c.at("d").get<unsigned>();
  if (!c.at("k").is_null()) r.k = c.at("k").get<std::size_t>();
  if (j.contains("summary")) {
    const auto& s = j.at("summary");
    r.summary.double_points = s.value("double", std::size_t{0});
    r.summary.simple_points = s.value("simple", std::size_t{0});
    r.summary.trace_double_points = s.value("trace_double", std::size_t{0});
    r.summary.jets = s.value("jet", std::size_t{0});
    r.summary.contain_linear = s.value("contain_linear", std::size_t{0});
  }
  r.space_dim = j.at("space_dim").get<std::size_t>();
  r.degree = j.at("degree").get<std::size_t>();
  r.expected = j.at("expected").get<std::size_t>();
  r.computed = j.at("computed").get<std::size_t>();
  r.defect = j.at("defect").get<std::size_t>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.certification = certification_from_string(j.at("certification").get<std::string>());
  const auto& fj = j.at("field");
  if (fj.at("kind") == "rationals") {
    r.field = FieldConfig::rationals();
  } else {
    r.field = FieldConfig::prime_field(fj.at("prime").get<std::uint64_t>(), true);
  }
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<unsigned>();
  r.retried = j.value("retried", false);
  r.cached = j.value("cached", false);
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

std::size_t space_dimension(unsigned n, unsigned d) { return binomial(n + d, n); }

std::size_t expected_codim(unsigned n, unsigned d, std::size_t k) {
  return std::min(k * (n + 1), space_dimension(n, d));
}

template <class F>
std::size_t ideal_dimension(const F& f, const SchemeSpec<F>& spec, unsigned d) {
  if (d == 0) return spec.components.empty() ? 1 : 0;
  return space_dimension(spec.n, d) - rank(condition_matrix(f, spec, d));
}

template <class F>
SchemeSpec<F> random_double_points(const F& f, unsigned n, std::size_t k, Rng& rng, long bound) {
  SchemeSpec<F> spec;
  spec.n = n;
  for (std::size_t i = 0; i < k; ++i) spec.add(DoublePoint<F>{random_point(f, n, rng, bound)});
  return spec;
}

void finish_report(HilbertReport& r) {
  r.expected = std::min(r.degree, r.space_dim);
  if (r.computed > r.expected) throw std::logic_error("rank exceeds the expected value");
  r.defect = r.expected - r.computed;
  if (r.defect > 0) {
    r.verdict = Verdict::defective_evidence;
  } else if (r.degree > r.space_dim) {
    r.verdict = Verdict::fills;
  } else {
    r.verdict = Verdict::independent;
  }
  if (r.field.kind == FieldKind::rationals) {
    r.certification = Certification::exact_over_q;
  } else if (r.defect == 0) {
    // The reduction mod p of an integer matrix never has larger rank.
    r.certification = Certification::char0_lower_bound_certified;
  } else {
    r.certification = Certification::evidence_only;
  }
}

std::uint64_t retry_seed(std::uint64_t seed) {
  // One splitmix64 step.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FieldConfig retry_field(const FieldConfig& cfg) {
  if (cfg.kind == FieldKind::rationals) return cfg;
  FieldConfig next = cfg;
  next.prime = next_prime(cfg.prime);
  if (next.prime == 0) {
    std::uint64_t p = cfg.prime - 1;
    while (p > 2 && !is_prime(p)) --p;
    next.prime = p;
  }
  return next;
}

HilbertReport hilbert_double_points(unsigned n, unsigned d, std::size_t k, const HilbertOptions& opt) {
  const long bound = opt.bound;
  auto r = hilbert_function(
      n, d, [&](const auto& f, Rng& rng) { return random_double_points(f, n, k, rng, bound); }, opt);
  r.k = k;
  return r;
}

HilbertReport hilbert_fixed(const SchemeSpec<Rationals>& spec, unsigned d, const HilbertOptions& opt) {
  HilbertOptions once = opt;
  once.trials = 1;
  once.retry = false;
  auto r = hilbert_function(
      spec.n, d, [&](const auto& f, Rng&) { return convert_scheme(f, spec); }, once);
  const auto s = r.summary;
  if (s.simple_points == 0 && s.trace_double_points == 0 && s.jets == 0) r.k = s.double_points;
  return r;
}

nlohmann::json SecantReport::to_json() const {
  return {{"n", n},
          {"d", d},
          {"k", k},
          {"dimension", dimension},
          {"expected_dimension", expected_dimension},
          {"ambient_dimension", ambient_dimension},
          {"hilbert", hilbert.to_json()}};
}

SecantReport secant_dimension(unsigned n, unsigned d, std::size_t k, const HilbertOptions& opt) {
  if (k < 1) throw std::invalid_argument("secant varieties need k >= 1");
  SecantReport s;
  s.n = n;
  s.d = d;
  s.k = k;
  s.hilbert = hilbert_double_points(n, d, k, opt);
  s.dimension = static_cast<long>(s.hilbert.computed) - 1;
  s.expected_dimension = static_cast<long>(expected_codim(n, d, k)) - 1;
  s.ambient_dimension = static_cast<long>(space_dimension(n, d)) - 1;
  return s;
}

namespace {

template <class F>
TerraciniResult terracini_impl(const F& f, unsigned n, unsigned d, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  const MonomialBasis basis(n, d);
  std::vector<Vec<F>> points;
  std::vector<typename F::Element> lambda;
  for (std::size_t i = 0; i < k; ++i) {
    Vec<F> l{f.one()};
    for (unsigned j = 0; j < n; ++j) l.push_back(random_element(f, rng));
    points.push_back(std::move(l));
    lambda.push_back(i + 1 == k ? f.one() : random_nonzero(f, rng));
  }

  // Powers l_c^e for every point and coordinate.
  const auto monomial_at = [&](const Vec<F>& l, const MultiIndex& a) {
    auto v = f.one();
    for (std::size_t c = 0; c < a.size(); ++c) {
      for (unsigned e = 0; e < a[c]; ++e) v = f.mul(v, l[c]);
    }
    return v;
  };

  Matrix<F> jac(f, 0, basis.size());
  Vec<F> value(basis.size(), f.zero());
  for (std::size_t i = 0; i < k; ++i) {
    Vec<F> power(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) power[a] = monomial_at(points[i], basis[a]);
    for (std::size_t a = 0; a < basis.size(); ++a) value[a] = f.add(value[a], f.mul(lambda[i], power[a]));
    // d/d tau_ij of lambda_i l_i^a = lambda_i a_j l_i^(a - e_j), j = 1..n.
    for (unsigned j = 1; j <= n; ++j) {
      Vec<F> row(basis.size(), f.zero());
      for (std::size_t a = 0; a < basis.size(); ++a) {
        const unsigned e = basis[a][j];
        if (e == 0) continue;
        MultiIndex lower = basis[a];
        --lower[j];
        row[a] = f.mul(f.mul(lambda[i], f.from_integer(e)), monomial_at(points[i], lower));
      }
      jac.append_row(row);
    }
    if (i + 1 < k) jac.append_row(power);
  }
  jac.append_row(value);

  SchemeSpec<F> spec;
  spec.n = n;
  for (const auto& p : points) spec.add(DoublePoint<F>{p});
  return {rank(jac), rank(condition_matrix(f, spec, d)), jac.rows()};
}

}  // namespace

TerraciniResult terracini_jacobian_rank(unsigned n, unsigned d, std::size_t k, std::uint64_t seed,
                                        const FieldConfig& field) {
  if (k < 1) throw std::invalid_argument("terracini rank needs k >= 1");
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  field.validate(d);
  return with_field(field, [&](const auto& f) { return terracini_impl(f, n, d, k, seed); });
}

nlohmann::json CastelnuovoBound::to_json() const {
  return {{"residual_dim", residual_dim}, {"trace_dim", trace_dim}, {"upper_bound", upper_bound},
          {"space_dim", space_dim},       {"residual_h", residual_h}, {"trace_h", trace_h},
          {"h_lower", h_lower}};
}

template <class F>
CastelnuovoBound castelnuovo_upper_bound(const F& f, const SchemeSpec<F>& spec, const Hyperplane<F>& h,
                                         unsigned d) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  const auto split = trace_residual(f, spec, h);
  CastelnuovoBound b;
  b.space_dim = space_dimension(spec.n, d);
  b.residual_dim = ideal_dimension(f, split.residual, d - 1);
  b.trace_dim = ideal_dimension(f, split.trace, d);
  b.upper_bound = b.residual_dim + b.trace_dim;
  b.residual_h = space_dimension(spec.n, d - 1) - b.residual_dim;
  b.trace_h = space_dimension(spec.n - 1, d) - b.trace_dim;
  b.h_lower = b.residual_h + b.trace_h;
  return b;
}

#define AHLAB_INSTANTIATE_INTERPOLATION(F)                                                             \
  template std::size_t ideal_dimension<F>(const F&, const SchemeSpec<F>&, unsigned);                   \
  template SchemeSpec<F> random_double_points<F>(const F&, unsigned, std::size_t, Rng&, long);         \
  template CastelnuovoBound castelnuovo_upper_bound<F>(const F&, const SchemeSpec<F>&, const Hyperplane<F>&, \
                                                       unsigned);

AHLAB_INSTANTIATE_INTERPOLATION(Rationals)
AHLAB_INSTANTIATE_INTERPOLATION(PrimeField)

#undef AHLAB_INSTANTIATE_INTERPOLATION

}  // namespace ahlab
