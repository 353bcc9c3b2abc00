#include "ahlab/witness.hpp"

#include <algorithm>

#include "ahlab/exactlinalg.hpp"
#include "ahlab/interpolation.hpp"

namespace ahlab {

namespace {

nlohmann::json points_json(const std::vector<QVec>& pts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : pts) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : p) row.push_back(x.get_str());
    out.push_back(row);
  }
  return out;
}

bool proportional_points(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) return false;
  const bool az = std::all_of(a.begin(), a.end(), [](const mpq_class& x) { return sgn(x) == 0; });
  const bool bz = std::all_of(b.begin(), b.end(), [](const mpq_class& x) { return sgn(x) == 0; });
  if (az || bz) return false;
  return rank(Matrix<Rationals>::from_rows(Rationals{}, a.size(), {a, b})) == 1;
}

Form<Rationals> binary_linear(const mpq_class& s_coeff, const mpq_class& t_coeff) {
  return linear_form<Rationals>({s_coeff, t_coeff});
}

Form<Rationals> constant_form(unsigned n, const mpq_class& c) {
  Form<Rationals> one = zero_form(Rationals{}, n, 0);
  one.coeffs[0] = c;
  return one;
}

}  // namespace

nlohmann::json WitnessForm::to_json() const {
  return {{"form", form_to_json(form)},
          {"polynomial", form_to_string(form)},
          {"points", points_json(points)},
          {"verified", verified},
          {"kernel_dim", kernel_dim},
          {"transcript", transcript}};
}

bool singular_at_all(const Form<Rationals>& g, const std::vector<QVec>& points) {
  const Rationals q;
  for (const auto& p : points) {
    const auto grad = gradient_at(q, g, p);
    if (std::any_of(grad.begin(), grad.end(), [](const mpq_class& x) { return sgn(x) != 0; })) return false;
  }
  return true;
}

WitnessForm double_hypersurface_witness(const std::vector<QVec>& points, unsigned n, unsigned e) {
  if (e < 1) throw WitnessError("auxiliary degree must be at least 1");
  const Rationals q;
  const MonomialBasis basis(n, e);
  Matrix<Rationals> m(q, 0, basis.size());
  for (const auto& p : points) {
    if (p.size() != n + 1) throw WitnessError("point with the wrong number of coordinates");
    m.append_row(evaluation_row(q, p, basis));
  }
  const auto ker = kernel_basis(m);
  if (ker.empty()) {
    throw WitnessError("no form of degree " + std::to_string(e) + " passes through the " +
                       std::to_string(points.size()) + " points");
  }
  WitnessForm w;
  w.points = points;
  w.kernel_dim = ker.size();
  const Form<Rationals> base{n, e, ker.front()};
  w.form = multiply(q, base, base);
  w.transcript.push_back("degree-" + std::to_string(e) + " forms through the points: dimension " +
                         std::to_string(ker.size()));
  w.transcript.push_back("base form: " + form_to_string(base));
  const bool sing = singular_at_all(w.form, points);
  w.transcript.push_back(std::string("all partials of the square vanish at every point: ") + (sing ? "yes" : "no"));
  w.verified = sing && !w.form.is_zero(q);
  return w;
}

QVec RationalNormalCurve::at(const mpq_class& s, const mpq_class& t) const {
  const Rationals q;
  QVec x;
  for (const auto& f : forms) x.push_back(evaluate(q, f, {s, t}));
  return x;
}

nlohmann::json RationalNormalCurve::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : forms) fs.push_back(form_to_string(f));
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [s, t] : parameters) params.push_back({s.get_str(), t.get_str()});
  return {{"n", n}, {"parametrization", fs}, {"points", points_json(points)}, {"parameters", params}};
}

RationalNormalCurve standard_rnc(unsigned n) {
  RationalNormalCurve c;
  c.n = n;
  for (unsigned i = 0; i <= n; ++i) {
    Form<Rationals> f = zero_form(Rationals{}, 1, n);
    f.coeffs[i] = 1;
    c.forms.push_back(std::move(f));
  }
  return c;
}

RationalNormalCurve rnc_through(const std::vector<QVec>& points) {
  if (points.empty()) throw WitnessError("no points given");
  const unsigned n = static_cast<unsigned>(points.front().size() - 1);
  if (points.size() != n + 3) {
    throw WitnessError("a rational normal curve in P^" + std::to_string(n) + " needs " + std::to_string(n + 3) +
                       " points, got " + std::to_string(points.size()));
  }
  for (const auto& p : points) {
    if (p.size() != n + 1) throw WitnessError("points have inconsistent dimensions");
  }
  const Rationals q;
  Matrix<Rationals> pm(q, n + 1, n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    for (unsigned j = 0; j <= n; ++j) pm(i, j) = points[j][i];
  }
  if (rank(pm) != n + 1) throw WitnessError("the first n+1 points lie on a hyperplane");
  const auto lambda = *solve(pm, std::span<const mpq_class>(points[n + 1]));
  for (const auto& l : lambda) {
    if (sgn(l) == 0) throw WitnessError("point n+2 lies on a hyperplane spanned by n of the first n+1");
  }
  Matrix<Rationals> a(q, n + 1, n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    for (unsigned j = 0; j <= n; ++j) a(i, j) = pm(i, j) * lambda[j];
  }
  const auto y = *solve(a, std::span<const mpq_class>(points[n + 2]));
  std::vector<mpq_class> roots;
  for (const auto& v : y) {
    if (sgn(v) == 0) throw WitnessError("last point lies on a coordinate hyperplane of the frame");
    roots.push_back(mpq_class(-1) / v);
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (roots[i] == roots[j]) throw WitnessError("points are not in general position");
    }
  }
  // In frame coordinates y_i = prod_{j != i} (t - a_j s); then x = A y.
  std::vector<Form<Rationals>> frame;
  for (unsigned i = 0; i <= n; ++i) {
    Form<Rationals> f = constant_form(1, 1);
    for (unsigned j = 0; j <= n; ++j) {
      if (j != i) f = multiply(q, f, binary_linear(-roots[j], 1));
    }
    frame.push_back(std::move(f));
  }
  RationalNormalCurve c;
  c.n = n;
  c.points = points;
  for (unsigned r = 0; r <= n; ++r) {
    Form<Rationals> f = zero_form(q, 1, n);
    for (unsigned i = 0; i <= n; ++i) f = add(q, f, scale(q, frame[i], a(r, i)));
    c.forms.push_back(std::move(f));
  }
  for (unsigned i = 0; i <= n; ++i) c.parameters.emplace_back(1, roots[i]);
  c.parameters.emplace_back(0, 1);
  c.parameters.emplace_back(1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!proportional_points(c.at(c.parameters[i].first, c.parameters[i].second), points[i])) {
      throw WitnessError("constructed curve misses point " + std::to_string(i));
    }
  }
  return c;
}

bool on_curve(const RationalNormalCurve& c, const QVec& x) {
  const Rationals q;
  const unsigned n = c.n;
  if (x.size() != n + 1) return false;
  if (std::all_of(x.begin(), x.end(), [](const mpq_class& v) { return sgn(v) == 0; })) return false;
  Matrix<Rationals> b(q, n + 1, n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    for (unsigned j = 0; j <= n; ++j) b(i, j) = c.forms[i].coeffs[j];
  }
  const auto z = solve(b, std::span<const mpq_class>(x));
  if (!z) return false;
  Matrix<Rationals> h(q, 2, n);
  for (unsigned j = 0; j < n; ++j) {
    h(0, j) = (*z)[j];
    h(1, j) = (*z)[j + 1];
  }
  return rank(h) <= 1;
}

WitnessForm singular_cubic_along_rnc(const RationalNormalCurve& c) {
  if (c.n != 4) throw WitnessError("the secant cubic construction is for quartic curves in P^4");
  const Rationals q;
  SchemeSpec<Rationals> spec;
  spec.n = 4;
  for (int t = 1; t <= 13; ++t) spec.add(DoublePoint<Rationals>{c.at(1, t)});
  const auto ker = kernel_basis(condition_matrix(q, spec, 3));
  WitnessForm w;
  w.kernel_dim = ker.size();
  w.transcript.push_back("cubics singular at 13 curve points: dimension " + std::to_string(ker.size()));
  if (ker.size() != 1) {
    throw WitnessError("expected a unique cubic singular along the curve, found a space of dimension " +
                       std::to_string(ker.size()));
  }
  w.form = Form<Rationals>{4, 3, ker.front()};
  std::vector<QVec> extra;
  for (int t = 14; t < 34; ++t) extra.push_back(c.at(1, t));
  const bool along = singular_at_all(w.form, extra);
  w.transcript.push_back(std::string("singular at 20 further curve points: ") + (along ? "yes" : "no"));
  w.points = c.points;
  const bool at_defining = singular_at_all(w.form, c.points);
  w.transcript.push_back(std::string("singular at the defining points: ") + (at_defining ? "yes" : "no"));
  w.verified = along && at_defining && !w.form.is_zero(q);
  return w;
}

template <class F>
typename F::Element clebsch_determinant(const F& f, const Form<F>& g) {
  if (g.d != 4) throw std::invalid_argument("the catalecticant determinant is defined here for quartics");
  return determinant(catalecticant(f, g, 2));
}

template Rationals::Element clebsch_determinant<Rationals>(const Rationals&, const Form<Rationals>&);
template PrimeField::Element clebsch_determinant<PrimeField>(const PrimeField&, const Form<PrimeField>&);

nlohmann::json ExceptionWitness::to_json() const {
  return {{"case", id.to_json()},
          {"reason", to_string(reason)},
          {"witness", witness.to_json()},
          {"ideal_dim", ideal_dim},
          {"expected_ideal_dim", expected_ideal_dim},
          {"defect", defect},
          {"in_kernel", in_kernel}};
}

ExceptionWitness witness_for_exception(const CaseId& c, std::uint64_t seed, long bound) {
  const auto ex = is_exception(c);
  if (!ex) throw WitnessError(c.to_string() + " is not an exceptional case");
  const Rationals q;
  Rng rng(seed);
  std::vector<QVec> points;
  for (std::size_t i = 0; i < c.k; ++i) points.push_back(random_point(q, c.n, rng, bound));

  ExceptionWitness out;
  out.id = c;
  out.reason = ex->reason;
  switch (ex->reason) {
    case ExceptionReason::quadric_cones:
      out.witness = double_hypersurface_witness(points, c.n, 1);
      break;
    case ExceptionReason::double_quadric:
      out.witness = double_hypersurface_witness(points, c.n, 2);
      break;
    case ExceptionReason::rnc_secant_cubic:
      out.witness = singular_cubic_along_rnc(rnc_through(points));
      break;
  }
  SchemeSpec<Rationals> spec;
  spec.n = c.n;
  for (const auto& p : points) spec.add(DoublePoint<Rationals>{p});
  const auto m = condition_matrix(q, spec, c.d);
  out.ideal_dim = space_dimension(c.n, c.d) - rank(m);
  out.expected_ideal_dim = space_dimension(c.n, c.d) - expected_codim(c.n, c.d, c.k);
  out.defect = out.ideal_dim - out.expected_ideal_dim;
  const auto image = multiply(m, std::span<const mpq_class>(out.witness.form.coeffs));
  out.in_kernel = std::all_of(image.begin(), image.end(), [](const mpq_class& x) { return sgn(x) == 0; });
  return out;
}

}  // namespace ahlab
