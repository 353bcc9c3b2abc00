#include "ahlab/sylvester.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

namespace ahlab {

namespace {

mpz_class binom_z(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpq_class falling(unsigned n, unsigned k) {
  mpq_class r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n < i) return 0;
    r *= n - i;
  }
  return r;
}

mpq_class power(const mpq_class& x, unsigned e) {
  mpq_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

// Recovers a binary form of degree e from its values at (t, 1), t = 0..e.
BinaryForm interpolate(unsigned e, const std::function<mpq_class(const mpq_class&)>& value_at) {
  const Rationals q;
  Matrix<Rationals> v(q, e + 1, e + 1);
  std::vector<mpq_class> rhs;
  for (unsigned r = 0; r <= e; ++r) {
    const mpq_class t = r;
    for (unsigned i = 0; i <= e; ++i) v(r, i) = power(t, e - i);
    rhs.push_back(value_at(t));
  }
  return BinaryForm::from_coefficients(*solve(v, std::span<const mpq_class>(rhs)));
}

unsigned half_degree(const BinaryForm& f) {
  if (f.d % 2 == 0) throw std::invalid_argument("the covariant g is defined for odd degree");
  return (f.d - 1) / 2;
}

Complex horner(const std::vector<Complex>& monic_desc, Complex t) {
  Complex r = 0;
  for (const auto& c : monic_desc) r = r * t + c;
  return r;
}

Complex horner_derivative(const std::vector<Complex>& desc, Complex t) {
  Complex r = 0;
  const std::size_t deg = desc.size() - 1;
  for (std::size_t i = 0; i < deg; ++i) r = r * t + desc[i] * static_cast<double>(deg - i);
  return r;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& desc) {
  const std::size_t deg = desc.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (std::size_t j = 0; j < deg; ++j) comp(0, j) = -desc[j + 1] / desc[0];
  for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots;
  for (std::size_t i = 0; i < deg; ++i) {
    Complex t = es.eigenvalues()[static_cast<Eigen::Index>(i)];
    for (int it = 0; it < 3; ++it) {
      const Complex fv = horner(desc, t);
      const Complex dv = horner_derivative(desc, t);
      if (std::abs(dv) == 0.0) break;
      const Complex next = t - fv / dv;
      if (!(std::abs(horner(desc, next)) < std::abs(fv))) break;
      t = next;
    }
    roots.push_back(t);
  }
  return roots;
}

Complex cpow(Complex z, unsigned e) {
  Complex r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= z;
  return r;
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string complex_string(Complex z) {
  std::ostringstream os;
  os.precision(12);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

BinaryForm::BinaryForm(unsigned degree, std::vector<mpq_class> normalized) : d(degree), a(std::move(normalized)) {
  if (a.size() != d + 1) throw std::invalid_argument("a binary form of degree d needs d+1 coefficients");
}

mpq_class BinaryForm::coefficient(unsigned i) const { return mpq_class(binom_z(d, i)) * a.at(i); }

bool BinaryForm::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const mpq_class& x) { return sgn(x) == 0; });
}

BinaryForm BinaryForm::from_coefficients(std::vector<mpq_class> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
  const unsigned d = static_cast<unsigned>(coeffs.size() - 1);
  for (unsigned i = 0; i <= d; ++i) {
    coeffs[i] /= mpq_class(binom_z(d, i));
    coeffs[i].canonicalize();
  }
  return BinaryForm(d, std::move(coeffs));
}

BinaryForm BinaryForm::from_form(const Form<Rationals>& f) {
  if (f.n != 1) throw std::invalid_argument("not a binary form");
  const MonomialBasis basis(1, f.d);
  std::vector<mpq_class> c(f.d + 1);
  for (unsigned i = 0; i <= f.d; ++i) c[i] = f.coeffs[basis.index_of({f.d - i, i})];
  return from_coefficients(std::move(c));
}

Form<Rationals> BinaryForm::to_form() const {
  const MonomialBasis basis(1, d);
  Form<Rationals> f = zero_form(Rationals{}, 1, d);
  for (unsigned i = 0; i <= d; ++i) f.coeffs[basis.index_of({d - i, i})] = coefficient(i);
  return f;
}

std::vector<mpq_class> BinaryForm::coefficients() const {
  std::vector<mpq_class> c;
  for (unsigned i = 0; i <= d; ++i) c.push_back(coefficient(i));
  return c;
}

std::string BinaryForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i <= d; ++i) {
    const mpq_class c = coefficient(i);
    if (sgn(c) == 0) continue;
    const mpq_class mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const bool unit = mag == 1 && d > 0;
    if (!unit) os << mag.get_str();
    const unsigned ex = d - i;
    const unsigned ey = i;
    bool wrote = !unit;
    if (ex > 0) {
      os << (wrote ? "*" : "") << "x" << (ex > 1 ? "^" + std::to_string(ex) : "");
      wrote = true;
    }
    if (ey > 0) os << (wrote ? "*" : "") << "y" << (ey > 1 ? "^" + std::to_string(ey) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

BinaryForm power_sum(unsigned d, const std::vector<mpq_class>& c,
                     const std::vector<std::pair<mpq_class, mpq_class>>& forms) {
  if (c.size() != forms.size()) throw std::invalid_argument("coefficient and form counts differ");
  std::vector<mpq_class> a(d + 1, 0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (unsigned i = 0; i <= d; ++i) a[i] += c[j] * power(forms[j].first, d - i) * power(forms[j].second, i);
  }
  return BinaryForm(d, std::move(a));
}

BinaryForm substitute(const BinaryForm& f, const mpq_class& m00, const mpq_class& m01, const mpq_class& m10,
                      const mpq_class& m11) {
  return BinaryForm::from_form(substitute(Rationals{}, f.to_form(), {{m00, m01}, {m10, m11}}));
}

Matrix<Rationals> hankel(const BinaryForm& f, unsigned a) {
  if (a > f.d) throw std::invalid_argument("Hankel column count exceeds the degree");
  Matrix<Rationals> h(Rationals{}, f.d - a + 1, a + 1);
  for (unsigned i = 0; i + a <= f.d; ++i) {
    for (unsigned j = 0; j <= a; ++j) h(i, j) = f.a[i + j];
  }
  return h;
}

bool membership_sigma_k(const BinaryForm& f, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return rank(hankel(f, f.d / 2)) <= k;
}

BinaryForm sylvester_g(const BinaryForm& f) {
  const unsigned m = half_degree(f);
  return interpolate(m + 1, [&](const mpq_class& t) {
    Matrix<Rationals> mat(Rationals{}, m + 1, m + 1);
    for (unsigned i = 0; i <= m; ++i) {
      for (unsigned j = 0; j <= m; ++j) mat(i, j) = f.a[i + j] * t + f.a[i + j + 1];
    }
    return determinant(mat);
  });
}

BinaryForm bordered_g(const BinaryForm& f) {
  const unsigned m = half_degree(f);
  return interpolate(m + 1, [&](const mpq_class& t) {
    Matrix<Rationals> mat(Rationals{}, m + 2, m + 2);
    for (unsigned j = 0; j <= m + 1; ++j) mat(0, j) = power(-t, j);
    for (unsigned i = 0; i <= m; ++i) {
      for (unsigned j = 0; j <= m + 1; ++j) mat(i + 1, j) = f.a[i + j];
    }
    return determinant(mat);
  });
}

BinaryForm gundelfinger(const BinaryForm& f) {
  const unsigned m = half_degree(f);
  const auto coeffs = f.coefficients();
  // f_{p,q} at (t, 1)
  auto partial = [&](unsigned p, unsigned q, const mpq_class& t) {
    mpq_class s = 0;
    for (unsigned i = 0; i <= f.d; ++i) {
      const unsigned ex = f.d - i;
      if (ex < p || i < q) continue;
      s += coeffs[i] * falling(ex, p) * falling(i, q) * power(t, ex - p);
    }
    return s;
  };
  return interpolate(m + 1, [&](const mpq_class& t) {
    Matrix<Rationals> mat(Rationals{}, m + 1, m + 1);
    for (unsigned i = 0; i <= m; ++i) {
      for (unsigned j = 0; j <= m; ++j) mat(i, j) = partial(2 * m - i - j, i + j, t);
    }
    return determinant(mat);
  });
}

std::string to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::none: return "none";
    case Degeneracy::sigma_member: return "sigma-member";
    case Degeneracy::repeated_root: return "repeated-root";
  }
  return "none";
}

nlohmann::json Decomposition::to_json() const {
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : terms) {
    ts.push_back({{"c", complex_json(t.c)},
                  {"form", {complex_json(t.p), complex_json(t.q)}},
                  {"linear", complex_string(t.p) + "*x + " + complex_string(t.q) + "*y"}});
  }
  return {{"terms", ts}, {"residual", residual}};
}

nlohmann::json DecomposeResult::to_json() const {
  nlohmann::json j = {{"g", g.to_string()}, {"degenerate", degeneracy != Degeneracy::none}};
  if (degeneracy != Degeneracy::none) {
    j["degeneracy"] = to_string(degeneracy);
    j["message"] = message;
  }
  if (decomposition) {
    const auto dj = decomposition->to_json();
    j["terms"] = dj["terms"];
    j["residual"] = dj["residual"];
  }
  return j;
}

double projective_distance(Complex p1, Complex q1, Complex p2, Complex q2) {
  const double num = std::abs(p1 * q2 - p2 * q1);
  const double den = std::sqrt((std::norm(p1) + std::norm(q1)) * (std::norm(p2) + std::norm(q2)));
  return num / den;
}

DecomposeResult decompose_odd(const BinaryForm& f, double tol) {
  const unsigned m = half_degree(f);
  DecomposeResult out;
  out.g = sylvester_g(f);
  if (out.g.is_zero()) {
    out.degeneracy = Degeneracy::sigma_member;
    out.message = "g vanishes identically: the form is a sum of at most " + std::to_string(m) + " powers";
    return out;
  }
  const auto gc = out.g.coefficients();
  std::vector<Complex> desc;
  double scale = 0.0;
  for (const auto& c : gc) {
    desc.emplace_back(c.get_d());
    scale = std::max(scale, std::abs(c.get_d()));
  }
  std::size_t lead = 0;
  while (lead < desc.size() && std::abs(desc[lead]) <= tol * scale) ++lead;
  // each vanishing leading coefficient is a factor y of g
  if (lead >= 2) {
    out.degeneracy = Degeneracy::repeated_root;
    out.message = "g has a repeated root at y = 0";
    return out;
  }
  std::vector<DecompositionTerm> terms;
  if (lead == 1) terms.push_back({0.0, 0.0, 1.0});
  const std::vector<Complex> poly(desc.begin() + static_cast<std::ptrdiff_t>(lead), desc.end());
  for (const auto& t : polynomial_roots(poly)) {
    if (std::abs(t) <= 1.0) {
      terms.push_back({0.0, 1.0, -t});
    } else {
      terms.push_back({0.0, -1.0 / t, 1.0});
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (projective_distance(terms[i].p, terms[i].q, terms[j].p, terms[j].q) < tol) {
        out.degeneracy = Degeneracy::repeated_root;
        out.message = "g has two roots closer than the tolerance";
        return out;
      }
    }
  }
  const Eigen::Index rows = f.d + 1;
  const Eigen::Index cols = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXcd sys(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    rhs(i) = f.a[static_cast<std::size_t>(i)].get_d();
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& t = terms[static_cast<std::size_t>(j)];
      sys(i, j) = cpow(t.p, static_cast<unsigned>(f.d - i)) * cpow(t.q, static_cast<unsigned>(i));
    }
  }
  const Eigen::VectorXcd c = sys.colPivHouseholderQr().solve(rhs);
  Decomposition dec;
  for (Eigen::Index j = 0; j < cols; ++j) {
    auto t = terms[static_cast<std::size_t>(j)];
    t.c = c(j);
    dec.terms.push_back(t);
  }
  dec.residual = verify_decomposition(f, dec);
  out.decomposition = std::move(dec);
  return out;
}

double verify_decomposition(const BinaryForm& f, const Decomposition& dec) {
  double worst = 0.0;
  for (unsigned i = 0; i <= f.d; ++i) {
    Complex s = f.a[i].get_d();
    for (const auto& t : dec.terms) {
      s -= t.c * cpow(t.p, static_cast<unsigned>(f.d - i)) * cpow(t.q, static_cast<unsigned>(i));
    }
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace ahlab
