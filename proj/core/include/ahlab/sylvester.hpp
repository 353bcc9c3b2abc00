#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahlab/exactlinalg.hpp"
#include "ahlab/polyspace.hpp"

namespace ahlab {

/// f = sum_i C(d,i) a_i x^(d-i) y^i.
struct BinaryForm {
  unsigned d = 0;
  std::vector<mpq_class> a;

  BinaryForm() = default;
  BinaryForm(unsigned degree, std::vector<mpq_class> normalized);

  /// Ordinary coefficient of x^(d-i) y^i.
  mpq_class coefficient(unsigned i) const;
  bool is_zero() const;

  static BinaryForm from_coefficients(std::vector<mpq_class> coeffs);
  static BinaryForm from_form(const Form<Rationals>& f);
  Form<Rationals> to_form() const;

  /// Ordinary coefficients, x^d first.
  std::vector<mpq_class> coefficients() const;
  std::string to_string() const;
  bool operator==(const BinaryForm&) const = default;
};

/// sum_i c_i (p_i x + q_i y)^d, exactly.
BinaryForm power_sum(unsigned d, const std::vector<mpq_class>& c, const std::vector<std::pair<mpq_class, mpq_class>>& forms);

/// f(m00 x + m01 y, m10 x + m11 y).
BinaryForm substitute(const BinaryForm& f, const mpq_class& m00, const mpq_class& m01, const mpq_class& m10,
                      const mpq_class& m11);

/// The (d-a+1) x (a+1) Hankel matrix a_{i+j}.
Matrix<Rationals> hankel(const BinaryForm& f, unsigned a);

/// rank of the balanced Hankel matrix (a = floor(d/2)) is at most k.
bool membership_sigma_k(const BinaryForm& f, std::size_t k);

/// det of the (m+1) x (m+1) matrix with entries a_{i+j} x + a_{i+j+1} y, for
/// d = 2m+1. Exact, by evaluation at m+2 nodes and interpolation.
BinaryForm sylvester_g(const BinaryForm& f);

/// The same determinant as the 4x4 bordered determinant with first row
/// (y^3, -x y^2, x^2 y, -x^3) over the 3 x 4 Hankel matrix; generally the
/// border is (-x)^j y^(m+1-j) over the (m+1) x (m+2) Hankel matrix.
BinaryForm bordered_g(const BinaryForm& f);

/// det [f_{2m-i-j, i+j}] with f_{p,q} the mixed partials; for quintics this
/// is the 3x3 determinant of fourth partials. Equals (d!)^(m+1) sylvester_g(f).
BinaryForm gundelfinger(const BinaryForm& f);

using Complex = std::complex<double>;

struct DecompositionTerm {
  Complex c;
  Complex p;  // the form p x + q y
  Complex q;
};

struct Decomposition {
  std::vector<DecompositionTerm> terms;
  /// max |a_i(f) - sum_j c_j p_j^(d-i) q_j^i|, in the normalized a_i convention.
  double residual = 0.0;

  nlohmann::json to_json() const;
};

enum class Degeneracy { none, sigma_member, repeated_root };

struct DecomposeResult {
  std::optional<Decomposition> decomposition;
  Degeneracy degeneracy = Degeneracy::none;
  std::string message;
  BinaryForm g;

  nlohmann::json to_json() const;
};

std::string to_string(Degeneracy d);

/// Sylvester's decomposition of an odd-degree form into m+1 powers, from the
/// roots of g. Roots are found as companion-matrix eigenvalues of g(t, 1),
/// polished by Newton steps; a leading coefficient of g within tol (relative)
/// of zero contributes the form y. Forms are scaled so the larger of |p|, |q| is 1,
/// with p = 1 on ties.
DecomposeResult decompose_odd(const BinaryForm& f, double tol = 1e-8);

/// Residual of a decomposition against f, in the a_i convention.
double verify_decomposition(const BinaryForm& f, const Decomposition& dec);

/// Chordal distance between the points (p1 : q1) and (p2 : q2) of P^1.
double projective_distance(Complex p1, Complex q1, Complex p2, Complex q2);

}  // namespace ahlab
