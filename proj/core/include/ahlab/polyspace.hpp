#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahlab/exactlinalg.hpp"
#include "ahlab/field.hpp"

namespace ahlab {

/// Exponent vector of a monomial in x_0..x_n.
using MultiIndex = std::vector<unsigned>;

/// Binomial coefficient as a machine integer; throws std::overflow_error when
/// the value does not fit.
std::size_t binomial(std::size_t n, std::size_t k);

/// The degree-d monomials in n+1 variables, in graded-lex order: descending
/// lexicographic on exponent vectors, so the first monomial is x_0^d.
class MonomialBasis {
 public:
  MonomialBasis(unsigned n, unsigned d);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t size() const { return monomials_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }

  /// Position of a degree-d exponent vector in the basis.
  std::size_t index_of(const MultiIndex& exponents) const;

  bool operator==(const MonomialBasis& o) const { return n_ == o.n_ && d_ == o.d_; }

 private:
  unsigned n_;
  unsigned d_;
  std::vector<MultiIndex> monomials_;
};

MonomialBasis monomial_basis(unsigned n, unsigned d);

/// Multinomial coefficient d! / (a_0! ... a_n!).
mpz_class multinomial(const MultiIndex& exponents);

/// A homogeneous form of degree d in n+1 variables, stored densely in
/// MonomialBasis(n, d) order as ordinary monomial coefficients.
template <class F>
struct Form {
  unsigned n = 0;
  unsigned d = 0;
  std::vector<typename F::Element> coeffs;

  bool is_zero(const F& f) const {
    for (const auto& c : coeffs) {
      if (!f.is_zero(c)) return false;
    }
    return true;
  }
};

template <class F>
Form<F> zero_form(const F& f, unsigned n, unsigned d) {
  return {n, d, std::vector<typename F::Element>(binomial(n + d, n), f.zero())};
}

/// Projective point normalized so that its first nonzero coordinate is 1.
/// Throws std::invalid_argument for the zero vector.
template <class F>
std::vector<typename F::Element> normalize_point(const F& f, std::vector<typename F::Element> coords);

/// Values of all basis monomials at p: the coordinates of p^d under the Veronese map.
template <class F>
std::vector<typename F::Element> evaluation_row(const F& f, const std::vector<typename F::Element>& p,
                                                const MonomialBasis& basis);

/// Directional derivatives D_v(x^a) at p for every basis monomial. The rows
/// {evaluation_row(p)} and {derivative_row(p, e_i)} span the affine tangent
/// space to the Veronese cone at p^d. Throws for v = 0.
template <class F>
std::vector<typename F::Element> derivative_row(const F& f, const std::vector<typename F::Element>& p,
                                                const std::vector<typename F::Element>& v,
                                                const MonomialBasis& basis);

/// A term c * l^d of a power sum; `linear` holds the n+1 coefficients of l.
template <class F>
struct PowerTerm {
  typename F::Element coefficient;
  std::vector<typename F::Element> linear;
};

/// Expands sum_i c_i l_i^d into dense monomial coefficients.
template <class F>
Form<F> power_sum_expand(const F& f, const std::vector<PowerTerm<F>>& terms, unsigned d);

/// Matrix of the contraction S^a V* -> S^(d-a) V induced by g, in monomial
/// bases: rows indexed by MonomialBasis(n, d-a), columns by MonomialBasis(n, a).
/// Entry (b, c) is coeff_{b+c} / multinomial(b+c), so a pure power l^d gives
/// the rank-one matrix l^b l^c. For binary forms this is the Hankel matrix of
/// the a_i in g = sum C(d,i) a_i x^(d-i) y^i. Requires p > d over prime fields.
template <class F>
Matrix<F> catalecticant(const F& f, const Form<F>& g, unsigned a);

template <class F>
typename F::Element evaluate(const F& f, const Form<F>& g, const std::vector<typename F::Element>& p);

/// All n+1 first partials of g evaluated at p.
template <class F>
std::vector<typename F::Element> gradient_at(const F& f, const Form<F>& g,
                                             const std::vector<typename F::Element>& p);

template <class F>
Form<F> multiply(const F& f, const Form<F>& a, const Form<F>& b);

template <class F>
Form<F> add(const F& f, const Form<F>& a, const Form<F>& b);

template <class F>
Form<F> scale(const F& f, const Form<F>& a, const typename F::Element& c);

/// Linear substitution x_i -> sum_j sub[i][j] y_j; the result is a form in the y's.
/// `sub` is (n+1) x (m+1) and the result lives in m+1 variables.
template <class F>
Form<F> substitute(const F& f, const Form<F>& g, const std::vector<std::vector<typename F::Element>>& sub);

/// The linear form sum_i coeffs[i] x_i as a degree-1 Form.
template <class F>
Form<F> linear_form(const std::vector<typename F::Element>& coeffs) {
  return {static_cast<unsigned>(coeffs.size() - 1), 1, coeffs};
}

/// True when a = c b for some nonzero c.
template <class F>
bool proportional(const F& f, const Form<F>& a, const Form<F>& b);

template <class F>
Form<F> convert_form(const F& f, const Form<Rationals>& g);

/// {"n", "d", "order":"grlex", "coeffs":[exact strings]}.
nlohmann::json form_to_json(const Form<Rationals>& g);
Form<Rationals> form_from_json(const nlohmann::json& j);

/// Human-readable polynomial, e.g. "x0^2 - 3*x1*x2".
std::string form_to_string(const Form<Rationals>& g);

}  // namespace ahlab
