#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahlab/polyspace.hpp"
#include "ahlab/schemes.hpp"
#include "ahlab/verifier.hpp"

namespace ahlab {

using QVec = std::vector<mpq_class>;

class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nonzero form singular at every listed point, checked exactly.
struct WitnessForm {
  Form<Rationals> form;
  std::vector<QVec> points;
  bool verified = false;
  /// Dimension of the space the witness was extracted from (forms of the
  /// auxiliary degree through the points, or the singular cubics).
  std::size_t kernel_dim = 0;
  std::vector<std::string> transcript;

  nlohmann::json to_json() const;
};

/// True when every first partial of g vanishes at every point.
bool singular_at_all(const Form<Rationals>& g, const std::vector<QVec>& points);

/// q^2 for a degree-e form q through the points. Throws WitnessError when no
/// such q exists.
WitnessForm double_hypersurface_witness(const std::vector<QVec>& points, unsigned n, unsigned e);

/// A rational normal curve of degree n, x_i = forms[i](s, t), with the
/// parameter (s, t) at which each defining point is reached.
struct RationalNormalCurve {
  unsigned n = 0;
  std::vector<Form<Rationals>> forms;  // binary forms of degree n; x0 = s, x1 = t
  std::vector<QVec> points;
  std::vector<std::pair<mpq_class, mpq_class>> parameters;

  QVec at(const mpq_class& s, const mpq_class& t) const;
  nlohmann::json to_json() const;
};

/// (s^n, s^(n-1) t, ..., t^n).
RationalNormalCurve standard_rnc(unsigned n);

/// The unique rational normal curve through n+3 points in general position,
/// by normalizing the first n+2 to the coordinate simplex and unit point.
/// Throws WitnessError for degenerate input.
RationalNormalCurve rnc_through(const std::vector<QVec>& points);

/// Membership by the rank-one test on the 2 x n Hankel matrix of the point in
/// curve coordinates.
bool on_curve(const RationalNormalCurve& c, const QVec& x);

/// The cubic singular along a rational normal quartic in P^4, from double
/// point conditions at 13 curve points; checked at 20 further curve points and
/// at the defining points.
WitnessForm singular_cubic_along_rnc(const RationalNormalCurve& c);

/// det of the middle catalecticant of a quartic.
template <class F>
typename F::Element clebsch_determinant(const F& f, const Form<F>& g);

/// Exact witness and defect for an exceptional case, at random points with
/// coordinates in [-bound, bound].
struct ExceptionWitness {
  CaseId id;
  ExceptionReason reason = ExceptionReason::quadric_cones;
  WitnessForm witness;
  std::size_t ideal_dim = 0;           // dim I_X(d) over Q at the sampled points
  std::size_t expected_ideal_dim = 0;  // max(0, C(n+d,n) - k(n+1))
  std::size_t defect = 0;
  bool in_kernel = false;              // witness lies in the kernel of the condition matrix

  nlohmann::json to_json() const;
};

ExceptionWitness witness_for_exception(const CaseId& c, std::uint64_t seed, long bound = 20);

}  // namespace ahlab
