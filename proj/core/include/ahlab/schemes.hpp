#pragma once

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahlab/exactlinalg.hpp"
#include "ahlab/polyspace.hpp"
#include "ahlab/random.hpp"

namespace ahlab {

template <class F>
using Vec = std::vector<typename F::Element>;

/// Raised by trace_residual for components without a trace rule.
class UnsupportedComponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// p^2: n+1 conditions (value and all first partials).
template <class F>
struct DoublePoint {
  Vec<F> point;
};

/// p: one condition.
template <class F>
struct SimplePoint {
  Vec<F> point;
};

/// p^2 restricted to a hyperplane through p: value plus the n-1 derivatives along it.
template <class F>
struct TraceDoublePoint {
  Vec<F> point;
  Vec<F> hyperplane;
};

/// Value at p plus one directional derivative per direction. One direction is
/// a degree-2 curvilinear scheme; n independent directions give p^2.
template <class F>
struct Jet {
  Vec<F> point;
  std::vector<Vec<F>> dirs;
};

/// Every form must vanish on the linear subspace cut out by `forms`.
template <class F>
struct ContainLinear {
  std::vector<Vec<F>> forms;
};

template <class F>
using SchemeComponent =
    std::variant<DoublePoint<F>, SimplePoint<F>, TraceDoublePoint<F>, Jet<F>, ContainLinear<F>>;

/// A zero-dimensional scheme in P^n, possibly with linear containment conditions.
template <class F>
struct SchemeSpec {
  unsigned n = 0;
  std::vector<SchemeComponent<F>> components;

  SchemeSpec& add(SchemeComponent<F> c) {
    components.push_back(std::move(c));
    return *this;
  }
  SchemeSpec& append(const SchemeSpec& other) {
    components.insert(components.end(), other.components.begin(), other.components.end());
    return *this;
  }
};

struct SchemeSummary {
  std::size_t double_points = 0;
  std::size_t simple_points = 0;
  std::size_t trace_double_points = 0;
  std::size_t jets = 0;
  std::size_t contain_linear = 0;

  nlohmann::json to_json() const;
};

template <class F>
SchemeSummary summarize(const SchemeSpec<F>& spec);

/// A hyperplane H = {form = 0} together with a chart: n vectors spanning H,
/// whose coefficients give coordinates on H = P^(n-1).
template <class F>
struct Hyperplane {
  Vec<F> form;
  std::vector<Vec<F>> chart;
};

/// Chart taken from the normalized kernel basis of the form.
template <class F>
Hyperplane<F> make_hyperplane(const F& f, Vec<F> form);

/// {x_i = 0} with the chart e_0..e_n omitting e_i.
template <class F>
Hyperplane<F> coordinate_hyperplane(const F& f, unsigned n, unsigned i);

/// Checks component invariants; throws std::invalid_argument on violation.
template <class F>
void validate(const F& f, const SchemeSpec<F>& spec);

/// Linear conditions imposed on degree-d forms, columns in graded-lex order,
/// rows in component order. A ContainLinear block contributes the rows of the
/// restriction map S^d V* -> S^d L*, so its kernel is exactly the forms
/// vanishing on L.
template <class F>
Matrix<F> condition_matrix(const F& f, const SchemeSpec<F>& spec, unsigned d);

/// Sum of component lengths. Throws std::invalid_argument if any ContainLinear
/// component is present.
template <class F>
std::size_t scheme_degree(const SchemeSpec<F>& spec);

template <class F>
struct TraceResidual {
  SchemeSpec<F> trace;     // on H = P^(n-1), in chart coordinates
  SchemeSpec<F> residual;  // on P^n
};

/// Trace X cap H and residual (I_X : H).
template <class F>
TraceResidual<F> trace_residual(const F& f, const SchemeSpec<F>& spec, const Hyperplane<F>& h);

template <class F>
SchemeSpec<F> convert_scheme(const F& f, const SchemeSpec<Rationals>& spec);

SchemeSpec<Rationals> scheme_from_json(const nlohmann::json& j);
nlohmann::json scheme_to_json(const SchemeSpec<Rationals>& spec);

/// Random normalized point of P^n.
template <class F>
Vec<F> random_point(const F& f, unsigned n, Rng& rng, long bound = kDefaultCoordinateBound);

/// Random normalized point in the span of `basis`.
template <class F>
Vec<F> random_point_in(const F& f, const std::vector<Vec<F>>& basis, Rng& rng,
                       long bound = kDefaultCoordinateBound);

/// A linear subspace of P^n given both by defining forms and by a spanning basis.
template <class F>
struct LinearSubspace {
  std::vector<Vec<F>> forms;
  std::vector<Vec<F>> basis;
};

/// Random subspace of codimension `codim`.
template <class F>
LinearSubspace<F> random_subspace(const F& f, unsigned n, unsigned codim, Rng& rng,
                                  long bound = kDefaultCoordinateBound);

/// Value of the linear form at the vector.
template <class F>
typename F::Element apply_linear(const F& f, const Vec<F>& form, const Vec<F>& v);

}  // namespace ahlab
