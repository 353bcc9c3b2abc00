#include "ahlab/schemes.hpp"

#include <algorithm>
#include <string>

namespace ahlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class F>
bool is_zero_vector(const F& f, const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

template <class F>
void check_size(const Vec<F>& v, unsigned n, const char* what) {
  if (v.size() != n + 1) {
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                                std::to_string(n + 1));
  }
}

template <class F>
std::size_t span_rank(const F& f, const std::vector<Vec<F>>& vs) {
  if (vs.empty()) return 0;
  return rank(Matrix<F>::from_rows(f, vs.front().size(), vs));
}

// Basis of ker(form) with `p` excluded: n-1 vectors completing p to a basis of H.
template <class F>
std::vector<Vec<F>> complement_in_hyperplane(const F& f, const Vec<F>& p, const Vec<F>& form) {
  const auto ker = kernel_basis(Matrix<F>::from_rows(f, form.size(), {form}));
  std::vector<Vec<F>> chosen{p};
  for (const auto& v : ker) {
    chosen.push_back(v);
    if (span_rank(f, chosen) < chosen.size()) chosen.pop_back();
  }
  chosen.erase(chosen.begin());
  return chosen;
}

template <class F>
Vec<F> chart_coordinates(const F& f, const Hyperplane<F>& h, const Vec<F>& v) {
  const std::size_t rows = v.size();
  Matrix<F> m(f, rows, h.chart.size());
  for (std::size_t j = 0; j < h.chart.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = h.chart[j][i];
  }
  auto y = solve(m, std::span<const typename F::Element>(v));
  if (!y) throw std::invalid_argument("vector does not lie on the hyperplane");
  return *y;
}

// Coefficients of t^b in prod_i (sum_j w_j[i] t_j)^{a_i}, one column per a.
template <class F>
Matrix<F> restriction_rows(const F& f, unsigned n, const std::vector<Vec<F>>& w, unsigned d) {
  const unsigned m = static_cast<unsigned>(w.size() - 1);
  const MonomialBasis src(n, d);
  const MonomialBasis dst(m, d);
  std::vector<std::vector<Form<F>>> powers(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    Vec<F> lin(m + 1);
    for (unsigned j = 0; j <= m; ++j) lin[j] = w[j][i];
    Form<F> one = zero_form(f, m, 0);
    one.coeffs[0] = f.one();
    powers[i].push_back(one);
    const Form<F> l = linear_form<F>(lin);
    for (unsigned e = 1; e <= d; ++e) powers[i].push_back(multiply(f, powers[i].back(), l));
  }
  Matrix<F> out(f, dst.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col) {
    Form<F> term = zero_form(f, m, 0);
    term.coeffs[0] = f.one();
    for (unsigned i = 0; i <= n; ++i) {
      if (src[col][i] != 0) term = multiply(f, term, powers[i][src[col][i]]);
    }
    for (std::size_t row = 0; row < dst.size(); ++row) out(row, col) = term.coeffs[row];
  }
  return out;
}

template <class F>
void append_jet_rows(const F& f, Matrix<F>& out, const Vec<F>& p, const std::vector<Vec<F>>& dirs,
                     const MonomialBasis& basis) {
  out.append_row(evaluation_row(f, p, basis));
  for (const auto& v : dirs) out.append_row(derivative_row(f, p, v, basis));
}

template <class F>
SchemeComponent<F> jet_on_chart(const F&, const Vec<F>& p, const std::vector<Vec<F>>& dirs, unsigned ambient) {
  if (dirs.empty()) return SimplePoint<F>{p};
  if (dirs.size() == ambient) return DoublePoint<F>{p};
  return Jet<F>{p, dirs};
}

}  // namespace

nlohmann::json SchemeSummary::to_json() const {
  return {{"double", double_points},
          {"simple", simple_points},
          {"trace_double", trace_double_points},
          {"jet", jets},
          {"contain_linear", contain_linear}};
}

template <class F>
SchemeSummary summarize(const SchemeSpec<F>& spec) {
  SchemeSummary s;
  for (const auto& c : spec.components) {
    std::visit(overloaded{[&](const DoublePoint<F>&) { ++s.double_points; },
                          [&](const SimplePoint<F>&) { ++s.simple_points; },
                          [&](const TraceDoublePoint<F>&) { ++s.trace_double_points; },
                          [&](const Jet<F>&) { ++s.jets; },
                          [&](const ContainLinear<F>&) { ++s.contain_linear; }},
               c);
  }
  return s;
}

template <class F>
typename F::Element apply_linear(const F& f, const Vec<F>& form, const Vec<F>& v) {
  if (form.size() != v.size()) throw std::invalid_argument("linear form and vector differ in length");
  auto acc = f.zero();
  for (std::size_t i = 0; i < v.size(); ++i) acc = f.add(acc, f.mul(form[i], v[i]));
  return acc;
}

template <class F>
Hyperplane<F> make_hyperplane(const F& f, Vec<F> form) {
  if (is_zero_vector(f, form)) throw std::invalid_argument("hyperplane form must be nonzero");
  auto chart = kernel_basis(Matrix<F>::from_rows(f, form.size(), {form}));
  return {std::move(form), std::move(chart)};
}

template <class F>
Hyperplane<F> coordinate_hyperplane(const F& f, unsigned n, unsigned i) {
  if (i > n) throw std::invalid_argument("coordinate index out of range");
  Hyperplane<F> h;
  h.form.assign(n + 1, f.zero());
  h.form[i] = f.one();
  for (unsigned j = 0; j <= n; ++j) {
    if (j == i) continue;
    Vec<F> e(n + 1, f.zero());
    e[j] = f.one();
    h.chart.push_back(std::move(e));
  }
  return h;
}

template <class F>
void validate(const F& f, const SchemeSpec<F>& spec) {
  const unsigned n = spec.n;
  for (const auto& c : spec.components) {
    std::visit(
        overloaded{
            [&](const DoublePoint<F>& x) {
              check_size<F>(x.point, n, "double point");
              if (is_zero_vector(f, x.point)) throw std::invalid_argument("double point is the zero vector");
            },
            [&](const SimplePoint<F>& x) {
              check_size<F>(x.point, n, "simple point");
              if (is_zero_vector(f, x.point)) throw std::invalid_argument("simple point is the zero vector");
            },
            [&](const TraceDoublePoint<F>& x) {
              check_size<F>(x.point, n, "trace double point");
              check_size<F>(x.hyperplane, n, "hyperplane");
              if (is_zero_vector(f, x.point)) throw std::invalid_argument("trace double point is the zero vector");
              if (is_zero_vector(f, x.hyperplane)) throw std::invalid_argument("hyperplane form is zero");
              if (!f.is_zero(apply_linear(f, x.hyperplane, x.point))) {
                throw std::invalid_argument("trace double point does not lie on its hyperplane");
              }
            },
            [&](const Jet<F>& x) {
              check_size<F>(x.point, n, "jet point");
              for (const auto& v : x.dirs) check_size<F>(v, n, "jet direction");
              if (x.dirs.size() > n) throw std::invalid_argument("jet has more than n directions");
              std::vector<Vec<F>> all{x.point};
              all.insert(all.end(), x.dirs.begin(), x.dirs.end());
              if (span_rank(f, all) != all.size()) {
                throw std::invalid_argument("jet directions are dependent or contain the point");
              }
            },
            [&](const ContainLinear<F>& x) {
              if (x.forms.empty()) throw std::invalid_argument("linear containment without forms");
              for (const auto& l : x.forms) check_size<F>(l, n, "linear form");
              if (x.forms.size() > n) throw std::invalid_argument("linear subspace would be empty");
              if (span_rank(f, x.forms) != x.forms.size()) {
                throw std::invalid_argument("linear forms are dependent");
              }
            }},
        c);
  }
}

template <class F>
Matrix<F> condition_matrix(const F& f, const SchemeSpec<F>& spec, unsigned d) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  validate(f, spec);
  const unsigned n = spec.n;
  const MonomialBasis basis(n, d);
  Matrix<F> out(f, 0, basis.size());
  for (const auto& c : spec.components) {
    std::visit(overloaded{[&](const DoublePoint<F>& x) {
                            const auto p = normalize_point(f, x.point);
                            const auto pivot = static_cast<std::size_t>(
                                std::find_if(p.begin(), p.end(), [&](const auto& e) { return !f.is_zero(e); }) -
                                p.begin());
                            std::vector<Vec<F>> dirs;
                            for (unsigned j = 0; j <= n; ++j) {
                              if (j == pivot) continue;
                              Vec<F> e(n + 1, f.zero());
                              e[j] = f.one();
                              dirs.push_back(std::move(e));
                            }
                            append_jet_rows(f, out, p, dirs, basis);
                          },
                          [&](const SimplePoint<F>& x) { out.append_row(evaluation_row(f, x.point, basis)); },
                          [&](const TraceDoublePoint<F>& x) {
                            append_jet_rows(f, out, x.point, complement_in_hyperplane(f, x.point, x.hyperplane),
                                            basis);
                          },
                          [&](const Jet<F>& x) { append_jet_rows(f, out, x.point, x.dirs, basis); },
                          [&](const ContainLinear<F>& x) {
                            const auto w = kernel_basis(Matrix<F>::from_rows(f, n + 1, x.forms));
                            out.append_rows(restriction_rows(f, n, w, d));
                          }},
               c);
  }
  return out;
}

template <class F>
std::size_t scheme_degree(const SchemeSpec<F>& spec) {
  const std::size_t n = spec.n;
  std::size_t total = 0;
  for (const auto& c : spec.components) {
    total += std::visit(
        overloaded{[&](const DoublePoint<F>&) -> std::size_t { return n + 1; },
                   [&](const SimplePoint<F>&) -> std::size_t { return 1; },
                   [&](const TraceDoublePoint<F>&) -> std::size_t { return n; },
                   [&](const Jet<F>& x) -> std::size_t { return 1 + x.dirs.size(); },
                   [&](const ContainLinear<F>&) -> std::size_t {
                     throw std::invalid_argument("linear containment has no finite length");
                   }},
        c);
  }
  return total;
}

template <class F>
TraceResidual<F> trace_residual(const F& f, const SchemeSpec<F>& spec, const Hyperplane<F>& h) {
  validate(f, spec);
  const unsigned n = spec.n;
  if (n < 1) throw std::invalid_argument("cannot restrict to a hyperplane of P^0");
  check_size<F>(h.form, n, "hyperplane");
  if (h.chart.size() != n) throw std::invalid_argument("hyperplane chart needs n vectors");
  TraceResidual<F> out;
  out.trace.n = n - 1;
  out.residual.n = n;
  const auto on_h = [&](const Vec<F>& p) { return f.is_zero(apply_linear(f, h.form, p)); };

  // A point with tangent directions, sitting on H.
  const auto split_jet = [&](const Vec<F>& p, const std::vector<Vec<F>>& dirs) {
    std::vector<typename F::Element> values{f.zero()};
    bool inside = true;
    for (const auto& v : dirs) {
      values.push_back(apply_linear(f, h.form, v));
      if (!f.is_zero(values.back())) inside = false;
    }
    std::vector<Vec<F>> trace_dirs;
    if (inside) {
      trace_dirs = dirs;
    } else {
      // span(p, dirs) cap H: combinations a p + sum b_i v_i with sum b_i h(v_i) = 0.
      const auto ker = kernel_basis(Matrix<F>::from_rows(f, values.size(), {values}));
      for (const auto& coeffs : ker) {
        if (!f.is_zero(coeffs[0])) continue;  // the vector p itself
        Vec<F> w(n + 1, f.zero());
        for (std::size_t i = 0; i < dirs.size(); ++i) {
          for (unsigned c = 0; c <= n; ++c) w[c] = f.add(w[c], f.mul(coeffs[i + 1], dirs[i][c]));
        }
        trace_dirs.push_back(std::move(w));
      }
      out.residual.add(SimplePoint<F>{p});
    }
    std::vector<Vec<F>> chart_dirs;
    for (const auto& v : trace_dirs) chart_dirs.push_back(chart_coordinates(f, h, v));
    out.trace.add(jet_on_chart(f, chart_coordinates(f, h, p), chart_dirs, n - 1));
  };

  for (const auto& c : spec.components) {
    std::visit(overloaded{[&](const DoublePoint<F>& x) {
                            if (!on_h(x.point)) {
                              out.residual.add(x);
                              return;
                            }
                            out.trace.add(DoublePoint<F>{chart_coordinates(f, h, x.point)});
                            out.residual.add(SimplePoint<F>{x.point});
                          },
                          [&](const SimplePoint<F>& x) {
                            if (on_h(x.point)) {
                              out.trace.add(SimplePoint<F>{chart_coordinates(f, h, x.point)});
                            } else {
                              out.residual.add(x);
                            }
                          },
                          [&](const TraceDoublePoint<F>& x) {
                            if (!on_h(x.point)) {
                              out.residual.add(x);
                              return;
                            }
                            split_jet(x.point, complement_in_hyperplane(f, x.point, x.hyperplane));
                          },
                          [&](const Jet<F>& x) {
                            if (!on_h(x.point)) {
                              out.residual.add(x);
                              return;
                            }
                            split_jet(x.point, x.dirs);
                          },
                          [&](const ContainLinear<F>&) {
                            throw UnsupportedComponent("trace of a linear containment condition is not defined");
                          }},
               c);
  }
  return out;
}

template <class F>
SchemeSpec<F> convert_scheme(const F& f, const SchemeSpec<Rationals>& spec) {
  const auto conv = [&](const Vec<Rationals>& v) {
    Vec<F> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(f.from_rational(x));
    return out;
  };
  const auto conv_all = [&](const std::vector<Vec<Rationals>>& vs) {
    std::vector<Vec<F>> out;
    for (const auto& v : vs) out.push_back(conv(v));
    return out;
  };
  SchemeSpec<F> out;
  out.n = spec.n;
  for (const auto& c : spec.components) {
    std::visit(overloaded{[&](const DoublePoint<Rationals>& x) { out.add(DoublePoint<F>{conv(x.point)}); },
                          [&](const SimplePoint<Rationals>& x) { out.add(SimplePoint<F>{conv(x.point)}); },
                          [&](const TraceDoublePoint<Rationals>& x) {
                            out.add(TraceDoublePoint<F>{conv(x.point), conv(x.hyperplane)});
                          },
                          [&](const Jet<Rationals>& x) { out.add(Jet<F>{conv(x.point), conv_all(x.dirs)}); },
                          [&](const ContainLinear<Rationals>& x) { out.add(ContainLinear<F>{conv_all(x.forms)}); }},
               c);
  }
  return out;
}

namespace {

Vec<Rationals> vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of coordinates, got " + j.dump());
  Vec<Rationals> v;
  for (const auto& x : j) {
    if (!x.is_string() && !x.is_number_integer()) {
      throw std::invalid_argument("coordinates must be exact integers or rational strings, got " + x.dump());
    }
    mpq_class q;
    if (q.set_str(x.is_string() ? x.get<std::string>() : x.dump(), 10) != 0) {
      throw std::invalid_argument("malformed coordinate " + x.dump());
    }
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in " + x.dump());
    q.canonicalize();
    v.push_back(q);
  }
  return v;
}

std::vector<Vec<Rationals>> vectors_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of vectors, got " + j.dump());
  std::vector<Vec<Rationals>> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

nlohmann::json vector_to_json(const Vec<Rationals>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

nlohmann::json vectors_to_json(const std::vector<Vec<Rationals>>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : vs) out.push_back(vector_to_json(v));
  return out;
}

}  // namespace

SchemeSpec<Rationals> scheme_from_json(const nlohmann::json& j) {
  SchemeSpec<Rationals> spec;
  if (!j.is_object() || !j.contains("n") || !j.contains("components")) {
    throw std::invalid_argument("scheme must be an object with \"n\" and \"components\"");
  }
  spec.n = j.at("n").get<unsigned>();
  for (const auto& c : j.at("components")) {
    const std::string type = c.at("type").get<std::string>();
    if (type == "double") {
      spec.add(DoublePoint<Rationals>{vector_from_json(c.at("point"))});
    } else if (type == "simple") {
      spec.add(SimplePoint<Rationals>{vector_from_json(c.at("point"))});
    } else if (type == "trace-double") {
      spec.add(TraceDoublePoint<Rationals>{vector_from_json(c.at("point")), vector_from_json(c.at("hyperplane"))});
    } else if (type == "jet") {
      spec.add(Jet<Rationals>{vector_from_json(c.at("point")), vectors_from_json(c.at("dirs"))});
    } else if (type == "contain-linear") {
      spec.add(ContainLinear<Rationals>{vectors_from_json(c.at("forms"))});
    } else {
      throw std::invalid_argument("unknown component type \"" + type + "\"");
    }
  }
  validate(Rationals{}, spec);
  return spec;
}

nlohmann::json scheme_to_json(const SchemeSpec<Rationals>& spec) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : spec.components) {
    comps.push_back(std::visit(
        overloaded{[](const DoublePoint<Rationals>& x) -> nlohmann::json {
                     return {{"type", "double"}, {"point", vector_to_json(x.point)}};
                   },
                   [](const SimplePoint<Rationals>& x) -> nlohmann::json {
                     return {{"type", "simple"}, {"point", vector_to_json(x.point)}};
                   },
                   [](const TraceDoublePoint<Rationals>& x) -> nlohmann::json {
                     return {{"type", "trace-double"},
                             {"point", vector_to_json(x.point)},
                             {"hyperplane", vector_to_json(x.hyperplane)}};
                   },
                   [](const Jet<Rationals>& x) -> nlohmann::json {
                     return {{"type", "jet"}, {"point", vector_to_json(x.point)}, {"dirs", vectors_to_json(x.dirs)}};
                   },
                   [](const ContainLinear<Rationals>& x) -> nlohmann::json {
                     return {{"type", "contain-linear"}, {"forms", vectors_to_json(x.forms)}};
                   }},
        c));
  }
  return {{"n", spec.n}, {"components", comps}};
}

template <class F>
Vec<F> random_point(const F& f, unsigned n, Rng& rng, long bound) {
  for (;;) {
    auto v = random_vector(f, rng, n + 1, bound);
    if (!is_zero_vector(f, v)) return normalize_point(f, std::move(v));
  }
}

template <class F>
Vec<F> random_point_in(const F& f, const std::vector<Vec<F>>& basis, Rng& rng, long bound) {
  if (basis.empty()) throw std::invalid_argument("empty spanning set");
  for (;;) {
    Vec<F> v(basis.front().size(), f.zero());
    for (const auto& b : basis) {
      const auto c = random_element(f, rng, bound);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(c, b[i]));
    }
    if (!is_zero_vector(f, v)) return normalize_point(f, std::move(v));
  }
}

template <class F>
LinearSubspace<F> random_subspace(const F& f, unsigned n, unsigned codim, Rng& rng, long bound) {
  if (codim > n) throw std::invalid_argument("codimension exceeds the ambient dimension");
  for (;;) {
    LinearSubspace<F> s;
    for (unsigned i = 0; i < codim; ++i) s.forms.push_back(random_vector(f, rng, n + 1, bound));
    if (codim > 0 && span_rank(f, s.forms) != codim) continue;
    if (codim == 0) {
      for (unsigned j = 0; j <= n; ++j) {
        Vec<F> e(n + 1, f.zero());
        e[j] = f.one();
        s.basis.push_back(std::move(e));
      }
    } else {
      s.basis = kernel_basis(Matrix<F>::from_rows(f, n + 1, s.forms));
    }
    return s;
  }
}

#define AHLAB_INSTANTIATE_SCHEMES(F)                                                                     \
  template SchemeSummary summarize<F>(const SchemeSpec<F>&);                                             \
  template F::Element apply_linear<F>(const F&, const Vec<F>&, const Vec<F>&);                           \
  template Hyperplane<F> make_hyperplane<F>(const F&, Vec<F>);                                           \
  template Hyperplane<F> coordinate_hyperplane<F>(const F&, unsigned, unsigned);                         \
  template void validate<F>(const F&, const SchemeSpec<F>&);                                             \
  template Matrix<F> condition_matrix<F>(const F&, const SchemeSpec<F>&, unsigned);                      \
  template std::size_t scheme_degree<F>(const SchemeSpec<F>&);                                           \
  template TraceResidual<F> trace_residual<F>(const F&, const SchemeSpec<F>&, const Hyperplane<F>&);     \
  template SchemeSpec<F> convert_scheme<F>(const F&, const SchemeSpec<Rationals>&);                      \
  template Vec<F> random_point<F>(const F&, unsigned, Rng&, long);                                       \
  template Vec<F> random_point_in<F>(const F&, const std::vector<Vec<F>>&, Rng&, long);                  \
  template LinearSubspace<F> random_subspace<F>(const F&, unsigned, unsigned, Rng&, long);

AHLAB_INSTANTIATE_SCHEMES(Rationals)
AHLAB_INSTANTIATE_SCHEMES(PrimeField)

#undef AHLAB_INSTANTIATE_SCHEMES

}  // namespace ahlab
