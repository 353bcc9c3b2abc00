#include "ahlab/polyspace.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ahlab {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::size_t>::max()) throw std::overflow_error("binomial coefficient overflow");
  }
  return static_cast<std::size_t>(r);
}

namespace {

void enumerate(unsigned var, unsigned n, unsigned remaining, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (var == n) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[var] = e;
    enumerate(var + 1, n, remaining - e, current, out);
  }
}

unsigned degree_of(const MultiIndex& a) {
  unsigned s = 0;
  for (auto e : a) s += e;
  return s;
}

}  // namespace

MonomialBasis::MonomialBasis(unsigned n, unsigned d) : n_(n), d_(d) {
  monomials_.reserve(binomial(n + d, n));
  MultiIndex current(n + 1, 0);
  enumerate(0, n, d, current, monomials_);
}

std::size_t MonomialBasis::index_of(const MultiIndex& exponents) const {
  if (exponents.size() != n_ + 1 || degree_of(exponents) != d_) {
    throw std::invalid_argument("exponent vector does not belong to this monomial basis");
  }
  std::size_t idx = 0;
  unsigned remaining = d_;
  for (unsigned i = 0; i < n_; ++i) {
    const unsigned vars_after = n_ - i;  // variables i+1..n
    for (unsigned v = remaining; v > exponents[i]; --v) {
      idx += binomial(remaining - v + vars_after - 1, vars_after - 1);
    }
    remaining -= exponents[i];
  }
  return idx;
}

MonomialBasis monomial_basis(unsigned n, unsigned d) { return MonomialBasis(n, d); }

mpz_class multinomial(const MultiIndex& exponents) {
  mpz_class result = 1;
  unsigned long total = 0;
  for (auto e : exponents) {
    for (unsigned k = 1; k <= e; ++k) {
      ++total;
      result *= total;
      result /= k;
    }
  }
  return result;
}

namespace {

template <class F>
std::vector<std::vector<typename F::Element>> power_table(const F& f, const std::vector<typename F::Element>& p,
                                                          unsigned d) {
  std::vector<std::vector<typename F::Element>> pw(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    pw[i].reserve(d + 1);
    pw[i].push_back(f.one());
    for (unsigned e = 1; e <= d; ++e) pw[i].push_back(f.mul(pw[i].back(), p[i]));
  }
  return pw;
}

template <class F>
void check_length(const std::vector<typename F::Element>& p, const MonomialBasis& basis, const char* what) {
  if (p.size() != basis.n() + 1) {
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(p.size()) + " coordinates, expected " +
                                std::to_string(basis.n() + 1));
  }
}

}  // namespace

template <class F>
std::vector<typename F::Element> normalize_point(const F& f, std::vector<typename F::Element> coords) {
  auto lead = std::find_if(coords.begin(), coords.end(), [&](const auto& x) { return !f.is_zero(x); });
  if (lead == coords.end()) throw std::invalid_argument("the zero vector is not a projective point");
  const auto inv = f.inv(*lead);
  for (auto& x : coords) x = f.mul(x, inv);
  return coords;
}

template <class F>
std::vector<typename F::Element> evaluation_row(const F& f, const std::vector<typename F::Element>& p,
                                                const MonomialBasis& basis) {
  check_length<F>(p, basis, "point");
  const auto pw = power_table(f, p, basis.d());
  std::vector<typename F::Element> row;
  row.reserve(basis.size());
  for (const auto& mono : basis.monomials()) {
    auto v = f.one();
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] != 0) v = f.mul(v, pw[i][mono[i]]);
    }
    row.push_back(std::move(v));
  }
  return row;
}

template <class F>
std::vector<typename F::Element> derivative_row(const F& f, const std::vector<typename F::Element>& p,
                                                const std::vector<typename F::Element>& v,
                                                const MonomialBasis& basis) {
  check_length<F>(p, basis, "point");
  check_length<F>(v, basis, "direction");
  if (std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); })) {
    throw std::invalid_argument("derivative direction must be nonzero");
  }
  const auto pw = power_table(f, p, basis.d());
  std::vector<typename F::Element> row;
  row.reserve(basis.size());
  for (const auto& mono : basis.monomials()) {
    auto acc = f.zero();
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0 || f.is_zero(v[i])) continue;
      auto term = f.mul(v[i], f.from_integer(mono[i]));
      for (std::size_t j = 0; j < mono.size(); ++j) {
        const unsigned e = j == i ? mono[j] - 1 : mono[j];
        if (e != 0) term = f.mul(term, pw[j][e]);
      }
      acc = f.add(acc, term);
    }
    row.push_back(std::move(acc));
  }
  return row;
}

template <class F>
Form<F> multiply(const F& f, const Form<F>& a, const Form<F>& b) {
  if (a.n != b.n) throw std::invalid_argument("multiplying forms in different numbers of variables");
  const MonomialBasis ba(a.n, a.d), bb(b.n, b.d), bc(a.n, a.d + b.d);
  Form<F> out = zero_form(f, a.n, a.d + b.d);
  MultiIndex sum(a.n + 1);
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (f.is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (f.is_zero(b.coeffs[j])) continue;
      for (unsigned k = 0; k <= a.n; ++k) sum[k] = ba[i][k] + bb[j][k];
      auto& slot = out.coeffs[bc.index_of(sum)];
      slot = f.add(slot, f.mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  return out;
}

template <class F>
Form<F> add(const F& f, const Form<F>& a, const Form<F>& b) {
  if (a.n != b.n || a.d != b.d) throw std::invalid_argument("adding forms of different shapes");
  Form<F> out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = f.add(out.coeffs[i], b.coeffs[i]);
  return out;
}

template <class F>
Form<F> scale(const F& f, const Form<F>& a, const typename F::Element& c) {
  Form<F> out = a;
  for (auto& x : out.coeffs) x = f.mul(x, c);
  return out;
}

template <class F>
Form<F> power_sum_expand(const F& f, const std::vector<PowerTerm<F>>& terms, unsigned d) {
  if (terms.empty()) throw std::invalid_argument("power_sum_expand needs at least one term to fix n");
  const unsigned n = static_cast<unsigned>(terms.front().linear.size() - 1);
  Form<F> total = zero_form(f, n, d);
  for (const auto& t : terms) {
    if (t.linear.size() != n + 1) throw std::invalid_argument("linear forms of different lengths");
    Form<F> power = zero_form(f, n, 0);
    power.coeffs[0] = f.one();
    const Form<F> l = linear_form<F>(t.linear);
    for (unsigned e = 0; e < d; ++e) power = multiply(f, power, l);
    total = add(f, total, scale(f, power, t.coefficient));
  }
  return total;
}

template <class F>
Matrix<F> catalecticant(const F& f, const Form<F>& g, unsigned a) {
  if (a > g.d) throw std::invalid_argument("catalecticant order exceeds the degree");
  const MonomialBasis rows(g.n, g.d - a), cols(g.n, a), full(g.n, g.d);
  std::vector<typename F::Element> normalized(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    normalized[i] = f.div(g.coeffs[i], f.from_rational(mpq_class(multinomial(full[i]))));
  }
  Matrix<F> m(f, rows.size(), cols.size());
  MultiIndex sum(g.n + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (unsigned k = 0; k <= g.n; ++k) sum[k] = rows[i][k] + cols[j][k];
      m(i, j) = normalized[full.index_of(sum)];
    }
  }
  return m;
}

template <class F>
typename F::Element evaluate(const F& f, const Form<F>& g, const std::vector<typename F::Element>& p) {
  if (p.size() != g.n + 1) throw std::invalid_argument("point dimension does not match form");
  const MonomialBasis basis(g.n, g.d);
  auto acc = f.zero();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f.is_zero(g.coeffs[i])) continue;
    auto term = g.coeffs[i];
    for (unsigned k = 0; k <= g.n; ++k) {
      for (unsigned e = 0; e < basis[i][k]; ++e) term = f.mul(term, p[k]);
    }
    acc = f.add(acc, term);
  }
  return acc;
}

template <class F>
std::vector<typename F::Element> gradient_at(const F& f, const Form<F>& g,
                                             const std::vector<typename F::Element>& p) {
  std::vector<typename F::Element> grad;
  if (g.d == 0) return std::vector<typename F::Element>(g.n + 1, f.zero());
  const MonomialBasis basis(g.n, g.d), lower(g.n, g.d - 1);
  for (unsigned var = 0; var <= g.n; ++var) {
    Form<F> partial = zero_form(f, g.n, g.d - 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i][var] == 0 || f.is_zero(g.coeffs[i])) continue;
      MultiIndex e = basis[i];
      const unsigned k = e[var]--;
      auto& slot = partial.coeffs[lower.index_of(e)];
      slot = f.add(slot, f.mul(g.coeffs[i], f.from_integer(k)));
    }
    grad.push_back(evaluate(f, partial, p));
  }
  return grad;
}

template <class F>
Form<F> substitute(const F& f, const Form<F>& g, const std::vector<std::vector<typename F::Element>>& sub) {
  if (sub.size() != g.n + 1) throw std::invalid_argument("substitution needs one row per variable");
  const unsigned m = static_cast<unsigned>(sub.front().size() - 1);
  // powers[i][e] = (sum_j sub[i][j] y_j)^e
  std::vector<std::vector<Form<F>>> powers(g.n + 1);
  for (unsigned i = 0; i <= g.n; ++i) {
    Form<F> one = zero_form(f, m, 0);
    one.coeffs[0] = f.one();
    powers[i].push_back(one);
    const Form<F> l = linear_form<F>(sub[i]);
    for (unsigned e = 1; e <= g.d; ++e) powers[i].push_back(multiply(f, powers[i].back(), l));
  }
  const MonomialBasis basis(g.n, g.d);
  Form<F> out = zero_form(f, m, g.d);
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    if (f.is_zero(g.coeffs[idx])) continue;
    Form<F> term = zero_form(f, m, 0);
    term.coeffs[0] = g.coeffs[idx];
    for (unsigned i = 0; i <= g.n; ++i) {
      if (basis[idx][i] != 0) term = multiply(f, term, powers[i][basis[idx][i]]);
    }
    out = add(f, out, term);
  }
  return out;
}

template <class F>
bool proportional(const F& f, const Form<F>& a, const Form<F>& b) {
  if (a.n != b.n || a.d != b.d) return false;
  std::size_t lead = 0;
  while (lead < b.coeffs.size() && f.is_zero(b.coeffs[lead])) ++lead;
  if (lead == b.coeffs.size()) return false;
  if (f.is_zero(a.coeffs[lead])) return false;
  const auto ratio = f.div(a.coeffs[lead], b.coeffs[lead]);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (!f.equal(a.coeffs[i], f.mul(ratio, b.coeffs[i]))) return false;
  }
  return true;
}

template <class F>
Form<F> convert_form(const F& f, const Form<Rationals>& g) {
  Form<F> out{g.n, g.d, {}};
  out.coeffs.reserve(g.coeffs.size());
  for (const auto& c : g.coeffs) out.coeffs.push_back(f.from_rational(c));
  return out;
}

nlohmann::json form_to_json(const Form<Rationals>& g) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : g.coeffs) coeffs.push_back(c.get_str());
  return {{"n", g.n}, {"d", g.d}, {"order", "grlex"}, {"coeffs", coeffs}};
}

Form<Rationals> form_from_json(const nlohmann::json& j) {
  Form<Rationals> g;
  g.n = j.at("n").get<unsigned>();
  g.d = j.at("d").get<unsigned>();
  if (j.contains("order") && j.at("order") != "grlex") {
    throw std::invalid_argument("unsupported monomial order " + j.at("order").dump());
  }
  for (const auto& c : j.at("coeffs")) {
    mpq_class q(c.is_string() ? c.get<std::string>() : c.dump());
    q.canonicalize();
    g.coeffs.push_back(q);
  }
  if (g.coeffs.size() != binomial(g.n + g.d, g.n)) {
    throw std::invalid_argument("form has " + std::to_string(g.coeffs.size()) + " coefficients, expected " +
                                std::to_string(binomial(g.n + g.d, g.n)));
  }
  return g;
}

std::string form_to_string(const Form<Rationals>& g) {
  const MonomialBasis basis(g.n, g.d);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const mpq_class& c = g.coeffs[i];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || g.d == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (unsigned k = 0; k <= g.n; ++k) {
      if (basis[i][k] == 0) continue;
      if (wrote) os << "*";
      os << "x" << k;
      if (basis[i][k] > 1) os << "^" << basis[i][k];
      wrote = true;
    }
  }
  if (first) os << "0";
  return os.str();
}

#define AHLAB_INSTANTIATE_POLYSPACE(F)                                                                         \
  template std::vector<F::Element> normalize_point<F>(const F&, std::vector<F::Element>);                      \
  template std::vector<F::Element> evaluation_row<F>(const F&, const std::vector<F::Element>&,                 \
                                                     const MonomialBasis&);                                    \
  template std::vector<F::Element> derivative_row<F>(const F&, const std::vector<F::Element>&,                 \
                                                     const std::vector<F::Element>&, const MonomialBasis&);    \
  template Form<F> power_sum_expand<F>(const F&, const std::vector<PowerTerm<F>>&, unsigned);                  \
  template Matrix<F> catalecticant<F>(const F&, const Form<F>&, unsigned);                                     \
  template F::Element evaluate<F>(const F&, const Form<F>&, const std::vector<F::Element>&);                   \
  template std::vector<F::Element> gradient_at<F>(const F&, const Form<F>&, const std::vector<F::Element>&);   \
  template Form<F> multiply<F>(const F&, const Form<F>&, const Form<F>&);                                      \
  template Form<F> add<F>(const F&, const Form<F>&, const Form<F>&);                                           \
  template Form<F> scale<F>(const F&, const Form<F>&, const F::Element&);                                      \
  template Form<F> substitute<F>(const F&, const Form<F>&, const std::vector<std::vector<F::Element>>&);        \
  template bool proportional<F>(const F&, const Form<F>&, const Form<F>&);                                     \
  template Form<F> convert_form<F>(const F&, const Form<Rationals>&);

AHLAB_INSTANTIATE_POLYSPACE(Rationals)
AHLAB_INSTANTIATE_POLYSPACE(PrimeField)

#undef AHLAB_INSTANTIATE_POLYSPACE

}  // namespace ahlab
