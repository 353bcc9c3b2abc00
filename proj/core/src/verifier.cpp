#include "ahlab/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace ahlab {

std::string CaseId::to_string() const {
  return "(" + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(k) + ")";
}

CaseId CaseId::from_json(const nlohmann::json& j) {
  return {j.at("n").get<unsigned>(), j.at("d").get<unsigned>(), j.at("k").get<std::size_t>()};
}

std::string to_string(ExceptionReason r) {
  switch (r) {
    case ExceptionReason::quadric_cones:
      return "quadric-cones";
    case ExceptionReason::double_quadric:
      return "double-quadric";
    case ExceptionReason::rnc_secant_cubic:
      return "rnc-secant-cubic";
  }
  return "unknown";
}

std::optional<ExceptionRecord> is_exception(const CaseId& c) {
  if (c.d == 2 && c.k >= 2 && c.k <= c.n) return ExceptionRecord{c, ExceptionReason::quadric_cones};
  if (c.d == 4 && ((c.n == 2 && c.k == 5) || (c.n == 3 && c.k == 9) || (c.n == 4 && c.k == 14))) {
    return ExceptionRecord{c, ExceptionReason::double_quadric};
  }
  if (c.n == 4 && c.d == 3 && c.k == 7) return ExceptionRecord{c, ExceptionReason::rnc_secant_cubic};
  return std::nullopt;
}

std::pair<std::size_t, std::size_t> critical_k(unsigned n, unsigned d) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  const std::size_t s = space_dimension(n, d);
  const std::size_t lo = s / (n + 1);
  return {lo, s % (n + 1) == 0 ? lo : lo + 1};
}

std::string to_string(SplitBranch b) {
  switch (b) {
    case SplitBranch::i:
      return "i";
    case SplitBranch::ii:
      return "ii";
    case SplitBranch::neither:
      return "neither";
  }
  return "unknown";
}

SplitBranch split_branch_from_string(const std::string& s) {
  if (s == "i") return SplitBranch::i;
  if (s == "ii") return SplitBranch::ii;
  if (s == "neither") return SplitBranch::neither;
  throw std::invalid_argument("unknown branch \"" + s + "\"");
}

SplitBranch castelnuovo_branch(unsigned n, unsigned d, std::size_t k, std::size_t u) {
  if (u > k) throw std::invalid_argument("u exceeds k");
  if (n < 1 || d < 1) throw std::invalid_argument("need n >= 1 and d >= 1");
  const std::size_t un = u * n;
  const std::size_t trace_space = binomial(d + n - 1, n - 1);
  const std::size_t residual_space = binomial(d + n - 1, n);
  const std::size_t residual_load = k * (n + 1) - un;
  if (un <= trace_space && residual_load <= residual_space) return SplitBranch::i;
  if (un >= trace_space && residual_load >= residual_space) return SplitBranch::ii;
  return SplitBranch::neither;
}

nlohmann::json HoraceParams::to_json() const {
  nlohmann::json j = {{"u", u}, {"epsilon", epsilon}, {"valid", valid}, {"i", ineq_i}, {"ii", ineq_ii}};
  j["iii"] = ineq_iii ? nlohmann::json(*ineq_iii) : nlohmann::json(nullptr);
  return j;
}

HoraceParams horace_params(unsigned n, unsigned d, std::size_t k) {
  if (n < 2 || d < 4) throw std::invalid_argument("horace parameters need n >= 2 and d >= 4");
  const long long rhs = static_cast<long long>(k * (n + 1)) - static_cast<long long>(binomial(n + d - 1, n));
  const long long nn = n;
  long long u = rhs / nn;
  long long eps = rhs % nn;
  if (eps < 0) {
    eps += nn;
    --u;
  }
  HoraceParams p;
  p.u = u;
  p.epsilon = static_cast<unsigned>(eps);
  p.valid = u >= 0;
  const long long kk = static_cast<long long>(k);
  p.ineq_i = nn * eps + u <= static_cast<long long>(binomial(n + d - 2, n - 1));
  p.ineq_ii = static_cast<long long>(binomial(n + d - 2, n)) <= (kk - u - eps) * (nn + 1);
  if (d == 4 && n >= 10) p.ineq_iii = kk - u - eps >= nn + 1;
  return p;
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::base_rank:
      return "BASE-RANK";
    case Rule::quadric_formula:
      return "QUADRIC-FORMULA";
    case Rule::cubic:
      return "CUBIC-THM51";
    case Rule::castelnuovo:
      return "THM41";
    case Rule::horace:
      return "THM65";
    case Rule::monotone:
      return "MONOTONE";
  }
  return "unknown";
}

Rule rule_from_string(const std::string& s) {
  for (Rule r : {Rule::base_rank, Rule::quadric_formula, Rule::cubic, Rule::castelnuovo, Rule::horace,
                 Rule::monotone}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown rule \"" + s + "\"");
}

const CertNode* Certificate::find(const CaseId& c) const {
  for (const auto& node : nodes) {
    if (node.id == c) return &node;
  }
  return nullptr;
}

CertNode* Certificate::find(const CaseId& c) {
  for (auto& node : nodes) {
    if (node.id == c) return &node;
  }
  return nullptr;
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& node : nodes) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : node.children) children.push_back(c.to_json());
    nlohmann::json j = {{"case", node.id.to_json()},
                        {"rule", to_string(node.rule)},
                        {"u", nullptr},
                        {"epsilon", nullptr},
                        {"branch", nullptr},
                        {"children", children},
                        {"side_conditions", node.side_conditions}};
    if (node.u) j["u"] = *node.u;
    if (node.epsilon) j["epsilon"] = *node.epsilon;
    if (node.branch) j["branch"] = to_string(*node.branch);
    if (!node.note.empty()) j["note"] = node.note;
    list.push_back(std::move(j));
  }
  return {{"root", root.to_json()}, {"nodes", list}};
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  Certificate cert;
  cert.root = CaseId::from_json(j.at("root"));
  for (const auto& nj : j.at("nodes")) {
    CertNode node;
    node.id = CaseId::from_json(nj.at("case"));
    node.rule = rule_from_string(nj.at("rule").get<std::string>());
    if (nj.contains("u") && !nj.at("u").is_null()) node.u = nj.at("u").get<long long>();
    if (nj.contains("epsilon") && !nj.at("epsilon").is_null()) node.epsilon = nj.at("epsilon").get<unsigned>();
    if (nj.contains("branch") && !nj.at("branch").is_null()) {
      node.branch = split_branch_from_string(nj.at("branch").get<std::string>());
    }
    for (const auto& c : nj.at("children")) node.children.push_back(CaseId::from_json(c));
    if (nj.contains("side_conditions")) node.side_conditions = nj.at("side_conditions");
    node.note = nj.value("note", std::string());
    cert.nodes.push_back(std::move(node));
  }
  return cert;
}

namespace {

long long signed_binomial(unsigned a, unsigned b) { return static_cast<long long>(binomial(a, b)); }

// Residual of the split: (k-u) double points and u simple points on H, in degree d-1.
// With W = I_{doubles}(d-1) and K = I_{doubles}(d-2) at their expected
// dimensions, u general points of H cut W down to the expected value exactly
// when u <= dim W - dim K or K = 0.
struct ResidualCheck {
  long long dim_w = 0;
  long long dim_k = 0;
  bool needs_lower = false;
  bool ok = false;
};

ResidualCheck residual_check(unsigned n, unsigned d, std::size_t k, std::size_t u) {
  ResidualCheck r;
  const long long load = static_cast<long long>((k - u) * (n + 1));
  r.dim_w = std::max(0LL, signed_binomial(n + d - 1, n) - load);
  r.dim_k = d >= 2 ? std::max(0LL, signed_binomial(n + d - 2, n) - load) : 0;
  r.needs_lower = r.dim_w > 0;
  r.ok = !r.needs_lower || r.dim_k == 0 || static_cast<long long>(u) <= r.dim_w - r.dim_k;
  return r;
}

std::vector<CaseId> castelnuovo_children(const CaseId& c, std::size_t u) {
  std::vector<CaseId> out{{c.n - 1, c.d, u}, {c.n, c.d - 1, c.k - u}};
  if (residual_check(c.n, c.d, c.k, u).needs_lower) out.push_back({c.n, c.d - 2, c.k - u});
  return out;
}

std::vector<CaseId> horace_children(const CaseId& c, const HoraceParams& p) {
  const auto u = static_cast<std::size_t>(p.u);
  return {{c.n - 1, c.d, u}, {c.n, c.d - 1, c.k - u}, {c.n, c.d - 2, c.k - u - p.epsilon}};
}

bool none_exceptional(const std::vector<CaseId>& cs) {
  return std::none_of(cs.begin(), cs.end(), [](const CaseId& c) { return is_exception(c).has_value(); });
}

class Builder {
 public:
  void ground(const CaseId& c) {
    if (done_.count(c)) return;
    if (auto ex = is_exception(c)) throw CertificateError(c, "exceptional case (" + to_string(ex->reason) + ")");
    if (!active_.insert(c).second) throw CertificateError(c, "cyclic dependency");
    CertNode node = choose(c);
    for (const auto& child : node.children) ground(child);
    active_.erase(c);
    done_.emplace(c, std::move(node));
    order_.push_back(c);
  }

  Certificate finish(const CaseId& root) {
    Certificate cert;
    cert.root = root;
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) cert.nodes.push_back(done_.at(*it));
    return cert;
  }

 private:
  static CertNode leaf(const CaseId& c, Rule r, std::string note = {}) {
    CertNode node;
    node.id = c;
    node.rule = r;
    node.note = std::move(note);
    return node;
  }

  static CertNode monotone(const CaseId& c, std::size_t target) {
    CertNode node = leaf(c, Rule::monotone);
    node.children = {{c.n, c.d, target}};
    node.side_conditions = {{"direction", c.k < target ? "subset" : "superset"}};
    return node;
  }

  static std::optional<CertNode> try_horace(const CaseId& c) {
    const auto [lo, hi] = critical_k(c.n, c.d);
    if (c.n < 2 || c.d < 4 || c.k < lo || c.k > hi) return std::nullopt;
    const auto p = horace_params(c.n, c.d, c.k);
    if (!p.valid || !p.ineq_i || !p.ineq_ii) return std::nullopt;
    if (static_cast<long long>(c.k) < p.u + p.epsilon) return std::nullopt;
    auto children = horace_children(c, p);
    if (!none_exceptional(children)) return std::nullopt;
    CertNode node = leaf(c, Rule::horace);
    node.u = p.u;
    node.epsilon = p.epsilon;
    node.children = std::move(children);
    node.side_conditions = p.to_json();
    return node;
  }

  static std::optional<CertNode> try_castelnuovo(const CaseId& c) {
    if (c.n < 2 || c.d < 3) return std::nullopt;
    for (std::size_t u = 0; u <= c.k; ++u) {
      const auto branch = castelnuovo_branch(c.n, c.d, c.k, u);
      if (branch == SplitBranch::neither) continue;
      const auto res = residual_check(c.n, c.d, c.k, u);
      if (!res.ok) continue;
      auto children = castelnuovo_children(c, u);
      if (!none_exceptional(children)) continue;
      CertNode node = leaf(c, Rule::castelnuovo);
      node.u = static_cast<long long>(u);
      node.branch = branch;
      node.children = std::move(children);
      node.side_conditions = {{"residual_dim_w", res.dim_w}, {"residual_dim_k", res.dim_k}};
      return node;
    }
    return std::nullopt;
  }

  static CertNode choose(const CaseId& c) {
    if (c.k == 0 || c.n == 1 || c.d == 1) return leaf(c, Rule::base_rank);
    if (c.d == 2) return leaf(c, Rule::quadric_formula);
    if (c.d == 3 && c.n != 4) return leaf(c, Rule::cubic);
    if (c.d == 3 || c.n == 2) return leaf(c, Rule::base_rank);
    const auto [lo, hi] = critical_k(c.n, c.d);
    if (c.k < lo || c.k > hi) {
      const std::size_t target = c.k < lo ? lo : hi;
      if (!is_exception({c.n, c.d, target})) return monotone(c, target);
      const std::size_t beyond = c.k < lo ? lo - 1 : hi + 1;
      if (beyond != c.k && !is_exception({c.n, c.d, beyond})) return monotone(c, beyond);
    }
    if (auto node = try_horace(c)) return *node;
    if (auto node = try_castelnuovo(c)) return *node;
    return leaf(c, Rule::base_rank, "no induction step applies; checked by rank");
  }

  std::map<CaseId, CertNode> done_;
  std::set<CaseId> active_;
  std::vector<CaseId> order_;
};

struct Failure {
  CaseId id;
  std::string reason;
};

std::optional<std::string> check_arithmetic(const CertNode& node) {
  const CaseId& c = node.id;
  const auto expect_children = [&](const std::vector<CaseId>& want) -> std::optional<std::string> {
    if (node.children != want) return "children do not match the rule";
    return std::nullopt;
  };
  switch (node.rule) {
    case Rule::base_rank:
      if (!node.children.empty()) return "a rank leaf has children";
      return std::nullopt;
    case Rule::quadric_formula:
      if (c.d != 2) return "quadric rule used in degree " + std::to_string(c.d);
      if (!node.children.empty()) return "a quadric leaf has children";
      return std::nullopt;
    case Rule::cubic:
      if (c.d != 3 || c.n == 4 || c.n < 2) return "cubic rule does not apply";
      if (!node.children.empty()) return "a cubic leaf has children";
      return std::nullopt;
    case Rule::monotone: {
      if (node.children.size() != 1) return "monotone step needs exactly one child";
      const CaseId& t = node.children.front();
      if (t.n != c.n || t.d != c.d || t.k == c.k) return "monotone child must differ only in k";
      const std::size_t space = space_dimension(c.n, c.d);
      if (c.k < t.k && t.k * (c.n + 1) > space) return "larger child is not in the independent range";
      if (c.k > t.k && t.k * (c.n + 1) < space) return "smaller child does not fill";
      return std::nullopt;
    }
    case Rule::castelnuovo: {
      if (!node.u || *node.u < 0 || static_cast<std::size_t>(*node.u) > c.k) return "u missing or out of range";
      if (c.n < 2 || c.d < 3) return "hyperplane split needs n >= 2 and d >= 3";
      const auto u = static_cast<std::size_t>(*node.u);
      const auto branch = castelnuovo_branch(c.n, c.d, c.k, u);
      if (branch == SplitBranch::neither) return "neither pair of split inequalities holds for u = " + std::to_string(u);
      if (node.branch && *node.branch != branch) return "recorded branch " + to_string(*node.branch) + " but " +
                                                        to_string(branch) + " holds";
      if (!residual_check(c.n, c.d, c.k, u).ok) return "simple points on H cannot be imposed on the residual";
      return expect_children(castelnuovo_children(c, u));
    }
    case Rule::horace: {
      if (c.n < 2 || c.d < 4) return "degeneration step needs n >= 2 and d >= 4";
      const auto [lo, hi] = critical_k(c.n, c.d);
      if (c.k < lo || c.k > hi) return "k outside the critical range";
      if (!node.u || !node.epsilon) return "u or epsilon missing";
      const long long u = *node.u;
      const long long eps = *node.epsilon;
      const long long rhs =
          static_cast<long long>(c.k * (c.n + 1)) - static_cast<long long>(binomial(c.n + c.d - 1, c.n));
      if (static_cast<long long>(c.n) * u + eps != rhs) return "identity n u + epsilon = k(n+1) - C(n+d-1,n) fails";
      if (eps < 0 || eps >= static_cast<long long>(c.n)) return "epsilon outside [0, n)";
      if (u < 0 || u + eps > static_cast<long long>(c.k)) return "u out of range";
      const auto p = horace_params(c.n, c.d, c.k);
      if (!p.ineq_i) return "inequality (i) fails";
      if (!p.ineq_ii) return "inequality (ii) fails";
      return expect_children(horace_children(c, p));
    }
  }
  return "unknown rule";
}

}  // namespace

Certificate build_certificate(const CaseId& c) {
  if (c.n < 1 || c.d < 1) throw CertificateError(c, "need n >= 1 and d >= 1");
  Builder b;
  b.ground(c);
  return b.finish(c);
}

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j = {{"accepted", accepted}, {"nodes_checked", nodes_checked}, {"reason", reason}};
  j["failed"] = failed ? failed->to_json() : nlohmann::json(nullptr);
  return j;
}

CheckResult check_certificate(const Certificate& cert, const HilbertOptions& opt) {
  CheckResult out;
  const auto fail = [&](const CaseId& c, std::string why) {
    out.accepted = false;
    out.failed = c;
    out.reason = std::move(why);
    return out;
  };

  std::map<CaseId, const CertNode*> index;
  for (const auto& node : cert.nodes) {
    if (!index.emplace(node.id, &node).second) return fail(node.id, "duplicate node");
  }
  if (!index.count(cert.root)) return fail(cert.root, "root node missing");

  // Reachable nodes in DFS order, with a cycle check.
  std::vector<const CertNode*> reach;
  std::map<CaseId, int> state;
  std::optional<Failure> shape;
  std::function<void(const CaseId&)> visit = [&](const CaseId& c) {
    if (shape) return;
    auto it = index.find(c);
    if (it == index.end()) {
      shape = Failure{c, "referenced node missing"};
      return;
    }
    if (state[c] == 2) return;
    if (state[c] == 1) {
      shape = Failure{c, "cycle through this node"};
      return;
    }
    state[c] = 1;
    for (const auto& child : it->second->children) visit(child);
    state[c] = 2;
    reach.push_back(it->second);
  };
  visit(cert.root);
  if (shape) return fail(shape->id, shape->reason);

  for (const CertNode* node : reach) {
    if (auto ex = is_exception(node->id)) {
      return fail(node->id, "cites an exceptional case (" + to_string(ex->reason) + ")");
    }
    if (auto why = check_arithmetic(*node)) return fail(node->id, *why);
  }

  // Leaves by computation, concurrently.
  std::map<unsigned, bool> cubic_ok;
  for (const CertNode* node : reach) {
    if (node->rule == Rule::cubic) cubic_ok.emplace(node->id.n, false);
  }
  for (auto& [n, ok] : cubic_ok) {
    HilbertOptions o = opt;
    o.seed = case_seed(opt.seed, {n, 3, 0});
    ok = verify_cubics(n, o, false).full;
  }

  std::vector<std::pair<const CertNode*, std::future<std::optional<std::string>>>> jobs;
  for (const CertNode* node : reach) {
    if (node->rule != Rule::base_rank && node->rule != Rule::quadric_formula) continue;
    jobs.emplace_back(node, std::async(std::launch::async, [node, &opt]() -> std::optional<std::string> {
                        const CaseId& c = node->id;
                        HilbertOptions o = opt;
                        o.seed = case_seed(opt.seed, c);
                        if (node->rule == Rule::base_rank) {
                          const auto r = hilbert_double_points(c.n, c.d, c.k, o);
                          if (r.defect != 0) {
                            return "rank " + std::to_string(r.computed) + " below expected " +
                                   std::to_string(r.expected);
                          }
                          return std::nullopt;
                        }
                        const std::size_t kk = std::min<std::size_t>(c.k, c.n + 1);
                        const std::size_t formula = space_dimension(c.n, 2) - binomial(c.n - kk + 2, 2);
                        if (formula != expected_codim(c.n, 2, kk)) return "quadric formula is not the expected value";
                        const auto r = hilbert_double_points(c.n, 2, kk, o);
                        if (r.computed != formula) return "quadric formula disagrees with the rank";
                        return std::nullopt;
                      }));
  }
  std::optional<Failure> leaf_failure;
  for (auto& [node, fut] : jobs) {
    auto why = fut.get();
    if (why && !leaf_failure) leaf_failure = Failure{node->id, *why};
  }
  if (leaf_failure) return fail(leaf_failure->id, leaf_failure->reason);
  for (const CertNode* node : reach) {
    if (node->rule == Rule::cubic && !cubic_ok.at(node->id.n)) {
      return fail(node->id, "cubic configuration is not independent");
    }
  }
  out.accepted = true;
  out.nodes_checked = reach.size();
  out.reason = "all side conditions and leaves verified";
  return out;
}

nlohmann::json InstanceCheck::to_json() const {
  nlohmann::json j = {{"name", name},
                      {"n", n},
                      {"containment_dim", containment_dim},
                      {"final_dim", final_dim},
                      {"expected_final", expected_final},
                      {"passed", passed}};
  j["expected_containment"] = expected_containment ? nlohmann::json(*expected_containment) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json CubicReport::to_json() const {
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& i : instances) inst.push_back(i.to_json());
  return {{"n", n},       {"k", k},       {"delta", delta}, {"jet_length", jet_length}, {"full", full},
          {"main", main.to_json()}, {"instances", inst}};
}

namespace {

template <class F>
Vec<F> unit(const F& f, unsigned n, unsigned i) {
  Vec<F> e(n + 1, f.zero());
  e[i] = f.one();
  return e;
}

template <class F>
Vec<F> random_direction(const F& f, unsigned n, Rng& rng) {
  return random_point(f, n, rng);
}

// Builds (linear part, full scheme) for one trial.
template <class F>
using InstanceBuilder = std::function<std::pair<SchemeSpec<F>, SchemeSpec<F>>(const F&, Rng&)>;

template <class F>
InstanceCheck run_instance(const F& f, const std::string& name, unsigned n, std::optional<std::size_t> expected,
                           std::size_t expected_final, const InstanceBuilder<F>& build, Rng& rng, unsigned trials) {
  InstanceCheck ic;
  ic.name = name;
  ic.n = n;
  ic.expected_containment = expected;
  ic.expected_final = expected_final;
  ic.containment_dim = space_dimension(n, 3);
  ic.final_dim = space_dimension(n, 3);
  for (unsigned t = 0; t < trials; ++t) {
    const auto [linear, full] = build(f, rng);
    ic.containment_dim = std::min(ic.containment_dim, ideal_dimension(f, linear, 3));
    ic.final_dim = std::min(ic.final_dim, ideal_dimension(f, full, 3));
    if ((!expected || ic.containment_dim == *expected) && ic.final_dim == expected_final) break;
  }
  ic.passed = (!expected || ic.containment_dim == *expected) && ic.final_dim == expected_final;
  return ic;
}

template <class F>
std::vector<InstanceCheck> cubic_instances(const F& f, unsigned n, std::uint64_t seed, unsigned trials) {
  std::vector<InstanceCheck> out;
  Rng rng(seed);
  const auto add_doubles_on = [&](SchemeSpec<F>& s, const LinearSubspace<F>& l, std::size_t count, Rng& r) {
    for (std::size_t i = 0; i < count; ++i) s.add(DoublePoint<F>{random_point_in(f, l.basis, r)});
  };
  const auto add_general = [&](SchemeSpec<F>& s, std::size_t count, Rng& r) {
    for (std::size_t i = 0; i < count; ++i) s.add(DoublePoint<F>{random_point(f, n, r)});
  };

  if (n >= 4 && n <= 7) {
    static const std::map<unsigned, std::size_t> known{{4, 23}, {5, 26}, {6, 27}, {7, 27}};
    out.push_back(run_instance<F>(
        f, "three-codim3-spaces", n, known.at(n), n == 4 ? 1 : 0,
        [&](const F& fld, Rng& r) {
          SchemeSpec<F> lin;
          lin.n = n;
          std::vector<LinearSubspace<F>> subs;
          for (int i = 0; i < 3; ++i) {
            subs.push_back(random_subspace(fld, n, 3, r));
            lin.add(ContainLinear<F>{subs.back().forms});
          }
          SchemeSpec<F> full = lin;
          for (const auto& l : subs) add_doubles_on(full, l, 3, r);
          return std::make_pair(lin, full);
        },
        rng, trials));
  }
  if (n >= 5 && n <= 7) {
    static const std::map<unsigned, std::size_t> known{{5, 36}, {7, 54}};
    std::optional<std::size_t> exp;
    if (known.count(n)) exp = known.at(n);
    out.push_back(run_instance<F>(
        f, "two-codim3-spaces", n, exp, 0,
        [&](const F& fld, Rng& r) {
          SchemeSpec<F> lin;
          lin.n = n;
          const auto l = random_subspace(fld, n, 3, r);
          const auto m = random_subspace(fld, n, 3, r);
          lin.add(ContainLinear<F>{l.forms}).add(ContainLinear<F>{m.forms});
          SchemeSpec<F> full = lin;
          add_doubles_on(full, l, n - 2, r);
          add_doubles_on(full, m, n - 2, r);
          add_general(full, 3, r);
          return std::make_pair(lin, full);
        },
        rng, trials));

    // One codimension-3 space: dim I_L(3) = C(n+3,3) - C(n,3).
    const std::size_t containment = space_dimension(n, 3) - space_dimension(n - 3, 3);
    out.push_back(run_instance<F>(
        f, "one-codim3-space", n, containment, 0,
        [&](const F& fld, Rng& r) {
          SchemeSpec<F> lin;
          lin.n = n;
          const auto l = random_subspace(fld, n, 3, r);
          lin.add(ContainLinear<F>{l.forms});
          SchemeSpec<F> full = lin;
          if (n % 3 == 2) {
            add_doubles_on(full, l, (n + 1) * (n - 2) / 6, r);
            add_general(full, n + 1, r);
            // Jet of length delta_n at q in L: delta_n - 2 directions inside L, one off it.
            const std::size_t delta = (n + 1) / 3;
            const auto q = random_point_in(fld, l.basis, r);
            std::vector<Vec<F>> dirs;
            for (std::size_t i = 0; i + 2 < delta; ++i) dirs.push_back(random_point_in(fld, l.basis, r));
            dirs.push_back(random_direction(fld, n, r));
            full.add(Jet<F>{q, dirs});
          } else {
            add_doubles_on(full, l, n * (n - 1) / 6, r);
            add_general(full, n + 1, r);
          }
          return std::make_pair(lin, full);
        },
        rng, trials));
  }
  if (n == 5) {
    // Frame instance: L spanned by e0, e1, e2; double points at e0..e5, the unit
    // point and two random points; a length-2 jet at e0+e1+e2.
    out.push_back(run_instance<F>(
        f, "frame-instance", n, space_dimension(5, 3) - space_dimension(2, 3), 0,
        [&](const F& fld, Rng& r) {
          SchemeSpec<F> lin;
          lin.n = 5;
          lin.add(ContainLinear<F>{{unit(fld, 5, 3), unit(fld, 5, 4), unit(fld, 5, 5)}});
          SchemeSpec<F> pts;
          pts.n = 5;
          for (unsigned i = 0; i <= 5; ++i) pts.add(DoublePoint<F>{unit(fld, 5, i)});
          pts.add(DoublePoint<F>{Vec<F>(6, fld.one())});
          add_general(pts, 2, r);
          Vec<F> q(6, fld.zero());
          q[0] = q[1] = q[2] = fld.one();
          pts.add(Jet<F>{q, {random_direction(fld, 5, r)}});
          return std::make_pair(lin, pts);
        },
        rng, trials));
  }
  return out;
}

}  // namespace

CubicReport verify_cubics(unsigned n, const HilbertOptions& opt, bool with_instances) {
  if (n < 2) throw std::invalid_argument("cubic check needs n >= 2");
  CubicReport rep;
  rep.n = n;
  rep.k = (n + 3) * (n + 2) / 6;
  rep.delta = space_dimension(n, 3) - (n + 1) * rep.k;
  rep.jet_length = rep.delta;
  const std::size_t k = rep.k;
  const std::size_t jet = rep.jet_length;
  rep.main = hilbert_function(
      n, 3,
      [&](const auto& f, Rng& rng) {
        auto spec = random_double_points(f, n, k, rng, opt.bound);
        if (jet > 0) {
          using E = typename std::decay_t<decltype(f)>::Element;
          std::vector<std::vector<E>> dirs;
          for (std::size_t i = 0; i + 1 < jet; ++i) dirs.push_back(random_point(f, n, rng, opt.bound));
          spec.add(Jet<std::decay_t<decltype(f)>>{random_point(f, n, rng, opt.bound), dirs});
        }
        return spec;
      },
      opt);
  if (jet == 0) rep.main.k = k;
  rep.full = rep.main.computed == space_dimension(n, 3);
  if (with_instances) {
    rep.instances = with_field(rep.main.field, [&](const auto& f) {
      return cubic_instances(f, n, retry_seed(opt.seed ^ 0x5bd1e995ULL), std::max(1u, opt.trials));
    });
  }
  return rep;
}

std::uint64_t case_seed(std::uint64_t base, const CaseId& c) {
  std::uint64_t h = base;
  for (std::uint64_t v : {static_cast<std::uint64_t>(c.n), static_cast<std::uint64_t>(c.d),
                          static_cast<std::uint64_t>(c.k)}) {
    h = retry_seed(h ^ v);
  }
  return h;
}

std::vector<CaseId> sweep_cases(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi) {
  std::vector<CaseId> cases;
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    for (unsigned d = d_lo; d <= d_hi; ++d) {
      const auto [lo, hi] = critical_k(n, d);
      cases.push_back({n, d, lo});
      if (hi != lo) cases.push_back({n, d, hi});
    }
  }
  return cases;
}

HilbertOptions sweep_case_options(const HilbertOptions& opt, const CaseId& c) {
  HilbertOptions o = opt;
  o.seed = case_seed(opt.seed, c);
  return o;
}

std::vector<SweepRow> sweep(const std::vector<CaseId>& cases, const HilbertOptions& opt, unsigned threads,
                            const SweepHooks& hooks) {
  std::vector<SweepRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr err;
  const auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        const HilbertOptions o = sweep_case_options(opt, cases[i]);
        SweepRow row;
        row.id = cases[i];
        std::optional<HilbertReport> hit;
        if (hooks.lookup) hit = hooks.lookup(cases[i], o);
        row.report = hit ? *hit : hilbert_double_points(cases[i].n, cases[i].d, cases[i].k, o);
        row.predicted_exception = is_exception(cases[i]).has_value();
        row.agrees = (row.report.defect > 0) == row.predicted_exception;
        if (!hit && hooks.computed) {
          std::lock_guard<std::mutex> lock(mu);
          hooks.computed(row, o);
        }
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cases.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return rows;
}

std::vector<SweepRow> sweep(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi, const HilbertOptions& opt,
                            unsigned threads) {
  return sweep(sweep_cases(n_lo, n_hi, d_lo, d_hi), opt, threads, {});
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "n,d,k,expected,computed,defect,verdict,seed,prime\n";
  for (const auto& r : rows) {
    os << r.id.n << ',' << r.id.d << ',' << r.id.k << ',' << r.report.expected << ',' << r.report.computed << ','
       << r.report.defect << ',' << to_string(r.report.verdict) << ',' << r.report.seed << ',';
    if (r.report.field.kind == FieldKind::prime_field) os << r.report.field.prime;
    os << '\n';
  }
  return os.str();
}

}  // namespace ahlab
