#pragma once

#include <compare>
#include <functional>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahlab/interpolation.hpp"

namespace ahlab {

/// The statement "k general double points of P^n impose independent
/// conditions on forms of degree d".
struct CaseId {
  unsigned n = 1;
  unsigned d = 1;
  std::size_t k = 0;

  auto operator<=>(const CaseId&) const = default;
  std::string to_string() const;
  nlohmann::json to_json() const { return {{"n", n}, {"d", d}, {"k", k}}; }
  static CaseId from_json(const nlohmann::json& j);
};

enum class ExceptionReason { quadric_cones, double_quadric, rnc_secant_cubic };

std::string to_string(ExceptionReason r);

struct ExceptionRecord {
  CaseId id;
  ExceptionReason reason;
};

/// The defective cases: d = 2 with 2 <= k <= n, and (2,4,5), (3,4,9), (4,3,7), (4,4,14).
std::optional<ExceptionRecord> is_exception(const CaseId& c);

/// floor and ceil of C(n+d, n) / (n+1).
std::pair<std::size_t, std::size_t> critical_k(unsigned n, unsigned d);

enum class SplitBranch { i, ii, neither };

std::string to_string(SplitBranch b);
SplitBranch split_branch_from_string(const std::string& s);

/// Which pair of inequalities holds when u of the k double points are put on a
/// hyperplane: (i) un <= C(d+n-1, n-1) and k(n+1) - un <= C(d+n-1, n), or (ii)
/// with both reversed. Reports i when both hold.
SplitBranch castelnuovo_branch(unsigned n, unsigned d, std::size_t k, std::size_t u);

struct HoraceParams {
  long long u = 0;
  unsigned epsilon = 0;
  bool valid = false;  // u >= 0
  bool ineq_i = false;
  bool ineq_ii = false;
  std::optional<bool> ineq_iii;  // only evaluated for d = 4, n >= 10

  nlohmann::json to_json() const;
};

/// The unique u, 0 <= epsilon < n with n u + epsilon = k(n+1) - C(n+d-1, n),
/// and the three numerical conclusions (i) n eps + u <= C(n+d-2, n-1),
/// (ii) C(n+d-2, n) <= (k-u-eps)(n+1), (iii) k-u-eps >= n+1.
/// Requires n >= 2 and d >= 4.
HoraceParams horace_params(unsigned n, unsigned d, std::size_t k);

enum class Rule { base_rank, quadric_formula, cubic, castelnuovo, horace, monotone };

std::string to_string(Rule r);
Rule rule_from_string(const std::string& s);

struct CertNode {
  CaseId id;
  Rule rule = Rule::base_rank;
  std::optional<long long> u;
  std::optional<unsigned> epsilon;
  std::optional<SplitBranch> branch;
  std::vector<CaseId> children;
  nlohmann::json side_conditions = nlohmann::json::object();
  std::string note;
};

/// A proof DAG: one node per case, children referenced by CaseId.
struct Certificate {
  CaseId root;
  std::vector<CertNode> nodes;

  const CertNode* find(const CaseId& c) const;
  CertNode* find(const CaseId& c);
  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

class CertificateError : public std::runtime_error {
 public:
  CertificateError(const CaseId& stuck, const std::string& what)
      : std::runtime_error(stuck.to_string() + ": " + what), stuck_(stuck) {}
  const CaseId& stuck() const { return stuck_; }

 private:
  CaseId stuck_;
};

/// Builds a grounded certificate. Throws CertificateError for exceptional cases.
Certificate build_certificate(const CaseId& c);

struct CheckResult {
  bool accepted = false;
  std::optional<CaseId> failed;
  std::string reason;
  std::size_t nodes_checked = 0;

  nlohmann::json to_json() const;
};

/// Re-verifies every side condition, every leaf by rank, and the DAG shape.
CheckResult check_certificate(const Certificate& cert, const HilbertOptions& opt = {});

struct InstanceCheck {
  std::string name;
  unsigned n = 0;
  std::size_t containment_dim = 0;                  // dim I_{linear spaces}(3)
  std::optional<std::size_t> expected_containment;  // known value, when there is one
  std::size_t final_dim = 0;                        // after adding the double points
  std::size_t expected_final = 0;
  bool passed = false;

  nlohmann::json to_json() const;
};

struct CubicReport {
  unsigned n = 0;
  std::size_t k = 0;       // floor((n+3)(n+2)/6)
  std::size_t delta = 0;   // C(n+3,3) - (n+1) k
  std::size_t jet_length = 0;
  HilbertReport main;
  bool full = false;       // k double points (plus the jet) fill the cubics
  std::vector<InstanceCheck> instances;

  nlohmann::json to_json() const;
};

/// Cubic check: k_n double points, plus a jet of length delta_n when n = 2 mod 3,
/// against the C(n+3,3) cubics; plus the linear-containment instance checks
/// that apply to this n.
CubicReport verify_cubics(unsigned n, const HilbertOptions& opt = {}, bool with_instances = true);

struct SweepRow {
  CaseId id;
  HilbertReport report;
  bool predicted_exception = false;
  bool agrees = false;
};

/// Per-case seed derived from the base seed, so results do not depend on scheduling.
std::uint64_t case_seed(std::uint64_t base, const CaseId& c);

/// (n, d, k_minus) and, when different, (n, d, k_plus) for every (n, d) in the ranges.
std::vector<CaseId> sweep_cases(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi);

/// The options a sweep uses for one case.
HilbertOptions sweep_case_options(const HilbertOptions& opt, const CaseId& c);

/// Optional callbacks: `lookup` may supply a stored report instead of computing
/// one; `computed` sees every freshly computed row, one call at a time.
struct SweepHooks {
  std::function<std::optional<HilbertReport>(const CaseId&, const HilbertOptions&)> lookup;
  std::function<void(const SweepRow&, const HilbertOptions&)> computed;
};

std::vector<SweepRow> sweep(const std::vector<CaseId>& cases, const HilbertOptions& opt, unsigned threads,
                            const SweepHooks& hooks);

/// For every (n, d) in the ranges, the Hilbert function at k_minus and k_plus,
/// compared against the exception list. Cases run on up to `threads` workers.
std::vector<SweepRow> sweep(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi,
                            const HilbertOptions& opt = {}, unsigned threads = 0);

/// CSV with columns n,d,k,expected,computed,defect,verdict,seed,prime.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ahlab
