#include <gtest/gtest.h>

#include <set>

#include "ahlab/verifier.hpp"
#include "generators.hpp"

using namespace ahlab;
using ahlab::testing::for_all;
using ahlab::testing::Gen;

TEST(Exceptions, KnownList) {
  EXPECT_EQ(is_exception({2, 4, 5})->reason, ExceptionReason::double_quadric);
  EXPECT_EQ(is_exception({3, 4, 9})->reason, ExceptionReason::double_quadric);
  EXPECT_EQ(is_exception({4, 4, 14})->reason, ExceptionReason::double_quadric);
  EXPECT_EQ(is_exception({4, 3, 7})->reason, ExceptionReason::rnc_secant_cubic);
  EXPECT_EQ(is_exception({5, 2, 4})->reason, ExceptionReason::quadric_cones);
  EXPECT_FALSE(is_exception({5, 2, 1}));
  EXPECT_FALSE(is_exception({5, 2, 6}));
  EXPECT_FALSE(is_exception({3, 6, 21}));
  EXPECT_FALSE(is_exception({4, 3, 6}));
}

TEST(CriticalK, Examples) {
  EXPECT_EQ(critical_k(9, 4), (std::pair<std::size_t, std::size_t>{71, 72}));
  EXPECT_EQ(critical_k(3, 6), (std::pair<std::size_t, std::size_t>{21, 21}));
  EXPECT_EQ(critical_k(2, 4), (std::pair<std::size_t, std::size_t>{5, 5}));
}

TEST(CastelnuovoBranch, Examples) {
  EXPECT_EQ(castelnuovo_branch(3, 5, 14, 7), SplitBranch::i);
  EXPECT_EQ(castelnuovo_branch(7, 4, 41, 30), SplitBranch::i);
  EXPECT_EQ(castelnuovo_branch(7, 4, 42, 30), SplitBranch::ii);
  EXPECT_EQ(split_branch_from_string(to_string(SplitBranch::ii)), SplitBranch::ii);
  EXPECT_THROW(split_branch_from_string("iv"), std::invalid_argument);
}

TEST(HoraceParams, Examples) {
  const auto p = horace_params(3, 6, 21);
  EXPECT_EQ(p.u, 9);
  EXPECT_EQ(p.epsilon, 1u);
  EXPECT_TRUE(p.valid && p.ineq_i && p.ineq_ii);
  EXPECT_FALSE(p.ineq_iii);

  const auto q = horace_params(9, 4, 71);
  EXPECT_EQ(q.u, 54);
  EXPECT_EQ(q.epsilon, 4u);

  const auto r = horace_params(10, 4, 91);
  ASSERT_TRUE(r.ineq_iii);
}

TEST(Certificate, SpaceSextics) {
  const auto cert = build_certificate({3, 6, 21});
  const auto* root = cert.find({3, 6, 21});
  ASSERT_NE(root, nullptr);
  EXPECT_EQ(root->rule, Rule::horace);
  EXPECT_EQ(*root->u, 9);
  EXPECT_EQ(root->children, (std::vector<CaseId>{{2, 6, 9}, {3, 5, 12}, {3, 4, 11}}));
  const auto check = check_certificate(cert);
  EXPECT_TRUE(check.accepted) << check.reason;
  EXPECT_EQ(check.nodes_checked, cert.nodes.size());
}

TEST(Certificate, NineDimensionalQuartics) {
  const auto cert = build_certificate({9, 4, 71});
  const auto* root = cert.find({9, 4, 71});
  ASSERT_NE(root, nullptr);
  EXPECT_EQ(root->rule, Rule::horace);
  EXPECT_EQ(root->children, (std::vector<CaseId>{{8, 4, 54}, {9, 3, 17}, {9, 2, 13}}));
}

TEST(Certificate, TamperedSplitIsRejected) {
  auto cert = build_certificate({3, 6, 21});
  cert.find({3, 6, 21})->u = 8;
  const auto check = check_certificate(cert);
  EXPECT_FALSE(check.accepted);
  ASSERT_TRUE(check.failed);
  EXPECT_EQ(*check.failed, (CaseId{3, 6, 21}));
}

TEST(Certificate, ExceptionalLeafIsRejected) {
  Certificate cert;
  cert.root = {4, 4, 14};
  CertNode node;
  node.id = cert.root;
  node.rule = Rule::base_rank;
  cert.nodes.push_back(node);
  const auto check = check_certificate(cert);
  EXPECT_FALSE(check.accepted);
  EXPECT_EQ(*check.failed, (CaseId{4, 4, 14}));
}

TEST(Certificate, MissingChildIsRejected) {
  auto cert = build_certificate({3, 6, 21});
  cert.nodes.erase(std::remove_if(cert.nodes.begin(), cert.nodes.end(),
                                  [](const CertNode& n) { return n.id == CaseId{2, 6, 9}; }),
                   cert.nodes.end());
  EXPECT_FALSE(check_certificate(cert).accepted);
}

TEST(Certificate, BuildingAnExceptionThrows) {
  EXPECT_THROW(build_certificate({4, 3, 7}), CertificateError);
  try {
    build_certificate({2, 4, 5});
  } catch (const CertificateError& e) {
    EXPECT_EQ(e.stuck(), (CaseId{2, 4, 5}));
  }
}

TEST(Certificate, JsonRoundTrip) {
  const auto cert = build_certificate({4, 5, 21});
  const auto j = cert.to_json();
  EXPECT_EQ(Certificate::from_json(j).to_json(), j);
  EXPECT_EQ(rule_from_string(to_string(Rule::monotone)), Rule::monotone);
  EXPECT_THROW(rule_from_string("GUESS"), std::invalid_argument);
}

TEST(Cubics, FullRankAndInstances) {
  for (unsigned n = 2; n <= 7; ++n) {
    if (n == 4) continue;
    const auto rep = verify_cubics(n);
    EXPECT_TRUE(rep.full) << "n=" << n;
    EXPECT_EQ(rep.delta, space_dimension(n, 3) - (n + 1) * rep.k);
    for (const auto& ic : rep.instances) EXPECT_TRUE(ic.passed) << ic.to_json().dump();
  }
  const auto five = verify_cubics(5);
  EXPECT_EQ(five.k, 9u);
  EXPECT_EQ(five.delta, 2u);
  std::set<std::string> names;
  for (const auto& ic : five.instances) names.insert(ic.name);
  EXPECT_EQ(names, (std::set<std::string>{"three-codim3-spaces", "two-codim3-spaces", "one-codim3-space",
                                          "frame-instance"}));
}

TEST(Cubics, FourSpaceIsTheException) {
  const auto rep = verify_cubics(4, {}, false);
  EXPECT_FALSE(rep.full);
  EXPECT_EQ(rep.main.computed, 34u);
}

TEST(Sweep, SmallRangeAgreesWithExceptionList) {
  const auto rows = sweep(1, 4, 2, 5, {}, 2);
  EXPECT_FALSE(rows.empty());
  std::size_t exceptions = 0;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.agrees) << r.id.to_string();
    exceptions += r.predicted_exception;
  }
  EXPECT_EQ(exceptions, 8u);
  const auto csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,d,k,expected,computed,defect,verdict,seed,prime");
}

TEST(Sweep, ResultsDoNotDependOnThreadCount) {
  const auto a = sweep(2, 4, 3, 5, {}, 1);
  const auto b = sweep(2, 4, 3, 5, {}, 4);
  EXPECT_EQ(sweep_csv(a), sweep_csv(b));
}

TEST(VerifierProperty, HoraceIdentity) {
  for_all(51, 200, [](Gen& g, int) {
    const unsigned n = g.index(2, 12), d = g.index(4, 10);
    const auto [lo, hi] = critical_k(n, d);
    const std::size_t k = g.coin() ? lo : hi;
    const auto p = horace_params(n, d, k);
    EXPECT_LT(p.epsilon, n);
    EXPECT_EQ(static_cast<long long>(n) * p.u + p.epsilon,
              static_cast<long long>(k * (n + 1)) - static_cast<long long>(binomial(n + d - 1, n)));
    EXPECT_EQ(p.ineq_iii.has_value(), d == 4 && n >= 10);
  });
}

TEST(VerifierProperty, CriticalRangeBracketsTheSpace) {
  for_all(52, 200, [](Gen& g, int) {
    const unsigned n = g.index(1, 15), d = g.index(1, 12);
    const auto [lo, hi] = critical_k(n, d);
    const std::size_t space = space_dimension(n, d);
    EXPECT_LE(lo * (n + 1), space);
    EXPECT_GE(hi * (n + 1), space);
    EXPECT_LE(hi - lo, 1u);
  });
}

TEST(VerifierProperty, BuiltCertificatesAreAcceptedAndAvoidExceptions) {
  for_all(53, 12, [](Gen& g, int) {
    const unsigned n = g.index(2, 4), d = g.index(3, 6);
    const auto [lo, hi] = critical_k(n, d);
    const std::size_t k = g.integer(std::max<long>(1, static_cast<long>(lo) - 2), static_cast<long>(hi) + 2);
    const CaseId c{n, d, k};
    if (is_exception(c)) return;
    const auto cert = build_certificate(c);
    for (const auto& node : cert.nodes) EXPECT_FALSE(is_exception(node.id)) << node.id.to_string();
    const auto check = check_certificate(cert);
    EXPECT_TRUE(check.accepted) << c.to_string() << ": " << check.reason;
  });
}

TEST(VerifierProperty, TamperingAnySplitIsCaught) {
  for_all(54, 8, [](Gen& g, int) {
    const unsigned n = g.index(2, 5), d = g.index(4, 7);
    const CaseId c{n, d, critical_k(n, d).second};
    if (is_exception(c)) return;
    auto cert = build_certificate(c);
    std::vector<CertNode*> splits;
    for (auto& node : cert.nodes) {
      if (node.u) splits.push_back(&node);
    }
    if (splits.empty()) return;
    CertNode* victim = splits[g.index(0, splits.size() - 1)];
    *victim->u += g.coin() ? 1 : -1;
    EXPECT_FALSE(check_certificate(cert).accepted) << victim->id.to_string();
  });
}

TEST(VerifierProperty, CaseSeedIsStable) {
  for_all(55, 50, [](Gen& g, int) {
    const CaseId c{g.index(1, 9), g.index(1, 9), g.index(0, 50)};
    const std::uint64_t base = g.integer(0, 1 << 30);
    EXPECT_EQ(case_seed(base, c), case_seed(base, c));
    EXPECT_EQ(sweep_case_options({.seed = base}, c).seed, case_seed(base, c));
  });
}
