#include <gtest/gtest.h>

#include <algorithm>

#include "ahlab/witness.hpp"
#include "generators.hpp"

using namespace ahlab;
using ahlab::testing::for_all;
using ahlab::testing::Gen;

namespace {

std::vector<QVec> random_points(Gen& g, unsigned n, std::size_t k, long bound = 20) {
  std::vector<QVec> pts;
  for (std::size_t i = 0; i < k; ++i) pts.push_back(g.nonzero_vector(n + 1, bound));
  return pts;
}

Form<Rationals> var(unsigned n, unsigned i) {
  QVec c(n + 1, 0);
  c[i] = 1;
  return linear_form<Rationals>(c);
}

// det [x_{i+j}] for 0 <= i, j <= 2 in P^4.
Form<Rationals> hankel_det3() {
  const Rationals q;
  const auto m = [](unsigned i, unsigned j) { return var(4, i + j); };
  const auto term = [&](unsigned a, unsigned b, unsigned c) {
    return multiply(q, multiply(q, m(0, a), m(1, b)), m(2, c));
  };
  const auto pos = add(q, term(0, 1, 2), add(q, term(1, 2, 0), term(2, 0, 1)));
  const auto neg = add(q, term(2, 1, 0), add(q, term(0, 2, 1), term(1, 0, 2)));
  return add(q, pos, scale(q, neg, mpq_class(-1)));
}

Form<Rationals> quartic_power_sum(const std::vector<QVec>& ls) {
  std::vector<PowerTerm<Rationals>> terms;
  for (const auto& l : ls) terms.push_back({1, l});
  return power_sum_expand(Rationals{}, terms, 4);
}

}  // namespace

TEST(Witness, ExceptionalCasesHaveTheKnownDefect) {
  const std::vector<std::pair<CaseId, std::size_t>> cases{
      {{2, 4, 5}, 1}, {{3, 4, 9}, 1}, {{4, 4, 14}, 1}, {{4, 3, 7}, 1}, {{3, 2, 2}, 1}, {{5, 2, 4}, 3}};
  for (const auto& [id, defect] : cases) {
    const auto ex = witness_for_exception(id, 7);
    EXPECT_TRUE(ex.witness.verified) << id.to_string();
    EXPECT_TRUE(ex.in_kernel) << id.to_string();
    EXPECT_EQ(ex.defect, defect) << id.to_string();
    EXPECT_EQ(ex.ideal_dim, ex.expected_ideal_dim + ex.defect) << id.to_string();
    EXPECT_EQ(ex.witness.points.size(), id.k);
    EXPECT_TRUE(singular_at_all(ex.witness.form, ex.witness.points));
  }
}

TEST(Witness, ReasonsMatchTheExceptionList) {
  EXPECT_EQ(witness_for_exception({2, 4, 5}, 1).reason, ExceptionReason::double_quadric);
  EXPECT_EQ(witness_for_exception({4, 3, 7}, 1).reason, ExceptionReason::rnc_secant_cubic);
  EXPECT_EQ(witness_for_exception({4, 2, 3}, 1).reason, ExceptionReason::quadric_cones);
  EXPECT_EQ(witness_for_exception({4, 3, 7}, 1).witness.kernel_dim, 1u);
  EXPECT_THROW(witness_for_exception({3, 6, 21}, 1), WitnessError);
}

TEST(Witness, DoubleConicThroughFivePoints) {
  Gen g(3);
  const auto pts = random_points(g, 2, 5);
  const auto w = double_hypersurface_witness(pts, 2, 2);
  EXPECT_TRUE(w.verified);
  EXPECT_EQ(w.kernel_dim, 1u);
  EXPECT_EQ(w.form.d, 4u);
  EXPECT_TRUE(singular_at_all(w.form, pts));
}

TEST(Witness, NoConicThroughSevenPoints) {
  Gen g(4);
  EXPECT_THROW(double_hypersurface_witness(random_points(g, 2, 7), 2, 2), WitnessError);
}

TEST(RationalNormalCurve, StandardCurveMembership) {
  const auto c = standard_rnc(4);
  EXPECT_TRUE(on_curve(c, {1, 2, 4, 8, 16}));
  EXPECT_FALSE(on_curve(c, {1, 2, 4, 8, 17}));
  EXPECT_TRUE(on_curve(c, {0, 0, 0, 0, 1}));
  EXPECT_EQ(c.at(1, 3), (QVec{1, 3, 9, 27, 81}));
}

TEST(RationalNormalCurve, ConicThroughFivePoints) {
  Gen g(5);
  const auto pts = random_points(g, 2, 5);
  const auto c = rnc_through(pts);
  EXPECT_EQ(c.n, 2u);
  for (const auto& p : pts) EXPECT_TRUE(on_curve(c, p));
  ASSERT_EQ(c.parameters.size(), 5u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto x = c.at(c.parameters[i].first, c.parameters[i].second);
    EXPECT_TRUE(proportional(Rationals{}, linear_form<Rationals>(x), linear_form<Rationals>(pts[i])));
  }
  EXPECT_FALSE(on_curve(c, g.nonzero_vector(3, 50)));
}

TEST(RationalNormalCurve, QuarticThroughSevenPoints) {
  Gen g(6);
  const auto pts = random_points(g, 4, 7);
  const auto c = rnc_through(pts);
  for (const auto& p : pts) EXPECT_TRUE(on_curve(c, p));
  EXPECT_FALSE(on_curve(c, g.nonzero_vector(5, 50)));
}

TEST(RationalNormalCurve, DegenerateInputThrows) {
  std::vector<QVec> pts{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  EXPECT_THROW(rnc_through(pts), WitnessError);
  EXPECT_THROW(rnc_through({{1, 0, 0}, {0, 1, 0}}), std::exception);
}

TEST(RationalNormalCurve, StandardCubicIsTheHankelDeterminant) {
  const auto w = singular_cubic_along_rnc(standard_rnc(4));
  EXPECT_TRUE(w.verified);
  EXPECT_EQ(w.kernel_dim, 1u);
  EXPECT_TRUE(proportional(Rationals{}, w.form, hankel_det3()));
}

TEST(RationalNormalCurve, CubicAlongCurveThroughSevenPoints) {
  Gen g(8);
  const auto pts = random_points(g, 4, 7);
  const auto w = singular_cubic_along_rnc(rnc_through(pts));
  EXPECT_TRUE(w.verified);
  EXPECT_TRUE(singular_at_all(w.form, pts));
}

TEST(Clebsch, SumsOfFourthPowers) {
  const Rationals q;
  Gen g(9);
  std::vector<QVec> ls;
  for (int i = 0; i < 5; ++i) ls.push_back(g.nonzero_vector(3));
  EXPECT_EQ(clebsch_determinant(q, quartic_power_sum(ls)), 0);
  ls.push_back(g.nonzero_vector(3));
  EXPECT_NE(clebsch_determinant(q, quartic_power_sum(ls)), 0);
  EXPECT_EQ(clebsch_determinant(q, quartic_power_sum({{1, 0, 0}})), 0);
  EXPECT_THROW(clebsch_determinant(q, g.form(2, 3)), std::invalid_argument);
}

TEST(Clebsch, PrimeFieldAgreesWithRationals) {
  const Rationals q;
  const PrimeField f;
  Gen g(10);
  const auto form = g.form(2, 4);
  EXPECT_EQ(f.from_rational(clebsch_determinant(q, form)), clebsch_determinant(f, convert_form(f, form)));
}

TEST(WitnessProperty, CurveDoesNotDependOnPointOrder) {
  for_all(61, 8, [](Gen& g, int) {
    const unsigned n = g.index(2, 4);
    auto pts = random_points(g, n, n + 3);
    const auto a = rnc_through(pts);
    for (std::size_t i = pts.size() - 1; i > 0; --i) std::swap(pts[i], pts[g.index(0, i)]);
    const auto b = rnc_through(pts);
    for (int t = 0; t < 5; ++t) {
      const auto x = a.at(g.rational(), g.rational());
      if (ahlab::testing::is_zero_vector(Rationals{}, x)) continue;
      EXPECT_TRUE(on_curve(b, x));
    }
  });
}

TEST(WitnessProperty, DoubleQuadricWitnessIsInKernel) {
  for_all(62, 6, [](Gen& g, int) {
    const auto ex = witness_for_exception({3, 4, 9}, g.integer(1, 1 << 20));
    EXPECT_TRUE(ex.in_kernel);
    EXPECT_EQ(ex.defect, 1u);
  });
}

TEST(WitnessProperty, ClebschInvariantUnderPermutation) {
  const Rationals q;
  for_all(63, 20, [&](Gen& g, int) {
    const auto form = g.form(2, 4);
    std::vector<unsigned> perm{0, 1, 2};
    for (unsigned i = 2; i > 0; --i) std::swap(perm[i], perm[g.index(0, i)]);
    std::vector<QVec> sub(3, QVec(3, 0));
    for (unsigned i = 0; i < 3; ++i) sub[i][perm[i]] = 1;
    EXPECT_EQ(clebsch_determinant(q, substitute(q, form, sub)), clebsch_determinant(q, form));
  });
}
