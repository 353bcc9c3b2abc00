#include <gtest/gtest.h>

#include "ahlab/interpolation.hpp"
#include "generators.hpp"

using namespace ahlab;
using ahlab::testing::for_all;
using ahlab::testing::Gen;

TEST(Hilbert, PlaneQuarticsThroughFiveDoublePoints) {
  const auto r = hilbert_double_points(2, 4, 5);
  EXPECT_EQ(r.space_dim, 15u);
  EXPECT_EQ(r.expected, 15u);
  EXPECT_EQ(r.computed, 14u);
  EXPECT_EQ(r.defect, 1u);
  EXPECT_EQ(r.verdict, Verdict::defective_evidence);
  EXPECT_EQ(r.certification, Certification::evidence_only);
  EXPECT_TRUE(r.retried);
}

TEST(Hilbert, SpaceSexticsAtTheTie) {
  const auto r = hilbert_double_points(3, 6, 21);
  EXPECT_EQ(r.computed, 84u);
  EXPECT_EQ(r.defect, 0u);
  EXPECT_EQ(r.verdict, Verdict::independent);
  EXPECT_EQ(r.certification, Certification::char0_lower_bound_certified);
  EXPECT_FALSE(r.retried);
  EXPECT_EQ(hilbert_double_points(3, 6, 22).verdict, Verdict::fills);
}

TEST(Hilbert, TieCountsAsIndependent) {
  const auto r = hilbert_double_points(1, 3, 2);
  EXPECT_EQ(r.degree, 4u);
  EXPECT_EQ(r.space_dim, 4u);
  EXPECT_EQ(r.verdict, Verdict::independent);
}

TEST(Hilbert, ExactOverRationals) {
  HilbertOptions opt;
  opt.field = FieldConfig::rationals();
  const auto r = hilbert_double_points(2, 3, 3, opt);
  EXPECT_EQ(r.computed, 9u);
  EXPECT_EQ(r.certification, Certification::exact_over_q);
}

TEST(Hilbert, RejectsBadOptions) {
  HilbertOptions opt;
  opt.trials = 0;
  EXPECT_THROW(hilbert_double_points(2, 3, 1, opt), std::invalid_argument);
  EXPECT_THROW(hilbert_double_points(2, 0, 1), std::invalid_argument);
}

TEST(Hilbert, ReportJsonRoundTrip) {
  const auto r = hilbert_double_points(3, 4, 9);
  const auto back = HilbertReport::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_EQ(back.computed, 34u);
}

TEST(ExpectedCodim, Examples) {
  EXPECT_EQ(expected_codim(2, 4, 5), 15u);
  EXPECT_EQ(expected_codim(3, 6, 21), 84u);
  EXPECT_EQ(expected_codim(4, 3, 7), 35u);
  EXPECT_EQ(expected_codim(4, 3, 6), 30u);
  EXPECT_EQ(space_dimension(3, 6), 84u);
}

TEST(SecantDimension, Examples) {
  EXPECT_EQ(secant_dimension(2, 4, 5).dimension, 13);
  EXPECT_EQ(secant_dimension(2, 4, 5).expected_dimension, 14);
  EXPECT_EQ(secant_dimension(3, 4, 1).dimension, 3);
  const auto s = secant_dimension(3, 4, 7);
  EXPECT_EQ(s.dimension, 27);
  EXPECT_EQ(secant_dimension(4, 3, 7).dimension, 33);
  EXPECT_EQ(secant_dimension(3, 4, 9).dimension, 33);
  EXPECT_EQ(secant_dimension(3, 4, 9).ambient_dimension, 34);
}

TEST(Terracini, JacobianMatchesTangentRank) {
  for (const auto& [n, d, k, want] : std::vector<std::tuple<unsigned, unsigned, std::size_t, std::size_t>>{
           {2, 4, 5, 14}, {1, 3, 2, 4}, {4, 3, 7, 34}, {2, 3, 3, 9}}) {
    const auto t = terracini_jacobian_rank(n, d, k, 17);
    EXPECT_EQ(t.jacobian_rank, want) << n << " " << d << " " << k;
    EXPECT_EQ(t.tangent_rank, want) << n << " " << d << " " << k;
    EXPECT_EQ(t.rows, k * (n + 1));
  }
}

TEST(Castelnuovo, EmptySchemeIsPascal) {
  const PrimeField f;
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned d = 1; d <= 5; ++d) {
      SchemeSpec<PrimeField> s;
      s.n = n;
      const auto b = castelnuovo_upper_bound(f, s, coordinate_hyperplane(f, n, n), d);
      EXPECT_EQ(b.upper_bound, b.space_dim);
      EXPECT_EQ(b.h_lower, 0u);
    }
  }
}

TEST(Castelnuovo, DoublePointsSplitByHyperplane) {
  const PrimeField f;
  Rng rng(8);
  SchemeSpec<PrimeField> s;
  s.n = 3;
  for (int i = 0; i < 3; ++i) {
    auto p = random_point(f, 2, rng);
    p.push_back(0);
    s.add(DoublePoint<PrimeField>{p});
  }
  for (int i = 0; i < 2; ++i) s.add(DoublePoint<PrimeField>{random_point(f, 3, rng)});
  const auto b = castelnuovo_upper_bound(f, s, coordinate_hyperplane(f, 3, 3), 3);
  EXPECT_EQ(b.trace_dim, 1u);
  EXPECT_EQ(b.residual_dim, 0u);
  EXPECT_GE(b.upper_bound, ideal_dimension(f, s, 3));
}

TEST(InterpolationProperty, MonotoneInNumberOfPoints) {
  for_all(41, 25, [](Gen& g, int) {
    const unsigned n = g.index(1, 4), d = g.index(2, 5);
    const std::size_t k = g.index(1, 8);
    HilbertOptions opt;
    opt.seed = g.integer(1, 1000000);
    const auto a = hilbert_double_points(n, d, k, opt).computed;
    const auto b = hilbert_double_points(n, d, k + 1, opt).computed;
    EXPECT_LE(a, b);
  });
}

TEST(InterpolationProperty, CastelnuovoInequality) {
  const PrimeField f;
  for_all(42, 25, [&](Gen& g, int) {
    const unsigned n = g.index(2, 4), d = g.index(2, 5);
    const auto h = coordinate_hyperplane(f, n, n);
    SchemeSpec<PrimeField> s;
    s.n = n;
    const unsigned on = g.index(0, 5), off = g.index(0, 5);
    for (unsigned i = 0; i < on; ++i) {
      auto p = random_point(f, n - 1, g.rng());
      p.push_back(0);
      s.add(DoublePoint<PrimeField>{p});
    }
    for (unsigned i = 0; i < off; ++i) s.add(DoublePoint<PrimeField>{random_point(f, n, g.rng())});
    const auto b = castelnuovo_upper_bound(f, s, h, d);
    const auto dim = ideal_dimension(f, s, d);
    EXPECT_LE(dim, b.upper_bound);
    EXPECT_LE(b.h_lower, b.space_dim - dim);
  });
}

TEST(InterpolationProperty, TerraciniIdentity) {
  for_all(43, 20, [](Gen& g, int) {
    const unsigned n = g.index(1, 4), d = g.index(2, 4);
    const std::size_t k = g.index(1, 8);
    const auto t = terracini_jacobian_rank(n, d, k, g.integer(1, 1000000));
    EXPECT_EQ(t.jacobian_rank, t.tangent_rank);
  });
}

TEST(InterpolationProperty, ProjectiveLineHasNoDefects) {
  for (unsigned d = 1; d <= 12; ++d) {
    for (std::size_t k = 1; k <= d + 2; ++k) {
      const auto r = hilbert_double_points(1, d, k);
      EXPECT_EQ(r.defect, 0u) << "d=" << d << " k=" << k;
    }
  }
}

TEST(InterpolationProperty, QuadricFormula) {
  for (unsigned n = 1; n <= 8; ++n) {
    for (std::size_t k = 1; k <= n + 1; ++k) {
      const auto r = hilbert_double_points(n, 2, k);
      const std::size_t free_vars = n + 1 - k;
      EXPECT_EQ(r.computed, space_dimension(n, 2) - free_vars * (free_vars + 1) / 2) << "n=" << n << " k=" << k;
    }
  }
}
