#include <gtest/gtest.h>

#include "ahlab/schemes.hpp"
#include "generators.hpp"

using namespace ahlab;
using ahlab::testing::for_all;
using ahlab::testing::Gen;

namespace {

using QV = std::vector<mpq_class>;

QV qv(std::initializer_list<long> xs) {
  QV v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

template <class F>
SchemeSpec<F> doubles(const F& f, unsigned n, std::size_t k, Rng& rng) {
  SchemeSpec<F> s;
  s.n = n;
  for (std::size_t i = 0; i < k; ++i) s.add(DoublePoint<F>{random_point(f, n, rng)});
  return s;
}

}  // namespace

TEST(ConditionMatrix, DoublePointAtCoordinateVertex) {
  const Rationals q;
  SchemeSpec<Rationals> s;
  s.n = 2;
  s.add(DoublePoint<Rationals>{qv({1, 0, 0})});
  const auto m = condition_matrix(q, s, 2);
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 6u);
  EXPECT_EQ(rank(m), 3u);
}

TEST(ConditionMatrix, FiveDoublePointsOnPlaneQuartics) {
  const PrimeField f;
  Rng rng(3);
  const auto s = doubles(f, 2, 5, rng);
  const auto m = condition_matrix(f, s, 4);
  EXPECT_EQ(m.rows(), 15u);
  EXPECT_EQ(rank(m), 14u);
}

TEST(ConditionMatrix, ThreeCodimThreeSpacesInP5) {
  const PrimeField f;
  Rng rng(4);
  SchemeSpec<PrimeField> s;
  s.n = 5;
  for (int i = 0; i < 3; ++i) s.add(ContainLinear<PrimeField>{random_subspace(f, 5, 3, rng).forms});
  const auto m = condition_matrix(f, s, 3);
  EXPECT_EQ(m.cols(), 56u);
  EXPECT_EQ(kernel_basis(m).size(), 26u);
}

TEST(TraceResidual, SplitsDoublePointsOnHyperplane) {
  const Rationals q;
  Rng rng(5);
  const auto h = coordinate_hyperplane(q, 3, 3);
  SchemeSpec<Rationals> s;
  s.n = 3;
  for (int i = 0; i < 4; ++i) {
    auto p = random_point(q, 2, rng);
    p.push_back(0);
    s.add(DoublePoint<Rationals>{p});
  }
  for (int i = 0; i < 4; ++i) {
    auto p = random_point(q, 3, rng);
    if (sgn(p[3]) == 0) p[3] = 1;
    s.add(DoublePoint<Rationals>{p});
  }
  const auto tr = trace_residual(q, s, h);
  const auto ts = summarize(tr.trace), rs = summarize(tr.residual);
  EXPECT_EQ(tr.trace.n, 2u);
  EXPECT_EQ(ts.double_points, 4u);
  EXPECT_EQ(rs.double_points, 4u);
  EXPECT_EQ(rs.simple_points, 4u);
  EXPECT_EQ(scheme_degree(tr.trace) + scheme_degree(tr.residual), scheme_degree(s));
}

TEST(TraceResidual, PointsOffHyperplaneLeaveEmptyTrace) {
  const Rationals q;
  SchemeSpec<Rationals> s;
  s.n = 3;
  s.add(DoublePoint<Rationals>{qv({0, 0, 0, 1})});
  s.add(SimplePoint<Rationals>{qv({1, 1, 1, 1})});
  const auto tr = trace_residual(q, s, coordinate_hyperplane(q, 3, 3));
  EXPECT_TRUE(tr.trace.components.empty());
  EXPECT_EQ(tr.residual.components.size(), 2u);
}

TEST(TraceResidual, TraceDoublePointBecomesDoubleOnHyperplane) {
  const Rationals q;
  SchemeSpec<Rationals> s;
  s.n = 3;
  s.add(TraceDoublePoint<Rationals>{qv({1, 2, 3, 0}), qv({0, 0, 0, 1})});
  const auto tr = trace_residual(q, s, coordinate_hyperplane(q, 3, 3));
  EXPECT_EQ(scheme_degree(tr.trace), 3u);
  EXPECT_EQ(scheme_degree(tr.residual), 0u);
}

TEST(TraceResidual, LinearContainmentIsUnsupported) {
  const Rationals q;
  SchemeSpec<Rationals> s;
  s.n = 3;
  s.add(ContainLinear<Rationals>{{qv({1, 0, 0, 0})}});
  EXPECT_THROW(trace_residual(q, s, coordinate_hyperplane(q, 3, 3)), UnsupportedComponent);
}

TEST(SchemeDegree, Examples) {
  const Rationals q;
  Rng rng(6);
  EXPECT_EQ(scheme_degree(doubles(q, 3, 21, rng)), 84u);

  auto s = doubles(q, 3, 11, rng);
  s.add(TraceDoublePoint<Rationals>{qv({1, 2, 3, 0}), qv({0, 0, 0, 1})});
  EXPECT_EQ(scheme_degree(s), 47u);

  SchemeSpec<Rationals> j;
  j.n = 3;
  j.add(Jet<Rationals>{qv({1, 0, 0, 0}), {qv({0, 1, 0, 0})}});
  EXPECT_EQ(scheme_degree(j), 2u);

  j.add(ContainLinear<Rationals>{{qv({1, 0, 0, 0})}});
  EXPECT_THROW(scheme_degree(j), std::invalid_argument);
}

TEST(Validate, RejectsBadComponents) {
  const Rationals q;
  SchemeSpec<Rationals> s;
  s.n = 2;
  s.add(Jet<Rationals>{qv({1, 0, 0}), {qv({0, 1, 0}), qv({0, 2, 0})}});
  EXPECT_THROW(validate(q, s), std::invalid_argument);

  SchemeSpec<Rationals> t;
  t.n = 2;
  t.add(TraceDoublePoint<Rationals>{qv({1, 0, 0}), qv({1, 0, 0})});
  EXPECT_THROW(validate(q, t), std::invalid_argument);

  SchemeSpec<Rationals> u;
  u.n = 2;
  u.add(DoublePoint<Rationals>{qv({1, 0})});
  EXPECT_THROW(validate(q, u), std::invalid_argument);
}

TEST(SchemeJson, RoundTrip) {
  const Rationals q;
  Rng rng(7);
  auto s = doubles(q, 3, 2, rng);
  s.add(SimplePoint<Rationals>{qv({1, 1, 1, 1})});
  s.add(TraceDoublePoint<Rationals>{qv({1, 2, 3, 0}), qv({0, 0, 0, 1})});
  s.add(Jet<Rationals>{qv({1, 0, 0, 0}), {qv({0, 1, 0, 0})}});
  s.add(ContainLinear<Rationals>{{qv({1, 0, 0, 0}), qv({0, 1, 0, 0})}});
  const auto j = scheme_to_json(s);
  const auto back = scheme_from_json(j);
  EXPECT_EQ(scheme_to_json(back), j);
  EXPECT_EQ(condition_matrix(q, back, 3).entries(), condition_matrix(q, s, 3).entries());
}

TEST(SchemeJson, MalformedInputThrows) {
  EXPECT_THROW(scheme_from_json(nlohmann::json::array()), std::invalid_argument);
  EXPECT_THROW(scheme_from_json({{"n", 2}, {"components", {{{"type", "triple"}, {"point", {1, 0, 0}}}}}}),
               std::invalid_argument);
}

TEST(SchemeProperty, RowsEqualDegree) {
  const PrimeField f;
  for_all(31, 40, [&](Gen& g, int) {
    const unsigned n = g.index(1, 4), d = g.index(1, 5);
    SchemeSpec<PrimeField> s;
    s.n = n;
    const unsigned parts = g.index(0, 5);
    for (unsigned i = 0; i < parts; ++i) {
      const auto p = random_point(f, n, g.rng());
      switch (g.index(0, 2)) {
        case 0: s.add(DoublePoint<PrimeField>{p}); break;
        case 1: s.add(SimplePoint<PrimeField>{p}); break;
        default: {
          auto v = random_point(f, n, g.rng());
          if (rank(Matrix<PrimeField>::from_rows(f, n + 1, {p, v})) < 2) continue;
          s.add(Jet<PrimeField>{p, {v}});
        }
      }
    }
    EXPECT_EQ(condition_matrix(f, s, d).rows(), scheme_degree(s));
  });
}

TEST(SchemeProperty, KernelFormsAreSingularAtDoublePoints) {
  const Rationals q;
  for_all(32, 25, [&](Gen& g, int) {
    const unsigned n = g.index(1, 3), d = g.index(2, 4);
    const auto s = doubles(q, n, g.index(1, 3), g.rng());
    const auto ker = kernel_basis(condition_matrix(q, s, d));
    for (const auto& c : ker) {
      const Form<Rationals> form{n, d, c};
      for (const auto& comp : s.components) {
        const auto& p = std::get<DoublePoint<Rationals>>(comp).point;
        EXPECT_EQ(evaluate(q, form, p), 0);
        EXPECT_TRUE(ahlab::testing::is_zero_vector(q, gradient_at(q, form, p)));
      }
    }
  });
}

TEST(SchemeProperty, TraceResidualDegreeBookkeeping) {
  const PrimeField f;
  for_all(33, 40, [&](Gen& g, int) {
    const unsigned n = g.index(2, 5);
    const auto h = coordinate_hyperplane(f, n, n);
    SchemeSpec<PrimeField> s;
    s.n = n;
    const unsigned k = g.index(1, 6);
    for (unsigned i = 0; i < k; ++i) {
      auto p = random_point(f, n, g.rng());
      const bool on = g.coin();
      if (on) p[n] = 0;
      if (ahlab::testing::is_zero_vector(f, p)) continue;
      if (g.coin()) {
        s.add(DoublePoint<PrimeField>{p});
      } else {
        s.add(SimplePoint<PrimeField>{p});
      }
    }
    const auto tr = trace_residual(f, s, h);
    EXPECT_EQ(scheme_degree(tr.trace) + scheme_degree(tr.residual), scheme_degree(s));
  });
}

TEST(SchemeProperty, LinearContainmentKernelVanishesOnSubspace) {
  const PrimeField f;
  for_all(34, 20, [&](Gen& g, int) {
    const unsigned n = g.index(2, 5), codim = g.index(1, n - 1), d = g.index(1, 3);
    const auto l = random_subspace(f, n, codim, g.rng());
    SchemeSpec<PrimeField> s;
    s.n = n;
    s.add(ContainLinear<PrimeField>{l.forms});
    const auto ker = kernel_basis(condition_matrix(f, s, d));
    EXPECT_EQ(ker.size(), binomial(n + d, n) - binomial(n - codim + d, n - codim));
    for (const auto& c : ker) {
      const Form<PrimeField> form{n, d, c};
      for (int t = 0; t < 50; ++t) EXPECT_EQ(evaluate(f, form, random_point_in(f, l.basis, g.rng())), 0u);
    }
  });
}
