#include <gtest/gtest.h>

#include <random>

#include "serret/curves.hpp"

using namespace serret;

namespace {

const PrecisionContext& ctx50() {
  static const PrecisionContext ctx = make_context(50);
  return ctx;
}

Regular regular(const char* a, int k) { return Regular{ExactReal::parse(a), k}; }

}  // namespace

TEST(CurveSpec, Validation) {
  EXPECT_THROW(validate(Erdos{0}), ConfigurationError);
  EXPECT_THROW(validate(Sinusoidal{2, 4}), ConfigurationError);
  EXPECT_THROW(validate(regular("1", 2)), ConfigurationError);
  EXPECT_THROW(validate(regular("-1/2", 2)), ConfigurationError);
  EXPECT_NO_THROW(validate(Sinusoidal{1, 2}));
  EXPECT_THROW(validate(PolyLemniscate{{ComplexCoefficient{ExactReal::integer(1)}}}), ConfigurationError);
  EXPECT_THROW(ExactReal::parse("3/0"), DomainError);
  EXPECT_EQ(ExactReal::parse("4/5").reciprocal().text(), "5/4");
}

TEST(PolarRadius, Examples) {
  const PrecisionScope scope(ctx50());
  EXPECT_EQ(polar_radius(Erdos{1}, BigReal(0), ctx50()).r, BigReal(2));
  const BigReal a("0.37");
  const BigReal r = polar_radius(Regular{ExactReal::parse("0.37"), 2}, BigReal(0), ctx50()).r;
  EXPECT_LT(abs(r * r - (a * a + BigReal(1))), pow10(-48));

  // a = 0.5, k = 3, theta = pi/6: plug back into the defining polynomial.
  const BigReal half(0.5);
  const BigReal theta = pi() / BigReal(6);
  const BigReal rr = polar_radius(regular("1/2", 3), theta, ctx50()).r;
  const BigReal rk = pow(rr, 3L);
  EXPECT_LT(abs(rk - sqrt(BigReal(1) - pow(half, 6L))), pow10(-47));
  const BigReal ak = pow(half, 3L);
  const BigReal residual = rk * rk - BigReal(2) * ak * rk * cos(BigReal(3) * theta) + ak * ak - BigReal(1);
  EXPECT_LT(abs(residual), pow10(-47));
}

TEST(PolarRadius, LeafDomainAndBranches) {
  const PrecisionScope scope(ctx50());
  EXPECT_THROW(polar_radius(Erdos{2}, BigReal(1), ctx50()), DomainError);
  EXPECT_LT(polar_radius(Erdos{2}, pi() / BigReal(4), ctx50()).r, pow10(-30));
  EXPECT_THROW(polar_radius(regular("2", 2), pi() / BigReal(4), ctx50()), DomainError);
  EXPECT_THROW(polar_radius(regular("1/2", 2), BigReal(0), ctx50(), Branch::inner), DomainError);
  const BigReal inner = polar_radius(regular("2", 2), BigReal(0), ctx50(), Branch::inner).r;
  EXPECT_LT(abs(inner * inner - BigReal(3)), pow10(-48));
  EXPECT_THROW(polar_radius(PolyLemniscate{}, BigReal(0), ctx50()), DomainError);
}

TEST(PolarRadius, EvenInTheta) {
  const PrecisionScope scope(ctx50());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 0.5);
  for (const CurveSpec& c : {CurveSpec{Erdos{3}}, CurveSpec{Sinusoidal{1, 2}}, CurveSpec{regular("3/5", 4)}}) {
    for (int i = 0; i < 10; ++i) {
      const BigReal t(dist(rng));
      EXPECT_EQ(polar_radius(c, t, ctx50()).r, polar_radius(c, -t, ctx50()).r);
    }
  }
}

TEST(NormalizedArcIntegral, Examples) {
  const PrecisionScope scope(ctx50());
  EXPECT_LT(abs(normalized_arc_integral(BigReal(2), BigReal(1), ctx50()) - ldexp(pi(), -1)), pow10(-48));
  const BigReal quarter = beta(BigReal(0.5), BigReal(0.25), ctx50()) / BigReal(4);
  EXPECT_LT(abs(normalized_arc_integral(BigReal(4), BigReal(1), ctx50()) - quarter), pow10(-45));
  EXPECT_TRUE(normalized_arc_integral(BigReal(6), BigReal(0), ctx50()).is_zero());
  EXPECT_THROW(normalized_arc_integral(BigReal(6), BigReal(1.5), ctx50()), DomainError);
}

TEST(NormalizedArcIntegral, StrictlyIncreasing) {
  const PrecisionScope scope(ctx50());
  for (const char* two_q : {"6", "1", "2.5"}) {
    BigReal previous(-1);
    for (int i = 0; i <= 10; ++i) {
      const BigReal s = BigReal(i) / BigReal(10);
      const BigReal value = normalized_arc_integral(BigReal(two_q), s, ctx50());
      EXPECT_GT(value, previous) << two_q << " " << i;
      previous = value;
    }
  }
}

TEST(TotalLength, ClosedFormExamples) {
  const PrecisionScope scope(ctx50());
  EXPECT_LT(abs(total_length_closed(Erdos{1}, ctx50()) - ldexp(pi(), 1)), pow10(-48));
  EXPECT_LT(abs(total_length_closed(Sinusoidal{1, 2}, ctx50()) - BigReal(16)), pow10(-47));
  EXPECT_LT(abs(total_length_closed(Sinusoidal{1, 4}, ctx50()) - BigReal(256) / BigReal(3)), pow10(-46));
  EXPECT_THROW(total_length_closed(PolyLemniscate{{ComplexCoefficient{ExactReal::integer(1)},
                                                   ComplexCoefficient{ExactReal::integer(0)}}},
                                   ctx50()),
               DomainError);
}

TEST(TotalLength, QuadratureExamples) {
  const PrecisionScope scope(ctx50());
  const BigReal erdos2 = sqrt(BigReal(2)) * beta(BigReal(0.5), BigReal(0.25), ctx50());
  EXPECT_LT(abs(total_length_quadrature(Erdos{2}, ctx50()) - erdos2), pow10(-45));
  const BigReal e = BigReal(1) / BigReal(3);
  const BigReal h = ldexp(pi(), 1) * hyp2f1(e, e, BigReal(1), pow(BigReal("0.6"), 6L), ctx50());
  EXPECT_LT(abs(total_length_quadrature(regular("0.6", 3), ctx50()) - h), pow10(-45));
  const BigReal half_len = total_length_closed(regular("1/2", 2), ctx50()) / BigReal(2);
  EXPECT_LT(abs(total_length_quadrature(regular("2", 2), ctx50()) - half_len), pow10(-45));
}

TEST(TotalLength, ClosedMatchesQuadratureOnGrid) {
  const PrecisionScope scope(ctx50());
  std::vector<CurveSpec> grid = {Erdos{1}, Erdos{3}, Erdos{5}, Sinusoidal{1, 2}, Sinusoidal{1, 3},
                                 Sinusoidal{3, 2}, Sinusoidal{2, 5}, regular("0.3", 2), regular("4/5", 2),
                                 regular("0.9", 3), regular("0.5", 5), regular("1.25", 2), regular("3", 3)};
  for (const auto& c : grid) {
    const BigReal closed = total_length_closed(c, ctx50());
    const BigReal quad = total_length_quadrature(c, ctx50());
    EXPECT_LT(abs(closed - quad), pow10(-45)) << describe(c);
  }
}

TEST(TotalLength, CassiniThreeRoutes) {
  const PrecisionScope scope(ctx50());
  for (const char* a : {"0.3", "0.6", "0.9"}) {
    const BigReal av(a);
    const BigReal angular = total_length_quadrature(regular(a, 2), ctx50());
    const BigReal elliptic = cassini_length_elliptic(av, ctx50());
    const BigReal hyper = regular_length_hypergeometric(av, 2, ctx50());
    EXPECT_LT(abs(angular - elliptic), pow10(-45)) << a;
    EXPECT_LT(abs(hyper - elliptic), pow10(-45)) << a;
  }
}

TEST(TotalLength, MaximumAtErdos) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  for (int k = 2; k <= 4; ++k) {
    const BigReal top = total_length_closed(Erdos{k}, ctx);
    std::vector<BigReal> values;
    for (int i = 1; i <= 9; ++i) {
      values.push_back(total_length_closed(Regular{ExactReal{std::to_string(i), "10"}, k}, ctx));
      EXPECT_LT(values.back(), top);
    }
    for (std::size_t i = 1; i < values.size(); ++i) EXPECT_GT(values[i], values[i - 1]);
    for (std::size_t i = 2; i < values.size(); ++i) {
      EXPECT_GT(values[i] - ldexp(values[i - 1], 1) + values[i - 2], BigReal(0));
    }
    for (int i = 11; i <= 20; ++i) {
      EXPECT_LT(total_length_closed(Regular{ExactReal{std::to_string(i), "10"}, k}, ctx), top);
    }
  }
}

TEST(Cassini, ReducedIntegralExamples) {
  const PrecisionScope scope(ctx50());
  const BigReal a(0.8);
  EXPECT_TRUE(cassini_reduced_integral(a, cassini_lower_limit(a), ctx50()).is_zero());
  const BigReal full = cassini_reduced_integral(a, BigReal(1), ctx50());
  EXPECT_LT(abs(BigReal(2) / a * full - cassini_length_elliptic(a, ctx50())), pow10(-45));
  const BigReal partial = cassini_reduced_integral(a, BigReal(0.9), ctx50());
  EXPECT_GT(partial.sign(), 0);
  EXPECT_LT(partial, full);
  EXPECT_THROW(cassini_reduced_integral(a, BigReal(0.1), ctx50()), DomainError);
}

TEST(Cassini, VOfU) {
  const PrecisionScope scope(ctx50());
  const BigReal a(0.8);
  EXPECT_LT(abs(v_of_u(ldexp(pi(), -1), a, ctx50()) - BigReal(1)), pow10(-48));
  EXPECT_LT(abs(v_of_u(BigReal(0), a, ctx50()) - cassini_lower_limit(a)), pow10(-48));
  const BigReal u(0.7);
  EXPECT_LT(abs(cos_u_of_v(v_of_u(u, a, ctx50()), a, ctx50()) - cos(u)), pow10(-48));
}

TEST(Cassini, ReducedIntegralIncreasesInU) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  const BigReal a(0.8);
  BigReal previous(-1);
  for (int i = 0; i <= 8; ++i) {
    const BigReal u = ldexp(pi(), -1) * BigReal(i) / BigReal(8);
    const BigReal value = cassini_reduced_integral(a, v_of_u(u, a, ctx), ctx);
    EXPECT_GT(value, previous);
    previous = value;
  }
}
