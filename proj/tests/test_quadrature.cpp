#include <gtest/gtest.h>

#include "serret/quadrature.hpp"
#include "serret/quadrature_checks.hpp"
#include "serret/specfun.hpp"

using namespace serret;

namespace {

// 1/sqrt(1 - s^m) with 1 - s^m formed from the right-endpoint distance.
Integrand inverse_sqrt_one_minus_power(long m, long numerator_power = 0) {
  return [m, numerator_power](const Abscissa& s) {
    BigReal acc(1);
    for (long j = 1; j < m; ++j) acc = acc * s.x + BigReal(1);
    return pow(s.x, numerator_power) / sqrt(s.from_right * acc);
  };
}

}  // namespace

TEST(TanhSinh, Arcsine) {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const auto r = tanh_sinh(inverse_sqrt_one_minus_power(2), BigReal(0), BigReal(1), ctx);
  const BigReal truth = ldexp(pi(), -1);
  EXPECT_LT(abs(r.value - truth), pow10(-48));
  EXPECT_GE(r.error_estimate.sign(), 0);
  EXPECT_LE(abs(r.value - truth), BigReal(10) * r.error_estimate);
  EXPECT_GE(r.levels_used, 3);
}

TEST(TanhSinh, CorpusAgainstBeta) {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const auto quarter = tanh_sinh(inverse_sqrt_one_minus_power(4), BigReal(0), BigReal(1), ctx);
  const BigReal t1 = beta(BigReal(0.5), BigReal(0.25), ctx) / BigReal(4);
  EXPECT_LT(abs(quarter.value - t1), pow10(-45));
  EXPECT_LE(abs(quarter.value - t1), BigReal(10) * quarter.error_estimate);

  const auto sixth = tanh_sinh(inverse_sqrt_one_minus_power(6, 1), BigReal(0), BigReal(1), ctx);
  const BigReal t2 = beta(BigReal(0.5), BigReal(1) / BigReal(3), ctx) / BigReal(6);
  EXPECT_LT(abs(sixth.value - t2), pow10(-45));
  EXPECT_LE(abs(sixth.value - t2), BigReal(10) * sixth.error_estimate);
}

TEST(TanhSinh, NeverEvaluatesEndpoints) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  const Integrand f = [](const Abscissa& t) {
    EXPECT_GT(t.from_left.sign(), 0);
    EXPECT_GT(t.from_right.sign(), 0);
    return log(t.from_left) * log(t.from_right);
  };
  // int_0^1 log t log(1-t) dt = 2 - pi^2/6
  const BigReal value = integrate(f, BigReal(0), BigReal(1), ctx);
  EXPECT_LT(abs(value - (BigReal(2) - pi() * pi() / BigReal(6))), pow10(-28));
}

TEST(TanhSinh, Errors) {
  const auto ctx = make_context(30);
  const PrecisionScope scope(ctx);
  EXPECT_THROW(integrate([](const Abscissa&) { return BigReal(1); }, BigReal(1), BigReal(0), ctx), DomainError);

  const Integrand infinite = [](const Abscissa& t) {
    BigReal y;
    mpfr_set_inf(y.get(), 1);
    return t.x < BigReal(0.5) ? BigReal(1) : y;
  };
  EXPECT_THROW(integrate(infinite, BigReal(0), BigReal(1), ctx), IntegrandError);

  // 1/t has a non-integrable endpoint singularity; refinement never settles.
  const Integrand divergent = [](const Abscissa& t) { return BigReal(1) / t.from_left; };
  try {
    integrate(divergent, BigReal(0), BigReal(1), ctx, TanhSinhOptions{6, 3});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_FALSE(e.best_estimate().empty());
  }
}

TEST(TanhSinh, Linearity) {
  const auto ctx = make_context(40);
  const PrecisionScope scope(ctx);
  const BigReal c("2.718281828");
  const Integrand f = inverse_sqrt_one_minus_power(6);
  const Integrand g = [&](const Abscissa& s) { return c * f(s); };
  const auto rf = tanh_sinh(f, BigReal(0), BigReal(1), ctx);
  const auto rg = tanh_sinh(g, BigReal(0), BigReal(1), ctx);
  EXPECT_LE(abs(rg.value - c * rf.value), rg.error_estimate + c * rf.error_estimate);
}

TEST(TanhSinh, IntervalAdditivity) {
  const auto ctx = make_context(40);
  const PrecisionScope scope(ctx);
  const Integrand f = [](const Abscissa& t) { return exp(t.x) / sqrt(t.from_left); };
  const auto whole = tanh_sinh(f, BigReal(0), BigReal(2), ctx);
  const Integrand g = [](const Abscissa& t) { return exp(t.x) / sqrt(t.x); };
  const auto left = tanh_sinh(f, BigReal(0), BigReal(0.75), ctx);
  const auto right = tanh_sinh(g, BigReal(0.75), BigReal(2), ctx);
  EXPECT_LE(abs(whole.value - left.value - right.value),
            whole.error_estimate + left.error_estimate + right.error_estimate);
}

TEST(TanhSinh, LevelErrorsDecreaseOnCorpus) {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const BigReal truth = beta(BigReal(0.5), BigReal(0.25), ctx) / BigReal(4);
  const auto levels = tanh_sinh_levels(inverse_sqrt_one_minus_power(4), BigReal(0), BigReal(1), ctx, 8);
  const BigReal floor_error = pow10(-55);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const BigReal e0 = abs(levels[i] - truth);
    const BigReal e1 = abs(levels[i + 1] - truth);
    if (e0 < floor_error) break;
    EXPECT_LE(e1, e0) << "level " << i + 1;
  }
}

TEST(BetaIntegralCheck, ExamplesAndFullGrid) {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  EXPECT_LT(beta_integral_check(1, 0, ctx), pow10(-45));
  EXPECT_LT(beta_integral_check(2, 0, ctx), pow10(-45));
  EXPECT_LT(beta_integral_check(5, 3, ctx), pow10(-45));
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i <= n - 2; ++i) EXPECT_LT(beta_integral_check(n, i, ctx), pow10(-45)) << n << "," << i;
  }
  EXPECT_THROW(beta_integral_check(3, 3, ctx), DomainError);
  EXPECT_THROW(beta_integral_check(0, 0, ctx), DomainError);
}
