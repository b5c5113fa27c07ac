#pragma once

#include "serret/error.hpp"
#include "serret/numkernel.hpp"
#include "serret/quadrature.hpp"
#include "serret/specfun.hpp"

namespace serret {

/// |int_0^1 s^i / sqrt(1 - s^2n) ds - B(1/2, (i+1)/2n) / 2n|.
inline BigReal beta_integral_check(int n, int i, const PrecisionContext& ctx) {
  if (n < 1 || i < 0 || i > n - 1) throw DomainError("beta_integral_check requires n >= 1 and 0 <= i <= n-1");
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const long two_n = 2L * n;
  const Integrand f = [&](const Abscissa& s) {
    // 1 - s^2n = (1 - s)(1 + s + ... + s^(2n-1))
    BigReal acc(1);
    for (long j = 1; j < two_n; ++j) acc = acc * s.x + one;
    return pow(s.x, static_cast<long>(i)) / sqrt(s.from_right * acc);
  };
  const BigReal quad = integrate(f, BigReal(0), one, ctx);
  const BigReal closed = beta(BigReal(0.5), BigReal(i + 1) / BigReal(two_n), ctx) / BigReal(two_n);
  return abs(quad - closed);
}

}  // namespace serret
