#pragma once

// Gamma, Beta, the complete elliptic integral K(m) and Gauss' 2F1.
//
// K uses the convention K(m) = int_0^1 dt / sqrt((1 - t^2)(1 - m t^2)), with
// m multiplying t^2 (not m^2). Under this convention
// 2F1(1/2, 1/2, 1; m) = (2/pi) K(m), and m may be negative.

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "serret/error.hpp"
#include "serret/numkernel.hpp"
#include "serret/quadrature.hpp"

namespace serret {

struct Hyp2F1Params {
  BigReal p, q, r, z;
};

namespace detail {

// B_0, B_2, B_4, ... as exact rationals, grown on demand.
class BernoulliTable {
 public:
  static BernoulliTable& instance() {
    static BernoulliTable table;
    return table;
  }

  // B_{2k}
  mpq_class even(std::size_t k) {
    const std::lock_guard lock(mutex_);
    while (all_.size() <= 2 * k) extend();
    return all_[2 * k];
  }

 private:
  BernoulliTable() { all_.emplace_back(1); }

  // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
  void extend() {
    const std::size_t m = all_.size();
    mpz_class binom = 1;  // C(m+1, 0)
    mpq_class acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += mpq_class(binom) * all_[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    mpq_class bm = -acc / mpq_class(static_cast<unsigned long>(m + 1));
    bm.canonicalize();
    all_.push_back(bm);
  }

  std::mutex mutex_;
  std::vector<mpq_class> all_;
};

inline BigReal from_rational(const mpq_class& q) {
  BigReal r;
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

// log Gamma(y) by Stirling's series for y large enough that the terms decay
// below the working accuracy before the series starts to diverge. The
// truncation error is bounded by the first omitted term.
inline BigReal log_gamma_stirling(const BigReal& y, const BigReal& tolerance) {
  const BigReal half(0.5);
  BigReal result = (y - half) * log(y) - y + ldexp(log(ldexp(pi(), 1)), -1);
  const BigReal y2 = y * y;
  BigReal y_power = y;  // y^(2k-1)
  auto& bernoulli = BernoulliTable::instance();
  for (std::size_t k = 1; k < 100000; ++k) {
    const long two_k = static_cast<long>(2 * k);
    BigReal term = from_rational(bernoulli.even(k)) / (BigReal(two_k * (two_k - 1)) * y_power);
    if (abs(term) < tolerance) return result;
    result += term;
    y_power *= y2;
  }
  throw ConvergenceError("Stirling series did not reach tolerance", to_decimal(result, 20));
}

inline bool is_nonpositive_integer(const BigReal& x) { return x.sign() <= 0 && x.is_integer(); }

}  // namespace detail

/// Gamma(x) for x > 0.
///
/// Shifts the argument upward by the rising factorial x (x+1) ... (x+N-1)
/// until x + N exceeds digits * ln(10) / 2, then applies Stirling's series.
inline BigReal gamma(const BigReal& x, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  if (x.sign() <= 0) throw DomainError("gamma requires x > 0");
  const double threshold = ctx.working_digits() * std::log(10.0) / 2.0;
  BigReal y = x;
  BigReal rising(1);
  while (y.to_double() < threshold) {
    rising *= y;
    y += BigReal(1);
  }
  const BigReal tolerance = pow10(-(ctx.working_digits() + 2));
  return exp(detail::log_gamma_stirling(y, tolerance)) / rising;
}

inline BigReal beta(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  if (a.sign() <= 0 || b.sign() <= 0) throw DomainError("beta requires a, b > 0");
  return gamma(a, ctx) * gamma(b, ctx) / gamma(a + b, ctx);
}

/// Arithmetic-geometric mean of two positive numbers.
inline BigReal agm(const BigReal& a0, const BigReal& b0, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  if (a0.sign() <= 0 || b0.sign() <= 0) throw DomainError("agm requires positive arguments");
  BigReal a = a0, b = b0;
  const BigReal tol = pow10(-ctx.working_digits());
  for (int i = 0; i < 200; ++i) {
    if (abs(a - b) <= tol * a) return a;
    BigReal next_a = ldexp(a + b, -1);
    b = sqrt(a * b);
    a = std::move(next_a);
  }
  throw ConvergenceError("agm did not converge", to_decimal(a, ctx.digits));
}

/// K(m) = pi / (2 AGM(1, sqrt(1 - m))), m < 1.
inline BigReal ellip_k(const BigReal& m, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  if (!(m < BigReal(1))) throw DomainError("ellip_k requires m < 1");
  return pi() / ldexp(agm(BigReal(1), sqrt(BigReal(1) - m), ctx), 1);
}

/// Gauss' closed form for 2F1(p, q, r; 1):
/// Gamma(r) Gamma(r-p-q) / (Gamma(r-p) Gamma(r-q)).
inline BigReal gauss_value_at_1(const BigReal& p, const BigReal& q, const BigReal& r,
                                const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal excess = r - p - q;
  if (excess.sign() <= 0) throw DomainError("2F1 at z = 1 requires r - p - q > 0");
  if (r.sign() <= 0 || (r - p).sign() <= 0 || (r - q).sign() <= 0) {
    throw DomainError("2F1 at z = 1 requires r, r - p, r - q > 0");
  }
  return gamma(r, ctx) * gamma(excess, ctx) / (gamma(r - p, ctx) * gamma(r - q, ctx));
}

/// Power series sum_n (p)_n (q)_n / (r)_n z^n / n! for |z| < 1.
///
/// Summation stops once the geometric tail bound |t_n| rho / (1 - rho), with
/// rho bounding all later term ratios, falls below 10^-(working digits)
/// relative to the partial sum.
inline BigReal hyp2f1_series(const BigReal& p, const BigReal& q, const BigReal& r, const BigReal& z,
                             const PrecisionContext& ctx, long max_terms = 2000000) {
  const PrecisionScope scope(ctx);
  if (detail::is_nonpositive_integer(r)) throw DomainError("2F1 requires r not in {0, -1, -2, ...}");
  if (!(abs(z) < BigReal(1))) throw DomainError("2F1 power series requires |z| < 1");

  const double zd = std::fabs(z.to_double());
  const double pd = p.to_double(), qd = q.to_double(), rd = r.to_double();
  const double settle = 4.0 + 2.0 * (std::fabs(pd) + std::fabs(qd) + std::fabs(rd) + std::fabs(pd * qd - rd));
  const BigReal eps = pow10(-(ctx.working_digits() + 1));

  BigReal sum(1);
  BigReal term(1);
  for (long n = 0; n < max_terms; ++n) {
    const BigReal bn(n);
    term *= (p + bn) * (q + bn) / ((r + bn) * BigReal(n + 1)) * z;
    if (term.is_zero()) return sum;  // terminating series
    sum += term;
    const double nd = static_cast<double>(n + 1);
    if (nd < settle) continue;
    const double factor = std::fabs((pd + nd) * (qd + nd) / ((rd + nd) * (nd + 1.0)));
    const double rho = zd * std::max(1.0, factor);
    if (rho >= 1.0) continue;
    if (abs(term) * BigReal(rho / (1.0 - rho)) < eps * abs(sum)) return sum;
  }
  throw ConvergenceError("2F1 series did not converge within the term budget", to_decimal(sum, ctx.digits));
}

/// Gauss' hypergeometric function 2F1(p, q, r; z) for z <= 1.
///
/// 0 <= z < 1 sums the power series directly; z < 0 first applies Pfaff's
/// transformation 2F1(p,q,r;z) = (1-z)^-p 2F1(p, r-q, r; z/(z-1)), which maps
/// the argument into (0, 1); z = 1 uses Gauss' summation.
inline BigReal hyp2f1(const Hyp2F1Params& params, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const auto& [p, q, r, z] = params;
  if (detail::is_nonpositive_integer(r)) throw DomainError("2F1 requires r not in {0, -1, -2, ...}");
  const BigReal one(1);
  if (z > one) throw DomainError("2F1 is only supported for z <= 1");
  if (z == one) return gauss_value_at_1(p, q, r, ctx);
  if (z.sign() >= 0) return hyp2f1_series(p, q, r, z, ctx);
  const BigReal w = z / (z - one);
  return pow(one - z, -p) * hyp2f1_series(p, r - q, r, w, ctx);
}

inline BigReal hyp2f1(const BigReal& p, const BigReal& q, const BigReal& r, const BigReal& z,
                      const PrecisionContext& ctx) {
  return hyp2f1(Hyp2F1Params{p, q, r, z}, ctx);
}

/// Euler's integral B(q, r-q) 2F1(p,q,r;z) = int_0^1 t^(q-1) (1-t)^(r-q-1) (1-zt)^-p dt,
/// solved for 2F1 by tanh-sinh quadrature. Requires 0 < q < r and z < 1. An
/// evaluation route independent of the series, used as a cross-check.
inline BigReal hyp2f1_euler_integral(const BigReal& p, const BigReal& q, const BigReal& r, const BigReal& z,
                                     const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  if (!(q.sign() > 0 && q < r)) throw DomainError("Euler integral requires 0 < q < r");
  const BigReal one(1);
  if (!(z < one)) throw DomainError("Euler integral requires z < 1");
  const BigReal a = q - one;
  const BigReal b = r - q - one;
  const BigReal neg_p = -p;
  const Integrand f = [&](const Abscissa& t) {
    return exp(a * log(t.from_left) + b * log(t.from_right)) * pow(one - z * t.x, neg_p);
  };
  const BigReal integral = integrate(f, BigReal(0), one, ctx);
  return integral / beta(q, r - q, ctx);
}

}  // namespace serret
