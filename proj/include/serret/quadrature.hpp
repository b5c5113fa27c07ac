#pragma once

// Double-exponential (tanh-sinh) quadrature on a finite interval.
//
// The rule maps t in R to x = tanh(pi/2 sinh t), which clusters nodes
// doubly-exponentially at the endpoints. Integrands receive each node as an
// Abscissa carrying x together with its distances to both endpoints computed
// without cancellation, so algebraic endpoint singularities such as
// 1/sqrt(1 - s^2n) can be evaluated accurately arbitrarily close to the end.

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "serret/error.hpp"
#include "serret/numkernel.hpp"

namespace serret {

struct Abscissa {
  const BigReal& x;
  const BigReal& from_left;   // x - a, exact to working precision
  const BigReal& from_right;  // b - x, exact to working precision
};

using Integrand = std::function<BigReal(const Abscissa&)>;

struct QuadratureResult {
  BigReal value;
  BigReal error_estimate;
  int levels_used = 0;
};

struct TanhSinhOptions {
  int max_level = 12;
  int min_level = 3;
};

namespace detail {

struct TanhSinhNode {
  BigReal complement;  // 1 - |x| on the reference interval [-1, 1]
  BigReal weight;
};

// Nodes added at one refinement level, for t > 0 only. Level 0 holds
// t = 1, 2, ...; level L >= 1 holds the odd multiples of 2^-L.
using TanhSinhLevel = std::vector<TanhSinhNode>;

// Nodes are generated until 1 - |x| drops below roughly 10^(-6 D), D being
// the working digits, which lets singularities with exponent down to about
// -5/6 be integrated to full accuracy.
inline BigReal tanh_sinh_t_max(mpfr_prec_t bits) {
  const double working_digits = static_cast<double>(bits) / 3.321928094887362;
  const double u_max = 3.0 * working_digits * std::log(10.0);
  return BigReal(std::asinh(2.0 * u_max / M_PI));
}

inline TanhSinhNode make_node(const BigReal& t, const BigReal& half_pi) {
  const BigReal u = half_pi * sinh(t);
  const BigReal cu = cosh(u);
  TanhSinhNode node;
  node.complement = BigReal(2) / (BigReal(1) + exp(ldexp(u, 1)));
  node.weight = half_pi * cosh(t) / (cu * cu);
  return node;
}

inline std::shared_ptr<const TanhSinhLevel> compute_level(int level, mpfr_prec_t bits) {
  auto nodes = std::make_shared<TanhSinhLevel>();
  const BigReal half_pi = ldexp(pi(), -1);
  const BigReal t_max = tanh_sinh_t_max(bits);
  const long stride = level == 0 ? 1 : 2;
  for (long k = 1;; k += stride) {
    const BigReal t = ldexp(BigReal(k), -level);
    if (t > t_max) break;
    nodes->push_back(make_node(t, half_pi));
  }
  return nodes;
}

class TanhSinhCache {
 public:
  static TanhSinhCache& instance() {
    static TanhSinhCache cache;
    return cache;
  }

  // Nodes of `level` at the ambient precision.
  std::shared_ptr<const TanhSinhLevel> level(int level) {
    const mpfr_prec_t bits = ambient_precision();
    {
      const std::lock_guard lock(mutex_);
      auto& levels = table_[bits];
      if (static_cast<int>(levels.size()) > level && levels[static_cast<std::size_t>(level)]) {
        return levels[static_cast<std::size_t>(level)];
      }
    }
    auto computed = compute_level(level, bits);
    const std::lock_guard lock(mutex_);
    auto& levels = table_[bits];
    if (static_cast<int>(levels.size()) <= level) levels.resize(static_cast<std::size_t>(level) + 1);
    auto& slot = levels[static_cast<std::size_t>(level)];
    if (!slot) slot = std::move(computed);
    return slot;
  }

 private:
  std::mutex mutex_;
  std::map<mpfr_prec_t, std::vector<std::shared_ptr<const TanhSinhLevel>>> table_;
};

inline BigReal checked(const Integrand& f, const BigReal& x, const BigReal& dl, const BigReal& dr) {
  BigReal y = f(Abscissa{x, dl, dr});
  if (!y.is_finite()) {
    throw IntegrandError("integrand is not finite at interior node x = " + to_decimal(x, 20));
  }
  return y;
}

// Raw sum over one level's nodes mapped onto [a, b] (without the step factor).
inline BigReal level_sum(const Integrand& f, const BigReal& a, const BigReal& b, const BigReal& half,
                         const TanhSinhLevel& nodes) {
  BigReal sum;
  BigReal near, far, x;
  for (const auto& node : nodes) {
    near = half * node.complement;
    far = ldexp(half, 1) - near;
    x = b - near;
    BigReal right = checked(f, x, far, near);
    x = a + near;
    BigReal left = checked(f, x, near, far);
    sum += node.weight * (left + right);
  }
  return sum;
}

}  // namespace detail

// Per-level estimates I_0, I_1, ..., I_levels of the integral. Exposed for
// convergence diagnostics.
inline std::vector<BigReal> tanh_sinh_levels(const Integrand& f, const BigReal& a, const BigReal& b,
                                             const PrecisionContext& ctx, int levels) {
  const PrecisionScope scope(ctx);
  if (!(a < b)) throw DomainError("tanh_sinh requires a < b");
  auto& cache = detail::TanhSinhCache::instance();
  const BigReal half = ldexp(b - a, -1);
  const BigReal mid = a + half;

  std::vector<BigReal> out;
  BigReal raw = ldexp(pi(), -1) * detail::checked(f, mid, half, half);
  raw += detail::level_sum(f, a, b, half, *cache.level(0));
  out.push_back(half * raw);
  for (int level = 1; level <= levels; ++level) {
    raw = ldexp(raw, -1) + ldexp(detail::level_sum(f, a, b, half, *cache.level(level)), -level);
    out.push_back(half * raw);
  }
  return out;
}

/// Integrates f over (a, b). f is never evaluated at a or b.
///
/// Refinement stops once two consecutive levels agree to 10^-(digits+3)
/// relative to max(1, |value|). Reaching max_level without that agreement
/// raises ConvergenceError carrying the best estimate.
inline QuadratureResult tanh_sinh(const Integrand& f, const BigReal& a, const BigReal& b,
                                  const PrecisionContext& ctx, TanhSinhOptions opts = {}) {
  const PrecisionScope scope(ctx);
  if (!(a < b)) throw DomainError("tanh_sinh requires a < b");
  auto& cache = detail::TanhSinhCache::instance();
  const BigReal half = ldexp(b - a, -1);
  const BigReal mid = a + half;
  const BigReal target = pow10(-(ctx.digits + 3));
  const BigReal rounding = pow10(-(ctx.working_digits() - 2));

  BigReal raw = ldexp(pi(), -1) * detail::checked(f, mid, half, half);
  raw += detail::level_sum(f, a, b, half, *cache.level(0));
  BigReal previous = half * raw;

  for (int level = 1; level <= opts.max_level; ++level) {
    raw = ldexp(raw, -1) + ldexp(detail::level_sum(f, a, b, half, *cache.level(level)), -level);
    BigReal current = half * raw;
    const BigReal scale = max(BigReal(1), abs(current));
    const BigReal change = abs(current - previous);
    if (level >= opts.min_level && change <= target * scale) {
      QuadratureResult result;
      result.error_estimate = max(change, rounding * scale);
      result.value = std::move(current);
      result.levels_used = level;
      return result;
    }
    previous = std::move(current);
  }
  throw ConvergenceError("tanh_sinh did not converge by level " + std::to_string(opts.max_level),
                         to_decimal(previous, ctx.digits));
}

// Convenience: value only.
inline BigReal integrate(const Integrand& f, const BigReal& a, const BigReal& b, const PrecisionContext& ctx,
                         TanhSinhOptions opts = {}) {
  return tanh_sinh(f, a, b, ctx, opts).value;
}

}  // namespace serret
