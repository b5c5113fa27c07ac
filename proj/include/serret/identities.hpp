#pragma once

// Self-checks of closed-form identities between the special functions and
// curve lengths. Each check evaluates both sides on a fixed grid and reports
// the relative residual |lhs - rhs| / max(1, |lhs|).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "serret/curves.hpp"
#include "serret/numkernel.hpp"
#include "serret/quadrature.hpp"
#include "serret/specfun.hpp"

namespace serret {

struct IdentityRow {
  std::string params;
  BigReal lhs, rhs;
  BigReal residual;
};

struct IdentityReport {
  std::string name;
  std::string statement;
  std::vector<IdentityRow> rows;
  BigReal max_residual;
  BigReal tolerance;
  bool passed = false;
};

// Tolerance exponents relative to the working digits.
inline constexpr int kPureIdentitySlack = 3;
inline constexpr int kQuadratureIdentitySlack = 5;

namespace detail {

class ReportBuilder {
 public:
  ReportBuilder(std::string name, std::string statement, const PrecisionContext& ctx, int slack,
                std::optional<long> forced_exponent)
      : ctx_(ctx) {
    report_.name = std::move(name);
    report_.statement = std::move(statement);
    const PrecisionScope scope(ctx_);
    report_.tolerance = forced_exponent ? pow10(*forced_exponent) : pow10(-(ctx.digits - slack));
  }

  void add(std::string params, const BigReal& lhs, const BigReal& rhs) {
    const PrecisionScope scope(ctx_);
    IdentityRow row{std::move(params), lhs, rhs, abs(lhs - rhs) / max(BigReal(1), abs(lhs))};
    report_.max_residual = max(report_.max_residual, row.residual);
    report_.rows.push_back(std::move(row));
  }

  IdentityReport finish() {
    report_.passed = report_.max_residual <= report_.tolerance;
    return std::move(report_);
  }

 private:
  const PrecisionContext& ctx_;
  IdentityReport report_;
};

inline BigReal rational(long num, long den) { return BigReal(num) / BigReal(den); }

// 2F1 by a route that never applies the Pfaff transformation: the power
// series for |z| <= 3/4, Euler's integral otherwise.
inline BigReal hyp2f1_without_pfaff(const BigReal& p, const BigReal& q, const BigReal& r, const BigReal& z,
                                    const PrecisionContext& ctx) {
  if (abs(z) <= BigReal(0.75)) return hyp2f1_series(p, q, r, z, ctx);
  return hyp2f1_euler_integral(p, q, r, z, ctx);
}

struct NamedRational {
  long num, den;
  std::string text() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  BigReal value() const { return rational(num, den); }
};

}  // namespace detail

/// One row of the Pfaff check, for direct use by tests.
inline BigReal pfaff_residual(const BigReal& p, const BigReal& q, const BigReal& r, const BigReal& z,
                              const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const BigReal lhs = detail::hyp2f1_without_pfaff(p, q, r, z, ctx);
  const BigReal rhs = pow(one - z, -p) * detail::hyp2f1_without_pfaff(p, r - q, r, z / (z - one), ctx);
  return abs(lhs - rhs) / max(one, abs(lhs));
}

/// 2F1(p,q,r;z) = (1-z)^-p 2F1(p, r-q, r; z/(z-1)) over p, q in {1/4, 1/2, 3/4},
/// r in {1, 3/2}, z in {-2, -1/2, 1/4, 3/5}. Both sides avoid the transformation
/// internally (series or Euler integral).
inline IdentityReport check_pfaff(const PrecisionContext& ctx, std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("pfaff", "2F1(p,q,r;z) = (1-z)^-p 2F1(p,r-q,r;z/(z-1))", ctx, kPureIdentitySlack,
                            forced);
  const std::vector<detail::NamedRational> pq{{1, 4}, {1, 2}, {3, 4}};
  const std::vector<detail::NamedRational> rs{{1, 1}, {3, 2}};
  const std::vector<detail::NamedRational> zs{{-2, 1}, {-1, 2}, {1, 4}, {3, 5}};
  const BigReal one(1);
  for (const auto& p : pq) {
    for (const auto& q : pq) {
      for (const auto& r : rs) {
        for (const auto& z : zs) {
          const BigReal pv = p.value(), qv = q.value(), rv = r.value(), zv = z.value();
          const BigReal lhs = detail::hyp2f1_without_pfaff(pv, qv, rv, zv, ctx);
          const BigReal rhs =
              pow(one - zv, -pv) * detail::hyp2f1_without_pfaff(pv, rv - qv, rv, zv / (zv - one), ctx);
          out.add("p=" + p.text() + " q=" + q.text() + " r=" + r.text() + " z=" + z.text(), lhs, rhs);
        }
      }
    }
  }
  return out.finish();
}

/// 2F1(p, q, 2q; 4z/(1+z)^2) = (1+z)^2p 2F1(p, p-q+1/2, q+1/2; z^2) over
/// p in {1/4, 1/3, 1/2}, q in {1/2, 3/4}, z in {0.1, 0.3, 0.5}.
inline IdentityReport check_quadratic_transformation(const PrecisionContext& ctx,
                                                     std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("quadratic-transformation",
                            "2F1(p,q,2q;4z/(1+z)^2) = (1+z)^(2p) 2F1(p,p-q+1/2,q+1/2;z^2)", ctx,
                            kPureIdentitySlack, forced);
  const std::vector<detail::NamedRational> ps{{1, 4}, {1, 3}, {1, 2}};
  const std::vector<detail::NamedRational> qs{{1, 2}, {3, 4}};
  const std::vector<detail::NamedRational> zs{{1, 10}, {3, 10}, {1, 2}};
  const BigReal one(1), half(0.5);
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      for (const auto& z : zs) {
        const BigReal pv = p.value(), qv = q.value(), zv = z.value();
        const BigReal lhs = hyp2f1(pv, qv, ldexp(qv, 1), BigReal(4) * zv / ((one + zv) * (one + zv)), ctx);
        const BigReal rhs = pow(one + zv, ldexp(pv, 1)) * hyp2f1(pv, pv - qv + half, qv + half, zv * zv, ctx);
        out.add("p=" + p.text() + " q=" + q.text() + " z=" + z.text(), lhs, rhs);
      }
    }
  }
  return out.finish();
}

/// 2F1(1/4, 3/4, 1; z/(z-1)) = 2 (1-z)^(1/4) / pi K((1 - sqrt(1-z))/2) for
/// z in {0.1, 0.3, 0.5, 0.7, 0.9}.
inline IdentityReport check_hypgeoell(const PrecisionContext& ctx, std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("hypergeometric-elliptic",
                            "2F1(1/4,3/4,1;z/(z-1)) = 2(1-z)^(1/4)/pi K((1-sqrt(1-z))/2)", ctx,
                            kPureIdentitySlack, forced);
  const BigReal one(1);
  for (long i : {1L, 3L, 5L, 7L, 9L}) {
    const BigReal z = detail::rational(i, 10);
    const BigReal lhs = hyp2f1(BigReal(0.25), BigReal(0.75), one, z / (z - one), ctx);
    const BigReal rhs = ldexp(pow(one - z, BigReal(0.25)), 1) / pi() * ellip_k(ldexp(one - sqrt(one - z), -1), ctx);
    out.add("z=" + detail::NamedRational{i, 10}.text(), lhs, rhs);
  }
  return out.finish();
}

/// 2 pi 2F1((k-1)/2k, (k-1)/2k, 1; 1) = 2^(1/k) B(1/2, 1/2k) for k in {2, 3, 4, 5, 7},
/// the left side by Gauss' summation.
inline IdentityReport check_gauss_beta_bridge(const PrecisionContext& ctx, std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("gauss-beta-bridge", "2 pi 2F1((k-1)/2k,(k-1)/2k,1;1) = 2^(1/k) B(1/2,1/2k)", ctx,
                            kPureIdentitySlack, forced);
  for (long k : {2L, 3L, 4L, 5L, 7L}) {
    const BigReal e = detail::rational(k - 1, 2 * k);
    const BigReal lhs = ldexp(pi(), 1) * gauss_value_at_1(e, e, BigReal(1), ctx);
    const BigReal rhs = pow(BigReal(2), detail::rational(1, k)) * beta(BigReal(0.5), detail::rational(1, 2 * k), ctx);
    out.add("k=" + std::to_string(k), lhs, rhs);
  }
  return out.finish();
}

/// B(1/2, 1/10) / B(1/2, 2/5) = sqrt(5 + 2 sqrt 5),
/// B(1/2, 1/5) / B(1/2, 3/10) = sqrt(1 + 2/sqrt 5), and Gamma(1/2)^2 = pi.
inline IdentityReport check_beta_ratios(const PrecisionContext& ctx, std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("beta-ratios", "B(1/2,1/10)/B(1/2,2/5) = sqrt(5+2 sqrt5); B(1/2,1/5)/B(1/2,3/10) = sqrt(1+2/sqrt5)",
                            ctx, kPureIdentitySlack, forced);
  const BigReal half(0.5);
  const BigReal five(5);
  const BigReal r5 = sqrt(five);
  out.add("B(1/2,1/10)/B(1/2,2/5)",
          beta(half, detail::rational(1, 10), ctx) / beta(half, detail::rational(2, 5), ctx),
          sqrt(five + ldexp(r5, 1)));
  out.add("B(1/2,1/5)/B(1/2,3/10)",
          beta(half, detail::rational(1, 5), ctx) / beta(half, detail::rational(3, 10), ctx),
          sqrt(BigReal(1) + BigReal(2) / r5));
  const BigReal g = gamma(half, ctx);
  out.add("Gamma(1/2)^2", g * g, pi());
  return out.finish();
}

/// l(C_{a,k}) by radial quadrature equals a^-(k-1) l(C_{1/a,k}) in closed form,
/// a in {1.25, 2, 4}, k in {2, 3}.
inline IdentityReport check_scaling_law(const PrecisionContext& ctx, std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("scaling-law", "l(C_{a,k}) = a^-(k-1) l(C_{1/a,k})", ctx, kQuadratureIdentitySlack,
                            forced);
  const std::vector<ExactReal> as{ExactReal{"5", "4"}, ExactReal{"2", "1"}, ExactReal{"4", "1"}};
  for (const auto& a : as) {
    for (int k : {2, 3}) {
      const BigReal lhs = total_length_quadrature(Regular{a, k}, ctx);
      const BigReal rhs = pow(a.value(), -static_cast<long>(k - 1)) * total_length_closed(Regular{a.reciprocal(), k}, ctx);
      out.add("a=" + a.text() + " k=" + std::to_string(k), lhs, rhs);
    }
  }
  return out.finish();
}

/// int_0^1 dt / ((1 - b t)^(1/4) sqrt(t (1-t))) = 2 sqrt(1 + a^2) K((1 - sqrt(1 - a^4))/2)
/// with b = 4a^2/(1+a^2)^2, a in {1/2, 3/5, 4/5}. The left side is a period of
/// the genus-2 curve y^4 = (1 - b x) x^2 (1 - x)^2, the right side an elliptic one.
inline IdentityReport check_period_ratio_genus2(const PrecisionContext& ctx, std::optional<long> forced = std::nullopt) {
  const PrecisionScope scope(ctx);
  detail::ReportBuilder out("genus2-period-ratio",
                            "int_0^1 dt/((1-bt)^(1/4) sqrt(t(1-t))) = 2 sqrt(1+a^2) K((1-sqrt(1-a^4))/2)", ctx,
                            kQuadratureIdentitySlack, forced);
  const BigReal one(1);
  const std::vector<detail::NamedRational> as{{1, 2}, {3, 5}, {4, 5}};
  for (const auto& a : as) {
    const BigReal av = a.value();
    const BigReal a2 = av * av;
    const BigReal b = BigReal(4) * a2 / ((one + a2) * (one + a2));
    const BigReal quarter_neg(-0.25);
    const Integrand f = [&](const Abscissa& t) {
      return pow(one - b * t.x, quarter_neg) / sqrt(t.from_left * t.from_right);
    };
    const BigReal lhs = integrate(f, BigReal(0), one, ctx);
    const BigReal rhs = ldexp(sqrt(one + a2), 1) * ellip_k(ldexp(one - sqrt(one - a2 * a2), -1), ctx);
    out.add("a=" + a.text(), lhs, rhs);
  }
  return out.finish();
}

/// Every check in a fixed order. `forced_tolerance_exponent` replaces each
/// tolerance by 10^exponent (used to exercise the failure path).
inline std::vector<IdentityReport> run_all_identities(const PrecisionContext& ctx,
                                                      std::optional<long> forced_tolerance_exponent = std::nullopt) {
  return {
      check_pfaff(ctx, forced_tolerance_exponent),
      check_quadratic_transformation(ctx, forced_tolerance_exponent),
      check_hypgeoell(ctx, forced_tolerance_exponent),
      check_gauss_beta_bridge(ctx, forced_tolerance_exponent),
      check_beta_ratios(ctx, forced_tolerance_exponent),
      check_scaling_law(ctx, forced_tolerance_exponent),
      check_period_ratio_genus2(ctx, forced_tolerance_exponent),
  };
}

}  // namespace serret
