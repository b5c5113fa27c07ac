#pragma once

// Equal-arc-length division points.
//
// On a half leaf of r^q = 2 cos(q theta), with r = 2^(1/q) s, the arc length
// from the origin to the point of normalized radius s is 2^(1/q) F(s) with
// F(s) = int_0^s ds / sqrt(1 - s^2q). Dividing the half leaf into l equal
// arcs means solving F(s_i) = (i/l) F(1).
//
// For a Cassini oval |z^2 - a^2| = 1 (0 < a < 1) the two-point problem is
// solved through the reduced integral in v (see curves.hpp).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "serret/curves.hpp"
#include "serret/error.hpp"
#include "serret/numkernel.hpp"
#include "serret/quadrature.hpp"
#include "serret/specfun.hpp"

namespace serret {

struct DivisionPoint {
  long index = 0;
  long fraction_num = 0;  // fraction of the arc = fraction_num / fraction_den
  long fraction_den = 1;
  BigReal s;
  BigReal radius;
  BigReal theta;
  BigReal x, y;
  BigReal residual;
};

struct CartesianPoint {
  BigReal x, y;
};

struct CassiniDivision {
  int n = 1;
  BigReal u;
  BigReal v_u;
  BigReal cos_u;
  CartesianPoint p;        // angle u/2
  CartesianPoint p_prime;  // angle pi/2 - u/2
  BigReal arc_length;      // polar arc between the two points
  BigReal target_arc;      // l(C_a) / 4n
  BigReal integral_residual;  // |I(u) - (n-1)/n I(pi/2)|
  BigReal arc_residual;       // |arc_length - target_arc|
};

// Increasing function on [lo, hi] with F(lo) <= target <= F(hi).
struct MonotoneProblem {
  std::function<BigReal(const BigReal&, const PrecisionContext&)> value;
  std::function<BigReal(const BigReal&)> derivative;  // at the ambient precision
  BigReal target;
  BigReal lo, hi;
};

struct MonotoneSolution {
  BigReal x;
  BigReal residual;  // |F(x) - target| at full precision
  int newton_steps = 0;
};

/// Bisection at reduced precision until the bracket is narrower than
/// 10^-(digits/2), then Newton at full precision. Newton iterates that leave
/// the current bracket are replaced by its midpoint.
inline MonotoneSolution solve_increasing(const MonotoneProblem& problem, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  BigReal lo = problem.lo;
  BigReal hi = problem.hi;
  if (!(lo < hi)) throw DomainError("solve_increasing requires lo < hi");

  const int half_digits = ctx.digits / 2;
  const auto coarse = make_context(std::max(kMinDigits, half_digits + 10));
  const BigReal width = pow10(-half_digits);
  while (hi - lo > width) {
    const BigReal mid = ldexp(lo + hi, -1);
    BigReal f;
    {
      const PrecisionScope narrow(coarse);
      f = problem.value(mid, coarse) - problem.target;
    }
    if (f.sign() < 0) lo = mid; else hi = mid;
  }
  // The coarse comparisons are trusted only to about 10^-(digits/2 + 10).
  const BigReal margin = pow10(-(half_digits + 5));
  lo = max(problem.lo, lo - margin);
  hi = min(problem.hi, hi + margin);

  const BigReal tolerance = pow10(-(ctx.digits + 2)) * max(BigReal(1), abs(problem.target));
  const BigReal stall = pow10(-(ctx.working_digits() - 2));
  BigReal x = ldexp(lo + hi, -1);
  for (int step = 0; step < 60; ++step) {
    const BigReal f = problem.value(x, ctx) - problem.target;
    if (abs(f) <= tolerance) return MonotoneSolution{x, abs(f), step};
    if (f.sign() < 0) lo = x; else hi = x;
    BigReal next = x - f / problem.derivative(x);
    if (!(lo < next && next < hi)) next = ldexp(lo + hi, -1);
    if (abs(next - x) <= stall * max(BigReal(1), abs(x))) {
      if (abs(f) <= pow10(-ctx.digits) * max(BigReal(1), abs(problem.target))) {
        return MonotoneSolution{x, abs(f), step};
      }
      break;
    }
    x = std::move(next);
  }
  throw ConvergenceError("monotone solver did not converge; bracket [" + to_decimal(lo, 25) + ", " +
                             to_decimal(hi, 25) + "]",
                         to_decimal(x, ctx.digits));
}

namespace detail {

// theta = acos(s^q) / q on the upper half leaf, evaluated through
// 1 - s^q near the tip so that small angles keep full relative accuracy.
inline BigReal leaf_angle(const BigReal& q, const BigReal& s) {
  const BigReal one(1);
  const BigReal w = one_minus_power(q, s, one - s);
  if (w < BigReal(0.5)) return ldexp(asin(sqrt(ldexp(w, -1))), 1) / q;
  return acos(one - w) / q;
}

inline DivisionPoint make_leaf_point(const BigReal& q, long index, long l, const BigReal& s, BigReal residual) {
  DivisionPoint p;
  p.index = index;
  p.fraction_num = index;
  p.fraction_den = l;
  p.s = s;
  p.radius = pow(BigReal(2), BigReal(1) / q) * s;
  p.theta = leaf_angle(q, s);
  p.x = p.radius * cos(p.theta);
  p.y = p.radius * sin(p.theta);
  p.residual = std::move(residual);
  return p;
}

inline void require_leaf_curve(const CurveSpec& curve) {
  if (!std::holds_alternative<Erdos>(curve) && !std::holds_alternative<Sinusoidal>(curve)) {
    throw DomainError("division by arc length is implemented for Erdos and sinusoidal curves");
  }
  validate(curve);
}

// F(1) = B(1/2, 1/2q) / 2q.
inline BigReal half_leaf_integral(const BigReal& two_q, const PrecisionContext& ctx) {
  return beta(BigReal(0.5), BigReal(1) / two_q, ctx) / two_q;
}

}  // namespace detail

/// Normalized radius s_i with F(s_i) = (i/l) F(1), 0 <= i <= l.
inline MonotoneSolution division_s(const CurveSpec& curve, long l, long i, const PrecisionContext& ctx) {
  detail::require_leaf_curve(curve);
  if (l < 1) throw DomainError("number of parts must be >= 1");
  if (i < 0 || i > l) throw DomainError("division index must lie in [0, l]");
  const PrecisionScope scope(ctx);
  if (i == 0) return MonotoneSolution{BigReal(0), BigReal(0), 0};
  if (i == l) return MonotoneSolution{BigReal(1), BigReal(0), 0};
  const BigReal two_q = ldexp(leaf_exponent(curve), 1);
  const BigReal one(1);
  MonotoneProblem problem;
  problem.value = [two_q](const BigReal& s, const PrecisionContext& c) {
    return normalized_arc_integral(BigReal(two_q), s, c);
  };
  problem.derivative = [two_q, one](const BigReal& s) {
    return one / sqrt(detail::one_minus_power(two_q, s, one - s));
  };
  problem.target = detail::half_leaf_integral(two_q, ctx) * BigReal(i) / BigReal(l);
  problem.lo = BigReal(0);
  problem.hi = BigReal(1);
  return solve_increasing(problem, ctx);
}

/// s_0 = 0 < s_1 < ... < s_l = 1 on the upper half of the leaf around
/// theta = 0, ordered from the origin (s = 0) to the tip (s = 1).
inline std::vector<DivisionPoint> divide_fundamental_arc(const CurveSpec& curve, long l, const PrecisionContext& ctx) {
  detail::require_leaf_curve(curve);
  if (l < 1) throw DomainError("number of parts must be >= 1");
  const PrecisionScope scope(ctx);
  const BigReal q = leaf_exponent(curve);
  const BigReal two_q = ldexp(q, 1);
  const BigReal f1 = detail::half_leaf_integral(two_q, ctx);
  std::vector<DivisionPoint> out;
  out.reserve(static_cast<std::size_t>(l + 1));
  for (long i = 0; i <= l; ++i) {
    const BigReal s = division_s(curve, l, i, ctx).x;
    const BigReal target = f1 * BigReal(i) / BigReal(l);
    BigReal residual = abs(normalized_arc_integral(two_q, s, ctx) - target);
    out.push_back(detail::make_leaf_point(q, i, l, s, std::move(residual)));
  }
  return out;
}

/// Radii r(P_i) = 2^(1/3) s_i on the Kiepert curve r^3 = 2 cos(3 theta).
inline std::vector<DivisionPoint> divide_kiepert(long l, const PrecisionContext& ctx) {
  return divide_fundamental_arc(Erdos{3}, l, ctx);
}

/// All division points of the closed curve. Each of the leaves contributes
/// the origin, the upper points s_1 .. s_(l-1), the tip and the mirrored
/// lower points s_(l-1) .. s_1, then the leaf is rotated by 2 pi j / leaves.
/// The result has 2 * leaves * l entries; the origin is repeated once per
/// leaf because the curve passes through it that often.
inline std::vector<DivisionPoint> expand_by_symmetry(const CurveSpec& curve, const std::vector<DivisionPoint>& points) {
  detail::require_leaf_curve(curve);
  if (points.size() < 2) throw DomainError("expand_by_symmetry needs s_0 .. s_l");
  const long l = static_cast<long>(points.size()) - 1;
  const long leaves = leaf_count(curve);
  const long total = 2 * leaves * l;
  const BigReal two_pi = ldexp(pi(), 1);

  std::vector<const DivisionPoint*> upper;
  for (const auto& p : points) upper.push_back(&p);

  std::vector<DivisionPoint> out;
  out.reserve(static_cast<std::size_t>(total));
  for (long j = 0; j < leaves; ++j) {
    const BigReal rotation = two_pi * BigReal(j) / BigReal(leaves);
    auto emit = [&](const DivisionPoint& src, bool mirrored) {
      DivisionPoint p = src;
      p.index = static_cast<long>(out.size());
      p.fraction_num = p.index;
      p.fraction_den = total;
      if (src.radius.is_zero()) {
        p.theta = BigReal(0);
        p.x = BigReal(0);
        p.y = BigReal(0);
      } else {
        BigReal local = mirrored ? -src.theta : src.theta;
        BigReal angle = local + rotation;
        if (angle < BigReal(0)) angle += two_pi;
        if (!(angle < two_pi)) angle -= two_pi;
        p.theta = angle;
        p.x = p.radius * cos(angle);
        p.y = p.radius * sin(angle);
      }
      out.push_back(std::move(p));
    };
    // Origin, then toward the tip along the upper half.
    for (long i = 0; i <= l; ++i) emit(*upper[static_cast<std::size_t>(i)], false);
    // Back from the tip along the lower half, stopping before the origin.
    for (long i = l - 1; i >= 1; --i) emit(*upper[static_cast<std::size_t>(i)], true);
  }
  return out;
}

/// Arc length along a leaf of r^q = 2 cos(q theta) between two angles in
/// [-pi/2q, pi/2q], from ds = 2 (2 cos(q theta))^((1-q)/q) dtheta. Independent
/// of the radial integral used by the solver.
inline BigReal leaf_arc_between(const CurveSpec& curve, const BigReal& theta_from, const BigReal& theta_to,
                                const PrecisionContext& ctx) {
  detail::require_leaf_curve(curve);
  const PrecisionScope scope(ctx);
  if (theta_from == theta_to) return BigReal(0);
  const bool reversed = theta_to < theta_from;
  const BigReal lo = reversed ? theta_to : theta_from;
  const BigReal hi = reversed ? theta_from : theta_to;
  const BigReal q = leaf_exponent(curve);
  const BigReal edge = ldexp(pi(), -1) / q;
  if (abs(lo) > edge * (BigReal(1) + pow10(-(ctx.digits - 2))) ||
      abs(hi) > edge * (BigReal(1) + pow10(-(ctx.digits - 2)))) {
    throw DomainError("angles outside the leaf");
  }
  const BigReal exponent = (BigReal(1) - q) / q;
  const BigReal gap_hi = edge - hi;  // distance from hi to the origin angle
  const BigReal gap_lo = edge + lo;  // distance from lo to the origin angle -edge
  const Integrand f = [&](const Abscissa& t) {
    // cos(q theta) = sin(q (edge - |theta|)), measured from the nearer origin angle.
    const BigReal to_upper = gap_hi + t.from_right;
    const BigReal to_lower = gap_lo + t.from_left;
    const BigReal& d = to_upper < to_lower ? to_upper : to_lower;
    const BigReal c = ldexp(sin(q * d), 1);
    return ldexp(pow(c, exponent), 1);
  };
  const BigReal value = integrate(f, lo, hi, ctx);
  return reversed ? -value : value;
}

/// Lengths of the 2 * leaves * l consecutive sub-arcs between the points of
/// expand_by_symmetry, each re-integrated in the polar angle. The leaves are
/// congruent, so one leaf's 2l arcs are integrated and repeated per leaf.
inline std::vector<BigReal> partition_arc_lengths(const CurveSpec& curve, const std::vector<DivisionPoint>& points,
                                                  const PrecisionContext& ctx) {
  detail::require_leaf_curve(curve);
  const PrecisionScope scope(ctx);
  const long l = static_cast<long>(points.size()) - 1;
  const BigReal edge = ldexp(pi(), -1) / leaf_exponent(curve);
  // Local angles along one leaf: origin (+edge), upper points, tip, lower points, origin (-edge).
  std::vector<BigReal> path;
  path.push_back(edge);
  for (long i = 1; i < l; ++i) path.push_back(points[static_cast<std::size_t>(i)].theta);
  path.push_back(BigReal(0));
  for (long i = l - 1; i >= 1; --i) path.push_back(-points[static_cast<std::size_t>(i)].theta);
  path.push_back(-edge);
  std::vector<BigReal> one_leaf;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    one_leaf.push_back(abs(leaf_arc_between(curve, path[i], path[i + 1], ctx)));
  }
  std::vector<BigReal> out;
  for (long j = 0; j < leaf_count(curve); ++j) out.insert(out.end(), one_leaf.begin(), one_leaf.end());
  return out;
}

namespace detail {

// Solves G(v) = (n-1)/n G(1) for v, G being the bare reduced integral.
inline MonotoneSolution cassini_v(const BigReal& a, int n, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const BigReal c = cassini_lower_limit(a);
  if (n == 1) return MonotoneSolution{c, BigReal(0), 0};
  MonotoneProblem problem;
  problem.value = [a](const BigReal& v, const PrecisionContext& cc) {
    const PrecisionScope inner(cc);
    return cassini_bare_integral(BigReal(a), v, cc);
  };
  problem.derivative = [c, one](const BigReal& v) {
    return one / sqrt(v * (one - v) * (v - c) * (v + c));
  };
  problem.target = cassini_bare_integral(a, one, ctx) * BigReal(n - 1) / BigReal(n);
  problem.lo = c;
  problem.hi = one;
  return solve_increasing(problem, ctx);
}

}  // namespace detail

/// cos(u) for the Cassini two-point division with parameter n.
inline BigReal cassini_cos_u(const ExactReal& a_exact, int n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("n must be >= 1");
  const PrecisionScope scope(ctx);
  const BigReal a = a_exact.value();
  if (!(a.sign() > 0 && a < BigReal(1))) throw DomainError("Cassini division requires 0 < a < 1");
  if (n == 1) return BigReal(1);
  return min(BigReal(1), cos_u_of_v(detail::cassini_v(a, n, ctx).x, a, ctx));
}

/// Points at angles u/2 and pi/2 - u/2 on the Cassini oval, u solving
/// I(u) = (n-1)/n I(pi/2); the shorter arc joining them is l(C_a) / 4n.
inline CassiniDivision divide_cassini(const ExactReal& a_exact, int n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("n must be >= 1");
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const BigReal a = a_exact.value();
  if (!(a.sign() > 0 && a < one)) throw DomainError("Cassini division requires 0 < a < 1");
  const Regular curve{a_exact, 2};

  CassiniDivision out;
  out.n = n;
  const BigReal full = cassini_reduced_integral(a, one, ctx);
  if (n == 1) {
    out.v_u = cassini_lower_limit(a);
    out.u = BigReal(0);
    out.cos_u = one;
  } else {
    out.v_u = detail::cassini_v(a, n, ctx).x;
    out.cos_u = min(one, cos_u_of_v(out.v_u, a, ctx));
    // acos loses accuracy near 1; go through u = atan2(sin, cos) with sin from 1 - cos^2 = (1-c)(1+c).
    const BigReal sin_u = sqrt((one - out.cos_u) * (one + out.cos_u));
    out.u = atan2(sin_u, out.cos_u);
  }
  const BigReal target_integral = full * BigReal(n - 1) / BigReal(n);
  out.integral_residual = abs(cassini_reduced_integral(a, out.v_u, ctx) - target_integral);

  const BigReal theta1 = ldexp(out.u, -1);
  const BigReal theta2 = ldexp(pi(), -1) - theta1;
  const BigReal r1 = polar_radius(curve, theta1, ctx).r;
  const BigReal r2 = polar_radius(curve, theta2, ctx).r;
  out.p = CartesianPoint{r1 * cos(theta1), r1 * sin(theta1)};
  out.p_prime = CartesianPoint{r2 * cos(theta2), r2 * sin(theta2)};
  out.arc_length = polar_arc_length(curve, theta1, theta2, ctx);
  out.target_arc = total_length_closed(curve, ctx) / BigReal(4 * n);
  out.arc_residual = abs(out.arc_length - out.target_arc);
  return out;
}

}  // namespace serret
