#pragma once

// Catalog of Serret curves: polar equations, arc-length integrands and total
// lengths, each available as a closed form and as an independent quadrature.
//
//   Erdos{n}          |z^n - 1| = 1,      r^n = 2 cos(n theta)
//   Sinusoidal{a, b}  r^q = 2 cos(q theta), q = a/b
//   Regular{a, k}     |z^k - a^k| = 1,    a != 1 (k = 2: Cassini ovals)
//   PolyLemniscate    |P(z)| = 1 for an arbitrary complex polynomial

#include <cmath>
#include <numeric>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "serret/error.hpp"
#include "serret/numkernel.hpp"
#include "serret/quadrature.hpp"
#include "serret/specfun.hpp"

namespace serret {

// A real number kept as the quotient of two decimal literals, so that it can
// be re-evaluated exactly at any precision.
struct ExactReal {
  std::string numerator = "0";
  std::string denominator = "1";

  static ExactReal parse(std::string_view text) {
    ExactReal out;
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      out.numerator = std::string(text);
    } else {
      out.numerator = std::string(text.substr(0, slash));
      out.denominator = std::string(text.substr(slash + 1));
    }
    // Validates both literals.
    const PrecisionScope scope(make_context(20));
    const BigReal den(out.denominator);
    const BigReal num(out.numerator);
    if (den.is_zero()) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return out;
  }

  static ExactReal integer(long v) { return ExactReal{std::to_string(v), "1"}; }

  BigReal value() const { return BigReal(numerator) / BigReal(denominator); }
  double to_double() const { return value().to_double(); }
  ExactReal reciprocal() const { return ExactReal{denominator, numerator}; }
  std::string text() const { return denominator == "1" ? numerator : numerator + "/" + denominator; }
};

struct Erdos {
  int n = 1;
};

struct Sinusoidal {
  int a = 1;
  int b = 1;
};

struct Regular {
  ExactReal a;
  int k = 2;
};

struct ComplexCoefficient {
  ExactReal re;
  ExactReal im = ExactReal{"0", "1"};
};

// Coefficients from the highest degree down to the constant term.
struct PolyLemniscate {
  std::vector<ComplexCoefficient> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

using CurveSpec = std::variant<Erdos, Sinusoidal, Regular, PolyLemniscate>;

struct PolarPoint {
  BigReal r;
  BigReal theta;
};

enum class Branch { outer, inner };

inline void validate(const CurveSpec& curve) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Erdos>) {
          if (c.n < 1) throw ConfigurationError("Erdos lemniscate requires n >= 1");
        } else if constexpr (std::is_same_v<T, Sinusoidal>) {
          if (c.a < 1 || c.b < 1) throw ConfigurationError("sinusoidal spiral requires a, b >= 1");
          if (std::gcd(c.a, c.b) != 1) throw ConfigurationError("sinusoidal spiral requires gcd(a, b) = 1");
        } else if constexpr (std::is_same_v<T, Regular>) {
          if (c.k < 1) throw ConfigurationError("regular lemniscate requires k >= 1");
          const PrecisionScope scope(make_context(30));
          const BigReal a = c.a.value();
          if (a.sign() <= 0) throw ConfigurationError("regular lemniscate requires a > 0");
          if (a == BigReal(1)) throw ConfigurationError("regular lemniscate requires a != 1 (use Erdos)");
        } else {
          if (c.degree() < 1) throw ConfigurationError("polynomial lemniscate requires degree >= 1");
          const PrecisionScope scope(make_context(30));
          if (c.coeffs.front().re.value().is_zero() && c.coeffs.front().im.value().is_zero()) {
            throw ConfigurationError("leading coefficient must be non-zero");
          }
        }
      },
      curve);
}

inline std::string describe(const CurveSpec& curve) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Erdos>) {
          return "erdos(n=" + std::to_string(c.n) + ")";
        } else if constexpr (std::is_same_v<T, Sinusoidal>) {
          return "sinusoidal(q=" + std::to_string(c.a) + "/" + std::to_string(c.b) + ")";
        } else if constexpr (std::is_same_v<T, Regular>) {
          return "regular(a=" + c.a.text() + ", k=" + std::to_string(c.k) + ")";
        } else {
          std::string s = "poly(";
          for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
            if (i) s += ",";
            s += c.coeffs[i].re.text();
            if (c.coeffs[i].im.numerator != "0") s += ":" + c.coeffs[i].im.text();
          }
          return s + ")";
        }
      },
      curve);
}

// Exponent q of the leaf equation r^q = 2 cos(q theta) for Erdos (q = n)
// and sinusoidal (q = a/b) curves.
inline BigReal leaf_exponent(const CurveSpec& curve) {
  if (const auto* e = std::get_if<Erdos>(&curve)) return BigReal(e->n);
  if (const auto* s = std::get_if<Sinusoidal>(&curve)) return BigReal(s->a) / BigReal(s->b);
  throw DomainError("leaf exponent is defined for Erdos and sinusoidal curves only");
}

// Number of leaves (Erdos: n, sinusoidal: a).
inline int leaf_count(const CurveSpec& curve) {
  if (const auto* e = std::get_if<Erdos>(&curve)) return e->n;
  if (const auto* s = std::get_if<Sinusoidal>(&curve)) return s->a;
  throw DomainError("leaf count is defined for Erdos and sinusoidal curves only");
}

namespace detail {

inline BigReal clamp_tiny_negative(const BigReal& x, const BigReal& slack, const char* what) {
  if (x.sign() >= 0) return x;
  if (-x <= slack) return BigReal(0);
  throw DomainError(what);
}

// 1 - s^e given s and one_minus_s = 1 - s, both accurate. Integer exponents
// use the factorization (1 - s)(1 + s + ... + s^(e-1)) near s = 1.
inline BigReal one_minus_power(const BigReal& exponent, const BigReal& s, const BigReal& one_minus_s) {
  const BigReal one(1);
  if (exponent.is_integer() && exponent <= BigReal(64)) {
    const long m = exponent.to_long();
    if (one_minus_s < BigReal(0.25)) {
      BigReal acc(1);
      for (long j = 1; j < m; ++j) acc = acc * s + one;
      return one_minus_s * acc;
    }
    return one - pow(s, m);
  }
  if (one_minus_s < BigReal(0.5)) return -expm1(exponent * log1p(-one_minus_s));
  if (s.sign() <= 0) return one;
  return one - exp(exponent * log(s));
}

}  // namespace detail

/// Radius on the polar curve at angle theta. Erdos and sinusoidal curves use
/// r = (2 cos(q theta))^(1/q) on the leaf |q theta| <= pi/2. Regular curves
/// solve r^2k - 2 a^k r^k cos(k theta) + a^2k - 1 = 0 for
/// r^k = a^k cos(k theta) +/- sqrt(1 - a^2k sin^2(k theta)); the inner (minus)
/// branch exists only for a > 1.
inline PolarPoint polar_radius(const CurveSpec& curve, const BigReal& theta, const PrecisionContext& ctx,
                               Branch branch = Branch::outer) {
  const PrecisionScope scope(ctx);
  const BigReal slack = pow10(-(ctx.digits - 2));
  if (std::holds_alternative<Erdos>(curve) || std::holds_alternative<Sinusoidal>(curve)) {
    validate(curve);
    if (branch == Branch::inner) throw DomainError("inner branch exists only for regular curves with a > 1");
    const BigReal q = leaf_exponent(curve);
    const BigReal half_pi = ldexp(pi(), -1);
    if (abs(q * theta) > half_pi * (BigReal(1) + slack)) {
      throw DomainError("theta outside the leaf |q theta| <= pi/2");
    }
    BigReal c = detail::clamp_tiny_negative(ldexp(cos(q * theta), 1), slack, "theta outside the leaf");
    BigReal r = c.is_zero() ? BigReal(0) : pow(c, BigReal(1) / q);
    return PolarPoint{std::move(r), theta};
  }
  if (const auto* reg = std::get_if<Regular>(&curve)) {
    validate(curve);
    const BigReal a = reg->a.value();
    const long k = reg->k;
    const BigReal ak = pow(a, k);
    const BigReal skt = sin(BigReal(k) * theta);
    const BigReal disc =
        detail::clamp_tiny_negative(BigReal(1) - ak * ak * skt * skt, slack,
                                    "theta outside the angular range of this component");
    const BigReal base = ak * cos(BigReal(k) * theta);
    BigReal rk;
    if (branch == Branch::outer) {
      rk = base + sqrt(disc);
    } else {
      if (!(a > BigReal(1))) throw DomainError("inner branch exists only for a > 1");
      rk = base - sqrt(disc);
    }
    rk = detail::clamp_tiny_negative(rk, slack, "theta outside the angular range of this component");
    BigReal r = rk.is_zero() ? BigReal(0) : pow(rk, BigReal(1) / BigReal(k));
    return PolarPoint{std::move(r), theta};
  }
  throw DomainError("polynomial lemniscates have no polar equation");
}

/// F(s_end) = int_0^s_end ds / sqrt(1 - s^(2q)), 0 <= s_end <= 1.
inline BigReal normalized_arc_integral(const BigReal& exponent_2q, const BigReal& s_end,
                                       const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  if (exponent_2q.sign() <= 0) throw DomainError("exponent 2q must be positive");
  if (s_end.sign() < 0 || s_end > one) throw DomainError("s_end must lie in [0, 1]");
  if (s_end.is_zero()) return BigReal(0);
  const BigReal gap = one - s_end;
  const Integrand f = [&](const Abscissa& s) {
    return one / sqrt(detail::one_minus_power(exponent_2q, s.x, gap + s.from_right));
  };
  return integrate(f, BigReal(0), s_end, ctx);
}

/// int_lo^hi ds / sqrt(1 - s^(2q)) over a sub-interval of [0, 1].
inline BigReal arc_integral_between(const BigReal& exponent_2q, const BigReal& lo, const BigReal& hi,
                                    const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  if (lo.sign() < 0 || hi > one || !(lo <= hi)) throw DomainError("need 0 <= lo <= hi <= 1");
  if (lo == hi) return BigReal(0);
  const BigReal gap = one - hi;
  const Integrand f = [&](const Abscissa& s) {
    return one / sqrt(detail::one_minus_power(exponent_2q, s.x, gap + s.from_right));
  };
  return integrate(f, lo, hi, ctx);
}

// ---------------------------------------------------------------------------
// Total lengths

struct LengthFormula {
  std::string name;
  std::string expression;
};

inline LengthFormula closed_form_formula(const CurveSpec& curve) {
  if (std::holds_alternative<Erdos>(curve)) return {"erdos-beta", "l(C_n) = 2^(1/n) B(1/2, 1/(2n))"};
  if (std::holds_alternative<Sinusoidal>(curve)) {
    return {"sinusoidal-beta", "l(C_q) = b 2^(1/q) B(1/2, 1/(2q)), q = a/b"};
  }
  if (const auto* reg = std::get_if<Regular>(&curve)) {
    const PrecisionScope scope(make_context(20));
    if (reg->a.value() > BigReal(1)) {
      return {"regular-inversion", "l(C_{a,k}) = a^-(k-1) l(C_{1/a,k}), l(C_{b,k}) = 2 pi 2F1((k-1)/2k, (k-1)/2k, 1; b^2k)"};
    }
    if (reg->k == 2) {
      return {"regular-2f1+cassini-k",
              "l(C_{a,2}) = 2 pi 2F1(1/4, 1/4, 1; a^4) = 4 K((1 - sqrt(1 - a^4))/2)"};
    }
    return {"regular-2f1", "l(C_{a,k}) = 2 pi 2F1((k-1)/2k, (k-1)/2k, 1; a^2k)"};
  }
  throw DomainError("no closed-form length for polynomial lemniscates");
}

inline LengthFormula quadrature_formula(const CurveSpec& curve) {
  if (std::holds_alternative<Erdos>(curve)) {
    return {"erdos-radial", "l(C_n) = 2n 2^(1/n) int_0^1 ds / sqrt(1 - s^2n)"};
  }
  if (std::holds_alternative<Sinusoidal>(curve)) {
    return {"sinusoidal-radial", "l(C_q) = 2a 2^(1/q) int_0^1 ds / sqrt(1 - s^2q)"};
  }
  if (const auto* reg = std::get_if<Regular>(&curve)) {
    const PrecisionScope scope(make_context(20));
    if (reg->a.value() > BigReal(1)) {
      return {"regular-radial",
              "l(C_{a,k}) = 2k int_{(a^k-1)^(1/k)}^{(a^k+1)^(1/k)} 2 r^k dr / "
              "sqrt((r^2k - (a^k-1)^2)((1+a^k)^2 - r^2k))"};
    }
    return {"regular-angular",
            "l(C_{a,k}) = 4 (1+a^k)^-((k-1)/k) int_0^(pi/2) (1 - 4a^k/(1+a^k)^2 sin^2 phi)^-((k-1)/2k) dphi"};
  }
  throw DomainError("no length for polynomial lemniscates");
}

/// 4 K((1 - sqrt(1 - a^4)) / 2): Cassini oval length, 0 < a < 1.
inline BigReal cassini_length_elliptic(const BigReal& a, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  if (!(a.sign() > 0 && a < one)) throw DomainError("Cassini elliptic length requires 0 < a < 1");
  const BigReal m = ldexp(one - sqrt(one - pow(a, 4L)), -1);
  return ldexp(ellip_k(m, ctx), 2);
}

/// 2 pi 2F1((k-1)/2k, (k-1)/2k, 1; a^2k), 0 < a < 1.
inline BigReal regular_length_hypergeometric(const BigReal& a, int k, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal e = BigReal(k - 1) / BigReal(2 * k);
  return ldexp(pi(), 1) * hyp2f1(e, e, BigReal(1), pow(a, 2L * k), ctx);
}

inline BigReal total_length_closed(const CurveSpec& curve, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  validate(curve);
  const BigReal one(1);
  const BigReal half(0.5);
  if (const auto* e = std::get_if<Erdos>(&curve)) {
    const BigReal n(e->n);
    return pow(BigReal(2), one / n) * beta(half, one / (ldexp(n, 1)), ctx);
  }
  if (const auto* s = std::get_if<Sinusoidal>(&curve)) {
    const BigReal q = BigReal(s->a) / BigReal(s->b);
    return BigReal(s->b) * pow(BigReal(2), one / q) * beta(half, one / ldexp(q, 1), ctx);
  }
  if (const auto* reg = std::get_if<Regular>(&curve)) {
    const BigReal a = reg->a.value();
    if (a > one) {
      const Regular inverse{reg->a.reciprocal(), reg->k};
      return pow(a, -static_cast<long>(reg->k - 1)) * total_length_closed(inverse, ctx);
    }
    BigReal length = regular_length_hypergeometric(a, reg->k, ctx);
    if (reg->k == 2) {
      const BigReal elliptic = cassini_length_elliptic(a, ctx);
      if (abs(length - elliptic) > pow10(-(ctx.digits - 3)) * max(one, abs(length))) {
        throw InternalConsistencyError("Cassini length: 2F1 and elliptic routes disagree");
      }
    }
    return length;
  }
  throw DomainError("no closed-form length for polynomial lemniscates");
}

namespace detail {

// 4 (1+a^k)^-((k-1)/k) int_0^(pi/2) (1 - beta sin^2 phi)^-((k-1)/2k) dphi, 0 < a < 1.
inline BigReal regular_length_angular(const BigReal& a, int k, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const BigReal ak = pow(a, static_cast<long>(k));
  const BigReal bk = (one + ak) * (one + ak);
  const BigReal beta_param = ldexp(ak, 2) / bk;
  const BigReal e = -BigReal(k - 1) / BigReal(2 * k);
  const Integrand f = [&](const Abscissa& phi) {
    const BigReal sp = sin(phi.x);
    return pow(one - beta_param * sp * sp, e);
  };
  const BigReal integral = integrate(f, BigReal(0), ldexp(pi(), -1), ctx);
  return ldexp(integral, 2) * pow(one + ak, -BigReal(k - 1) / BigReal(k));
}

// 2k int_{r0}^{r1} 2 r^k dr / sqrt((r^2k - r0^2k)(r1^2k - r^2k)) with
// r0 = (a^k - 1)^(1/k), r1 = (a^k + 1)^(1/k); a > 1.
inline BigReal regular_length_radial(const BigReal& a, int k, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const BigReal kk(k);
  const BigReal ak = pow(a, static_cast<long>(k));
  const BigReal r0k = ak - one;
  const BigReal r1k = ak + one;
  const BigReal r0 = pow(r0k, one / kk);
  const BigReal r1 = pow(r1k, one / kk);
  const Integrand f = [&](const Abscissa& r) {
    const BigReal rk = pow(r.x, static_cast<long>(k));
    // r^k - r0^k and r1^k - r^k without cancellation near the endpoints.
    const BigReal above = r0k * expm1(kk * log1p(r.from_left / r0));
    const BigReal below = -r1k * expm1(kk * log1p(-r.from_right / r1));
    return ldexp(rk, 1) / sqrt(above * (rk + r0k) * below * (r1k + rk));
  };
  return BigReal(2 * k) * integrate(f, r0, r1, ctx);
}

}  // namespace detail

inline BigReal total_length_quadrature(const CurveSpec& curve, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  validate(curve);
  const BigReal one(1);
  if (const auto* e = std::get_if<Erdos>(&curve)) {
    const BigReal n(e->n);
    return BigReal(2 * e->n) * pow(BigReal(2), one / n) * normalized_arc_integral(ldexp(n, 1), one, ctx);
  }
  if (const auto* s = std::get_if<Sinusoidal>(&curve)) {
    const BigReal q = BigReal(s->a) / BigReal(s->b);
    return BigReal(2 * s->a) * pow(BigReal(2), one / q) * normalized_arc_integral(ldexp(q, 1), one, ctx);
  }
  if (const auto* reg = std::get_if<Regular>(&curve)) {
    const BigReal a = reg->a.value();
    if (a > one) return detail::regular_length_radial(a, reg->k, ctx);
    return detail::regular_length_angular(a, reg->k, ctx);
  }
  throw DomainError("no length for polynomial lemniscates");
}

/// Arc length along the outer branch of a regular curve with a < 1 between
/// two angles: int r(theta) / sqrt(1 - a^2k sin^2(k theta)) dtheta.
inline BigReal polar_arc_length(const Regular& curve, const BigReal& theta_from, const BigReal& theta_to,
                                const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  const BigReal a = curve.a.value();
  if (!(a < one)) throw DomainError("polar arc length is implemented for a < 1");
  if (theta_from == theta_to) return BigReal(0);
  const long k = curve.k;
  const BigReal a2k = pow(a, 2 * k);
  const CurveSpec spec = curve;
  const Integrand f = [&](const Abscissa& t) {
    const BigReal skt = sin(BigReal(k) * t.x);
    const BigReal r = polar_radius(spec, t.x, ctx).r;
    return r / sqrt(one - a2k * skt * skt);
  };
  if (theta_from < theta_to) return integrate(f, theta_from, theta_to, ctx);
  return -integrate(f, theta_to, theta_from, ctx);
}

// ---------------------------------------------------------------------------
// Cassini reduced integral

// b = (1 - a^4) / a^4 as used by the reduced integral (not the 4a^k/(1+a^k)^2
// parameter of the hypergeometric form).
inline BigReal cassini_b(const BigReal& a) {
  const BigReal a4 = pow(a, 4L);
  return (BigReal(1) - a4) / a4;
}

inline BigReal cassini_lower_limit(const BigReal& a) { return sqrt(BigReal(1) - pow(a, 4L)); }

/// int_{sqrt(1-a^4)}^{v_upper} dv / sqrt(v (1 - v) (v^2 - (1 - a^4))), the bare
/// integral without the a^2 (4b)^(1/4) prefactor.
inline BigReal cassini_bare_integral(const BigReal& a, const BigReal& v_upper, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal one(1);
  if (!(a.sign() > 0 && a < one)) throw DomainError("Cassini integral requires 0 < a < 1");
  const BigReal c = cassini_lower_limit(a);
  if (v_upper < c || v_upper > one) throw DomainError("v_upper must lie in [sqrt(1 - a^4), 1]");
  if (v_upper == c) return BigReal(0);
  const BigReal gap = one - v_upper;
  const Integrand f = [&](const Abscissa& v) {
    const BigReal one_minus_v = gap + v.from_right;
    return one / sqrt(v.x * one_minus_v * v.from_left * (v.x + c));
  };
  return integrate(f, c, v_upper, ctx);
}

inline BigReal cassini_prefactor(const BigReal& a) {
  return a * a * pow(ldexp(cassini_b(a), 2), BigReal(0.25));
}

/// I = a^2 (4b)^(1/4) int_{sqrt(1-a^4)}^{v_upper} dv / sqrt(v (1-v) (v^2 - (1-a^4))),
/// b = (1 - a^4)/a^4. With v_upper = v(u) this is the combined length (times
/// 2a) of the arcs between polar angles (0, u/2) and (pi/2 - u/2, pi/2).
inline BigReal cassini_reduced_integral(const BigReal& a, const BigReal& v_upper, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal bare = cassini_bare_integral(a, v_upper, ctx);
  return cassini_prefactor(a) * bare;
}

/// v(u) = (cos^2(u)/b + 1)^(-1/2).
inline BigReal v_of_u(const BigReal& u, const BigReal& a, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  if (u.sign() < 0 || u > ldexp(pi(), -1) * (BigReal(1) + pow10(-(ctx.digits - 2)))) {
    throw DomainError("u must lie in [0, pi/2]");
  }
  const BigReal cu = cos(u);
  return BigReal(1) / sqrt(cu * cu / cassini_b(a) + BigReal(1));
}

/// cos(u) = sqrt(b) sqrt(v^-2 - 1), inverse of v_of_u.
inline BigReal cos_u_of_v(const BigReal& v, const BigReal& a, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal w = BigReal(1) / (v * v) - BigReal(1);
  return sqrt(cassini_b(a)) * sqrt(w.sign() < 0 ? BigReal(0) : w);
}

}  // namespace serret
