#pragma once

// Integer relations (PSLQ) and minimal-polynomial recognition.

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "serret/curves.hpp"
#include "serret/error.hpp"
#include "serret/numkernel.hpp"

namespace serret {

using IntegerRelation = std::vector<mpz_class>;

namespace detail {

inline BigReal from_integer(const mpz_class& z) {
  BigReal r;
  mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline mpz_class nearest_integer(const BigReal& x) {
  const BigReal r = round(x);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  return z;
}

inline double log10_height(long long max_height) { return std::log10(static_cast<double>(std::max(2LL, max_height))); }

}  // namespace detail

/// Smallest precision (decimal digits) at which pslq accepts n inputs with
/// coefficients bounded by max_height.
inline int pslq_required_digits(std::size_t n, long long max_height) {
  return static_cast<int>(std::ceil(20.0 + static_cast<double>(n) * detail::log10_height(max_height)));
}

/// PSLQ (Ferguson, Bailey and Arno) with gamma = sqrt(4/3).
///
/// Returns integers m, not all zero and bounded by max_height, with
/// |sum m_i x_i| < 10^(-0.8 digits) |x|, or nullopt once the norm bound
/// proves no such relation exists or the iteration budget is spent. The
/// relation is sign-normalized so that its first non-zero entry is positive.
inline std::optional<IntegerRelation> pslq(const std::vector<BigReal>& xs, long long max_height,
                                           const PrecisionContext& ctx) {
  const std::size_t n = xs.size();
  if (n == 0) throw DomainError("pslq requires at least one value");
  if (max_height < 1) throw ConfigurationError("max_height must be >= 1");
  if (ctx.digits < pslq_required_digits(n, max_height)) {
    throw ConfigurationError("pslq needs at least " + std::to_string(pslq_required_digits(n, max_height)) +
                             " digits for " + std::to_string(n) + " values with height " +
                             std::to_string(max_height) + "; have " + std::to_string(ctx.digits));
  }
  const PrecisionScope scope(ctx);
  const BigReal bound = pow10(ctx.digits);
  for (const auto& x : xs) {
    if (abs(x) > bound) throw DomainError("pslq inputs must satisfy |x| <= 10^digits");
  }
  const BigReal zero_tol = pow10(-ctx.digits);
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(xs[i]) <= zero_tol) {
      IntegerRelation e(n, 0);
      e[i] = 1;
      return e;
    }
  }
  if (n == 1) return std::nullopt;

  const BigReal gamma = sqrt(BigReal(4) / BigReal(3));
  const BigReal tol = pow10(-static_cast<long>(std::floor(0.8 * ctx.digits)));

  // s_k = sqrt(sum_{j >= k} x_j^2), normalized by s_0.
  std::vector<BigReal> s(n);
  {
    BigReal acc;
    for (std::size_t k = n; k-- > 0;) {
      acc += xs[k] * xs[k];
      s[k] = sqrt(acc);
    }
  }
  const BigReal norm = s[0];
  std::vector<BigReal> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = xs[i] / norm;
    s[i] /= norm;
  }

  // H is n x (n-1), lower trapezoidal.
  std::vector<std::vector<BigReal>> h(n, std::vector<BigReal>(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n - 1; ++j) {
      if (j < i) {
        h[i][j] = -y[i] * y[j] / (s[j] * s[j + 1]);
      } else if (j == i) {
        h[i][j] = s[i + 1] / s[i];
      }
    }
  }
  std::vector<std::vector<mpz_class>> b(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;

  auto reduce_row = [&](std::size_t i, std::size_t j_max) {
    for (std::size_t jj = j_max + 1; jj-- > 0;) {
      if (h[jj][jj].is_zero()) continue;
      const mpz_class t = detail::nearest_integer(h[i][jj] / h[jj][jj]);
      if (t == 0) continue;
      const BigReal tr = detail::from_integer(t);
      y[jj] += tr * y[i];
      for (std::size_t k = 0; k <= jj; ++k) h[i][k] -= tr * h[jj][k];
      for (std::size_t k = 0; k < n; ++k) b[k][jj] += t * b[k][i];
    }
  };
  for (std::size_t i = 1; i < n; ++i) reduce_row(i, i - 1);

  const mpz_class height_bound(std::to_string(max_height));
  const long max_steps = 2000L * static_cast<long>(n * n);
  const BigReal height_real = detail::from_integer(height_bound);
  for (long step = 0; step < max_steps; ++step) {
    // Pick m maximizing gamma^(i+1) |H_ii|.
    std::size_t m = 0;
    BigReal best(-1);
    BigReal gpow = gamma;
    for (std::size_t i = 0; i < n - 1; ++i) {
      const BigReal v = gpow * abs(h[i][i]);
      if (v > best) {
        best = v;
        m = i;
      }
      gpow *= gamma;
    }
    std::swap(y[m], y[m + 1]);
    std::swap(h[m], h[m + 1]);
    for (std::size_t k = 0; k < n; ++k) std::swap(b[k][m], b[k][m + 1]);
    if (m + 2 < n) {
      const BigReal t0 = sqrt(h[m][m] * h[m][m] + h[m][m + 1] * h[m][m + 1]);
      if (t0.is_zero()) break;
      const BigReal t1 = h[m][m] / t0;
      const BigReal t2 = h[m][m + 1] / t0;
      for (std::size_t i = m; i < n; ++i) {
        const BigReal t3 = h[i][m];
        const BigReal t4 = h[i][m + 1];
        h[i][m] = t1 * t3 + t2 * t4;
        h[i][m + 1] = t1 * t4 - t2 * t3;
      }
    }
    for (std::size_t i = m + 1; i < n; ++i) reduce_row(i, std::min(i - 1, m + 1));

    // A column of B whose y entry vanishes is a relation.
    for (std::size_t i = 0; i < n; ++i) {
      if (abs(y[i]) >= tol) continue;
      IntegerRelation rel(n);
      bool small = true;
      bool nonzero = false;
      for (std::size_t k = 0; k < n; ++k) {
        rel[k] = b[k][i];
        if (abs(rel[k]) > height_bound) small = false;
        if (rel[k] != 0) nonzero = true;
      }
      if (!small || !nonzero) continue;
      for (const auto& c : rel) {
        if (c != 0) {
          if (c < 0) {
            for (auto& r : rel) r = -r;
          }
          break;
        }
      }
      return rel;
    }
    // Any relation has norm >= 1 / max |H_jj|.
    BigReal largest;
    for (std::size_t i = 0; i < n - 1; ++i) largest = max(largest, abs(h[i][i]));
    if (largest.is_zero()) break;
    if (BigReal(1) / largest > height_real * sqrt(BigReal(static_cast<long>(n)))) return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Minimal polynomials

enum class MinPolyStatus { found, none };

struct MinPolyCandidate {
  std::vector<mpz_class> coeffs;  // low degree first
  int degree = 0;
  BigReal residual;                // |p(alpha)| at the working precision
  mpz_class height = 0;
  MinPolyStatus status = MinPolyStatus::none;
  int requested_degree = 0;
  int searched_degree = 0;         // may be below requested_degree when precision caps it
  std::string verification;        // passed | skipped (literal input) | not-run
  BigReal verification_residual;   // |p(alpha)| recomputed at digits + 40
};

// Recomputes the constant at a given precision.
using ConstantProducer = std::function<BigReal(const PrecisionContext&)>;

inline BigReal evaluate_polynomial(const std::vector<mpz_class>& coeffs, const BigReal& x) {
  BigReal acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + detail::from_integer(coeffs[i]);
  return acc;
}

/// Highest polynomial degree pslq can search at ctx for this height.
inline int max_searchable_degree(long long max_height, const PrecisionContext& ctx) {
  int d = 0;
  while (pslq_required_digits(static_cast<std::size_t>(d + 2), max_height) <= ctx.digits) ++d;
  return d;
}

namespace detail {

inline void normalize_polynomial(std::vector<mpz_class>& coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  mpz_class g = 0;
  for (const auto& c : coeffs) g = gcd(g, c);
  if (g > 1) {
    for (auto& c : coeffs) c /= g;
  }
  if (coeffs.back() < 0) {
    for (auto& c : coeffs) c = -c;
  }
}

inline MinPolyCandidate search_minpoly(const BigReal& alpha, int max_degree, long long max_height,
                                       const PrecisionContext& ctx) {
  if (max_degree < 1) throw ConfigurationError("max_degree must be >= 1");
  const PrecisionScope scope(ctx);
  MinPolyCandidate out;
  out.requested_degree = max_degree;
  out.verification = "not-run";
  const int reachable = max_searchable_degree(max_height, ctx);
  if (reachable < 1) {
    throw ConfigurationError("precision of " + std::to_string(ctx.digits) +
                             " digits cannot support height " + std::to_string(max_height));
  }
  const int top = std::min(max_degree, reachable);
  std::vector<BigReal> powers{BigReal(1)};
  for (int d = 1; d <= top; ++d) {
    powers.push_back(powers.back() * alpha);
    out.searched_degree = d;
    auto rel = pslq(powers, max_height, ctx);
    if (!rel) continue;
    normalize_polynomial(*rel);
    out.coeffs = std::move(*rel);
    out.degree = static_cast<int>(out.coeffs.size()) - 1;
    if (out.degree < 1) {
      // A constant relation only arises from alpha = 0 style inputs.
      out.coeffs.clear();
      continue;
    }
    out.residual = abs(evaluate_polynomial(out.coeffs, alpha));
    out.height = 0;
    for (const auto& c : out.coeffs) out.height = std::max(out.height, mpz_class(abs(c)));
    out.status = MinPolyStatus::found;
    return out;
  }
  out.degree = 0;
  out.status = MinPolyStatus::none;
  return out;
}

}  // namespace detail

/// Runs pslq on (1, alpha, ..., alpha^d) for d = 1, 2, ... and returns the
/// first relation found as a primitive polynomial with positive leading
/// coefficient. The candidate is re-verified by recomputing alpha at
/// digits + 40: the residual must shrink by a factor 10^-30 or reach the
/// rounding floor of the wider precision, otherwise SpuriousRelationError.
///
/// The searched degree is capped by what pslq can support at ctx; the cap is
/// reported in searched_degree.
inline MinPolyCandidate minpoly(const ConstantProducer& producer, int max_degree, long long max_height,
                                const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const BigReal alpha = producer(ctx);
  MinPolyCandidate out = detail::search_minpoly(alpha, max_degree, max_height, ctx);
  if (out.status != MinPolyStatus::found) return out;

  const auto wide = ctx.with_digits(ctx.digits + 40);
  const PrecisionScope wide_scope(wide);
  const BigReal alpha_wide = producer(wide);
  out.verification_residual = abs(evaluate_polynomial(out.coeffs, alpha_wide));
  const BigReal floor_residual =
      pow10(-(ctx.digits + 30)) * detail::from_integer(out.height) * BigReal(out.degree + 1);
  const BigReal shrink = pow10(-30) * out.residual;
  if (out.verification_residual > max(shrink, floor_residual)) {
    throw SpuriousRelationError("relation does not persist at " + std::to_string(wide.digits) +
                                " digits: residual " + to_decimal(out.verification_residual, 6) + " vs " +
                                to_decimal(out.residual, 6));
  }
  out.verification = "passed";
  return out;
}

/// Minimal polynomial of a fixed value that cannot be recomputed (a decimal
/// literal). No re-verification is possible.
inline MinPolyCandidate minpoly(const BigReal& alpha, int max_degree, long long max_height,
                                const PrecisionContext& ctx) {
  MinPolyCandidate out = detail::search_minpoly(alpha, max_degree, max_height, ctx);
  if (out.status == MinPolyStatus::found) out.verification = "skipped";
  return out;
}

/// Human-readable polynomial in x, highest degree first.
inline std::string polynomial_text(const std::vector<mpz_class>& coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const mpz_class& c = coeffs[i];
    if (c == 0) continue;
    const mpz_class mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1 && i > 0;
    if (!unit) out += mag.get_str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Documented degree bounds

inline long totient(long n) {
  if (n < 1) throw DomainError("totient requires n >= 1");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

struct DegreeBound {
  std::string field;      // field known to contain the division radii
  int bound = 0;          // degree cap used for minpoly
  std::string kind;       // "field-degree" or "configured-cap"
};

/// Field containing the division radii s_i of the l-division of C_n, n in
/// {1, 2, 3}, with the degree cap used for the relation search.
inline DegreeBound documented_degree_bound(const CurveSpec& curve, long l, int configured_cap = 16) {
  if (l < 1) throw DomainError("l must be >= 1");
  const auto* e = std::get_if<Erdos>(&curve);
  if (!e || e->n < 1 || e->n > 3) throw DomainError("degree bounds are documented for C_1, C_2 and C_3 only");
  const std::string ls = std::to_string(l);
  switch (e->n) {
    case 1:
      return {"Q(zeta_" + std::to_string(4 * l) + "), degree phi(" + std::to_string(4 * l) + ")",
              static_cast<int>(totient(4 * l)), "field-degree"};
    case 2:
      return {"ray class field of Q(i) of modulus " + std::to_string(4 * l) +
                  " (4l-torsion of the lemniscatic elliptic curve)",
              configured_cap, "configured-cap"};
    default:
      return {"extension of degree <= 2 of the ray class field of Q(zeta_3) of modulus " + std::to_string(2 * l) +
                  "Z[zeta_3]",
              configured_cap, "configured-cap"};
  }
}

}  // namespace serret
