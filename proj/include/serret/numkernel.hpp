#pragma once

// Configurable-precision real arithmetic.
//
// BigReal is a thin RAII value type over an MPFR float. It does not store a
// precision context: new values are created at the ambient working precision
// of the calling thread, which a PrecisionScope sets for its lifetime. Every
// public operation in the library that takes a PrecisionContext opens such a
// scope, so callers never manage the ambient precision by hand.

#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <ostream>
#include <utility>

#include "serret/error.hpp"

namespace serret {

/// Requested decimal accuracy plus the guard digits carried internally.
struct PrecisionContext {
  int digits = 50;
  int guard_digits = 15;

  int working_digits() const noexcept { return digits + guard_digits; }

  mpfr_prec_t bits() const noexcept {
    return static_cast<mpfr_prec_t>(std::ceil(working_digits() * 3.321928094887362)) + 8;
  }

  // Same guard digits, different target accuracy. Not range-checked: used
  // internally for coarse and verification passes.
  PrecisionContext with_digits(int new_digits) const noexcept {
    return PrecisionContext{new_digits, guard_digits};
  }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;
};

inline constexpr int kMinDigits = 15;
inline constexpr int kMaxDigits = 1000;

inline PrecisionContext make_context(int digits, int guard_digits = 15) {
  if (digits < kMinDigits || digits > kMaxDigits) {
    throw ConfigurationError("digits must lie in [" + std::to_string(kMinDigits) + ", " +
                             std::to_string(kMaxDigits) + "], got " + std::to_string(digits));
  }
  if (guard_digits < 5) {
    throw ConfigurationError("guard_digits must be at least 5, got " + std::to_string(guard_digits));
  }
  return PrecisionContext{digits, guard_digits};
}

namespace detail {
inline thread_local mpfr_prec_t ambient_bits = 256;
}  // namespace detail

inline mpfr_prec_t ambient_precision() noexcept { return detail::ambient_bits; }

// Sets the thread's working precision until destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx) noexcept : saved_(detail::ambient_bits) {
    detail::ambient_bits = ctx.bits();
  }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;
  ~PrecisionScope() { detail::ambient_bits = saved_; }

 private:
  mpfr_prec_t saved_;
};

class BigReal {
 public:
  BigReal() {
    mpfr_init2(v_, ambient_precision());
    mpfr_set_zero(v_, 1);
  }
  BigReal(int x) : BigReal(static_cast<long>(x)) {}
  BigReal(long x) {
    mpfr_init2(v_, ambient_precision());
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigReal(long long x) : BigReal(static_cast<long>(x)) {}
  BigReal(unsigned long x) {
    mpfr_init2(v_, ambient_precision());
    mpfr_set_ui(v_, x, MPFR_RNDN);
  }
  BigReal(double x) {
    mpfr_init2(v_, ambient_precision());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }

  // Accepts a decimal literal ("-1.25e-3") or a ratio of two decimal
  // literals ("4/5", "1/1.25").
  explicit BigReal(std::string_view text) {
    mpfr_init2(v_, ambient_precision());
    try {
      parse_into(v_, text);
    } catch (...) {
      mpfr_clear(v_);
      throw;
    }
  }

  BigReal(const BigReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }
  bool fits_long() const noexcept { return mpfr_fits_slong_p(v_, MPFR_RNDN) != 0; }

  // Decimal exponent e with |x| in [10^(e-1), 10^e); meaningless for zero.
  long decimal_exponent() const {
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, 2, v_, MPFR_RNDN);
    mpfr_free_str(s);
    return static_cast<long>(e);
  }

  BigReal operator-() const {
    BigReal r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator-=(const BigReal& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator*=(const BigReal& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator/=(const BigReal& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    BigReal r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) noexcept {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }

 private:
  static void set_decimal(mpfr_ptr dst, std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.empty() || mpfr_set_str(dst, s.c_str(), 10, MPFR_RNDN) != 0) {
      throw DomainError("not a decimal literal: '" + std::string(text) + "'");
    }
  }

  static void parse_into(mpfr_ptr dst, std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      set_decimal(dst, text);
      return;
    }
    set_decimal(dst, text.substr(0, slash));
    BigReal den;
    set_decimal(den.v_, text.substr(slash + 1));
    if (den.is_zero()) throw DomainError("zero denominator in literal '" + std::string(text) + "'");
    mpfr_div(dst, dst, den.v_, MPFR_RNDN);
  }

  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// Elementary functions. All results are produced at the ambient precision.

namespace detail {
template <class Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r;
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }

inline BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  return detail::unary(x, mpfr_sqrt);
}

inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal expm1(const BigReal& x) { return detail::unary(x, mpfr_expm1); }

inline BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive number");
  return detail::unary(x, mpfr_log);
}

inline BigReal log1p(const BigReal& x) {
  if (x <= BigReal(-1)) throw DomainError("log1p argument must exceed -1");
  return detail::unary(x, mpfr_log1p);
}

inline BigReal sin(const BigReal& x) { return detail::unary(x, mpfr_sin); }
inline BigReal cos(const BigReal& x) { return detail::unary(x, mpfr_cos); }
inline BigReal tan(const BigReal& x) { return detail::unary(x, mpfr_tan); }
inline BigReal atan(const BigReal& x) { return detail::unary(x, mpfr_atan); }
inline BigReal sinh(const BigReal& x) { return detail::unary(x, mpfr_sinh); }
inline BigReal cosh(const BigReal& x) { return detail::unary(x, mpfr_cosh); }
inline BigReal tanh(const BigReal& x) { return detail::unary(x, mpfr_tanh); }
inline BigReal asinh(const BigReal& x) { return detail::unary(x, mpfr_asinh); }

inline BigReal acos(const BigReal& x) {
  if (abs(x) > BigReal(1)) throw DomainError("acos argument outside [-1, 1]");
  return detail::unary(x, mpfr_acos);
}

inline BigReal asin(const BigReal& x) {
  if (abs(x) > BigReal(1)) throw DomainError("asin argument outside [-1, 1]");
  return detail::unary(x, mpfr_asin);
}

inline BigReal atan2(const BigReal& y, const BigReal& x) {
  if (y.is_zero() && x.is_zero()) throw DomainError("atan2(0, 0) is undefined");
  BigReal r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

// Real power: x > 0 with any exponent, or x = 0 with a positive exponent.
inline BigReal pow(const BigReal& x, const BigReal& p) {
  if (x.sign() < 0 || (x.is_zero() && p.sign() <= 0)) {
    throw DomainError("pow requires x > 0, or x = 0 with a positive exponent");
  }
  BigReal r;
  mpfr_pow(r.get(), x.get(), p.get(), MPFR_RNDN);
  return r;
}

// Integer power, any sign of x (0^0 = 1).
inline BigReal pow(const BigReal& x, long n) {
  if (x.is_zero() && n < 0) throw DomainError("pow(0, negative integer)");
  BigReal r;
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

inline BigReal floor(const BigReal& x) {
  BigReal r;
  mpfr_floor(r.get(), x.get());
  return r;
}

// Nearest integer, ties away from zero.
inline BigReal round(const BigReal& x) {
  BigReal r;
  mpfr_round(r.get(), x.get());
  return r;
}

// x * 2^e, exact.
inline BigReal ldexp(const BigReal& x, long e) {
  BigReal r;
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

inline const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
inline const BigReal& min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

// 10^e at the ambient precision.
inline BigReal pow10(long e) {
  BigReal r;
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

inline BigReal pi(const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  BigReal r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

// Ambient-precision pi, for code already running inside a scope.
inline BigReal pi() {
  BigReal r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

// 10^(-digits): the absolute accuracy unit of a context.
inline BigReal epsilon(const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  return pow10(-ctx.digits);
}

// ---------------------------------------------------------------------------
// Context-level dispatcher over the elementary operations.

enum class ElementaryOp { add, sub, mul, div, sqrt, pow, exp, log, sin, cos, atan2 };

inline BigReal elementary(ElementaryOp op, std::span<const BigReal> args, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw ConfigurationError("elementary operation expects " + std::to_string(n) + " argument(s)");
    }
  };
  switch (op) {
    case ElementaryOp::add: need(2); return args[0] + args[1];
    case ElementaryOp::sub: need(2); return args[0] - args[1];
    case ElementaryOp::mul: need(2); return args[0] * args[1];
    case ElementaryOp::div: need(2); return args[0] / args[1];
    case ElementaryOp::sqrt: need(1); return sqrt(args[0]);
    case ElementaryOp::pow: need(2); return pow(args[0], args[1]);
    case ElementaryOp::exp: need(1); return exp(args[0]);
    case ElementaryOp::log: need(1); return log(args[0]);
    case ElementaryOp::sin: need(1); return sin(args[0]);
    case ElementaryOp::cos: need(1); return cos(args[0]);
    case ElementaryOp::atan2: need(2); return atan2(args[0], args[1]);
  }
  throw ConfigurationError("unknown elementary operation");
}

// ---------------------------------------------------------------------------
// Decimal serialization: exactly `digits` significant digits. Plain notation
// when the decimal exponent is moderate, otherwise d.ddd...e+X.

inline std::string to_decimal(const BigReal& x, int digits) {
  if (digits < 1) digits = 1;
  if (x.is_zero()) return "0." + std::string(static_cast<std::size_t>(digits > 1 ? digits - 1 : 1), '0');
  if (!x.is_finite()) throw DomainError("cannot serialize a non-finite value");

  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), x.get(), MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(mant.begin());
  }
  // value = 0.mant * 10^e
  const long exp10 = static_cast<long>(e);
  if (exp10 > 0 && exp10 < digits) {
    return sign + mant.substr(0, static_cast<std::size_t>(exp10)) + "." +
           mant.substr(static_cast<std::size_t>(exp10));
  }
  if (exp10 <= 0 && exp10 > -6) {
    return sign + "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
  }
  std::string out = sign + mant.substr(0, 1) + ".";
  out += mant.size() > 1 ? mant.substr(1) : std::string("0");
  const long sci = exp10 - 1;
  out += sci < 0 ? "e-" : "e+";
  out += std::to_string(sci < 0 ? -sci : sci);
  return out;
}

// Diagnostic output with 30 significant digits.
inline std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << to_decimal(x, 30); }

inline BigReal from_decimal(std::string_view text, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  return BigReal(text);
}

}  // namespace serret
