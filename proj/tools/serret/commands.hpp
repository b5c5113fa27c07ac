#pragma once

// Subcommand implementations. Each returns a Report and never prints; main.cpp
// owns argument parsing and stdout.

#include <cctype>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "serret/algebra.hpp"
#include "serret/curves.hpp"
#include "serret/division.hpp"
#include "serret/identities.hpp"
#include "serret/render.hpp"
#include "serret/specfun.hpp"

namespace serret::cli {

// Malformed flags or flag combinations (exit 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Output file could not be written (exit 4).
class IoError : public Error {
 public:
  using Error::Error;
};

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumeric = 3, kIo = 4 };

inline constexpr int kDefaultDigits = 50;

// --digits beats SERRET_DIGITS beats the default.
inline int resolve_digits(std::optional<int> flag, const char* env) {
  if (flag) return *flag;
  if (env && *env) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(env, &used);
      if (used != std::string(env).size()) throw UsageError("");
      return d;
    } catch (...) {
      throw UsageError(std::string("SERRET_DIGITS is not an integer: ") + env);
    }
  }
  return kDefaultDigits;
}

// ---------------------------------------------------------------------------
// Curve flags

struct CurveArgs {
  std::optional<int> erdos;
  std::string sinusoidal;            // a/b
  std::vector<std::string> regular;  // a=<x> k=<k>
  std::string cassini;               // a=<x>

  bool any() const { return erdos || !sinusoidal.empty() || !regular.empty() || !cassini.empty(); }
};

namespace detail {

inline long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size()) return v;
  } catch (...) {
  }
  throw UsageError(what + " must be an integer, got '" + text + "'");
}

inline ExactReal parse_exact(const std::string& text, const std::string& what) {
  const auto bad = [&] { return UsageError(what + " must be a decimal or p/q, got '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const auto check_decimal = [&](const std::string& s, bool allow_point) {
    if (s.empty()) throw bad();
    bool digit = false, point = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digit = true;
      } else if (c == '.' && allow_point && !point) {
        point = true;
      } else if ((c == '-' || c == '+') && i == 0) {
      } else {
        throw bad();
      }
    }
    if (!digit) throw bad();
  };
  if (slash == std::string::npos) {
    check_decimal(text, true);
  } else {
    check_decimal(text.substr(0, slash), false);
    check_decimal(text.substr(slash + 1), false);
    if (text.substr(slash + 1).find_first_not_of("0+") == std::string::npos) throw bad();
  }
  return ExactReal::parse(text);
}

// "key=value" tokens; bare values are accepted for `bare_key`.
inline std::string keyed_value(const std::vector<std::string>& tokens, const std::string& key,
                               const std::string& bare_key = "") {
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      if (key == bare_key) return t;
      continue;
    }
    if (t.substr(0, eq) == key) return t.substr(eq + 1);
  }
  return {};
}

inline Sinusoidal parse_sinusoidal(const std::string& text) {
  const auto slash = text.find('/');
  const long a = parse_long(text.substr(0, slash), "--sinusoidal numerator");
  const long b = slash == std::string::npos ? 1 : parse_long(text.substr(slash + 1), "--sinusoidal denominator");
  return Sinusoidal{static_cast<int>(a), static_cast<int>(b)};
}

}  // namespace detail

inline CurveSpec parse_curve(const CurveArgs& args) {
  const int chosen = (args.erdos ? 1 : 0) + (args.sinusoidal.empty() ? 0 : 1) + (args.regular.empty() ? 0 : 1) +
                     (args.cassini.empty() ? 0 : 1);
  if (chosen != 1) throw UsageError("choose exactly one of --erdos, --sinusoidal, --regular, --cassini");
  CurveSpec curve;
  if (args.erdos) {
    curve = Erdos{*args.erdos};
  } else if (!args.sinusoidal.empty()) {
    curve = detail::parse_sinusoidal(args.sinusoidal);
  } else if (!args.regular.empty()) {
    for (const auto& t : args.regular) {
      if (t.rfind("a=", 0) != 0 && t.rfind("k=", 0) != 0) throw UsageError("--regular expects a=<x> k=<k>, got '" + t + "'");
    }
    const std::string a = detail::keyed_value(args.regular, "a");
    const std::string k = detail::keyed_value(args.regular, "k");
    if (a.empty() || k.empty()) throw UsageError("--regular expects a=<x> k=<k>");
    curve = Regular{detail::parse_exact(a, "a"), static_cast<int>(detail::parse_long(k, "k"))};
  } else {
    const std::string a = detail::keyed_value({args.cassini}, "a", "a");
    curve = Regular{detail::parse_exact(a, "a"), 2};
  }
  try {
    validate(curve);
  } catch (const ConfigurationError& e) {
    throw UsageError(e.what());
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Shared row builders

namespace detail {

inline Json coefficient_list(const std::vector<mpz_class>& coeffs) {
  Json out = Json::array();
  for (const auto& c : coeffs) out.push_back(c.get_str());
  return out;
}

inline const char* status_text(MinPolyStatus s) { return s == MinPolyStatus::found ? "found" : "none"; }

inline Json minpoly_row(const Report& r, const MinPolyCandidate& c) {
  Json row = Json::object();
  row["status"] = status_text(c.status);
  if (c.status == MinPolyStatus::found) {
    row["polynomial"] = polynomial_text(c.coeffs);
    row["coefficients"] = coefficient_list(c.coeffs);
    row["degree"] = std::to_string(c.degree);
    row["height"] = c.height.get_str();
  }
  row["residual"] = r.number(c.residual);
  row["verification"] = c.verification;
  if (c.verification == "passed") row["verification_residual"] = r.number(c.verification_residual);
  row["requested_degree"] = std::to_string(c.requested_degree);
  row["searched_degree"] = std::to_string(c.searched_degree);
  return row;
}

inline Json spurious_row(const std::string& message) {
  Json row = Json::object();
  row["status"] = "spurious";
  row["residual"] = "";
  row["verification"] = "failed";
  row["message"] = message;
  return row;
}

inline BigReal default_tolerance(const PrecisionContext& ctx) { return pow10(-(ctx.digits - 5)); }

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::vector<Marker> markers_from(const std::vector<DivisionPoint>& points) {
  std::vector<Marker> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back({points[i].x.to_double(), points[i].y.to_double(), "P" + std::to_string(i)});
  }
  return out;
}

inline RenderOptions fitted_options(const std::vector<Polyline>& lines, const std::vector<Marker>& markers) {
  RenderOptions opts;
  opts.bbox = fit_bbox(lines, markers);
  return opts;
}

// Largest deviation of the traced vertices from the defining equation.
// Leaf curves: |w - 1| = 1 with w = r^q e^(i q theta), minimized over the b
// angle branches; regular: |z^k - a^k| = 1.
inline double polar_vertex_residual(const CurveSpec& curve, const std::vector<Polyline>& lines) {
  double worst = 0.0;
  for (const auto& line : lines) {
    for (const auto& p : line.points) {
      const std::complex<double> z(p.x, p.y);
      double err = 0.0;
      if (const auto* reg = std::get_if<Regular>(&curve)) {
        err = std::abs(std::abs(std::pow(z, reg->k) - std::pow(reg->a.to_double(), reg->k)) - 1.0);
      } else {
        const int b = std::holds_alternative<Sinusoidal>(curve) ? std::get<Sinusoidal>(curve).b : 1;
        const double q = std::holds_alternative<Sinusoidal>(curve)
                             ? static_cast<double>(std::get<Sinusoidal>(curve).a) / b
                             : std::get<Erdos>(curve).n;
        const double r = std::abs(z);
        if (r < 1e-300) continue;
        err = 1e300;
        for (int m = 0; m < b; ++m) {
          const double theta = std::arg(z) + 2.0 * M_PI * m;
          const auto w = std::polar(std::pow(r, q), q * theta);
          err = std::min(err, std::abs(std::abs(w - 1.0) - 1.0));
        }
      }
      worst = std::max(worst, err);
    }
  }
  return worst;
}

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// length

inline Report cmd_length(const CurveSpec& curve, int digits) {
  const auto ctx = make_context(digits);
  const PrecisionScope scope(ctx);
  Report r;
  r.command = "length";
  r.digits = digits;
  r.params["curve"] = describe(curve);

  const BigReal closed = total_length_closed(curve, ctx);
  const BigReal quad = total_length_quadrature(curve, ctx);
  const BigReal discrepancy = abs(closed - quad);
  const BigReal tol = detail::default_tolerance(ctx);
  const auto cf = closed_form_formula(curve);
  const auto qf = quadrature_formula(curve);

  Json row = Json::object();
  row["curve"] = describe(curve);
  row["length"] = r.number(closed);
  row["closed_form"] = r.number(closed);
  row["closed_form_formula"] = cf.name;
  row["quadrature"] = r.number(quad);
  row["quadrature_formula"] = qf.name;
  row["discrepancy"] = r.number(discrepancy);
  row["residual"] = r.number(discrepancy);
  row["tolerance"] = r.number(tol);
  const bool ok = discrepancy <= tol;
  row["passed"] = ok ? "true" : "false";
  r.results.push_back(std::move(row));
  r.citations = {cf.name + ": " + cf.expression, qf.name + ": " + qf.expression};
  r.exit_code = ok ? kOk : kVerificationFailed;
  r.summary = ok ? "closed form and quadrature agree" : "closed form and quadrature disagree";
  return r;
}

// ---------------------------------------------------------------------------
// divide

struct DivideArgs {
  CurveSpec curve;
  std::optional<long> parts;  // leaf curves
  std::optional<int> n;       // Cassini ovals
  bool minpoly = false;
  bool expand = false;
  std::optional<int> max_degree;
  long long max_height = 1000000;
  std::string svg_out;
};

inline Report cmd_divide(const DivideArgs& args, int digits) {
  const auto ctx = make_context(digits);
  const PrecisionScope scope(ctx);
  Report r;
  r.command = "divide";
  r.digits = digits;
  r.params["curve"] = describe(args.curve);
  const BigReal tol = detail::default_tolerance(ctx);
  bool ok = true;
  if (args.max_height < 1) throw UsageError("--max-height must be positive");
  if (args.max_degree && *args.max_degree < 1) throw UsageError("--max-degree must be positive");

  if (const auto* reg = std::get_if<Regular>(&args.curve)) {
    if (args.parts) throw UsageError("Cassini ovals take --n, not --parts");
    if (!args.n) throw UsageError("--n is required for Cassini ovals");
    if (reg->k != 2) throw UsageError("division is implemented for Cassini ovals (k = 2) only");
    if (args.expand) throw UsageError("--expand applies to leaf curves only");
    r.params["n"] = std::to_string(*args.n);
    const auto d = divide_cassini(reg->a, *args.n, ctx);
    Json row = Json::object();
    row["kind"] = "cassini";
    row["n"] = std::to_string(d.n);
    row["u"] = r.number(d.u);
    row["v_u"] = r.number(d.v_u);
    row["cos_u"] = r.number(d.cos_u);
    row["p_x"] = r.number(d.p.x);
    row["p_y"] = r.number(d.p.y);
    row["p_prime_x"] = r.number(d.p_prime.x);
    row["p_prime_y"] = r.number(d.p_prime.y);
    row["arc_length"] = r.number(d.arc_length);
    row["target_arc"] = r.number(d.target_arc);
    row["integral_residual"] = r.number(d.integral_residual);
    row["arc_residual"] = r.number(d.arc_residual);
    const BigReal residual = max(d.integral_residual, d.arc_residual);
    row["residual"] = r.number(residual);
    const bool arc_ok = residual <= tol;
    row["arc_check"] = arc_ok ? "passed" : "failed";
    ok = ok && arc_ok;
    r.results.push_back(std::move(row));
    r.citations = {"I(u) = ((n-1)/n) I(pi/2), arc from angle u/2 to pi/2 - u/2 equals l(C_a)/4n",
                   closed_form_formula(args.curve).name + ": " + closed_form_formula(args.curve).expression};

    if (args.minpoly) {
      const ExactReal a = reg->a;
      const int n = *args.n;
      const int degree = args.max_degree.value_or(8);
      Json row2;
      try {
        const auto cand = minpoly([a, n](const PrecisionContext& c) { return cassini_cos_u(a, n, c); }, degree,
                                  args.max_height, ctx);
        row2 = detail::minpoly_row(r, cand);
      } catch (const SpuriousRelationError& e) {
        row2 = detail::spurious_row(e.what());
        ok = false;
      }
      Json row3 = Json::object();
      row3["kind"] = "minpoly";
      row3["of"] = "cos_u";
      row3.update(row2);
      r.results.push_back(std::move(row3));
    }

    if (!args.svg_out.empty()) {
      const auto lines = trace_polar(args.curve, 720);
      std::vector<Marker> markers;
      const double px = d.p.x.to_double(), py = d.p.y.to_double();
      const double qx = d.p_prime.x.to_double(), qy = d.p_prime.y.to_double();
      markers.push_back({px, py, "P"});
      markers.push_back({qx, qy, "P'"});
      detail::write_file(args.svg_out, emit_svg(lines, markers, detail::fitted_options(lines, markers)));
      r.params["svg_out"] = args.svg_out;
    }
    r.exit_code = ok ? kOk : kVerificationFailed;
    r.summary = ok ? "division verified" : "division verification failed";
    return r;
  }

  if (args.n) throw UsageError("--n applies to Cassini ovals; use --parts");
  if (!args.parts) throw UsageError("--parts is required");
  const long l = *args.parts;
  if (l < 1) throw UsageError("--parts must be >= 1");
  r.params["parts"] = std::to_string(l);

  const auto points = divide_fundamental_arc(args.curve, l, ctx);
  for (const auto& p : points) {
    Json row = Json::object();
    row["kind"] = "point";
    row["index"] = std::to_string(p.index);
    row["fraction"] = std::to_string(p.fraction_num) + "/" + std::to_string(p.fraction_den);
    row["s"] = r.number(p.s);
    row["radius"] = r.number(p.radius);
    row["theta"] = r.number(p.theta);
    row["x"] = r.number(p.x);
    row["y"] = r.number(p.y);
    row["residual"] = r.number(p.residual);
    ok = ok && p.residual <= tol;
    r.results.push_back(std::move(row));
  }
  r.citations = {"s_i solves int_0^s ds / sqrt(1 - s^2q) = (i/l) int_0^1 ds / sqrt(1 - s^2q), r = 2^(1/q) s",
                 closed_form_formula(args.curve).name + ": " + closed_form_formula(args.curve).expression};

  if (args.minpoly) {
    std::optional<DegreeBound> bound;
    if (const auto* e = std::get_if<Erdos>(&args.curve); e && e->n <= 3) bound = documented_degree_bound(*e, l);
    const int degree = args.max_degree.value_or(bound ? bound->bound : 8);
    if (bound) r.citations.push_back("degree bound: " + bound->field);
    for (long i = 1; i < l; ++i) {
      const CurveSpec curve = args.curve;
      Json row = Json::object();
      row["kind"] = "minpoly";
      row["of"] = "s";
      row["index"] = std::to_string(i);
      try {
        const auto cand = minpoly([curve, l, i](const PrecisionContext& c) { return division_s(curve, l, i, c).x; },
                                  degree, args.max_height, ctx);
        row.update(detail::minpoly_row(r, cand));
      } catch (const SpuriousRelationError& e) {
        row.update(detail::spurious_row(e.what()));
        ok = false;
      }
      if (bound) {
        row["degree_bound"] = std::to_string(bound->bound);
        row["degree_bound_kind"] = bound->kind;
      }
      r.results.push_back(std::move(row));
    }
  }

  std::vector<DivisionPoint> full;
  if (args.expand || !args.svg_out.empty()) full = expand_by_symmetry(args.curve, points);
  if (args.expand) {
    for (const auto& p : full) {
      Json row = Json::object();
      row["kind"] = "expanded";
      row["index"] = std::to_string(p.index);
      row["fraction"] = std::to_string(p.fraction_num) + "/" + std::to_string(p.fraction_den);
      row["x"] = r.number(p.x);
      row["y"] = r.number(p.y);
      row["residual"] = r.number(p.residual);
      r.results.push_back(std::move(row));
    }
    const auto arcs = partition_arc_lengths(args.curve, points, ctx);
    const BigReal target = total_length_closed(args.curve, ctx) / BigReal(static_cast<long>(arcs.size()));
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      Json row = Json::object();
      row["kind"] = "arc";
      row["index"] = std::to_string(i);
      row["length"] = r.number(arcs[i]);
      row["target"] = r.number(target);
      const BigReal residual = abs(arcs[i] - target);
      row["residual"] = r.number(residual);
      ok = ok && residual <= tol;
      r.results.push_back(std::move(row));
    }
  }
  if (!args.svg_out.empty()) {
    const auto lines = trace_polar(args.curve, 720);
    const auto markers = detail::markers_from(full);
    detail::write_file(args.svg_out, emit_svg(lines, markers, detail::fitted_options(lines, markers)));
    r.params["svg_out"] = args.svg_out;
  }
  r.exit_code = ok ? kOk : kVerificationFailed;
  r.summary = ok ? "division verified" : "division verification failed";
  return r;
}

// ---------------------------------------------------------------------------
// identities

inline Report cmd_identities(int digits, std::optional<long> forced_tolerance_exponent) {
  const auto ctx = make_context(digits);
  const PrecisionScope scope(ctx);
  Report r;
  r.command = "identities";
  r.digits = digits;
  const auto reports = run_all_identities(ctx, forced_tolerance_exponent);
  int passed = 0;
  for (const auto& rep : reports) {
    Json row = Json::object();
    row["name"] = rep.name;
    row["statement"] = rep.statement;
    row["cases"] = std::to_string(rep.rows.size());
    row["max_residual"] = r.number(rep.max_residual);
    row["residual"] = r.number(rep.max_residual);
    row["tolerance"] = r.number(rep.tolerance);
    row["passed"] = rep.passed ? "true" : "false";
    passed += rep.passed ? 1 : 0;
    r.results.push_back(std::move(row));
    r.citations.push_back(rep.name + ": " + rep.statement);
  }
  r.summary = std::to_string(passed) + "/" + std::to_string(reports.size()) + " identity checks passed";
  r.exit_code = passed == static_cast<int>(reports.size()) ? kOk : kVerificationFailed;
  return r;
}

// ---------------------------------------------------------------------------
// minpoly

struct MinpolyArgs {
  std::string literal;
  std::string constant;
  std::string from;
  int max_degree = 8;
  long long max_height = 1000000;
};

namespace detail {

inline ConstantProducer named_constant(const std::string& name) {
  const auto wrap = [](auto f) {
    return ConstantProducer([f](const PrecisionContext& c) {
      const PrecisionScope scope(c);
      return f(c);
    });
  };
  if (name == "pi") return wrap([](const PrecisionContext& c) { return pi(c); });
  if (name == "e") return wrap([](const PrecisionContext&) { return exp(BigReal(1)); });
  if (name == "ln2") return wrap([](const PrecisionContext&) { return log(BigReal(2)); });
  if (name == "sqrt2") return wrap([](const PrecisionContext&) { return sqrt(BigReal(2)); });
  if (name == "sqrt3") return wrap([](const PrecisionContext&) { return sqrt(BigReal(3)); });
  if (name == "golden") return wrap([](const PrecisionContext&) { return (BigReal(1) + sqrt(BigReal(5))) / BigReal(2); });
  if (name == "varpi") {
    // Lemniscate constant Gamma(1/4)^2 / (2 sqrt(2 pi)).
    return wrap([](const PrecisionContext& c) {
      const BigReal g = gamma(BigReal(1) / BigReal(4), c);
      return g * g / (BigReal(2) * sqrt(BigReal(2) * pi(c)));
    });
  }
  throw UsageError("unknown constant '" + name + "' (pi, e, ln2, sqrt2, sqrt3, golden, varpi)");
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// divide:erdos<N>:l=<l>:i=<i>, divide:sinusoidal<a>/<b>:l=<l>:i=<i> or
// cassini:a=<a>:n=<n> (the value is cos u).
inline ConstantProducer pipeline_constant(const std::string& spec) {
  const auto parts = split(spec, ':');
  const auto bad = [&] {
    return UsageError("--from expects divide:erdos<N>:l=<l>:i=<i> or cassini:a=<a>:n=<n>, got '" + spec + "'");
  };
  if (parts.empty()) throw bad();
  std::vector<std::string> keyed(parts.begin() + 1, parts.end());
  if (parts[0] == "divide" && parts.size() == 4) {
    CurveSpec curve;
    const std::string& name = parts[1];
    if (name.rfind("erdos", 0) == 0) {
      curve = Erdos{static_cast<int>(parse_long(name.substr(5), "erdos n"))};
    } else if (name.rfind("sinusoidal", 0) == 0) {
      curve = parse_sinusoidal(name.substr(10));
    } else {
      throw bad();
    }
    const std::string ls = keyed_value(keyed, "l"), is = keyed_value(keyed, "i");
    if (ls.empty() || is.empty()) throw bad();
    const long l = parse_long(ls, "l"), i = parse_long(is, "i");
    try {
      validate(curve);
    } catch (const ConfigurationError& e) {
      throw UsageError(e.what());
    }
    if (l < 1 || i < 0 || i > l) throw UsageError("--from needs 0 <= i <= l and l >= 1");
    return [curve, l, i](const PrecisionContext& c) { return division_s(curve, l, i, c).x; };
  }
  if (parts[0] == "cassini" && parts.size() == 3) {
    const std::string as = keyed_value(keyed, "a"), ns = keyed_value(keyed, "n");
    if (as.empty() || ns.empty()) throw bad();
    const ExactReal a = parse_exact(as, "a");
    const int n = static_cast<int>(parse_long(ns, "n"));
    return [a, n](const PrecisionContext& c) { return cassini_cos_u(a, n, c); };
  }
  throw bad();
}

// Significant digits carried by a decimal literal; rationals are exact.
inline int literal_digits(const std::string& text) {
  if (text.find('/') != std::string::npos) return kMaxDigits;
  int count = 0;
  bool leading = true;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

}  // namespace detail

inline Report cmd_minpoly(const MinpolyArgs& args, int digits) {
  const int sources = (args.literal.empty() ? 0 : 1) + (args.constant.empty() ? 0 : 1) + (args.from.empty() ? 0 : 1);
  if (sources != 1) throw UsageError("give exactly one of a literal, --const or --from");
  if (args.max_degree < 1) throw UsageError("--max-degree must be positive");
  if (args.max_height < 1) throw UsageError("--max-height must be positive");
  const auto ctx = make_context(digits);
  Report r;
  r.command = "minpoly";
  r.digits = digits;
  r.params["max_degree"] = std::to_string(args.max_degree);
  r.params["max_height"] = std::to_string(args.max_height);

  Json row = Json::object();
  row["kind"] = "minpoly";
  bool ok = true;
  try {
    if (!args.literal.empty()) {
      r.params["literal"] = args.literal;
      // A literal only carries its own digits; search at that precision.
      const int search_digits = std::max(kMinDigits, std::min(digits, detail::literal_digits(args.literal)));
      const auto search = make_context(search_digits);
      const PrecisionScope scope(search);
      const BigReal value = detail::parse_exact(args.literal, "literal").value();
      r.params["search_digits"] = std::to_string(search_digits);
      row["source"] = "literal";
      row["value"] = to_decimal(value, search_digits);
      row.update(detail::minpoly_row(r, minpoly(value, args.max_degree, args.max_height, search)));
    } else {
      const ConstantProducer producer =
          args.constant.empty() ? detail::pipeline_constant(args.from) : detail::named_constant(args.constant);
      r.params[args.constant.empty() ? "from" : "const"] = args.constant.empty() ? args.from : args.constant;
      row["source"] = args.constant.empty() ? args.from : args.constant;
      {
        const PrecisionScope scope(ctx);
        row["value"] = r.number(producer(ctx));
      }
      row.update(detail::minpoly_row(r, minpoly(producer, args.max_degree, args.max_height, ctx)));
    }
  } catch (const SpuriousRelationError& e) {
    row.update(detail::spurious_row(e.what()));
    ok = false;
  }
  const std::string status = row["status"].get<std::string>();
  r.results.push_back(std::move(row));
  r.citations = {"PSLQ integer relation search on (1, x, ..., x^d), re-verified at digits + 40"};
  r.summary = status == "found" ? "relation found" : status == "none" ? "no relation within bounds" : "spurious relation";
  r.exit_code = ok ? kOk : kVerificationFailed;
  return r;
}

// ---------------------------------------------------------------------------
// plot

struct PlotArgs {
  std::optional<CurveSpec> curve;
  std::string poly;  // comma separated, highest degree first; complex entries as re:im
  std::optional<int> mandelbrot_level;
  std::optional<int> divide;
  std::string out;
  int samples = 720;
  int grid = 1024;
  int width = 800;
  int height = 800;
};

namespace detail {

inline PolyLemniscate parse_poly(const std::string& text) {
  PolyLemniscate p;
  for (const auto& token : split(text, ',')) {
    const auto colon = token.find(':');
    ComplexCoefficient c;
    c.re = parse_exact(token.substr(0, colon), "--poly coefficient");
    if (colon != std::string::npos) c.im = parse_exact(token.substr(colon + 1), "--poly coefficient");
    p.coeffs.push_back(c);
  }
  try {
    validate(p);
  } catch (const ConfigurationError& e) {
    throw UsageError(e.what());
  }
  return p;
}

}  // namespace detail

inline Report cmd_plot(const PlotArgs& args, int digits) {
  const int sources = (args.curve ? 1 : 0) + (args.poly.empty() ? 0 : 1) + (args.mandelbrot_level ? 1 : 0);
  if (sources != 1) throw UsageError("choose exactly one curve, --poly or --mandelbrot-level");
  if (args.out.empty()) throw UsageError("--out is required");
  if (args.divide && !args.curve) throw UsageError("--divide applies to polar curves");
  if (args.samples < 16) throw UsageError("--samples must be >= 16");
  Report r;
  r.command = "plot";
  r.digits = digits;
  r.params["out"] = args.out;

  RenderOptions opts;
  opts.width_px = args.width;
  opts.height_px = args.height;
  opts.grid_resolution = args.grid;
  std::vector<Polyline> lines;
  std::vector<Marker> markers;
  double residual = 0.0;
  std::string formula;

  if (args.curve) {
    const CurveSpec& curve = *args.curve;
    if (std::holds_alternative<PolyLemniscate>(curve)) throw UsageError("use --poly for polynomial lemniscates");
    r.params["curve"] = describe(curve);
    lines = trace_polar(curve, args.samples);
    if (args.divide) {
      if (std::holds_alternative<Regular>(curve)) throw UsageError("--divide applies to Erdos and sinusoidal curves");
      const long per_circuit = 2L * leaf_count(curve);
      if (*args.divide < per_circuit || *args.divide % per_circuit != 0) {
        throw UsageError("--divide must be a positive multiple of " + std::to_string(per_circuit) + " for " +
                         describe(curve));
      }
      r.params["divide"] = std::to_string(*args.divide);
      const auto ctx = make_context(std::max(digits, 30));
      const PrecisionScope scope(ctx);
      const auto full = expand_by_symmetry(curve, divide_fundamental_arc(curve, *args.divide / per_circuit, ctx));
      markers = detail::markers_from(full);
    }
    residual = detail::polar_vertex_residual(curve, lines);
    formula = closed_form_formula(curve).name;
    opts.bbox = fit_bbox(lines, markers);
  } else if (!args.poly.empty()) {
    const auto poly = detail::parse_poly(args.poly);
    r.params["poly"] = args.poly;
    opts.bbox = lemniscate_bbox(poly);
    lines = trace_implicit(poly, opts);
    const auto cp = to_complex_poly(poly);
    for (const auto& l : lines) {
      for (const auto& p : l.points) residual = std::max(residual, std::abs(std::abs(horner(cp, {p.x, p.y})) - 1.0));
    }
    formula = "|P(z)| = 1";
  } else {
    const int level = *args.mandelbrot_level;
    if (level < 0 || level > 12) throw UsageError("--mandelbrot-level must lie in [0, 12]");
    r.params["mandelbrot_level"] = std::to_string(level);
    // The level-n lemniscate lies in the disc of radius 2.
    opts.bbox = BBox{-2.1, -2.1, 2.1, 2.1};
    const auto f = [level](double x, double y) { return mandelbrot_level_value(level, x, y); };
    lines = trace_level_set(f, opts);
    for (const auto& l : lines) {
      for (const auto& p : l.points) residual = std::max(residual, std::abs(f(p.x, p.y)));
    }
    formula = "|P_n(z)| = 1, P_0 = z, P_(n+1) = P_n^2 + z";
  }
  try {
    opts.validate();
  } catch (const ConfigurationError& e) {
    throw UsageError(e.what());
  }
  detail::write_file(args.out, emit_svg(lines, markers, opts));

  std::size_t vertices = 0;
  for (const auto& l : lines) vertices += l.points.size();
  Json row = Json::object();
  row["out"] = args.out;
  row["polylines"] = std::to_string(lines.size());
  row["vertices"] = std::to_string(vertices);
  row["markers"] = std::to_string(markers.size());
  row["residual"] = detail::fmt_double(residual);
  r.results.push_back(std::move(row));
  r.citations = {formula};
  r.summary = "wrote " + args.out;
  return r;
}

}  // namespace serret::cli
