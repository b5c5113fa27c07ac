// serret command-line tool: curve lengths and equal-arc divisions.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "commands.hpp"

namespace {

using namespace serret;
using namespace serret::cli;

void add_curve_flags(CLI::App* cmd, CurveArgs& curve) {
  cmd->add_option("--erdos", curve.erdos, "Erdos lemniscate |z^n - 1| = 1 (n)");
  cmd->add_option("--sinusoidal", curve.sinusoidal, "sinusoidal spiral r^q = 2 cos(q theta), q = a/b");
  cmd->add_option("--regular", curve.regular, "regular lemniscate |z^k - a^k| = 1: a=<x> k=<k>")->expected(2);
  cmd->add_option("--cassini", curve.cassini, "Cassini oval |z^2 - a^2| = 1: a=<x>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arc lengths and equal-arc divisions of Serret curves"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<int> digits_flag;
  std::string format_name = "json";
  app.add_option("--digits", digits_flag, "working precision in decimal digits (default 50, env SERRET_DIGITS)")
      ->check(CLI::Range(kMinDigits, kMaxDigits));
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"json", "csv", "text"}));

  CurveArgs length_curve;
  auto* length = app.add_subcommand("length", "total length by closed form and by quadrature");
  add_curve_flags(length, length_curve);

  CurveArgs divide_curve;
  DivideArgs divide_args;
  long divide_parts = 0;
  int divide_n = 0;
  int divide_degree = 0;
  auto* divide = app.add_subcommand("divide", "equal-arc division points");
  add_curve_flags(divide, divide_curve);
  auto* parts_opt = divide->add_option("--parts,-l", divide_parts, "number of equal parts of the half leaf");
  auto* n_opt = divide->add_option("--n", divide_n, "Cassini division into 4n arcs");
  divide->add_flag("--minpoly", divide_args.minpoly, "recover minimal polynomials of the division values");
  divide->add_flag("--expand", divide_args.expand, "all points on the curve and the re-integrated arcs");
  auto* degree_opt = divide->add_option("--max-degree", divide_degree, "degree cap for --minpoly");
  divide->add_option("--max-height", divide_args.max_height, "coefficient bound for --minpoly");
  divide->add_option("--svg-out", divide_args.svg_out, "write the curve with its division points");

  MinpolyArgs minpoly_args;
  auto* minpoly_cmd = app.add_subcommand("minpoly", "integer minimal polynomial of a constant");
  minpoly_cmd->add_option("value", minpoly_args.literal, "decimal or p/q literal");
  minpoly_cmd->add_option("--const", minpoly_args.constant, "named constant: pi, e, ln2, sqrt2, sqrt3, golden, varpi");
  minpoly_cmd->add_option("--from", minpoly_args.from, "divide:erdos<N>:l=<l>:i=<i> or cassini:a=<a>:n=<n>");
  minpoly_cmd->add_option("--max-degree", minpoly_args.max_degree, "degree cap");
  minpoly_cmd->add_option("--max-height", minpoly_args.max_height, "coefficient bound");

  std::optional<long> forced_tolerance;
  auto* identities = app.add_subcommand("identities", "run the identity checks");
  identities->add_option("--tolerance-exponent", forced_tolerance, "replace every tolerance by 10^x")
      ->group("");

  CurveArgs plot_curve;
  PlotArgs plot_args;
  int plot_divide = 0;
  int plot_level = 0;
  auto* plot = app.add_subcommand("plot", "SVG drawing");
  add_curve_flags(plot, plot_curve);
  plot->add_option("--poly", plot_args.poly, "|P(z)| = 1, coefficients highest first, complex as re:im");
  auto* level_opt = plot->add_option("--mandelbrot-level", plot_level, "|P_n(z)| = 1 with P_0 = z, P_(n+1) = P_n^2 + z");
  auto* plot_divide_opt = plot->add_option("--divide", plot_divide, "mark this many equal-arc points");
  plot->add_option("--out", plot_args.out, "output SVG path")->required();
  plot->add_option("--samples", plot_args.samples, "samples per leaf for polar curves");
  plot->add_option("--grid", plot_args.grid, "marching-squares cells per axis");
  plot->add_option("--width", plot_args.width, "image width in pixels");
  plot->add_option("--height", plot_args.height, "image height in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Format format = Format::json;
  if (format_name == "csv") format = Format::csv;
  if (format_name == "text") format = Format::text;

  try {
    const int digits = resolve_digits(digits_flag, std::getenv("SERRET_DIGITS"));
    make_context(digits);
    Report report;
    if (*length) {
      report = cmd_length(parse_curve(length_curve), digits);
    } else if (*divide) {
      divide_args.curve = parse_curve(divide_curve);
      if (*parts_opt) divide_args.parts = divide_parts;
      if (*n_opt) divide_args.n = divide_n;
      if (*degree_opt) divide_args.max_degree = divide_degree;
      report = cmd_divide(divide_args, digits);
    } else if (*minpoly_cmd) {
      report = cmd_minpoly(minpoly_args, digits);
    } else if (*identities) {
      report = cmd_identities(digits, forced_tolerance);
    } else {
      if (plot_curve.any()) plot_args.curve = parse_curve(plot_curve);
      if (*level_opt) plot_args.mandelbrot_level = plot_level;
      if (*plot_divide_opt) plot_args.divide = plot_divide;
      report = cmd_plot(plot_args, digits);
    }
    std::cout << render(report, format);
    return report.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const SpuriousRelationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const ConvergenceError& e) {
    std::cerr << "numeric error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
}
