// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--expect-fail N]... [--golden-dir DIR]
// Exit status is 0 iff the set of failing criteria equals the expected set,
// so a known failure stays visible in the output without hiding regressions
// (or an unexpected pass) elsewhere.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "serret/quadrature_checks.hpp"

using namespace serret;
using namespace serret::cli;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(const BigReal& x) { return to_decimal(x, 3); }

std::string golden_dir = SERRET_GOLDEN_DIR;

Outcome circle_length() {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const auto r = cmd_length(Erdos{1}, 50);
  const BigReal two_pi = ldexp(pi(), 1);
  const BigReal closed = BigReal(r.results[0]["closed_form"].get<std::string>());
  const BigReal quad = BigReal(r.results[0]["quadrature"].get<std::string>());
  const BigReal err = max(abs(closed - two_pi), abs(quad - two_pi));
  return {r.exit_code == 0 && err <= pow10(-45), "max |l - 2 pi| = " + sci(err)};
}

Outcome cardioid_length() {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const auto r = cmd_length(Sinusoidal{1, 2}, 50);
  const BigReal closed = BigReal(r.results[0]["closed_form"].get<std::string>());
  const BigReal quad = BigReal(r.results[0]["quadrature"].get<std::string>());
  const BigReal err = max(abs(closed - BigReal(16)), abs(quad - BigReal(16)));
  return {r.exit_code == 0 && err <= pow10(-45), "max |l - 16| = " + sci(err)};
}

Outcome quarter_spiral_length() {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  const CurveSpec c = Sinusoidal{1, 4};
  const BigReal exact = BigReal(256) / BigReal(3);
  const BigReal closed = total_length_closed(c, ctx);
  const BigReal quad = total_length_quadrature(c, ctx);
  const BigReal err = max(abs(closed - exact), abs(quad - exact));
  return {err <= pow10(-45), "beta " + sci(abs(closed - exact)) + ", quadrature " + sci(abs(quad - exact))};
}

Outcome beta_period_identity() {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  BigReal worst;
  int cases = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i <= n - 2; ++i) {
      worst = max(worst, beta_integral_check(n, i, ctx));
      ++cases;
    }
  }
  return {worst <= pow10(-45), std::to_string(cases) + " (n, i) pairs, max residual " + sci(worst)};
}

Outcome cassini_three_routes() {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  BigReal worst;
  for (const char* a_text : {"0.3", "0.6", "0.9"}) {
    const BigReal a(a_text);
    const BigReal polar = serret::detail::regular_length_angular(a, 2, ctx);
    const BigReal elliptic = cassini_length_elliptic(a, ctx);
    const BigReal hyper = regular_length_hypergeometric(a, 2, ctx);
    worst = max(worst, max(abs(polar - elliptic), max(abs(polar - hyper), abs(elliptic - hyper))));
  }
  return {worst <= pow10(-45), "max pairwise disagreement " + sci(worst)};
}

Outcome identity_suite() {
  const auto low = cmd_identities(30, std::nullopt);
  const auto high = cmd_identities(50, std::nullopt);
  bool ok = low.exit_code == 0 && high.exit_code == 0;
  std::string smallest_gain;
  BigReal min_ratio;
  bool first = true;
  const PrecisionScope scope(make_context(60));
  for (std::size_t i = 0; i < high.results.size(); ++i) {
    const BigReal r30(low.results[i]["max_residual"].get<std::string>());
    const BigReal r50(high.results[i]["max_residual"].get<std::string>());
    if (r50 > pow10(-15) * r30) ok = false;
    if (r50.is_zero()) continue;
    const BigReal ratio = r30 / r50;
    if (first || ratio < min_ratio) {
      min_ratio = ratio;
      smallest_gain = high.results[i]["name"].get<std::string>();
      first = false;
    }
  }
  return {ok, low.summary + " at 30, " + high.summary + " at 50; smallest gain " + sci(min_ratio) + " (" +
                  smallest_gain + ")"};
}

bool candidate_verified(const Json& row, int max_degree, long long max_height) {
  if (row.value("status", "") != "found" || row.value("verification", "") != "passed") return false;
  return std::stoi(row["degree"].get<std::string>()) <= max_degree &&
         mpz_class(row["height"].get<std::string>()) <= static_cast<long>(max_height);
}

Outcome circle_division() {
  bool ok = true;
  std::ostringstream detail;
  {
    DivideArgs args;
    args.curve = Erdos{1};
    args.parts = 2;
    args.minpoly = true;
    const auto r = cmd_divide(args, 50);
    const PrecisionScope scope(make_context(50));
    const BigReal s1(r.results[1]["s"].get<std::string>());
    const BigReal err = abs(s1 - sqrt(BigReal(2)) / BigReal(2));
    const auto& mp = r.results[3];
    ok = ok && r.exit_code == 0 && err <= pow10(-45) && mp.value("polynomial", "") == "2x^2 - 1" &&
         mp.value("verification", "") == "passed";
    detail << "l=2: " << mp.value("polynomial", "none");
  }
  for (long l : {3L, 4L, 5L}) {
    DivideArgs args;
    args.curve = Erdos{1};
    args.parts = l;
    args.minpoly = true;
    const auto r = cmd_divide(args, 50);
    const int bound = static_cast<int>(totient(4 * l));
    int verified = 0;
    for (const auto& row : r.results) {
      if (row.value("kind", "") != "minpoly") continue;
      if (candidate_verified(row, bound, 1000000)) ++verified;
      else ok = false;
    }
    ok = ok && verified == l - 1;
    detail << "; l=" << l << ": " << verified << "/" << l - 1 << " verified (deg <= " << bound << ")";
  }
  return {ok, detail.str()};
}

Outcome lemniscate_division() {
  const auto ctx = make_context(60);
  const auto producer = [](const PrecisionContext& c) { return division_s(Erdos{2}, 2, 1, c).x; };
  const auto cand = minpoly(producer, 4, 10, ctx);
  if (cand.status != MinPolyStatus::found) return {false, "no relation found"};
  const auto wide = make_context(120);
  const PrecisionScope scope(wide);
  const BigReal residual = abs(evaluate_polynomial(cand.coeffs, producer(wide)));
  const std::string text = polynomial_text(cand.coeffs);
  const bool ok = cand.degree == 4 && cand.height <= 10 && residual < pow10(-90) && text == "x^4 + 2x^2 - 1";
  return {ok, text + ", residual at 120 digits " + sci(residual)};
}

Outcome kiepert_division() {
  const int digits = 100;
  bool ok = true;
  std::ostringstream detail;
  for (long l : {2L, 3L}) {
    DivideArgs args;
    args.curve = Erdos{3};
    args.parts = l;
    args.minpoly = true;
    args.expand = true;
    args.max_degree = 16;
    const auto r = cmd_divide(args, digits);
    const PrecisionScope scope(make_context(digits));
    int verified = 0, arcs = 0;
    BigReal worst_arc;
    std::string polys;
    for (const auto& row : r.results) {
      const std::string kind = row.value("kind", "");
      if (kind == "minpoly") {
        if (candidate_verified(row, 16, 1000000)) {
          ++verified;
          polys += (polys.empty() ? "" : ", ") + row["polynomial"].get<std::string>();
        } else {
          ok = false;
          polys += (polys.empty() ? "" : ", ") + std::string("none");
        }
      } else if (kind == "arc") {
        ++arcs;
        worst_arc = max(worst_arc, BigReal(row["residual"].get<std::string>()));
      }
    }
    ok = ok && verified == l - 1 && arcs == 6 * l && worst_arc <= pow10(-45);
    detail << (l == 2 ? "" : "; ") << "l=" << l << ": [" << polys << "], " << arcs << " arcs, max arc error "
           << sci(worst_arc);
  }
  return {ok, detail.str()};
}

Outcome cassini_division() {
  const int digits = 100;
  bool ok = true;
  std::ostringstream detail;
  for (int n : {2, 3}) {
    const auto start = std::chrono::steady_clock::now();
    DivideArgs args;
    args.curve = Regular{ExactReal::parse("4/5"), 2};
    args.n = n;
    args.minpoly = true;
    args.max_degree = 8;
    args.max_height = 1000000;
    const auto r = cmd_divide(args, digits);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const PrecisionScope scope(make_context(digits));
    const auto& d = r.results[0];
    const auto& mp = r.results[1];
    const BigReal integral(d["integral_residual"].get<std::string>());
    const BigReal arc(d["arc_residual"].get<std::string>());
    const bool poly_ok = candidate_verified(mp, 8, 1000000);
    const bool this_ok = integral <= pow10(-45) && arc <= pow10(-45) && poly_ok && seconds <= 120.0;
    ok = ok && this_ok;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", seconds);
    detail << (n == 2 ? "" : "; ") << "n=" << n << ": I(u) " << sci(integral) << ", arc " << sci(arc) << ", cos u "
           << (poly_ok ? mp["polynomial"].get<std::string>() : "no verified candidate with degree <= 8, height <= 1e6")
           << ", " << secs;
  }
  return {ok, detail.str()};
}

Outcome monotone_convex() {
  const auto ctx = make_context(50);
  const PrecisionScope scope(ctx);
  bool ok = true;
  std::ostringstream detail;
  for (int k : {2, 3, 4}) {
    std::vector<BigReal> below, above;
    for (int j = 1; j <= 9; ++j) {
      below.push_back(total_length_closed(Regular{ExactReal{std::to_string(j), "10"}, k}, ctx));
    }
    for (int j = 11; j <= 20; ++j) {
      above.push_back(total_length_closed(Regular{ExactReal{std::to_string(j), "10"}, k}, ctx));
    }
    const BigReal erdos = total_length_closed(Erdos{k}, ctx);
    bool increasing = true, convex = true, bounded = true;
    for (std::size_t i = 1; i < below.size(); ++i) increasing = increasing && below[i] > below[i - 1];
    for (std::size_t i = 2; i < below.size(); ++i) {
      convex = convex && (below[i] - BigReal(2) * below[i - 1] + below[i - 2]).sign() > 0;
    }
    for (const auto& v : below) bounded = bounded && v < erdos;
    for (const auto& v : above) bounded = bounded && v < erdos;
    ok = ok && increasing && convex && bounded;
    detail << (k == 2 ? "" : "; ") << "k=" << k << (increasing ? " increasing" : " NOT increasing")
           << (convex ? ", convex" : ", NOT convex") << (bounded ? ", below l(C_k)" : ", NOT below l(C_k)");
  }
  return {ok, detail.str()};
}

Outcome rejects_pi() {
  const auto cand = minpoly([](const PrecisionContext& c) { return pi(c); }, 6, 10000, make_context(50));
  return {cand.status == MinPolyStatus::none, std::string("status ") + (cand.status == MinPolyStatus::none ? "none" : "found") +
                                                  ", searched degree " + std::to_string(cand.searched_degree)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome render_checks() {
  PolyLemniscate p;
  for (const char* c : {"1", "0", "-1"}) p.coeffs.push_back(ComplexCoefficient{ExactReal::parse(c)});
  RenderOptions opts;
  opts.bbox = lemniscate_bbox(p);
  opts.grid_resolution = 1024;
  double worst = 0.0;
  std::size_t vertices = 0;
  for (const auto& line : trace_implicit(p, opts)) {
    for (const auto& v : line.points) {
      const std::complex<double> z(v.x, v.y);
      worst = std::max(worst, std::abs(std::abs(z * z - 1.0) - 1.0));
      ++vertices;
    }
  }
  PlotArgs args;
  args.curve = Erdos{3};
  args.divide = 12;
  const std::string first_path = "acceptance_kiepert_a.svg", second_path = "acceptance_kiepert_b.svg";
  args.out = first_path;
  cmd_plot(args, 50);
  args.out = second_path;
  cmd_plot(args, 50);
  const std::string first = slurp(first_path), second = slurp(second_path);
  std::remove(first_path.c_str());
  std::remove(second_path.c_str());
  std::size_t markers = 0;
  for (auto pos = first.find("<g class=\"marker\">"); pos != std::string::npos;
       pos = first.find("<g class=\"marker\">", pos + 1)) {
    ++markers;
  }
  const std::string golden = slurp(golden_dir + "/plot_erdos3_divide12.svg");
  const bool ok = vertices > 0 && worst < 1e-2 && markers == 12 && first == second && first == golden;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu vertices, max ||P|-1| = %.2e; %zu markers; repeat %s; golden %s", vertices,
                worst, markers, first == second ? "identical" : "differs", first == golden ? "matches" : "differs");
  return {ok, buf};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected_failures.insert(std::atoi(argv[++i]));
    } else if (std::strcmp(argv[i], "--golden-dir") == 0 && i + 1 < argc) {
      golden_dir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--expect-fail N]... [--golden-dir DIR]\n");
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"circle length 2 pi", circle_length},
      {"cardioid length 16", cardioid_length},
      {"l(C_1/4) = 256/3 by Beta and quadrature", quarter_spiral_length},
      {"Beta/period identity, 2 <= n <= 6", beta_period_identity},
      {"Cassini length by three routes", cassini_three_routes},
      {"identity suite at 30 and 50 digits", identity_suite},
      {"circle division minimal polynomials", circle_division},
      {"lemniscate division relation", lemniscate_division},
      {"Kiepert division, l = 2, 3", kiepert_division},
      {"Cassini division, a = 4/5, n = 2, 3", cassini_division},
      {"regular lemniscate lengths monotone, convex, bounded", monotone_convex},
      {"minpoly rejects pi", rejects_pi},
      {"render correctness and golden SVG", render_checks},
  };

  std::set<int> failures;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.passed) failures.insert(id);
    std::printf("criterion %2d: %s  %s | %s (%.1fs)\n", id, out.passed ? "PASS" : "FAIL", criteria[i].first,
                out.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures.size(), criteria.size());
  if (!expected_failures.empty()) {
    std::printf("expected failures:");
    for (int id : expected_failures) std::printf(" %d", id);
    std::printf("\n");
  }
  return failures == expected_failures ? 0 : 1;
}
