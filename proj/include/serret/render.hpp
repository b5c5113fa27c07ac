#pragma once

// SVG drawings of Serret curves at machine precision.
//
// trace_polar samples the polar equations directly; trace_implicit runs
// marching squares on |P(x + iy)| - 1 for an arbitrary complex polynomial.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "serret/curves.hpp"
#include "serret/error.hpp"

namespace serret {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Polyline {
  std::vector<Point2> points;
  bool closed = false;
};

struct BBox {
  double xmin = -2.0, ymin = -2.0, xmax = 2.0, ymax = 2.0;
};

struct RenderOptions {
  int width_px = 800;
  int height_px = 800;
  BBox bbox;
  int grid_resolution = 1024;
  std::string stroke = "#1f3b73";
  double stroke_width = 1.5;
  std::string marker_fill = "#c0392b";
  double marker_radius = 3.5;
  std::string background = "#ffffff";

  void validate() const {
    if (width_px < 1 || height_px < 1) throw ConfigurationError("image size must be positive");
    if (!(bbox.xmin < bbox.xmax) || !(bbox.ymin < bbox.ymax)) throw ConfigurationError("empty bounding box");
    if (grid_resolution < 64 || grid_resolution > 4096) {
      throw ConfigurationError("grid_resolution must lie in [64, 4096]");
    }
  }
};

struct Marker {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

using ComplexPoly = std::vector<std::complex<double>>;  // highest degree first

inline ComplexPoly to_complex_poly(const PolyLemniscate& poly) {
  ComplexPoly out;
  for (const auto& c : poly.coeffs) out.emplace_back(c.re.to_double(), c.im.to_double());
  return out;
}

inline std::complex<double> horner(const ComplexPoly& p, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (const auto& c : p) acc = acc * z + c;
  return acc;
}

// ---------------------------------------------------------------------------
// Polar tracing

/// One polyline per connected component. Leaf curves (Erdos, sinusoidal) are
/// traced leaf by leaf with `samples` points per leaf, all leaves joined at
/// the origin into one closed polyline. Regular curves with a < 1 give one
/// oval; with a > 1 each of the k ovals is traced through
/// sin(k theta) = a^-k sin(psi), r^k = a^k cos(k theta) + cos(psi).
inline std::vector<Polyline> trace_polar(const CurveSpec& curve, int samples) {
  if (samples < 16) throw ConfigurationError("trace_polar needs at least 16 samples");
  validate(curve);
  if (std::holds_alternative<PolyLemniscate>(curve)) {
    throw DomainError("polynomial lemniscates are traced with trace_implicit");
  }
  std::vector<Polyline> out;
  if (std::holds_alternative<Erdos>(curve) || std::holds_alternative<Sinusoidal>(curve)) {
    const PrecisionScope scope(make_context(20));
    const double q = leaf_exponent(curve).to_double();
    const int leaves = leaf_count(curve);
    const double half_width = M_PI / (2.0 * q);
    Polyline line;
    line.closed = true;
    for (int j = 0; j < leaves; ++j) {
      const double rotation = 2.0 * M_PI * j / leaves;
      for (int i = 0; i < samples; ++i) {
        const double theta = -half_width + 2.0 * half_width * i / samples;
        // The leaf starts at the origin; cos(q theta) would leave a ~1e-16 residue.
        const double c = i == 0 ? 0.0 : std::max(0.0, 2.0 * std::cos(q * theta));
        const double r = std::pow(c, 1.0 / q);
        line.points.push_back({r * std::cos(theta + rotation), r * std::sin(theta + rotation)});
      }
    }
    out.push_back(std::move(line));
    return out;
  }
  const auto& reg = std::get<Regular>(curve);
  const double a = reg.a.to_double();
  const int k = reg.k;
  const double ak = std::pow(a, k);
  if (a < 1.0) {
    Polyline line;
    line.closed = true;
    for (int i = 0; i < samples; ++i) {
      const double theta = 2.0 * M_PI * i / samples;
      const double skt = std::sin(k * theta);
      const double rk = ak * std::cos(k * theta) + std::sqrt(std::max(0.0, 1.0 - ak * ak * skt * skt));
      const double r = std::pow(std::max(0.0, rk), 1.0 / k);
      line.points.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    out.push_back(std::move(line));
    return out;
  }
  for (int j = 0; j < k; ++j) {
    const double rotation = 2.0 * M_PI * j / k;
    Polyline line;
    line.closed = true;
    for (int i = 0; i < 2 * samples; ++i) {
      const double psi = -M_PI / 2.0 + M_PI * i / samples;
      const double theta = std::asin(std::sin(psi) / ak) / k;
      const double rk = ak * std::cos(k * theta) + std::cos(psi);
      const double r = std::pow(std::max(0.0, rk), 1.0 / k);
      line.points.push_back({r * std::cos(theta + rotation), r * std::sin(theta + rotation)});
    }
    out.push_back(std::move(line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Marching squares

namespace detail {

inline void drop_repeated_points(Polyline& line) {
  std::vector<Point2> kept;
  for (const auto& p : line.points) {
    if (!kept.empty() && kept.back().x == p.x && kept.back().y == p.y) continue;
    kept.push_back(p);
  }
  if (line.closed && kept.size() > 1 && kept.front().x == kept.back().x && kept.front().y == kept.back().y) {
    kept.pop_back();
  }
  line.points = std::move(kept);
}

}  // namespace detail

/// Contours of f(x, y) = 0 on a grid_resolution^2 cell grid over the
/// bounding box. Crossings are located by linear interpolation and a few
/// regula falsi steps along each cell edge; saddle cells are resolved by the
/// sign at the cell center. Chains that close inside the box are marked closed.
inline std::vector<Polyline> trace_level_set(const std::function<double(double, double)>& f,
                                             const RenderOptions& opts) {
  opts.validate();
  const int n = opts.grid_resolution;
  const auto& bb = opts.bbox;
  const double dx = (bb.xmax - bb.xmin) / n;
  const double dy = (bb.ymax - bb.ymin) / n;
  const auto node_x = [&](int i) { return bb.xmin + dx * i; };
  const auto node_y = [&](int j) { return bb.ymin + dy * j; };
  const std::size_t stride = static_cast<std::size_t>(n) + 1;

  std::vector<double> values(stride * stride);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) values[static_cast<std::size_t>(j) * stride + i] = f(node_x(i), node_y(j));
  }
  const auto value = [&](int i, int j) { return values[static_cast<std::size_t>(j) * stride + i]; };
  const auto inside = [](double v) { return v < 0.0; };

  // Edge ids: 2 * node + 0 for the edge to (i+1, j), 2 * node + 1 for (i, j+1).
  const auto edge_id = [&](int i, int j, int dir) {
    return 2 * (static_cast<long long>(j) * static_cast<long long>(stride) + i) + dir;
  };
  std::unordered_map<long long, Point2> crossing;
  const auto crossing_point = [&](long long id) -> Point2 {
    auto it = crossing.find(id);
    if (it != crossing.end()) return it->second;
    const long long node = id / 2;
    const int i = static_cast<int>(node % static_cast<long long>(stride));
    const int j = static_cast<int>(node / static_cast<long long>(stride));
    const int dir = static_cast<int>(id % 2);
    const double x0 = node_x(i), y0 = node_y(j);
    const double x1 = dir == 0 ? node_x(i + 1) : x0;
    const double y1 = dir == 0 ? y0 : node_y(j + 1);
    double f0 = value(i, j);
    double f1 = dir == 0 ? value(i + 1, j) : value(i, j + 1);
    double t0 = 0.0, t1 = 1.0;
    double t = f0 / (f0 - f1);
    for (int step = 0; step < 4; ++step) {
      const double ft = f(x0 + t * (x1 - x0), y0 + t * (y1 - y0));
      if (ft == 0.0) break;
      if (inside(ft) == inside(f0)) {
        t0 = t;
        f0 = ft;
      } else {
        t1 = t;
        f1 = ft;
      }
      t = t0 + (t1 - t0) * f0 / (f0 - f1);
    }
    const Point2 p{x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    crossing.emplace(id, p);
    return p;
  };

  std::unordered_map<long long, std::array<long long, 2>> links;
  const auto link = [&](long long a, long long b) {
    for (const auto& [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
      auto [it, fresh] = links.try_emplace(from, std::array<long long, 2>{-1, -1});
      auto& slots = it->second;
      if (slots[0] < 0) slots[0] = to; else slots[1] = to;
      (void)fresh;
    }
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool b0 = inside(value(i, j));          // bottom-left
      const bool b1 = inside(value(i + 1, j));      // bottom-right
      const bool b2 = inside(value(i + 1, j + 1));  // top-right
      const bool b3 = inside(value(i, j + 1));      // top-left
      const int config = b0 | (b1 << 1) | (b2 << 2) | (b3 << 3);
      if (config == 0 || config == 15) continue;
      const long long bottom = edge_id(i, j, 0);
      const long long right = edge_id(i + 1, j, 1);
      const long long top = edge_id(i, j + 1, 0);
      const long long left = edge_id(i, j, 1);
      switch (config) {
        case 1: case 14: link(left, bottom); break;
        case 2: case 13: link(bottom, right); break;
        case 3: case 12: link(left, right); break;
        case 4: case 11: link(right, top); break;
        case 6: case 9: link(bottom, top); break;
        case 7: case 8: link(left, top); break;
        case 5: case 10: {
          const bool center = inside(f(node_x(i) + 0.5 * dx, node_y(j) + 0.5 * dy));
          // Corners 0 and 2 share a sign; a center of the same sign joins them.
          if (center == b0) {
            link(left, top);
            link(bottom, right);
          } else {
            link(left, bottom);
            link(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }

  std::vector<long long> ids;
  ids.reserve(links.size());
  for (const auto& [id, slots] : links) ids.push_back(id);
  std::sort(ids.begin(), ids.end());

  std::unordered_map<long long, bool> used;
  std::vector<Polyline> out;
  const auto walk = [&](long long start) {
    Polyline line;
    long long previous = -1;
    long long current = start;
    while (true) {
      used[current] = true;
      line.points.push_back(crossing_point(current));
      const auto& slots = links.at(current);
      long long next = slots[0] != previous ? slots[0] : slots[1];
      if (slots[0] == slots[1]) next = slots[0];
      if (next < 0) break;
      if (next == start) {
        line.closed = true;
        break;
      }
      if (used[next]) break;
      previous = current;
      current = next;
    }
    detail::drop_repeated_points(line);
    if (line.points.size() >= 2) out.push_back(std::move(line));
  };
  // Open chains start at an edge with a single neighbor (the bounding box).
  for (long long id : ids) {
    const auto& slots = links.at(id);
    if (!used[id] && (slots[0] < 0 || slots[1] < 0)) walk(id);
  }
  for (long long id : ids) {
    if (!used[id]) walk(id);
  }
  return out;
}

/// Level set |P(x + iy)| = 1.
inline std::vector<Polyline> trace_implicit(const PolyLemniscate& poly, const RenderOptions& opts) {
  validate(poly);
  const ComplexPoly p = to_complex_poly(poly);
  return trace_level_set([&](double x, double y) { return std::abs(horner(p, {x, y})) - 1.0; }, opts);
}

/// P_0 = T, P_(n+1) = P_n^2 + T; the level-n Mandelbrot lemniscate is |P_n| = 1.
inline PolyLemniscate mandelbrot_polynomial(int level) {
  if (level < 0 || level > 12) throw ConfigurationError("Mandelbrot level must lie in [0, 12]");
  std::vector<mpz_class> c{0, 1};  // low degree first
  for (int step = 0; step < level; ++step) {
    std::vector<mpz_class> sq(2 * c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < c.size(); ++j) sq[i + j] += c[i] * c[j];
    }
    sq[1] += 1;
    c = std::move(sq);
  }
  PolyLemniscate out;
  for (std::size_t i = c.size(); i-- > 0;) out.coeffs.push_back(ComplexCoefficient{ExactReal{c[i].get_str(), "1"}});
  return out;
}

/// |P_n(z)| - 1 by iterating z -> z^2 + c rather than expanding P_n.
inline double mandelbrot_level_value(int level, double x, double y) {
  const std::complex<double> c(x, y);
  std::complex<double> z = c;
  for (int i = 0; i < level; ++i) {
    z = z * z + c;
    if (std::abs(z) > 1e100) return 1e100;
  }
  return std::abs(z) - 1.0;
}

/// Square box centered at 0 containing every z with |P(z)| <= 1.
inline BBox lemniscate_bbox(const PolyLemniscate& poly) {
  const ComplexPoly p = to_complex_poly(poly);
  const double lead = std::abs(p.front());
  double rest = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) rest += std::abs(p[i]);
  const double degree = static_cast<double>(p.size() - 1);
  const double radius = 1.05 * std::max({1.0, 2.0 * rest / lead, std::pow(2.0 / lead, 1.0 / degree)});
  return BBox{-radius, -radius, radius, radius};
}

/// Smallest box holding all points, padded by `margin` of its larger side.
inline BBox fit_bbox(const std::vector<Polyline>& lines, const std::vector<Marker>& markers, double margin = 0.06) {
  double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
  const auto take = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& l : lines) {
    for (const auto& p : l.points) take(p.x, p.y);
  }
  for (const auto& m : markers) take(m.x, m.y);
  if (xmin > xmax) return BBox{};
  const double side = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double pad = margin * side;
  return BBox{xmin - pad, ymin - pad, xmax + pad, ymax + pad};
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// SVG 1.1 document. The bounding box is scaled uniformly into the viewport
/// and centered; y points up.
inline std::string emit_svg(const std::vector<Polyline>& curves, const std::vector<Marker>& markers,
                            const RenderOptions& opts) {
  opts.validate();
  const auto& bb = opts.bbox;
  const double w = opts.width_px, h = opts.height_px;
  const double scale = std::min(w / (bb.xmax - bb.xmin), h / (bb.ymax - bb.ymin));
  const double ox = 0.5 * (w - scale * (bb.xmax - bb.xmin));
  const double oy = 0.5 * (h - scale * (bb.ymax - bb.ymin));
  const auto px = [&](double x) { return detail::fmt2(ox + (x - bb.xmin) * scale); };
  const auto py = [&](double y) { return detail::fmt2(oy + (bb.ymax - y) * scale); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width_px << "\" height=\""
      << opts.height_px << "\" viewBox=\"0 0 " << opts.width_px << " " << opts.height_px << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << opts.width_px << "\" height=\"" << opts.height_px << "\" fill=\""
      << opts.background << "\"/>\n";
  svg << "  <g class=\"curves\" fill=\"none\" stroke=\"" << opts.stroke << "\" stroke-width=\""
      << detail::fmt2(opts.stroke_width) << "\" stroke-linejoin=\"round\">\n";
  for (const auto& line : curves) {
    if (line.points.empty()) continue;
    svg << "    <path d=\"M " << px(line.points[0].x) << " " << py(line.points[0].y);
    for (std::size_t i = 1; i < line.points.size(); ++i) {
      svg << " L " << px(line.points[i].x) << " " << py(line.points[i].y);
    }
    if (line.closed) svg << " Z";
    svg << "\"/>\n";
  }
  svg << "  </g>\n";
  svg << "  <g class=\"markers\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (const auto& m : markers) {
    svg << "    <g class=\"marker\"><circle cx=\"" << px(m.x) << "\" cy=\"" << py(m.y) << "\" r=\""
        << detail::fmt2(opts.marker_radius) << "\" fill=\"" << opts.marker_fill << "\"/><text x=\""
        << detail::fmt2(ox + (m.x - bb.xmin) * scale + opts.marker_radius + 2.0) << "\" y=\""
        << detail::fmt2(oy + (bb.ymax - m.y) * scale - opts.marker_radius - 2.0) << "\">"
        << detail::xml_escape(m.label) << "</text></g>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace serret
