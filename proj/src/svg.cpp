#include "bdiv/svg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numbers>
#include <sstream>
#include <vector>

#include "bdiv/hypgeo.hpp"

namespace bdiv::svg {

namespace {

constexpr double kRadius = 256.0;
constexpr double kMargin = 24.0;
constexpr double kCenter = kRadius + kMargin;
constexpr int kGeodesicSegments = 32;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string px(cplx z) { return fmt(kCenter + kRadius * z.real()) + "," + fmt(kCenter - kRadius * z.imag()); }

class Canvas {
 public:
  explicit Canvas(const Options& opts) {
    const std::string size = fmt(2.0 * kCenter);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
         << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    if (!opts.deterministic) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char stamp[32];
      std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      out_ << "<metadata>generated " << stamp << "</metadata>\n";
    }
    out_ << "<circle cx=\"" << fmt(kCenter) << "\" cy=\"" << fmt(kCenter) << "\" r=\""
         << fmt(kRadius) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

  void dot(cplx z, const char* fill) {
    const auto p = split(z);
    out_ << "<circle class=\"zero\" cx=\"" << p.first << "\" cy=\"" << p.second
         << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
  }

  void ring(cplx z) {
    const auto p = split(z);
    out_ << "<circle class=\"boundary\" cx=\"" << p.first << "\" cy=\"" << p.second
         << "\" r=\"5\" fill=\"none\" stroke=\"darkred\"/>\n";
  }

  void cross(cplx z) {
    const double x = kCenter + kRadius * z.real(), y = kCenter - kRadius * z.imag();
    out_ << "<path class=\"critical\" d=\"M" << fmt(x - 4) << ',' << fmt(y - 4) << " L"
         << fmt(x + 4) << ',' << fmt(y + 4) << " M" << fmt(x - 4) << ',' << fmt(y + 4)
         << " L" << fmt(x + 4) << ',' << fmt(y - 4) << "\" stroke=\"crimson\"/>\n";
  }

  void polyline(const std::vector<cplx>& pts, const char* cls, const char* stroke) {
    out_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << stroke
         << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << px(pts[i]);
    out_ << "\"/>\n";
  }

  void chord(cplx a, cplx b) {
    out_ << "<line class=\"leaf\" x1=\"" << split(a).first << "\" y1=\"" << split(a).second
         << "\" x2=\"" << split(b).first << "\" y2=\"" << split(b).second
         << "\" stroke=\"navy\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  static std::pair<std::string, std::string> split(cplx z) {
    return {fmt(kCenter + kRadius * z.real()), fmt(kCenter - kRadius * z.imag())};
  }
  std::ostringstream out_;
};

// Poincare geodesic between two hull vertices given in the Klein model,
// where geodesics are straight chords.
std::vector<cplx> geodesic(cplx ka, cplx kb) {
  std::vector<cplx> pts;
  for (int i = 0; i <= kGeodesicSegments; ++i) {
    const double t = double(i) / kGeodesicSegments;
    pts.push_back(hyp::klein_to_poincare(ka + t * (kb - ka)));
  }
  return pts;
}

}  // namespace

std::string critical_figure(const Divisor& zeros, const Divisor& critical,
                            bool include_origin, const Options& opts) {
  Canvas c(opts);
  std::vector<hyp::DiskPoint> gens;
  if (include_origin) gens.emplace_back(0.0);
  for (const auto& a : zeros.atoms()) gens.emplace_back(a.point);
  if (gens.size() >= 2) {
    const auto hull = hyp::klein_hull(gens);
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (hull.size() == 2 && i == 1) break;
      c.polyline(geodesic(hull[i], hull[(i + 1) % hull.size()]), "hull", "steelblue");
    }
  }
  if (include_origin) c.dot(0.0, "gray");
  for (const auto& a : zeros.atoms()) c.dot(a.point, "black");
  for (const auto& a : critical.atoms()) c.cross(a.point);
  return c.finish();
}

std::string lamination_figure(const LaminationTable& t, const Options& opts) {
  Canvas c(opts);
  for (const auto& [lo, hi] : ray_pairs(t)) {
    const double a = static_cast<double>(lo), b = static_cast<double>(hi);
    c.chord(std::polar(1.0, 2.0 * std::numbers::pi * a), std::polar(1.0, 2.0 * std::numbers::pi * b));
  }
  for (const auto& e : t.entries) c.dot(e.point, e.nu > 0 ? "darkred" : "black");
  return c.finish();
}

std::string divisor_figure(const Divisor& d, const Options& opts) {
  Canvas c(opts);
  for (const auto& a : d.atoms()) {
    if (std::abs(std::abs(a.point) - 1.0) <= kCircleTol) c.ring(a.point);
    else c.dot(a.point, "black");
  }
  return c.finish();
}

}  // namespace bdiv::svg
