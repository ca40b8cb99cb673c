#include "bdiv/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bdiv/errors.hpp"

namespace bdiv::hyp {

DiskPoint::DiskPoint(cplx value) : value_(value) {
  if (!(std::abs(value) < 1.0 - kInteriorMargin)) {
    throw PreconditionError("point " + std::to_string(value.real()) + "+" +
                            std::to_string(value.imag()) +
                            "i is not an interior disk point");
  }
}

cplx translate(cplx a, cplx w) { return (w + a) / (1.0 + std::conj(a) * w); }

cplx untranslate(cplx a, cplx w) { return (w - a) / (1.0 - std::conj(a) * w); }

double dist(DiskPoint a, DiskPoint b) {
  const double r = std::abs(untranslate(a.value(), b.value()));
  // 2 atanh(r) == log((1 + r) / (1 - r)), better conditioned near r = 0
  return 2.0 * std::atanh(std::min(r, 1.0));
}

cplx klein_embed(DiskPoint z) {
  const cplx v = z.value();
  return 2.0 * v / (1.0 + std::norm(v));
}

cplx klein_to_poincare(cplx k) {
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k))));
}

namespace {

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t =
      std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

std::vector<cplx> klein_hull(std::span<const DiskPoint> generators) {
  std::vector<cplx> pts;
  pts.reserve(generators.size());
  for (const auto& g : generators) pts.push_back(klein_embed(g));
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  // Andrew's monotone chain
  std::vector<cplx> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool hull_contains(std::span<const DiskPoint> generators, DiskPoint p,
                   double tol) {
  if (generators.empty()) {
    throw PreconditionError("hull_contains: empty generator set");
  }
  const auto hull = klein_hull(generators);
  const cplx x = klein_embed(p);
  if (hull.size() == 1) return std::abs(x - hull[0]) <= tol;
  if (hull.size() == 2) return segment_distance(x, hull[0], hull[1]) <= tol;

  bool inside = true;
  double nearest = INFINITY;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cplx a = hull[i];
    const cplx b = hull[(i + 1) % hull.size()];
    if (cross(a, b, x) < 0) inside = false;
    nearest = std::min(nearest, segment_distance(x, a, b));
  }
  return inside || nearest <= tol;
}

HypDisk circle(DiskPoint center, double radius) {
  if (!(radius >= 0.0)) {
    throw PreconditionError("circle: negative hyperbolic radius");
  }
  // |w| = tanh(L/2) pushed forward by translate(center, .)
  const double r = std::tanh(radius / 2.0);
  const cplx c = center.value();
  const double c2 = std::norm(c);
  const double den = 1.0 - r * r * c2;
  return HypDisk{center, radius, c * (1.0 - r * r) / den,
                 r * (1.0 - c2) / den};
}

}  // namespace bdiv::hyp
