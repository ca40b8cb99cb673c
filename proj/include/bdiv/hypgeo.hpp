#pragma once

// Hyperbolic geometry of the Poincare disk: distances, hyperbolic circles and
// convex-hull containment through the Klein model.

#include <complex>
#include <span>
#include <vector>

namespace bdiv {

using cplx = std::complex<double>;

namespace hyp {

// Points with modulus in [1 - kInteriorMargin, 1] are not interior points.
inline constexpr double kInteriorMargin = 1e-14;
inline constexpr double kDefaultHullTol = 1e-9;

// A point of the open unit disk, bounded away from the circle by
// kInteriorMargin. Construction throws PreconditionError otherwise.
class DiskPoint {
 public:
  DiskPoint(cplx value);  // NOLINT: implicit on purpose, validated
  DiskPoint(double re, double im = 0.0) : DiskPoint(cplx(re, im)) {}

  cplx value() const { return value_; }
  operator cplx() const { return value_; }  // NOLINT

 private:
  cplx value_;
};

struct HypDisk {
  DiskPoint center;
  double radius;  // hyperbolic
  cplx euclid_center;
  double euclid_radius;
};

// Disk automorphism w -> (w + a) / (1 + conj(a) w), sending 0 to a.
cplx translate(cplx a, cplx w);

// Inverse of translate(a, .): w -> (w - a) / (1 - conj(a) w).
cplx untranslate(cplx a, cplx w);

// log((1 + r) / (1 - r)) with r the pseudo-hyperbolic distance.
double dist(DiskPoint a, DiskPoint b);

cplx klein_embed(DiskPoint z);
cplx klein_to_poincare(cplx k);

// True iff klein_embed(p) lies in the Euclidean convex hull of the embedded
// generators inflated outward by tol. Multiplicities are irrelevant here.
bool hull_contains(std::span<const DiskPoint> generators, DiskPoint p,
                   double tol = kDefaultHullTol);

// Circle of hyperbolic radius `radius` around `center`, in Euclidean terms.
HypDisk circle(DiskPoint center, double radius);

// Convex hull in the Klein chart, counterclockwise, collinear points dropped.
std::vector<cplx> klein_hull(std::span<const DiskPoint> generators);

}  // namespace hyp
}  // namespace bdiv
