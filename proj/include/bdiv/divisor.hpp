#pragma once

// Integral divisors on the open disk, the unit circle and the closed disk,
// with the bottleneck matching metric used for algebraic convergence.

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace bdiv {

using cplx = std::complex<double>;

enum class Region { interior, circle, closed };

inline constexpr double kMergeTol = 1e-10;
inline constexpr double kCircleTol = 1e-12;
// Interior points with modulus in [1 - kAmbiguousBand, 1 - kCircleTol) are
// too close to the circle to split reliably.
inline constexpr double kAmbiguousBand = 1e-8;

struct Atom {
  cplx point;
  int mult = 1;

  friend bool operator==(const Atom&, const Atom&) = default;
};

class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(Region region) : region_(region) {}

  // Validates every point against the region, merges atoms closer than
  // kMergeTol (multiplicity-weighted centroid) and sorts atoms canonically.
  Divisor(Region region, std::vector<Atom> atoms);

  // Simple divisor 1*p_1 + ... + 1*p_n (repeated points merge).
  static Divisor from_points(Region region, std::span<const cplx> points);

  Region region() const { return region_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  int degree() const;
  bool is_simple() const;
  // Multiplicity of the atom within kMergeTol of p, or 0.
  int multiplicity_at(cplx p, double tol = kMergeTol) const;
  // Multiset expansion: each point repeated mult times.
  std::vector<cplx> expanded() const;

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  Region region_ = Region::interior;
  std::vector<Atom> atoms_;
};

const char* region_name(Region r);

Divisor add(const Divisor& a, const Divisor& b);

// Bottleneck distance: min over bijections of the multiset expansions of
// the largest displacement. Throws PreconditionError on degree mismatch.
double matching_distance(const Divisor& a, const Divisor& b);
double matching_distance(std::span<const cplx> a, std::span<const cplx> b);

struct BoundarySplit {
  Divisor interior;
  Divisor circle;
  // Interior points inside the band [1 - kAmbiguousBand, 1 - kCircleTol).
  std::vector<cplx> ambiguous;
};

BoundarySplit split_boundary(const Divisor& d);

// Limit of a divisor sequence: if the last `window` terms are pairwise within
// `tol` in matching distance, the last term with points within `tol` of the
// circle snapped onto it. nullopt when the tail has not settled.
std::optional<Divisor> sequence_limit(std::span<const Divisor> seq, double tol,
                                      int window);

}  // namespace bdiv
