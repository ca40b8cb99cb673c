#pragma once

// Boundary points D = (B, S) of the compactified parameter space, the
// extension of the critical-divisor map to them, degenerate limits when zeros
// escape to 1, and the type R / type S classification.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bdiv/blaschke.hpp"
#include "bdiv/divisor.hpp"

namespace bdiv {

inline constexpr int kDefaultOrbitDepth = 64;
inline constexpr double kDefaultOrbitTol = 1e-9;

class BoundaryDivisor {
 public:
  // S must be a circle divisor of degree >= 1.
  BoundaryDivisor(BlaschkeProduct interior, Divisor circle);

  const BlaschkeProduct& interior_part() const { return interior_; }
  const Divisor& circle_part() const { return circle_; }
  // Degree of B; 1 means B is the identity.
  int l() const { return interior_.degree(); }
  int total_degree() const { return l() + circle_.degree(); }
  // Z_B + S as a closed-disk divisor.
  Divisor zero_divisor() const;

 private:
  BlaschkeProduct interior_;
  Divisor circle_;
};

// Critical-divisor map extended to the boundary: Psi(Z_B) + S, where Z_B is
// read as a free zero divisor with forced local degree m at the origin.
Divisor extend_phi(const BoundaryDivisor& d, int m);

// -(1 - conj a) / (1 - a) multiplied over the given points (with repeats).
cplx escaper_factor(std::span<const cplx> escapers);

struct ZetaLimitOptions {
  double escape_radius = 1e-2;
  double stable_tol = 1e-6;
  int window = 3;
};

// Unimodular factor by which B_n degenerates when zeros escape to 1. The
// factor product is taken over atoms within escape_radius of 1 in each term;
// returns the last product once the tail is stable, else nullopt.
// Throws PreconditionError if the last term has no escaping atoms.
std::optional<cplx> zeta_limit(std::span<const Divisor> seq,
                               const ZetaLimitOptions& opts = {});
// Same over explicit escaper lists, one list per term.
std::optional<cplx> zeta_limit(std::span<const std::vector<cplx>> escapers,
                               double stable_tol = 1e-6, int window = 3);

// n-th free zero divisor of a sequence converging algebraically to D whose
// maps converge to zeta * B. Requires 1 in supp(S) and |zeta| = 1.
Divisor build_degenerate_sequence(const BoundaryDivisor& d, cplx zeta, int n);

bool is_regular(const BoundaryDivisor& d);

enum class OrbitStatus { detected, none_within_depth, exact };

const char* orbit_status_name(OrbitStatus s);

struct DynamicalRelation {
  OrbitStatus status = OrbitStatus::none_within_depth;
  int l = 0;  // iterate count when detected
  cplx q{}, q_prime{};
  int depth = 0;
  double tol = 0.0;
};

// Distinct support points q, q' with B^l(q) = q' for some l >= 1. Symbolic
// (status exact / detected with exact angles) when B is a power map and all
// support angles are rational with small denominators; numeric otherwise.
DynamicalRelation has_dynamical_relation(
    const BoundaryDivisor& d, int depth = kDefaultOrbitDepth,
    double tol = kDefaultOrbitTol);

struct OrbitMembership {
  OrbitStatus status = OrbitStatus::none_within_depth;
  int j = 0;  // first iterate landing on supp(S) when detected
  int depth = 0;
  double tol = 0.0;
};

// Whether q belongs to the union of backward (zeta B)-images of supp(S),
// decided along the forward orbit of q.
OrbitMembership in_E_zeta(const BoundaryDivisor& d, cplx zeta, cplx q,
                          int depth = kDefaultOrbitDepth,
                          double tol = kDefaultOrbitTol);

enum class Verdict { TypeR, TypeS, NoExtension };

const char* verdict_name(Verdict v);

struct ClassificationReport {
  bool regular = false;
  bool simple = false;
  bool one_in_support = false;
  DynamicalRelation dynrel;
  Verdict verdict = Verdict::NoExtension;
  std::string reason;
  // "z+z^d" with d substituted, for type S only
  std::optional<std::string> singular_value;
  // TypeR resting on an orbit search rather than an exact argument
  bool numerically_supported = false;
};

ClassificationReport classify(const BoundaryDivisor& d,
                              int depth = kDefaultOrbitDepth,
                              double tol = kDefaultOrbitTol);

}  // namespace bdiv
