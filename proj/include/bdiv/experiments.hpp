#pragma once

// Seeded numerical experiments around boundary divisors: neighborhood
// sampling, convergence of the extended critical-divisor map, continuity of
// critical orbits, prescribed hyperbolic distances and multiplier limits.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bdiv/boundary.hpp"
#include "bdiv/divisor.hpp"

namespace bdiv {

// mt19937_64 with a portable conversion to doubles in [0, 1), so sweeps are
// bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct SweepConfig {
  std::vector<double> epsilons;  // strictly decreasing, positive
  int samples_per_epsilon = 32;
  std::uint64_t rng_seed = 0;
  std::map<std::string, double> tolerances;

  void validate() const;
};

// Free zeros of B plus S, each atom (with repeats) moved to a uniform point of
// D(a, eps) inside the open disk.
Divisor sample_neighborhood(const BoundaryDivisor& d, double eps, Rng& rng);

struct ConvergenceSample {
  double eps = 0.0;
  int index = 0;
  double distance = 0.0;  // NaN when the solve failed
  std::string error;
};

struct ConvergenceProfile {
  std::vector<double> epsilons;
  std::vector<double> max_distance;
  std::vector<int> failures;
  std::vector<ConvergenceSample> samples;

  bool monotone() const;
};

ConvergenceProfile verify_extension_convergence(const BoundaryDivisor& d, int m,
                                                const SweepConfig& cfg);

struct OrbitSample {
  int n = 0;
  cplx critical_point{};
  cplx image{};
  double distance = 0.0;
};

// Critical point of B_n nearest q, where B_n has zeros Z_B + sum (1 - 1/n) q_j.
// Throws NumericalError when the second-nearest critical point is within
// twice the nearest distance.
cplx nearest_critical_point(const BlaschkeProduct& bn, cplx q);

std::vector<OrbitSample> verify_cont_orbit(const BoundaryDivisor& d, cplx q,
                                           int l, std::span<const int> n_schedule);

struct PrescribeOptions {
  double delta = 0.0;  // radius of the zeta search disk; 0 means eps / 2
  double tau = 0.0;    // pull-in of the other support points; 0 means automatic
  int max_shrinks = 8;
  int max_newton = 60;
  int quadtree_depth = 10;
  double residual_tol = 1e-6;
};

struct SolveCertificate {
  double target_L = 0.0;
  double achieved = 0.0;
  double residual = 0.0;
  Divisor result_divisor;  // free zeros of the solution
  int m = 1;
  int iterations = 0;
  cplx zeta{};       // zero replacing q
  cplx xi{};         // target point on the hyperbolic circle
  cplx center{};     // zero near q' = B^l(q)
  cplx image{};      // B^l(c_q) at the solution
  double delta = 0.0;
  double tau = 0.0;
};

// Finds B in N_eps(D) with hyperbolic distance L between its zero near
// q' = B^l(q) and the l-th image of its critical point near q.
SolveCertificate prescribe_distance(const BoundaryDivisor& d, cplx q, int l, double L,
                                    double eps, const PrescribeOptions& opts = {});

struct MultiplierSample {
  int n = 0;
  cplx multiplier{};
  double deviation = 0.0;  // |B_n'(0) - 1|
};

// Radial approach (1 - 1/n) q to a singular divisor with 1 outside supp(S).
std::vector<MultiplierSample> multiplier_limit_check(const BoundaryDivisor& d,
                                                     std::span<const int> n_schedule);

}  // namespace bdiv
