#pragma once

// Finite Blaschke products in B_{e,m}: degree e + m maps of the disk fixing
// 0 (with local degree at least m) and 1, parameterized by their free zeros.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdiv/divisor.hpp"
#include "bdiv/errors.hpp"
#include "bdiv/polynomial.hpp"

namespace bdiv {

// |1 - conj(a) z| below this counts as hitting a pole.
inline constexpr double kPoleTol = 1e-14;

class BlaschkeProduct {
 public:
  // B(z) = z^m * prod_k (1 - conj(a_k)) / (1 - a_k) * (z - a_k) / (1 - conj(a_k) z)
  static BlaschkeProduct from_zero_divisor(const Divisor& zeros, int m);
  // The identity map: no free zeros, m = 1.
  static BlaschkeProduct identity();

  int m() const { return m_; }
  int free_degree() const { return static_cast<int>(zeros_.size()); }
  int degree() const { return free_degree() + m_; }
  const Divisor& free_zeros() const { return free_zeros_; }
  // Multiset expansion of the free zeros.
  const std::vector<cplx>& zero_list() const { return zeros_; }
  cplx normalization() const { return norm_; }

  cplx eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z); }
  cplx deriv(cplx z) const;

  // True iff B is z^k (every free zero at the origin).
  bool is_power_map() const;

  // B = norm * z^m * P / Q with P = prod (z - a_k), Q = prod (1 - conj(a_k) z).
  const poly::Poly& zero_poly() const { return p_; }
  const poly::Poly& pole_poly() const { return q_; }

 private:
  BlaschkeProduct(Divisor zeros, int m);

  Divisor free_zeros_;
  std::vector<cplx> zeros_;
  int m_ = 1;
  cplx norm_{1.0};
  poly::Poly p_, q_;
};

struct RamificationResult {
  Divisor free_ram;        // degree e, interior
  int residual_count = 0;  // critical points found outside the disk
};

// Free ramification divisor: the critical points of B in the disk other than
// the forced (m-1)-fold one at 0. Requires e >= 1.
RamificationResult critical_divisor(const BlaschkeProduct& b);

// Numerator of B' with the forced z^(m-1) factor removed:
// (m P + z P') Q - z P Q'. Its 2e roots are the free critical points and
// their reflections in the circle.
poly::Poly critical_poly(const BlaschkeProduct& b);

struct ContinuationOptions {
  double initial_step = 0.05;
  double max_step = 0.25;
  double min_step = 1e-6;
  double newton_tol = 1e-12;
  int max_newton = 12;
};

class ContinuationError : public NumericalError {
 public:
  ContinuationError(const std::string& what, double last_good_t)
      : NumericalError(what), last_good_t_(last_good_t) {}
  double last_good_t() const { return last_good_t_; }

 private:
  double last_good_t_;
};

// Inverse of critical_divisor: the unique B in B_{e,m} with free
// ramification divisor R, by homotopy continuation along t*R.
BlaschkeProduct zeros_from_critical(const Divisor& ram, int m,
                                    const ContinuationOptions& opts = {});

// Closed form for the free critical point when e = 1 (identity on |a| = 1).
cplx phi_1m_closed_form(cplx a, int m);

// B'(0): zero for m >= 2, else prod_k (1 - conj a_k) / (1 - a_k) * (-a_k).
cplx multiplier_at_zero(const BlaschkeProduct& b);

// q, B(q), ..., B^n(q), each iterate renormalized to the circle.
std::vector<cplx> boundary_orbit(const BlaschkeProduct& b, cplx q, int n);

// Every critical point in the disk lies in the hyperbolic hull of the zeros.
bool walsh_check(const BlaschkeProduct& b, double tol = 1e-9);

}  // namespace bdiv
