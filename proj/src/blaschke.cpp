#include "bdiv/blaschke.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "bdiv/errors.hpp"
#include "bdiv/hypgeo.hpp"

namespace bdiv {

namespace {

using poly::Poly;

// Q(z) = prod (1 - conj(a) z) has coefficients conj(p_{e-k}) for monic P.
Poly reflected(const Poly& p) {
  Poly q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    q[k] = std::conj(p[p.size() - 1 - k]);
  return q;
}

Poly critical_poly_from(const Poly& p, int m) {
  const Poly q = reflected(p);
  const Poly lhs = poly::multiply(
      poly::subtract(poly::scale(p, static_cast<double>(m)),
                     poly::scale(poly::shift(poly::derivative(p)), -1.0)),
      q);
  const Poly rhs = poly::multiply(poly::shift(p), poly::derivative(q));
  return poly::subtract(lhs, rhs);
}

struct Selection {
  std::vector<cplx> inside;
  int outside = 0;
};

// Picks the e roots of the critical polynomial that lie in the disk. Roots
// come in reflection pairs c, 1/conj(c); the e smallest in modulus are the
// interior ones unless a pair straddling the circle was resolved on the
// wrong side, in which case the stray root is reflected back in.
Selection select_interior(std::vector<cplx> roots, int e) {
  if (static_cast<int>(roots.size()) < e) {
    throw NumericalError("critical polynomial has " +
                         std::to_string(roots.size()) + " roots, expected " +
                         std::to_string(e));
  }
  std::stable_sort(roots.begin(), roots.end(),
                   [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  Selection sel;
  for (const auto& r : roots) sel.outside += std::abs(r) >= 1.0 ? 1 : 0;
  for (int k = 0; k < e; ++k) {
    cplx z = roots[static_cast<std::size_t>(k)];
    const double r = std::abs(z);
    if (r > 1.0 + 1e-6) {
      throw NumericalError("interior critical point count " +
                           std::to_string(k) + " below free degree " +
                           std::to_string(e));
    }
    if (r >= 1.0) {
      z = 1.0 / std::conj(z);
      while (std::abs(z) >= 1.0) z *= std::nextafter(1.0, 0.0);
    }
    sel.inside.push_back(z);
  }
  return sel;
}

Selection interior_critical_points(const Poly& p, int m, int polish) {
  Poly crit = critical_poly_from(p, m);
  poly::trim(crit, 1e-14);
  return select_interior(poly::roots(crit, polish),
                         static_cast<int>(p.size()) - 1);
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(Divisor zeros, int m)
    : free_zeros_(std::move(zeros)), m_(m) {
  zeros_ = free_zeros_.expanded();
  for (const auto& a : zeros_) {
    norm_ *= (1.0 - std::conj(a)) / (1.0 - a);
  }
  p_ = poly::from_roots(zeros_);
  q_ = reflected(p_);
}

BlaschkeProduct BlaschkeProduct::from_zero_divisor(const Divisor& zeros, int m) {
  if (m < 1) throw PreconditionError("m must be a positive integer");
  if (!zeros.empty() && zeros.region() != Region::interior) {
    // accept closed-region input as long as every zero is interior
    for (const auto& a : zeros.atoms()) {
      if (!(std::abs(a.point) < 1.0)) {
        throw PreconditionError("Blaschke zero on or outside the unit circle");
      }
    }
    return BlaschkeProduct(Divisor(Region::interior, zeros.atoms()), m);
  }
  return BlaschkeProduct(zeros, m);
}

BlaschkeProduct BlaschkeProduct::identity() {
  return BlaschkeProduct(Divisor(Region::interior), 1);
}

cplx BlaschkeProduct::eval(cplx z) const {
  cplx acc = norm_ * std::pow(z, m_);
  for (const auto& a : zeros_) {
    const cplx den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < kPoleTol) {
      throw PreconditionError("evaluation at a pole of the Blaschke product");
    }
    acc *= (z - a) / den;
  }
  return acc;
}

cplx BlaschkeProduct::deriv(cplx z) const {
  // product rule over the factors z^m and (z - a) / (1 - conj(a) z)
  const std::size_t e = zeros_.size();
  std::vector<cplx> f(e), df(e);
  for (std::size_t k = 0; k < e; ++k) {
    const cplx a = zeros_[k];
    const cplx den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < kPoleTol) {
      throw PreconditionError("differentiation at a pole of the Blaschke product");
    }
    f[k] = (z - a) / den;
    df[k] = (1.0 - std::norm(a)) / (den * den);
  }
  const cplx zm = std::pow(z, m_);
  const cplx dzm = m_ == 1 ? cplx(1.0) : static_cast<double>(m_) * std::pow(z, m_ - 1);

  cplx prod_all(1.0);
  for (const auto& v : f) prod_all *= v;
  cplx sum = dzm * prod_all;
  for (std::size_t k = 0; k < e; ++k) {
    cplx term = zm * df[k];
    for (std::size_t j = 0; j < e; ++j)
      if (j != k) term *= f[j];
    sum += term;
  }
  return norm_ * sum;
}

bool BlaschkeProduct::is_power_map() const {
  return std::all_of(zeros_.begin(), zeros_.end(),
                     [](cplx a) { return a == cplx(0.0); });
}

poly::Poly critical_poly(const BlaschkeProduct& b) {
  return critical_poly_from(b.zero_poly(), b.m());
}

RamificationResult critical_divisor(const BlaschkeProduct& b) {
  const int e = b.free_degree();
  if (e < 1) {
    throw PreconditionError("critical_divisor requires at least one free zero");
  }
  Poly crit = critical_poly(b);
  poly::trim(crit, 1e-14);
  auto roots = poly::roots(crit, 2);
  const auto count_inside = std::count_if(
      roots.begin(), roots.end(), [](cplx z) { return std::abs(z) < 1.0; });
  if (count_inside != e) roots = poly::roots(crit, 8);
  auto sel = select_interior(std::move(roots), e);
  return {Divisor::from_points(Region::interior, sel.inside), sel.outside};
}

BlaschkeProduct zeros_from_critical(const Divisor& ram, int m,
                                    const ContinuationOptions& opts) {
  const int e = ram.degree();
  if (e < 1) throw PreconditionError("zeros_from_critical requires degree >= 1");
  if (m < 1) throw PreconditionError("m must be a positive integer");
  for (const auto& a : ram.atoms()) {
    if (!(std::abs(a.point) < 1.0)) {
      throw PreconditionError("ramification divisor must be interior");
    }
  }
  const auto targets = ram.expanded();
  const auto n = static_cast<Eigen::Index>(2 * e);

  auto to_poly = [e](const Eigen::VectorXd& x) {
    Poly p(static_cast<std::size_t>(e) + 1);
    for (int k = 0; k < e; ++k) p[static_cast<std::size_t>(k)] = cplx(x[2 * k], x[2 * k + 1]);
    p[static_cast<std::size_t>(e)] = 1.0;
    return p;
  };
  // monic polynomial of the interior critical points, as a real vector
  auto forward = [&](const Eigen::VectorXd& x) {
    const auto crit = interior_critical_points(to_poly(x), m, 2).inside;
    const Poly c = poly::from_roots(crit);
    Eigen::VectorXd out(n);
    for (int k = 0; k < e; ++k) {
      out[2 * k] = c[static_cast<std::size_t>(k)].real();
      out[2 * k + 1] = c[static_cast<std::size_t>(k)].imag();
    }
    return out;
  };
  auto target_at = [&](double t) {
    std::vector<cplx> scaled(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) scaled[k] = t * targets[k];
    const Poly c = poly::from_roots(scaled);
    Eigen::VectorXd out(n);
    for (int k = 0; k < e; ++k) {
      out[2 * k] = c[static_cast<std::size_t>(k)].real();
      out[2 * k + 1] = c[static_cast<std::size_t>(k)].imag();
    }
    return out;
  };
  auto zeros_inside = [&](const Eigen::VectorXd& x) {
    for (const auto& z : poly::roots(to_poly(x), 2))
      if (!(std::abs(z) < 1.0)) return false;
    return true;
  };
  auto newton = [&](Eigen::VectorXd& x, const Eigen::VectorXd& target) {
    try {
      Eigen::VectorXd g = forward(x) - target;
      double res = g.norm();
      for (int it = 0; it < opts.max_newton; ++it) {
        if (res < opts.newton_tol) return zeros_inside(x);
        Eigen::MatrixXd jac(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
          const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
          Eigen::VectorXd xp = x, xm = x;
          xp[j] += h;
          xm[j] -= h;
          jac.col(j) = (forward(xp) - forward(xm)) / (2.0 * h);
        }
        const Eigen::VectorXd dx = jac.fullPivLu().solve(-g);
        if (!dx.allFinite()) return false;
        Eigen::VectorXd next = x + dx;
        Eigen::VectorXd gn = forward(next) - target;
        if (!(gn.norm() < res)) {
          // converged to working precision if the step is negligible
          return res < 1e3 * opts.newton_tol && zeros_inside(x);
        }
        x = std::move(next);
        g = std::move(gn);
        res = g.norm();
      }
      return res < opts.newton_tol && zeros_inside(x);
    } catch (const NumericalError&) {
      return false;
    }
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);  // P = z^e, B = z^(e+m)
  Eigen::VectorXd x_prev = x;
  double t = 0.0, t_prev = 0.0;
  double step = opts.initial_step;
  while (t < 1.0) {
    const double t_next = std::min(1.0, t + step);
    Eigen::VectorXd guess = x;
    if (t > t_prev) guess = x + (x - x_prev) * ((t_next - t) / (t - t_prev));
    if (newton(guess, target_at(t_next))) {
      x_prev = x;
      t_prev = t;
      x = guess;
      t = t_next;
      step = std::min(opts.max_step, step * 1.5);
    } else {
      step /= 2.0;
      if (step < opts.min_step) {
        throw ContinuationError(
            "homotopy continuation stalled (last good t = " +
                std::to_string(t) + ")",
            t);
      }
    }
  }

  auto zeros = poly::roots(to_poly(x), 6);
  for (const auto& z : zeros) {
    if (!(std::abs(z) < 1.0)) {
      throw ContinuationError("continuation ended with a zero outside the disk", t);
    }
  }
  return BlaschkeProduct::from_zero_divisor(
      Divisor::from_points(Region::interior, zeros), m);
}

cplx phi_1m_closed_form(cplx a, int m) {
  if (m < 1) throw PreconditionError("m must be a positive integer");
  const double r2 = std::norm(a);
  if (r2 > 1.0 + 2 * kCircleTol) {
    throw PreconditionError("phi_1m_closed_form: |a| > 1");
  }
  const double md = m;
  const double s = (md - 1.0) * r2 + (md + 1.0);
  const double disc = std::max(0.0, s * s - 4.0 * md * md * r2);
  return 2.0 * a * md / (s + std::sqrt(disc));
}

cplx multiplier_at_zero(const BlaschkeProduct& b) {
  if (b.m() >= 2) return 0.0;
  cplx acc(1.0);
  for (const auto& a : b.zero_list()) acc *= (1.0 - std::conj(a)) / (1.0 - a) * (-a);
  return acc;
}

std::vector<cplx> boundary_orbit(const BlaschkeProduct& b, cplx q, int n) {
  if (std::abs(std::abs(q) - 1.0) > kCircleTol) {
    throw PreconditionError("boundary_orbit: starting point is not on the circle");
  }
  if (n < 0) throw PreconditionError("boundary_orbit: negative length");
  std::vector<cplx> out{q};
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) {
    const cplx next = b.eval(out.back());
    out.push_back(next / std::abs(next));
  }
  return out;
}

bool walsh_check(const BlaschkeProduct& b, double tol) {
  if (b.degree() < 2) throw PreconditionError("walsh_check requires degree >= 2");
  std::vector<hyp::DiskPoint> gens{hyp::DiskPoint(0.0)};
  for (const auto& a : b.zero_list()) gens.emplace_back(a);
  if (b.free_degree() == 0) return true;
  const auto ram = critical_divisor(b).free_ram;
  for (const auto& c : ram.atoms()) {
    if (!hyp::hull_contains(gens, hyp::DiskPoint(c.point), tol)) return false;
  }
  // the (m-1)-fold critical point at 0 is itself a generator
  return true;
}

}  // namespace bdiv
