#include "bdiv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "bdiv/errors.hpp"
#include "bdiv/hypgeo.hpp"

namespace bdiv {

namespace {

constexpr double kSupportTol = 1e-9;
// Sampled and constructed zeros stay this far inside the circle.
constexpr double kInsideMargin = 1e-12;

bool in_support(const Divisor& s, cplx p) { return s.multiplicity_at(p, kSupportTol) > 0; }

cplx iterate(const BlaschkeProduct& b, cplx z, int l) {
  for (int k = 0; k < l; ++k) z = b.eval(z);
  return z;
}

void require_relation_input(const BoundaryDivisor& d, cplx q, int l) {
  const auto& s = d.circle_part();
  if (!s.is_simple()) throw PreconditionError("S must be simple");
  if (in_support(s, 1.0)) throw PreconditionError("1 must not lie in supp(S)");
  if (!in_support(s, q)) throw PreconditionError("q is not a support point of S");
  if (l < 1) throw PreconditionError("iterate count must be >= 1");
  cplx z = q;
  for (int k = 1; k < l; ++k) {
    z = d.interior_part().eval(z);
    if (in_support(s, z)) {
      throw PreconditionError("an intermediate iterate of q lies in supp(S)");
    }
  }
}

// Zeros of B plus (1 - 1/n) times each atom of S, with repeats.
BlaschkeProduct radial_approach(const BoundaryDivisor& d, int n) {
  if (n < 2) throw PreconditionError("radial approach needs n >= 2");
  std::vector<Atom> atoms = d.interior_part().free_zeros().atoms();
  const double r = 1.0 - 1.0 / n;
  for (const auto& a : d.circle_part().atoms()) atoms.push_back({r * a.point, a.mult});
  return BlaschkeProduct::from_zero_divisor(Divisor(Region::interior, std::move(atoms)),
                                            d.interior_part().m());
}

}  // namespace

void SweepConfig::validate() const {
  if (epsilons.empty()) throw PreconditionError("sweep needs at least one epsilon");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw PreconditionError("epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw PreconditionError("epsilons must be strictly decreasing");
    }
  }
  if (samples_per_epsilon < 1) throw PreconditionError("samples_per_epsilon must be >= 1");
}

Divisor sample_neighborhood(const BoundaryDivisor& d, double eps, Rng& rng) {
  if (!(eps > 0.0)) throw PreconditionError("sample_neighborhood: eps must be positive");
  std::vector<cplx> centers = d.interior_part().zero_list();
  for (const auto& p : d.circle_part().expanded()) centers.push_back(p);
  std::vector<Atom> atoms;
  atoms.reserve(centers.size());
  for (const auto& c : centers) {
    cplx b;
    do {
      const double r = eps * std::sqrt(rng.uniform());
      const double t = 2.0 * std::numbers::pi * rng.uniform();
      b = c + std::polar(r, t);
    } while (std::abs(b) >= 1.0 - kInsideMargin);
    atoms.push_back({b, 1});
  }
  return Divisor(Region::interior, std::move(atoms));
}

bool ConvergenceProfile::monotone() const {
  for (std::size_t i = 1; i < max_distance.size(); ++i)
    if (!(max_distance[i] <= max_distance[i - 1])) return false;
  return true;
}

ConvergenceProfile verify_extension_convergence(const BoundaryDivisor& d, int m,
                                                const SweepConfig& cfg) {
  cfg.validate();
  const Divisor target = extend_phi(d, m);
  Rng rng(cfg.rng_seed);
  ConvergenceProfile out;
  for (double eps : cfg.epsilons) {
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < cfg.samples_per_epsilon; ++i) {
      ConvergenceSample rec{eps, i, std::numeric_limits<double>::quiet_NaN(), {}};
      const Divisor z = sample_neighborhood(d, eps, rng);
      try {
        const auto ram = critical_divisor(BlaschkeProduct::from_zero_divisor(z, m));
        rec.distance = matching_distance(ram.free_ram, target);
        worst = std::max(worst, rec.distance);
      } catch (const NumericalError& e) {
        ++failures;
        rec.error = e.what();
      }
      out.samples.push_back(std::move(rec));
    }
    out.epsilons.push_back(eps);
    out.max_distance.push_back(worst);
    out.failures.push_back(failures);
  }
  return out;
}

cplx nearest_critical_point(const BlaschkeProduct& bn, cplx q) {
  auto crit = critical_divisor(bn).free_ram.expanded();
  std::sort(crit.begin(), crit.end(),
            [q](cplx a, cplx b) { return std::abs(a - q) < std::abs(b - q); });
  if (crit.size() >= 2 && std::abs(crit[1] - q) < 2.0 * std::abs(crit[0] - q)) {
    throw NumericalError("critical point near q is not isolated");
  }
  return crit.at(0);
}

std::vector<OrbitSample> verify_cont_orbit(const BoundaryDivisor& d, cplx q, int l,
                                           std::span<const int> n_schedule) {
  require_relation_input(d, q, l);
  const cplx target = iterate(d.interior_part(), q, l);
  std::vector<OrbitSample> out;
  for (int n : n_schedule) {
    const auto bn = radial_approach(d, n);
    OrbitSample s;
    s.n = n;
    s.critical_point = nearest_critical_point(bn, q);
    s.image = iterate(bn, s.critical_point, l);
    s.distance = std::abs(s.image - target);
    out.push_back(s);
  }
  return out;
}

namespace {

struct PrescribeProblem {
  const BoundaryDivisor& d;
  cplx q;
  int l;
  double delta;
  double tau;
  cplx center;
  cplx xi;
  std::vector<Atom> fixed;  // zeros of B and the pulled-in support points
  int m;

  bool admissible(cplx zeta) const {
    return std::abs(zeta - q) < delta && std::abs(zeta) < 1.0 - kInsideMargin;
  }

  Divisor zeros(cplx zeta) const {
    auto atoms = fixed;
    atoms.push_back({zeta, 1});
    return Divisor(Region::interior, std::move(atoms));
  }

  // B^l(c_q(B)) for B built from the canonical divisor, so re-measurement
  // from the certificate reproduces it bit for bit.
  std::optional<cplx> image(cplx zeta) const {
    if (!admissible(zeta)) return std::nullopt;
    try {
      const auto b = BlaschkeProduct::from_zero_divisor(zeros(zeta), m);
      return iterate(b, nearest_critical_point(b, q), l);
    } catch (const NumericalError&) {
      return std::nullopt;
    }
  }

  std::optional<cplx> residual(cplx zeta) const {
    auto h = image(zeta);
    if (!h) return std::nullopt;
    return *h - xi;
  }
};

struct NewtonResult {
  cplx zeta;
  double norm;
  int iterations;
};

NewtonResult damped_newton(const PrescribeProblem& p, cplx start, int max_iter) {
  NewtonResult best{start, std::numeric_limits<double>::infinity(), 0};
  auto f0 = p.residual(start);
  if (!f0) return best;
  cplx z = start, f = *f0;
  best.norm = std::abs(f);
  for (int it = 1; it <= max_iter; ++it) {
    best.iterations = it;
    const double h = 1e-4 * std::min(1.0 - std::abs(z), std::abs(z - p.q) + 1e-3 * p.delta);
    auto fx1 = p.residual(z + h), fx0 = p.residual(z - h);
    auto fy1 = p.residual(z + cplx(0, h)), fy0 = p.residual(z - cplx(0, h));
    if (!fx1 || !fx0 || !fy1 || !fy0) break;
    const cplx dx = (*fx1 - *fx0) / (2.0 * h), dy = (*fy1 - *fy0) / (2.0 * h);
    // [Re dx Re dy; Im dx Im dy] [u v]^T = -[Re f Im f]^T
    const double det = dx.real() * dy.imag() - dy.real() * dx.imag();
    if (det == 0.0 || !std::isfinite(det)) break;
    const double u = -(f.real() * dy.imag() - dy.real() * f.imag()) / det;
    const double v = -(dx.real() * f.imag() - f.real() * dx.imag()) / det;
    cplx step(u, v);
    bool moved = false;
    for (int k = 0; k < 40; ++k, step *= 0.5) {
      auto fn = p.residual(z + step);
      if (fn && std::abs(*fn) < std::abs(f)) {
        z += step;
        f = *fn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    best = {z, std::abs(f), it};
    if (best.norm < 1e-15) break;
  }
  return best;
}

// Winding number of the residual around the boundary of a square cell;
// nullopt if the residual is undefined somewhere on it or a step is too coarse.
std::optional<int> cell_winding(const PrescribeProblem& p, cplx lo, double side) {
  constexpr int kPerSide = 32;
  const cplx corners[5] = {lo, lo + side, lo + cplx(side, side), lo + cplx(0, side), lo};
  double total = 0.0;
  std::optional<cplx> prev = p.residual(lo);
  if (!prev) return std::nullopt;
  for (int s = 0; s < 4; ++s) {
    for (int k = 1; k <= kPerSide; ++k) {
      const cplx z = corners[s] + (corners[s + 1] - corners[s]) * (double(k) / kPerSide);
      auto cur = p.residual(z);
      if (!cur) return std::nullopt;
      const double step = std::arg(*cur / *prev);
      if (std::abs(step) > 2.0 * std::numbers::pi / 3.0) return std::nullopt;
      total += step;
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

std::optional<NewtonResult> quadtree_search(const PrescribeProblem& p, int max_depth,
                                            int max_newton, double tol) {
  struct Cell { cplx lo; double side; int depth; };
  std::vector<Cell> stack{{p.q - cplx(p.delta, p.delta), 2.0 * p.delta, 0}};
  std::optional<NewtonResult> best;
  int budget = 4096;
  while (!stack.empty() && budget-- > 0) {
    const Cell c = stack.back();
    stack.pop_back();
    const auto w = cell_winding(p, c.lo, c.side);
    if (w && *w == 0) continue;
    if (w && (*w != 0) && c.depth >= 2) {
      auto r = damped_newton(p, c.lo + cplx(c.side / 2, c.side / 2), max_newton);
      if (!best || r.norm < best->norm) best = r;
      if (r.norm < tol) return best;
    }
    // undefined edges are only refined a few levels
    if (c.depth >= max_depth || (!w && c.depth >= 6)) continue;
    const double h = c.side / 2;
    for (const cplx off : {cplx(0, 0), cplx(h, 0), cplx(0, h), cplx(h, h)})
      stack.push_back({c.lo + off, h, c.depth + 1});
  }
  return best;
}

}  // namespace

SolveCertificate prescribe_distance(const BoundaryDivisor& d, cplx q, int l, double L,
                                    double eps, const PrescribeOptions& opts) {
  require_relation_input(d, q, l);
  if (!(L >= 0.0) || !std::isfinite(L)) throw PreconditionError("L must be finite and >= 0");
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  const auto& b = d.interior_part();
  const auto& s = d.circle_part();
  const cplx q_image = iterate(b, q, l);
  cplx q_prime{};
  bool found = false;
  for (const auto& a : s.atoms()) {
    if (std::abs(a.point - q_image) < kSupportTol) {
      q_prime = a.point;
      found = true;
    }
  }
  if (!found) throw PreconditionError("B^l(q) is not a support point of S");
  if (std::abs(q_prime - q) < kSupportTol) {
    throw PreconditionError("B^l(q) = q is not a dynamical relation");
  }

  double delta = opts.delta > 0.0 ? opts.delta : eps / 2.0;
  if (!(delta < eps)) throw PreconditionError("delta must be smaller than eps");
  const double tol_norm = 1e-13;
  SolveCertificate best_cert;
  best_cert.residual = std::numeric_limits<double>::infinity();
  int total_iterations = 0;

  for (int attempt = 0; attempt <= opts.max_shrinks; ++attempt, delta /= 2.0) {
    const double tau = opts.tau > 0.0 ? opts.tau : delta / 16.0;
    PrescribeProblem p{d, q, l, delta, tau, (1.0 - tau) * q_prime, {}, {}, b.m()};
    p.fixed = b.free_zeros().atoms();
    for (const auto& a : s.atoms())
      if (std::abs(a.point - q) >= kSupportTol) p.fixed.push_back({(1.0 - tau) * a.point, 1});
    const cplx dir = -p.center / std::abs(p.center);
    p.xi = hyp::translate(p.center, std::tanh(L / 2.0) * dir);

    // radial starts from deep to shallow, then the quadtree fallback
    std::optional<NewtonResult> best;
    for (double frac = 0.5; frac > 1e-12; frac /= 8.0) {
      auto r = damped_newton(p, q * (1.0 - frac * delta), opts.max_newton);
      total_iterations += r.iterations;
      if (!best || r.norm < best->norm) best = r;
      if (r.norm < tol_norm) break;
    }
    if (!best || best->norm >= tol_norm) {
      auto r = quadtree_search(p, opts.quadtree_depth, opts.max_newton, tol_norm);
      if (r) {
        total_iterations += r->iterations;
        if (!best || r->norm < best->norm) best = r;
      }
    }
    if (!best || !std::isfinite(best->norm)) continue;

    SolveCertificate cert;
    cert.target_L = L;
    cert.result_divisor = p.zeros(best->zeta);
    cert.m = p.m;
    cert.zeta = best->zeta;
    cert.xi = p.xi;
    cert.center = p.center;
    cert.image = *p.image(best->zeta);
    cert.achieved = hyp::dist(cert.center, cert.image);
    cert.residual = std::abs(cert.achieved - L);
    cert.delta = delta;
    cert.tau = tau;
    cert.iterations = total_iterations;
    if (cert.residual < best_cert.residual) best_cert = cert;
    if (cert.residual < opts.residual_tol) return cert;
  }
  throw NumericalError("prescribe_distance: no solution within budget (best residual " +
                       std::to_string(best_cert.residual) + ")");
}

std::vector<MultiplierSample> multiplier_limit_check(const BoundaryDivisor& d,
                                                     std::span<const int> n_schedule) {
  if (d.l() != 1) throw PreconditionError("multiplier_limit_check needs a singular divisor");
  if (in_support(d.circle_part(), 1.0)) {
    throw PreconditionError("multiplier_limit_check: 1 must not lie in supp(S)");
  }
  std::vector<MultiplierSample> out;
  for (int n : n_schedule) {
    MultiplierSample s;
    s.n = n;
    s.multiplier = multiplier_at_zero(radial_approach(d, n));
    s.deviation = std::abs(s.multiplier - 1.0);
    out.push_back(s);
  }
  return out;
}

}  // namespace bdiv
