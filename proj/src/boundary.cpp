#include "bdiv/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "bdiv/errors.hpp"

namespace bdiv {

namespace {

constexpr std::int64_t kMaxAngleDenominator = 1'000'000;
constexpr double kAngleMatchTol = 1e-12;

struct Turns {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Turns&, const Turns&) = default;
};

// Rational angle (in turns) of a circle point, if it has a denominator of
// at most kMaxAngleDenominator and matches to kAngleMatchTol.
std::optional<Turns> rational_angle(cplx q) {
  double x = std::arg(q) / (2.0 * std::numbers::pi);
  if (x < 0) x += 1.0;
  // continued fraction convergents of x
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a_d = std::floor(r);
    if (a_d > static_cast<double>(kMaxAngleDenominator)) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > kMaxAngleDenominator) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <
        kAngleMatchTol) {
      Turns t{h1 % k1, k1};
      return t;
    }
    const double frac = r - a_d;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

Turns times(const Turns& t, std::int64_t k) {
  return Turns{(t.num * k) % t.den, t.den};
}

// Exact orbit comparison for the power map z -> z^k on rational angles,
// reduced to lowest terms so equality is structural.
Turns reduced(Turns t) {
  const std::int64_t g = std::gcd(t.num, t.den);
  return g > 1 ? Turns{t.num / g, t.den / g} : t;
}

std::vector<cplx> support_points(const Divisor& s) {
  std::vector<cplx> out;
  for (const auto& a : s.atoms()) out.push_back(a.point);
  return out;
}

}  // namespace

BoundaryDivisor::BoundaryDivisor(BlaschkeProduct interior, Divisor circle)
    : interior_(std::move(interior)), circle_(std::move(circle)) {
  if (circle_.degree() < 1) {
    throw PreconditionError("boundary divisor needs deg(S) >= 1");
  }
  if (circle_.region() != Region::circle) {
    throw PreconditionError("S must be a circle divisor");
  }
}

Divisor BoundaryDivisor::zero_divisor() const {
  std::vector<Atom> atoms = interior_.free_zeros().atoms();
  atoms.insert(atoms.end(), circle_.atoms().begin(), circle_.atoms().end());
  return Divisor(Region::closed, std::move(atoms));
}

Divisor extend_phi(const BoundaryDivisor& d, int m) {
  const auto& zb = d.interior_part().free_zeros();
  if (zb.empty()) return Divisor(Region::closed, d.circle_part().atoms());
  const auto b = BlaschkeProduct::from_zero_divisor(zb, m);
  return add(critical_divisor(b).free_ram, d.circle_part());
}

cplx escaper_factor(std::span<const cplx> escapers) {
  cplx acc(1.0);
  for (const auto& a : escapers) acc *= -(1.0 - std::conj(a)) / (1.0 - a);
  return acc;
}

std::optional<cplx> zeta_limit(std::span<const std::vector<cplx>> escapers,
                               double stable_tol, int window) {
  if (escapers.empty() || escapers.back().empty()) {
    throw PreconditionError("zeta_limit: no zeros escape to 1");
  }
  std::vector<cplx> products;
  for (const auto& term : escapers)
    if (!term.empty()) products.push_back(escaper_factor(term));
  if (window < 1 || static_cast<int>(products.size()) < window) return std::nullopt;
  const auto first = products.end() - window;
  for (auto i = first; i != products.end(); ++i)
    for (auto j = i + 1; j != products.end(); ++j)
      if (std::abs(*i - *j) > stable_tol) return std::nullopt;
  return products.back();
}

std::optional<cplx> zeta_limit(std::span<const Divisor> seq,
                               const ZetaLimitOptions& opts) {
  std::vector<std::vector<cplx>> escapers;
  for (const auto& term : seq) {
    std::vector<cplx> esc;
    for (const auto& a : term.atoms())
      if (std::abs(a.point - 1.0) < opts.escape_radius)
        esc.insert(esc.end(), a.mult, a.point);
    escapers.push_back(std::move(esc));
  }
  return zeta_limit(std::span<const std::vector<cplx>>(escapers),
                    opts.stable_tol, opts.window);
}

Divisor build_degenerate_sequence(const BoundaryDivisor& d, cplx zeta, int n) {
  const auto& s = d.circle_part();
  const int nu1 = s.multiplicity_at(1.0);
  if (nu1 == 0) throw PreconditionError("build_degenerate_sequence: 1 not in supp(S)");
  if (std::abs(std::abs(zeta) - 1.0) > kCircleTol) {
    throw PreconditionError("build_degenerate_sequence: zeta is not unimodular");
  }
  if (n < 1) throw PreconditionError("build_degenerate_sequence: n must be >= 1");

  const double t = 1.0 / n;
  // every escaper contributes the same root of zeta: -e^{-2i phi} = omega
  const cplx omega = std::polar(1.0, std::arg(zeta) / nu1);
  double phi = -std::arg(-omega) / 2.0;
  // a = 1 - t e^{i phi} lies in the disk iff cos(phi) > t/2; keep cos(phi) >= t,
  // so phi = +-pi/2 is reached only in the limit
  const double phi_max = std::acos(std::min(1.0, t));
  phi = std::clamp(phi, -phi_max, phi_max);

  std::vector<Atom> atoms;
  atoms.push_back({1.0 - t * std::polar(1.0, phi), nu1});
  for (const auto& a : d.interior_part().free_zeros().atoms()) atoms.push_back(a);
  for (const auto& a : s.atoms()) {
    if (std::abs(a.point - 1.0) < kMergeTol) continue;
    atoms.push_back({(1.0 - t) * a.point, a.mult});
  }
  return Divisor(Region::interior, std::move(atoms));
}

bool is_regular(const BoundaryDivisor& d) { return d.l() >= 2; }

const char* orbit_status_name(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::detected: return "detected";
    case OrbitStatus::none_within_depth: return "none_within_depth";
    case OrbitStatus::exact: return "exact";
  }
  return "?";
}

DynamicalRelation has_dynamical_relation(const BoundaryDivisor& d, int depth,
                                         double tol) {
  DynamicalRelation rel;
  rel.depth = depth;
  rel.tol = tol;
  const auto supp = support_points(d.circle_part());
  const auto& b = d.interior_part();
  // the identity and single-point supports admit no relation
  if (supp.size() < 2 || b.degree() == 1) {
    rel.status = OrbitStatus::exact;
    return rel;
  }

  if (b.is_power_map()) {
    std::vector<Turns> angles;
    for (const auto& q : supp) {
      auto t = rational_angle(q);
      if (!t) break;
      angles.push_back(reduced(*t));
    }
    if (angles.size() == supp.size()) {
      // Orbits of rationals under t -> k t are eventually periodic; walk each
      // until it revisits a state, comparing against the other angles.
      const std::int64_t k = b.degree();
      struct Hit { int l; std::size_t i, j; };
      std::optional<Hit> best;
      for (std::size_t i = 0; i < angles.size(); ++i) {
        std::vector<Turns> seen{angles[i]};
        Turns cur = angles[i];
        for (int l = 1;; ++l) {
          cur = reduced(times(cur, k));
          bool stop = false;
          for (std::size_t j = 0; j < angles.size(); ++j) {
            if (j != i && cur == angles[j]) {
              if (!best || l < best->l) best = Hit{l, i, j};
              stop = true;
              break;
            }
          }
          if (stop || std::find(seen.begin(), seen.end(), cur) != seen.end()) break;
          seen.push_back(cur);
        }
      }
      if (best) {
        rel.status = OrbitStatus::detected;
        rel.l = best->l;
        rel.q = supp[best->i];
        rel.q_prime = supp[best->j];
      } else {
        rel.status = OrbitStatus::exact;
      }
      return rel;
    }
  }

  std::vector<std::vector<cplx>> orbits;
  for (const auto& q : supp) orbits.push_back(boundary_orbit(b, q, depth));
  for (int l = 1; l <= depth; ++l) {
    for (std::size_t i = 0; i < supp.size(); ++i) {
      const cplx w = orbits[i][static_cast<std::size_t>(l)];
      for (std::size_t j = 0; j < supp.size(); ++j) {
        if (j != i && std::abs(w - supp[j]) < tol) {
          rel.status = OrbitStatus::detected;
          rel.l = l;
          rel.q = supp[i];
          rel.q_prime = supp[j];
          return rel;
        }
      }
    }
  }
  rel.status = OrbitStatus::none_within_depth;
  return rel;
}

OrbitMembership in_E_zeta(const BoundaryDivisor& d, cplx zeta, cplx q,
                          int depth, double tol) {
  if (std::abs(std::abs(zeta) - 1.0) > kCircleTol) {
    throw PreconditionError("in_E_zeta: zeta is not unimodular");
  }
  if (std::abs(std::abs(q) - 1.0) > kCircleTol) {
    throw PreconditionError("in_E_zeta: q is not on the circle");
  }
  OrbitMembership res;
  res.depth = depth;
  res.tol = tol;
  const auto supp = support_points(d.circle_part());
  const auto& b = d.interior_part();

  if (zeta == cplx(1.0) && b.is_power_map()) {
    auto tq = rational_angle(q);
    std::vector<Turns> angles;
    for (const auto& p : supp) {
      auto t = rational_angle(p);
      if (!t) break;
      angles.push_back(reduced(*t));
    }
    if (tq && angles.size() == supp.size()) {
      const std::int64_t k = b.degree();
      std::vector<Turns> seen;
      Turns cur = reduced(*tq);
      for (int j = 0;; ++j) {
        if (std::find(angles.begin(), angles.end(), cur) != angles.end()) {
          res.status = OrbitStatus::detected;
          res.j = j;
          return res;
        }
        if (std::find(seen.begin(), seen.end(), cur) != seen.end()) break;
        seen.push_back(cur);
        cur = reduced(times(cur, k));
      }
      res.status = OrbitStatus::exact;
      return res;
    }
  }

  cplx w = q;
  for (int j = 0; j <= depth; ++j) {
    for (const auto& p : supp) {
      if (std::abs(w - p) < tol) {
        res.status = OrbitStatus::detected;
        res.j = j;
        return res;
      }
    }
    w = zeta * b.eval(w);
    w /= std::abs(w);
  }
  res.status = OrbitStatus::none_within_depth;
  return res;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TypeR: return "TypeR";
    case Verdict::TypeS: return "TypeS";
    case Verdict::NoExtension: return "NoExtension";
  }
  return "?";
}

ClassificationReport classify(const BoundaryDivisor& d, int depth, double tol) {
  ClassificationReport rep;
  const auto& s = d.circle_part();
  rep.regular = is_regular(d);
  rep.simple = s.is_simple();
  rep.one_in_support = s.multiplicity_at(1.0) > 0;
  if (rep.regular) {
    rep.dynrel = has_dynamical_relation(d, depth, tol);
  } else {
    rep.dynrel.status = OrbitStatus::exact;
    rep.dynrel.depth = depth;
    rep.dynrel.tol = tol;
  }

  if (!rep.simple) {
    rep.verdict = Verdict::NoExtension;
    rep.reason = "S not simple";
  } else if (rep.one_in_support) {
    rep.verdict = Verdict::NoExtension;
    rep.reason = "1 in supp(S)";
  } else if (!rep.regular) {
    rep.verdict = Verdict::TypeS;
    rep.reason = "singular, S simple, 1 not in supp(S)";
    rep.singular_value = "z+z^" + std::to_string(d.total_degree());
  } else if (rep.dynrel.status == OrbitStatus::detected) {
    rep.verdict = Verdict::NoExtension;
    rep.reason = "dynamical relation B^" + std::to_string(rep.dynrel.l) +
                 "(q) = q'";
  } else {
    rep.verdict = Verdict::TypeR;
    rep.reason = "regular, S simple, 1 not in supp(S), no dynamical relation";
    if (rep.dynrel.status == OrbitStatus::none_within_depth) {
      rep.numerically_supported = true;
      rep.reason += " (numerically supported: none within depth " +
                    std::to_string(depth) + ")";
    }
  }
  return rep;
}

}  // namespace bdiv
