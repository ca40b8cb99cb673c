#include "bdiv/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "bdiv/errors.hpp"

namespace bdiv {

double turns_of(cplx z) {
  double t = std::arg(z) / (2.0 * std::numbers::pi);
  if (t < 0.0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

namespace {

constexpr double kAmbiguousAngle = 1e-9;

// -1, 0, +1 for a < b, a == b, a > b in turns; throws inside the band
// between the collision guard and kAmbiguousAngle.
int compare_turns(double a, double b) {
  const double diff = a - b;
  const double gap = std::min(std::abs(diff), 1.0 - std::abs(diff));
  if (gap < kAngleCollisionTol) return 0;
  if (gap < kAmbiguousAngle) {
    throw NumericalError("ambiguous ordering of circle points (separation " +
                         std::to_string(gap) + " turns)");
  }
  return diff < 0 ? -1 : 1;
}

}  // namespace

std::vector<cplx> preimages_of(const BlaschkeProduct& b, cplx w) {
  if (std::abs(std::abs(w) - 1.0) > kCircleTol) {
    throw PreconditionError("preimages_of: target is not on the circle");
  }
  const int l = b.degree();
  if (l < 2) throw PreconditionError("preimages_of: B must have degree >= 2");
  // norm z^m P(z) - w Q(z) = 0
  auto lhs = poly::scale(poly::shift(b.zero_poly(), b.m()), b.normalization());
  auto eq = poly::subtract(lhs, poly::scale(b.pole_poly(), w));
  auto roots = poly::roots(eq, 4);
  if (static_cast<int>(roots.size()) != l) {
    throw NumericalError("preimages_of: found " + std::to_string(roots.size()) +
                         " preimages, expected " + std::to_string(l));
  }
  for (auto& z : roots) {
    if (std::abs(std::abs(z) - 1.0) > 1e-6) {
      throw NumericalError("preimages_of: preimage off the circle");
    }
    z /= std::abs(z);
  }
  std::sort(roots.begin(), roots.end(),
            [](cplx a, cplx c) { return turns_of(a) < turns_of(c); });
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    if (compare_turns(turns_of(roots[i]), turns_of(roots[i + 1])) == 0) {
      throw NumericalError("preimages_of: coincident preimages");
    }
  }
  return roots;
}

LaminationTable lamination_table(const BoundaryDivisor& d, int depth) {
  if (!is_regular(d)) {
    throw PreconditionError("lamination_table requires a regular divisor");
  }
  if (d.circle_part().multiplicity_at(1.0) > 0) {
    throw PreconditionError("lamination_table requires 1 outside supp(S)");
  }
  if (depth < 0) throw PreconditionError("lamination_table: negative depth");

  const auto& b = d.interior_part();
  const int deg = d.total_degree();
  const Rational inv_d(1, deg);

  struct Weighted { double turns; int nu; };
  std::vector<Weighted> support;
  for (const auto& a : d.circle_part().atoms())
    support.push_back({turns_of(a.point), a.mult});

  std::vector<AngleEntry> entries;
  entries.push_back({cplx(1.0), 0, Rational(0), Rational(0), 0, 0});

  // Positions of B^{-1}(1) other than 1, counted to lift angles through
  // the wraps of B along [1, x].
  std::vector<double> first_level;
  for (const auto& z : preimages_of(b, 1.0))
    if (compare_turns(turns_of(z), 0.0) != 0) first_level.push_back(turns_of(z));

  std::size_t level_begin = 0, level_end = 1;
  for (int k = 1; k <= depth; ++k) {
    for (std::size_t yi = level_begin; yi < level_end; ++yi) {
      const AngleEntry y = entries[yi];
      for (const auto& x : preimages_of(b, y.point)) {
        const double tx = turns_of(x);
        if (k == 1 && compare_turns(tx, 0.0) == 0) continue;

        // theta-(x) = (#wraps + theta-(B x) + S-mass on [1, x)) / d
        long wraps = 0;
        for (double a : first_level)
          if (compare_turns(a, tx) <= 0) ++wraps;
        long mass = 0;
        int nu = 0;
        for (const auto& s : support) {
          const int c = compare_turns(s.turns, tx);
          if (c < 0) mass += s.nu;
          else if (c == 0) nu = s.nu;
        }
        const Rational gap = (nu + (y.theta_plus - y.theta_minus)) * inv_d;
        const Rational tm = (Rational(wraps + mass) + y.theta_minus) * inv_d;
        entries.push_back({x, k, tm, tm + gap, nu, yi});
      }
    }
    level_begin = level_end;
    level_end = entries.size();
  }

  // counterclockwise order, remapping parent indices
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return turns_of(entries[a].point) < turns_of(entries[c].point);
  });
  std::vector<std::size_t> where(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = i;

  LaminationTable table;
  table.depth = depth;
  table.d = deg;
  table.entries.reserve(entries.size());
  for (std::size_t i : order) {
    AngleEntry e = entries[i];
    e.parent = where[e.parent];
    table.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i + 1 < table.entries.size(); ++i) {
    if (compare_turns(turns_of(table.entries[i].point),
                      turns_of(table.entries[i + 1].point)) == 0) {
      throw NumericalError("lamination_table: two preimages collide on the circle");
    }
  }
  return table;
}

std::vector<std::pair<Rational, Rational>> ray_pairs(const LaminationTable& t) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& e : t.entries)
    if (e.theta_plus != e.theta_minus) out.emplace_back(e.theta_minus, e.theta_plus);
  return out;
}

void write_csv(std::ostream& os, const LaminationTable& t) {
  os << "point_re,point_im,level,theta_minus_num,theta_minus_den,"
        "theta_plus_num,theta_plus_den,nu\n";
  char buf[64];
  for (const auto& e : t.entries) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", e.point.real(), e.point.imag());
    os << buf << e.level << ',' << numerator(e.theta_minus) << ','
       << denominator(e.theta_minus) << ',' << numerator(e.theta_plus) << ','
       << denominator(e.theta_plus) << ',' << e.nu << '\n';
  }
}

}  // namespace bdiv
