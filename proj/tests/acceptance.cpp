// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bdiv/blaschke.hpp"
#include "bdiv/boundary.hpp"
#include "bdiv/errors.hpp"
#include "bdiv/experiments.hpp"
#include "bdiv/hypgeo.hpp"
#include "bdiv/lamination.hpp"

using namespace bdiv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

cplx turn(double t) { return std::polar(1.0, 2.0 * kPi * t); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

BlaschkeProduct from_zeros(const std::vector<cplx>& z, int m) {
  return BlaschkeProduct::from_zero_divisor(Divisor::from_points(Region::interior, z), m);
}

Divisor random_divisor(Rng& rng, int e, double rmax) {
  std::vector<Atom> atoms;
  for (int k = 0; k < e; ++k)
    atoms.push_back({std::polar(rmax * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform()), 1});
  return Divisor(Region::interior, std::move(atoms));
}

Outcome closed_form_oracle() {
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const cplx a = std::polar(0.99 * i / 9.0, 2.0 * kPi * j / 10.0);
        const auto ram = critical_divisor(from_zeros({a}, m)).free_ram;
        worst = std::max(worst, std::abs(ram.atoms().at(0).point - phi_1m_closed_form(a, m)));
      }
    }
  }
  const cplx spot = critical_divisor(from_zeros({0.6}, 1)).free_ram.atoms().at(0).point;
  const double spot_err = std::abs(spot - 1.0 / 3.0);
  return {worst < 1e-10 && spot_err < 1e-10,
          "max grid error " + fmt("%.2e", worst) + ", a=0.6 m=1 -> " + fmt("%.15f", spot.real())};
}

Outcome walsh_property() {
  Rng rng(2001);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const int e = 1 + static_cast<int>(rng.next() % 8), m = 1 + static_cast<int>(rng.next() % 3);
    const auto zeros = random_divisor(rng, e, 0.99);
    const auto b = BlaschkeProduct::from_zero_divisor(zeros, m);
    std::vector<hyp::DiskPoint> gens{0.0};
    for (const auto& z : b.zero_list()) gens.emplace_back(z);
    for (const auto& c : critical_divisor(b).free_ram.expanded())
      if (!hyp::hull_contains(gens, c, 1e-9)) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " hull failures over 1000 products"};
}

Outcome round_trip() {
  Rng rng(3003);
  int failures = 0, continuation_failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int e = 1 + static_cast<int>(rng.next() % 5), m = 1 + static_cast<int>(rng.next() % 3);
    const auto ram = random_divisor(rng, e, 0.9);
    try {
      const auto b = zeros_from_critical(ram, m);
      const double d = matching_distance(critical_divisor(b).free_ram, ram);
      worst = std::max(worst, d);
      if (!(d < 1e-8)) ++failures;
    } catch (const NumericalError&) {
      ++continuation_failures;
    }
  }
  return {failures == 0 && continuation_failures == 0,
          "max distance " + fmt("%.2e", worst) + ", " + std::to_string(continuation_failures) +
              " continuation failures"};
}

Outcome extension_continuity() {
  const BoundaryDivisor d(from_zeros({0.6}, 1), Divisor(Region::circle, {{cplx(0, 1), 1}}));
  const SweepConfig cfg{{1e-1, 1e-2, 1e-3, 1e-4}, 32, 4004, {}};
  const auto p = verify_extension_convergence(d, 1, cfg);
  const auto circle = split_boundary(extend_phi(d, 1)).circle;
  const bool circle_ok = circle == Divisor(Region::circle, {{cplx(0, 1), 1}});
  int failures = 0;
  for (int f : p.failures) failures += f;
  std::string detail = "profile";
  for (double v : p.max_distance) detail += " " + fmt("%.3e", v);
  detail += p.monotone() ? ", monotone" : ", not monotone";
  detail += circle_ok ? ", circle atom 1*i exact" : ", circle atom wrong";
  return {p.monotone() && p.max_distance.back() < 1e-3 && circle_ok && failures == 0, detail};
}

Outcome lamination_exactness() {
  const BoundaryDivisor d(from_zeros({0.0}, 1), Divisor(Region::circle, {{-1.0, 1}}));
  const auto t1 = lamination_table(d, 1);
  bool ok = false;
  for (const auto& e : t1.entries)
    if (std::abs(e.point + 1.0) < 1e-12)
      ok = e.theta_minus == Rational(1, 3) && e.theta_plus == Rational(2, 3);

  const auto t = lamination_table(d, 6);
  const Rational deg(t.d);
  const auto frac = [](const Rational& x) {
    Rational f = x;
    while (f >= 1) f -= 1;
    return f;
  };
  bool semi = true, mono = true, mass = true;
  for (const auto& e : t.entries) {
    if (e.level == 0) continue;
    const auto& parent = t.entries[e.parent];
    semi = semi && frac(deg * e.theta_minus) == parent.theta_minus &&
           frac(deg * e.theta_plus) == parent.theta_plus;
  }
  for (int k = 0; k <= 6; ++k) {
    Rational total = 0;
    std::vector<const AngleEntry*> lv;
    for (const auto& e : t.entries)
      if (e.level <= k) lv.push_back(&e);
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const Rational next = i + 1 < lv.size() ? lv[i + 1]->theta_minus : Rational(1);
      mono = mono && lv[i]->theta_plus >= lv[i]->theta_minus && next > lv[i]->theta_plus;
      total += next - lv[i]->theta_minus;
    }
    mass = mass && total == 1;
  }
  return {ok && semi && mono && mass,
          std::string("theta(-1) = [1/3, 2/3] ") + (ok ? "ok" : "wrong") + ", depth 6 (" +
              std::to_string(t.entries.size()) + " points): semiconjugacy " + (semi ? "ok" : "broken") +
              ", monotonicity " + (mono ? "ok" : "broken") + ", mass closure " + (mass ? "ok" : "broken")};
}

Outcome zeta_algebra() {
  double worst_factor = 0.0;
  for (double phi : {0.0, kPi / 4.0, kPi / 2.0, 1.0}) {
    std::vector<std::vector<cplx>> terms;
    for (double t : {1e-4, 1e-5, 1e-6}) terms.push_back({1.0 - t * std::polar(1.0, phi)});
    const auto z = zeta_limit(std::span<const std::vector<cplx>>(terms));
    worst_factor = std::max(worst_factor, z ? std::abs(*z + std::polar(1.0, -2.0 * phi)) : 1.0);
  }
  const BoundaryDivisor d(from_zeros({0.0}, 1), Divisor(Region::circle, {{1.0, 1}}));
  double worst_trip = 0.0;
  for (const cplx zeta : {cplx(1.0), cplx(-1.0), cplx(0.0, 1.0), std::polar(1.0, 0.7)}) {
    std::vector<Divisor> seq;
    for (int n : {10000000, 30000000, 100000000}) seq.push_back(build_degenerate_sequence(d, zeta, n));
    const auto z = zeta_limit(seq);
    worst_trip = std::max(worst_trip, z ? std::abs(*z - zeta) : 1.0);
  }
  return {worst_factor < 1e-6 && worst_trip < 1e-6,
          "factor error " + fmt("%.2e", worst_factor) + ", round-trip error " + fmt("%.2e", worst_trip)};
}

const BoundaryDivisor& relation_instance() {
  static const BoundaryDivisor d(
      from_zeros({0.0}, 1),
      Divisor::from_points(Region::circle, std::vector<cplx>{turn(1.0 / 3.0), turn(2.0 / 3.0)}));
  return d;
}

Outcome orbit_continuity() {
  const int ns[] = {100, 1000, 10000};
  const auto p = verify_cont_orbit(relation_instance(), turn(1.0 / 3.0), 1, ns);
  const bool decreasing = p[1].distance < p[0].distance && p[2].distance < p[1].distance;
  std::string detail = "distances";
  for (const auto& s : p) detail += " " + fmt("%.3e", s.distance);
  detail += decreasing ? ", decreasing" : ", not decreasing";
  return {decreasing && p[2].distance < 1e-3, detail};
}

Outcome prescribed_distance() {
  double worst_res = 0.0, worst_remeasure = 0.0;
  for (double L : {0.0, 0.5, 1.0, 2.0}) {
    const auto c = prescribe_distance(relation_instance(), turn(1.0 / 3.0), 1, L, 1e-2);
    worst_res = std::max(worst_res, c.residual);
    const auto b = BlaschkeProduct::from_zero_divisor(c.result_divisor, c.m);
    const cplx image = b.eval(nearest_critical_point(b, turn(1.0 / 3.0)));
    worst_remeasure = std::max(worst_remeasure, std::abs(hyp::dist(c.center, image) - c.achieved));
  }
  return {worst_res < 1e-6 && worst_remeasure < 1e-12,
          "max residual " + fmt("%.2e", worst_res) + ", re-measurement gap " + fmt("%.2e", worst_remeasure)};
}

Outcome multiplier_limit() {
  const BoundaryDivisor d(BlaschkeProduct::identity(),
                          Divisor::from_points(Region::circle, std::vector<cplx>{{0, 1}, {0, -1}}));
  const int ns[] = {100, 1000, 10000};
  const auto p = multiplier_limit_check(d, ns);
  return {p.back().deviation < 1e-3, "|B'(0) - 1| at n=1e4: " + fmt("%.3e", p.back().deviation)};
}

Outcome classification_table() {
  const auto sq = from_zeros({0.0}, 1);
  const auto id = BlaschkeProduct::identity();
  struct Case {
    const char* name;
    BoundaryDivisor d;
    Verdict expected;
  };
  const std::vector<Case> cases{
      {"TypeR", BoundaryDivisor(sq, Divisor(Region::circle, {{-1.0, 1}})), Verdict::TypeR},
      {"TypeS", BoundaryDivisor(id, Divisor(Region::circle, {{cplx(0, 1), 1}, {cplx(0, -1), 1}})), Verdict::TypeS},
      {"not simple", BoundaryDivisor(sq, Divisor(Region::circle, {{cplx(0, 1), 2}})), Verdict::NoExtension},
      {"1 in supp, regular", BoundaryDivisor(sq, Divisor(Region::circle, {{1.0, 1}, {cplx(0, 1), 1}})), Verdict::NoExtension},
      {"1 in supp, singular", BoundaryDivisor(id, Divisor(Region::circle, {{1.0, 1}, {-1.0, 1}})), Verdict::NoExtension},
      {"relation", relation_instance(), Verdict::NoExtension},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto r = classify(c.d);
    bool good = r.verdict == c.expected;
    if (r.verdict == Verdict::TypeR)
      good = good && r.regular && r.simple && !r.one_in_support && r.dynrel.status != OrbitStatus::detected;
    if (r.verdict == Verdict::TypeS)
      good = good && !r.regular && r.simple && !r.one_in_support && r.singular_value == "z+z^3";
    if (std::string(c.name) == "relation") good = good && r.dynrel.status == OrbitStatus::detected;
    ok = ok && good;
    detail += std::string(detail.empty() ? "" : "; ") + c.name + " -> " + verdict_name(r.verdict);
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form oracle", closed_form_oracle},
      {"Walsh property", walsh_property},
      {"homeomorphism round trip", round_trip},
      {"boundary extension continuity", extension_continuity},
      {"lamination exactness", lamination_exactness},
      {"zeta-limit algebra", zeta_algebra},
      {"orbit continuity", orbit_continuity},
      {"prescribed distance", prescribed_distance},
      {"multiplier limit", multiplier_limit},
      {"classification table", classification_table},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
