#include <doctest.h>

#include <cmath>

#include "bdiv/errors.hpp"
#include "bdiv/experiments.hpp"
#include "bdiv/hypgeo.hpp"

using namespace bdiv;

namespace {

cplx turn(double t) { return std::polar(1.0, 2.0 * M_PI * t); }

BlaschkeProduct from_zeros(std::vector<cplx> z, int m) {
  return BlaschkeProduct::from_zero_divisor(Divisor::from_points(Region::interior, z), m);
}

const BoundaryDivisor kReference(from_zeros({0.6}, 1), Divisor(Region::circle, {{cplx(0, 1), 1}}));
const BoundaryDivisor kRelation(from_zeros({0.0}, 1),
                                Divisor::from_points(Region::circle, std::vector<cplx>{turn(1.0 / 3), turn(2.0 / 3)}));

}  // namespace

TEST_CASE("rng is reproducible and uniform in [0, 1)") {
  Rng a(5), b(5);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("neighborhood samples") {
  Rng rng(9);
  for (double eps : {0.1, 1e-3, 1e-6}) {
    for (int i = 0; i < 20; ++i) {
      const auto s = sample_neighborhood(kReference, eps, rng);
      CHECK(s.region() == Region::interior);
      CHECK(s.degree() == 2);
      CHECK(matching_distance(s, kReference.zero_divisor()) <= eps);
      for (const auto& a : s.atoms()) CHECK(std::abs(a.point) < 1.0);
    }
  }
  Rng r1(3), r2(3);
  CHECK(sample_neighborhood(kReference, 0.01, r1) == sample_neighborhood(kReference, 0.01, r2));
  CHECK_THROWS_AS(sample_neighborhood(kReference, 0.0, r1), PreconditionError);
}

TEST_CASE("sweep configs") {
  CHECK_THROWS_AS((SweepConfig{{1e-2, 1e-1}, 4, 0, {}}.validate()), PreconditionError);
  CHECK_THROWS_AS((SweepConfig{{}, 4, 0, {}}.validate()), PreconditionError);
  CHECK_NOTHROW((SweepConfig{{1e-1, 1e-2}, 4, 0, {}}.validate()));
}

TEST_CASE("extension convergence sweeps") {
  const SweepConfig cfg{{1e-1, 1e-2, 1e-3}, 8, 17, {}};
  const auto p = verify_extension_convergence(kReference, 1, cfg);
  CHECK(p.monotone());
  CHECK(p.samples.size() == 24);
  for (int f : p.failures) CHECK(f == 0);
  // a zero at depth eps below the circle has a critical point ~sqrt(eps) away
  for (std::size_t i = 0; i < p.epsilons.size(); ++i) CHECK(p.max_distance[i] < 3.0 * std::sqrt(p.epsilons[i]));
  const auto again = verify_extension_convergence(kReference, 1, cfg);
  CHECK(again.max_distance == p.max_distance);

  SUBCASE("all-interior control scales like eps") {
    const BoundaryDivisor interior(from_zeros({0.6, cplx(0.0, 0.5)}, 1),
                                   Divisor(Region::circle, {{cplx(0, -1), 1}}));
    const SweepConfig c{{1e-3, 1e-5}, 8, 4, {}};
    const auto q = verify_extension_convergence(interior, 1, c);
    CHECK(q.monotone());
  }
}

TEST_CASE("critical orbits converge along radial approach") {
  const int ns[] = {100, 1000, 10000};
  const auto prof = verify_cont_orbit(kRelation, turn(1.0 / 3), 1, ns);
  REQUIRE(prof.size() == 3);
  CHECK(prof[1].distance < prof[0].distance);
  CHECK(prof[2].distance < prof[1].distance);
  // rate ~ n^{-1/2}
  CHECK(prof[2].distance * 100.0 < 10.0);

  SUBCASE("fixed support point") {
    // -1 is fixed by z^3; iterating past it would revisit supp(S)
    const BoundaryDivisor d(from_zeros({0.0}, 2), Divisor(Region::circle, {{-1.0, 1}}));
    const int n2[] = {1000, 100000};
    const auto p = verify_cont_orbit(d, -1.0, 1, n2);
    CHECK(p[1].distance < p[0].distance);
    CHECK(std::abs(p[1].image + 1.0) < 0.05);
    CHECK_THROWS_AS(verify_cont_orbit(d, -1.0, 3, n2), PreconditionError);
  }
  CHECK_THROWS_AS(verify_cont_orbit(kRelation, cplx(0, 1), 1, ns), PreconditionError);
}

TEST_CASE("prescribed hyperbolic distance") {
  for (double L : {0.0, 1.5}) {
    const auto cert = prescribe_distance(kRelation, turn(1.0 / 3), 1, L, 1e-2);
    CHECK(cert.residual < 1e-6);
    CHECK(cert.residual == std::abs(cert.achieved - L));
    CHECK(matching_distance(cert.result_divisor, kRelation.zero_divisor()) < 1e-2);
    const auto b = BlaschkeProduct::from_zero_divisor(cert.result_divisor, cert.m);
    const cplx image = b.eval(nearest_critical_point(b, turn(1.0 / 3)));
    CHECK(std::abs(hyp::dist(cert.center, image) - cert.achieved) < 1e-12);
  }
  const BoundaryDivisor fixed(from_zeros({0.0}, 2), Divisor(Region::circle, {{-1.0, 1}, {cplx(0, 1), 1}}));
  CHECK_THROWS_AS(prescribe_distance(fixed, -1.0, 1, 1.0, 1e-2), PreconditionError);
  CHECK_THROWS_AS(prescribe_distance(kRelation, turn(1.0 / 3), 1, -1.0, 1e-2), PreconditionError);
}

TEST_CASE("multiplier limits") {
  const BoundaryDivisor pair(BlaschkeProduct::identity(),
                             Divisor::from_points(Region::circle, std::vector<cplx>{{0, 1}, {0, -1}}));
  const int ns[] = {100, 10000};
  const auto prof = multiplier_limit_check(pair, ns);
  // product of the two factors is r^2 with r = 1 - 1/n
  CHECK(std::abs(prof[0].multiplier - 0.99 * 0.99) < 1e-12);
  CHECK(prof[1].deviation < 1e-3);

  const BoundaryDivisor single(BlaschkeProduct::identity(), Divisor(Region::circle, {{-1.0, 1}}));
  const auto s = multiplier_limit_check(single, ns);
  const cplx a = -(1.0 - 1.0 / 100);
  CHECK(std::abs(s[0].multiplier - (1.0 - std::conj(a)) / (1.0 - a) * (-a)) < 1e-14);

  const BoundaryDivisor escaping(BlaschkeProduct::identity(), Divisor(Region::circle, {{1.0, 1}}));
  CHECK_THROWS_AS(multiplier_limit_check(escaping, ns), PreconditionError);
  CHECK_THROWS_AS(multiplier_limit_check(kReference, ns), PreconditionError);
}
