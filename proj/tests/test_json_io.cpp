#include <doctest.h>

#include <random>
#include <sstream>

#include "bdiv/errors.hpp"
#include "bdiv/json_io.hpp"

using namespace bdiv;
using io::json;

TEST_CASE("divisors round-trip losslessly through text") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Atom> atoms;
    for (int k = 0; k < 1 + trial % 5; ++k) atoms.push_back({{u(g), u(g)}, 1 + k % 2});
    const Divisor d(Region::interior, atoms);
    const auto text = io::divisor_to_json(d).dump();
    CHECK(io::divisor_from_json(io::parse(text)) == d);
  }
}

TEST_CASE("circle atoms by angle") {
  const auto d = io::divisor_from_json(io::parse(
      R"({"region":"circle","atoms":[{"angle_turns":0.25,"mult":2}]})"));
  REQUIRE(d.atoms().size() == 1);
  CHECK(std::abs(d.atoms()[0].point - cplx(0, 1)) < 1e-15);
  CHECK(d.atoms()[0].mult == 2);
  CHECK_THROWS_AS(io::divisor_from_json(io::parse(
                      R"({"region":"interior","atoms":[{"angle_turns":0.25}]})")),
                  SchemaError);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(io::parse("{not json"), SchemaError);
  CHECK_THROWS_AS(io::divisor_from_json(io::parse(R"({"region":"interior","atoms":[],"extra":1})")),
                  SchemaError);
  CHECK_THROWS_AS(io::divisor_from_json(io::parse(R"({"region":"disk","atoms":[]})")), SchemaError);
  CHECK_THROWS_AS(io::divisor_from_json(io::parse(R"({"region":"interior","atoms":[{"re":0.1,"imm":0}]})")),
                  SchemaError);
  CHECK_THROWS_AS(io::boundary_from_json(io::parse(R"({"m":1,"zeros":[0.5]})")), SchemaError);
  CHECK_THROWS_AS(io::sweep_config_from_json(io::parse(R"({"epsilons":[0.1],"seed":3})")), SchemaError);
  CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), SchemaError);
}

TEST_CASE("loose point lists") {
  const auto d = io::divisor_from_loose_json(io::parse("[0.6, [0.1, -0.2]]"), Region::interior);
  CHECK(d.degree() == 2);
  CHECK(d.multiplicity_at(cplx(0.1, -0.2)) == 1);
  CHECK_THROWS_AS(io::divisor_from_loose_json(io::parse(R"(["x"])"), Region::interior), SchemaError);
}

TEST_CASE("boundary divisors and reports") {
  const auto j = io::parse(R"({"m":1,"zeros":[0.0],"S":{"region":"circle","atoms":[{"angle_turns":0.5}]}})");
  const auto d = io::boundary_from_json(j);
  CHECK(d.l() == 2);
  const auto back = io::boundary_from_json(io::boundary_to_json(d));
  CHECK(back.circle_part() == d.circle_part());
  CHECK(back.interior_part().free_zeros() == d.interior_part().free_zeros());

  const auto rep = io::report_to_json(classify(d));
  CHECK(rep.at("verdict") == "TypeR");
  CHECK(rep.at("dynrel").at("status") == "exact");
  CHECK_FALSE(rep.contains("singular_value"));

  const BoundaryDivisor s(BlaschkeProduct::identity(),
                          Divisor::from_points(Region::circle, std::vector<cplx>{{0, 1}, {0, -1}}));
  CHECK(io::report_to_json(classify(s)).at("singular_value") == "z+z^3");
}

TEST_CASE("sweep configs and profiles") {
  const auto c = io::sweep_config_from_json(
      io::parse(R"({"epsilons":[0.1,0.01],"samples_per_epsilon":4,"rng_seed":7,"tolerances":{"a":1e-3}})"));
  CHECK(c.samples_per_epsilon == 4);
  CHECK(c.rng_seed == 7);
  CHECK(c.tolerances.at("a") == 1e-3);
  CHECK(io::sweep_config_from_json(io::sweep_config_to_json(c)).epsilons == c.epsilons);

  ConvergenceProfile p;
  p.epsilons = {0.1, 0.01};
  p.max_distance = {0.3, 0.1};
  p.failures = {0, 1};
  std::ostringstream os;
  io::write_convergence_csv(os, p);
  CHECK(os.str() == "eps,max_distance,failures\n0.1,0.3,0\n0.01,0.1,1\n");
  CHECK(io::convergence_to_json(p).at("monotone") == true);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(-0.0) == "0");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
