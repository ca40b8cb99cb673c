#include "bdiv/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bdiv/errors.hpp"

namespace bdiv::io {

namespace {

double number(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw SchemaError(std::string(what) + ": missing \"" + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw SchemaError(std::string(what) + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key, const char* what) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw SchemaError(std::string(what) + ": \"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

Region region_from_name(const std::string& s) {
  if (s == "interior") return Region::interior;
  if (s == "circle") return Region::circle;
  if (s == "closed") return Region::closed;
  throw SchemaError("unknown region \"" + s + "\"");
}

cplx point_from_loose(const json& p) {
  if (p.is_number()) return p.get<double>();
  if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number())
    return {p[0].get<double>(), p[1].get<double>()};
  if (p.is_object()) return complex_from_json(p);
  throw SchemaError("point must be a number, a [re, im] pair or {\"re\",\"im\"}");
}

}  // namespace

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* what) {
  if (!obj.is_object()) throw SchemaError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError(std::string(what) + ": unknown key \"" + key + "\"");
  }
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

// Adding 0.0 turns -0.0 into 0.0 so output does not depend on signed zeros.
json complex_to_json(cplx z) { return json{{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}}; }

cplx complex_from_json(const json& j) {
  require_keys(j, {"re", "im"}, "complex number");
  return {number(j, "re", "complex number"), number(j, "im", "complex number")};
}

json divisor_to_json(const Divisor& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms())
    atoms.push_back(
        {{"re", a.point.real() + 0.0}, {"im", a.point.imag() + 0.0}, {"mult", a.mult}});
  return json{{"region", region_name(d.region())}, {"atoms", atoms}};
}

Divisor divisor_from_json(const json& j) {
  require_keys(j, {"region", "atoms"}, "divisor");
  if (!j.contains("region") || !j.at("region").is_string())
    throw SchemaError("divisor: \"region\" must be a string");
  const Region region = region_from_name(j.at("region").get<std::string>());
  if (!j.contains("atoms") || !j.at("atoms").is_array())
    throw SchemaError("divisor: \"atoms\" must be an array");
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    require_keys(a, {"re", "im", "mult", "angle_turns"}, "atom");
    Atom atom;
    if (a.contains("angle_turns")) {
      if (a.contains("re") || a.contains("im"))
        throw SchemaError("atom: give either angle_turns or re/im");
      if (region != Region::circle)
        throw SchemaError("atom: angle_turns is only valid for circle divisors");
      atom.point = std::polar(1.0, 2.0 * std::numbers::pi * number(a, "angle_turns", "atom"));
    } else {
      atom.point = {number(a, "re", "atom"), number(a, "im", "atom")};
    }
    atom.mult = a.contains("mult") ? integer(a, "mult", "atom") : 1;
    atoms.push_back(atom);
  }
  return Divisor(region, std::move(atoms));
}

Divisor divisor_from_loose_json(const json& j, Region region) {
  if (j.is_object()) {
    Divisor d = divisor_from_json(j);
    if (d.region() != region && !(region == Region::interior && d.empty()))
      throw SchemaError(std::string("expected a divisor on region ") + region_name(region));
    return d;
  }
  if (!j.is_array()) throw SchemaError("divisor must be an object or a list of points");
  std::vector<cplx> pts;
  for (const auto& p : j) pts.push_back(point_from_loose(p));
  std::vector<Atom> atoms;
  for (const auto& p : pts) atoms.push_back({p, 1});
  return Divisor(region, std::move(atoms));
}

json boundary_to_json(const BoundaryDivisor& d) {
  return json{{"m", d.interior_part().m()},
              {"zeros", divisor_to_json(d.interior_part().free_zeros())},
              {"S", divisor_to_json(d.circle_part())}};
}

BoundaryDivisor boundary_from_json(const json& j) {
  require_keys(j, {"m", "zeros", "S"}, "boundary divisor");
  const int m = j.contains("m") ? integer(j, "m", "boundary divisor") : 1;
  Divisor zeros(Region::interior);
  if (j.contains("zeros")) zeros = divisor_from_loose_json(j.at("zeros"), Region::interior);
  if (!j.contains("S")) throw SchemaError("boundary divisor: missing \"S\"");
  Divisor s = divisor_from_loose_json(j.at("S"), Region::circle);
  return BoundaryDivisor(BlaschkeProduct::from_zero_divisor(zeros, m), std::move(s));
}

json report_to_json(const ClassificationReport& r) {
  json dyn{{"status", orbit_status_name(r.dynrel.status)},
           {"depth", r.dynrel.depth},
           {"tol", r.dynrel.tol}};
  if (r.dynrel.status == OrbitStatus::detected) {
    dyn["l"] = r.dynrel.l;
    dyn["q"] = complex_to_json(r.dynrel.q);
    dyn["q_prime"] = complex_to_json(r.dynrel.q_prime);
  }
  json out{{"regular", r.regular},
           {"simple", r.simple},
           {"one_in_support", r.one_in_support},
           {"dynrel", dyn},
           {"verdict", verdict_name(r.verdict)},
           {"reason", r.reason}};
  if (r.singular_value) out["singular_value"] = *r.singular_value;
  return out;
}

SweepConfig sweep_config_from_json(const json& j) {
  require_keys(j, {"epsilons", "samples_per_epsilon", "rng_seed", "tolerances"},
               "sweep config");
  SweepConfig c;
  if (!j.contains("epsilons") || !j.at("epsilons").is_array())
    throw SchemaError("sweep config: \"epsilons\" must be an array");
  for (const auto& e : j.at("epsilons")) {
    if (!e.is_number()) throw SchemaError("sweep config: epsilons must be numbers");
    c.epsilons.push_back(e.get<double>());
  }
  if (j.contains("samples_per_epsilon"))
    c.samples_per_epsilon = integer(j, "samples_per_epsilon", "sweep config");
  if (j.contains("rng_seed")) {
    if (!j.at("rng_seed").is_number_unsigned())
      throw SchemaError("sweep config: \"rng_seed\" must be a nonnegative integer");
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object()) throw SchemaError("sweep config: bad tolerances");
    for (const auto& [k, v] : j.at("tolerances").items()) {
      if (!v.is_number()) throw SchemaError("sweep config: tolerance values must be numbers");
      c.tolerances[k] = v.get<double>();
    }
  }
  return c;
}

json sweep_config_to_json(const SweepConfig& c) {
  return json{{"epsilons", c.epsilons},
              {"samples_per_epsilon", c.samples_per_epsilon},
              {"rng_seed", c.rng_seed},
              {"tolerances", c.tolerances}};
}

json convergence_to_json(const ConvergenceProfile& p) {
  json samples = json::array();
  for (const auto& s : p.samples) {
    json rec{{"eps", s.eps}, {"index", s.index}};
    if (s.error.empty()) rec["distance"] = s.distance;
    else rec["error"] = s.error;
    samples.push_back(rec);
  }
  json profile = json::array();
  for (std::size_t i = 0; i < p.epsilons.size(); ++i)
    profile.push_back({{"eps", p.epsilons[i]},
                       {"max_distance", p.max_distance[i]},
                       {"failures", p.failures[i]}});
  return json{{"profile", profile}, {"monotone", p.monotone()}, {"samples", samples}};
}

json orbit_to_json(std::span<const OrbitSample> samples) {
  json out = json::array();
  for (const auto& s : samples)
    out.push_back({{"n", s.n},
                   {"critical_point", complex_to_json(s.critical_point)},
                   {"image", complex_to_json(s.image)},
                   {"distance", s.distance}});
  return out;
}

json certificate_to_json(const SolveCertificate& c) {
  return json{{"target_L", c.target_L},
              {"achieved", c.achieved},
              {"residual", c.residual},
              {"result_divisor", divisor_to_json(c.result_divisor)},
              {"m", c.m},
              {"iterations", c.iterations},
              {"zeta", complex_to_json(c.zeta)},
              {"xi", complex_to_json(c.xi)},
              {"center", complex_to_json(c.center)},
              {"image", complex_to_json(c.image)},
              {"delta", c.delta},
              {"tau", c.tau}};
}

json multiplier_to_json(std::span<const MultiplierSample> samples) {
  json out = json::array();
  for (const auto& s : samples)
    out.push_back({{"n", s.n},
                   {"multiplier", complex_to_json(s.multiplier)},
                   {"deviation", s.deviation}});
  return out;
}

void write_convergence_csv(std::ostream& os, const ConvergenceProfile& p) {
  os << "eps,max_distance,failures\n";
  for (std::size_t i = 0; i < p.epsilons.size(); ++i)
    os << format_double(p.epsilons[i]) << ',' << format_double(p.max_distance[i]) << ','
       << p.failures[i] << '\n';
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace bdiv::io
