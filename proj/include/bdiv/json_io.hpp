#pragma once

// JSON and CSV encodings of divisors, boundary divisors and reports.
//
// Divisor: {"region":"interior|circle|closed","atoms":[{"re":x,"im":y,"mult":k}]}
// where circle atoms may give {"angle_turns":t} instead of re/im.
// Boundary divisor: {"m":k,"zeros":<interior divisor>,"S":<circle divisor>}.
// Unknown keys are SchemaError.

#include <json.hpp>
#include <iosfwd>
#include <span>
#include <string>

#include "bdiv/boundary.hpp"
#include "bdiv/divisor.hpp"
#include "bdiv/experiments.hpp"

namespace bdiv::io {

using nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const json& j);

// Either a divisor object or a bare list of points, each a real number or a
// [re, im] pair, read as a simple divisor in `region`.
Divisor divisor_from_loose_json(const json& j, Region region);

json boundary_to_json(const BoundaryDivisor& d);
BoundaryDivisor boundary_from_json(const json& j);

json report_to_json(const ClassificationReport& r);

SweepConfig sweep_config_from_json(const json& j);
json sweep_config_to_json(const SweepConfig& c);

json convergence_to_json(const ConvergenceProfile& p);
json orbit_to_json(std::span<const OrbitSample> samples);
json certificate_to_json(const SolveCertificate& c);
json multiplier_to_json(std::span<const MultiplierSample> samples);

void write_convergence_csv(std::ostream& os, const ConvergenceProfile& p);

// Parses text as JSON, mapping parse failures to SchemaError.
json parse(const std::string& text);
json read_file(const std::string& path);

// Rejects keys outside `allowed`.
void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* what);

// Shortest decimal that round-trips a double.
std::string format_double(double x);

}  // namespace bdiv::io
