// bdiv: command-line front end for critical divisors of Blaschke products,
// boundary divisors, laminations and the numerical experiments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bdiv/blaschke.hpp"
#include "bdiv/boundary.hpp"
#include "bdiv/errors.hpp"
#include "bdiv/experiments.hpp"
#include "bdiv/json_io.hpp"
#include "bdiv/lamination.hpp"
#include "bdiv/svg.hpp"

namespace {

using namespace bdiv;
using io::json;

struct Globals {
  double tol = kDefaultOrbitTol;
  int depth = kDefaultOrbitDepth;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  std::string out;
};

// Inline JSON, or @path to read it from a file.
json load(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return io::read_file(arg.substr(1));
  return io::parse(arg);
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw SchemaError("cannot write " + g.out);
  f << text;
}

void write_side(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw SchemaError("cannot write " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw SchemaError(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

cplx point(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) {
    if (j.contains("angle_turns")) {
      io::require_keys(j, {"angle_turns"}, "point");
      return std::polar(1.0, 2.0 * std::numbers::pi * j.at("angle_turns").get<double>());
    }
    return io::complex_from_json(j);
  }
  throw SchemaError("point must be a number, [re, im], {re, im} or {angle_turns}");
}

// Snaps a requested support point onto the matching atom of S.
cplx support_point(const BoundaryDivisor& d, cplx q) {
  for (const auto& a : d.circle_part().atoms())
    if (std::abs(a.point - q) < 1e-9) return a.point;
  throw PreconditionError("q is not a support point of S");
}

json run_experiment(const std::string& name, const json& cfg, const Globals& g,
                    std::string& csv) {
  const auto divisor = [&] {
    if (!cfg.contains("divisor")) throw SchemaError("experiment config: missing \"divisor\"");
    return io::boundary_from_json(cfg.at("divisor"));
  };
  json result;
  if (name == "converge") {
    io::require_keys(cfg, {"divisor", "m", "sweep"}, "converge config");
    const auto d = divisor();
    const int m = cfg.contains("m") ? cfg.at("m").get<int>() : d.interior_part().m();
    if (!cfg.contains("sweep")) throw SchemaError("converge config: missing \"sweep\"");
    auto sweep = io::sweep_config_from_json(cfg.at("sweep"));
    if (g.seed) sweep.rng_seed = *g.seed;
    const auto profile = verify_extension_convergence(d, m, sweep);
    std::ostringstream os;
    io::write_convergence_csv(os, profile);
    csv = os.str();
    result = io::convergence_to_json(profile);
  } else if (name == "cont-orbit") {
    io::require_keys(cfg, {"divisor", "q", "l", "n_schedule"}, "cont-orbit config");
    const auto d = divisor();
    const auto ns = int_list(cfg.at("n_schedule"), "n_schedule");
    const auto samples =
        verify_cont_orbit(d, support_point(d, point(cfg.at("q"))), cfg.at("l").get<int>(), ns);
    std::ostringstream os;
    os << "n,distance\n";
    for (const auto& s : samples) os << s.n << ',' << io::format_double(s.distance) << '\n';
    csv = os.str();
    result = io::orbit_to_json(samples);
  } else if (name == "prescribe") {
    io::require_keys(cfg, {"divisor", "q", "l", "L", "eps", "delta", "tau"}, "prescribe config");
    const auto d = divisor();
    PrescribeOptions opts;
    if (cfg.contains("delta")) opts.delta = cfg.at("delta").get<double>();
    if (cfg.contains("tau")) opts.tau = cfg.at("tau").get<double>();
    std::vector<double> targets;
    if (cfg.at("L").is_array()) targets = cfg.at("L").get<std::vector<double>>();
    else targets.push_back(cfg.at("L").get<double>());
    const cplx q = support_point(d, point(cfg.at("q")));
    const int l = cfg.at("l").get<int>();
    const double eps = cfg.at("eps").get<double>();
    result = json::array();
    std::ostringstream os;
    os << "target_L,achieved,residual,iterations\n";
    for (double L : targets) {
      const auto cert = prescribe_distance(d, q, l, L, eps, opts);
      os << io::format_double(L) << ',' << io::format_double(cert.achieved) << ','
         << io::format_double(cert.residual) << ',' << cert.iterations << '\n';
      result.push_back(io::certificate_to_json(cert));
    }
    csv = os.str();
  } else if (name == "multiplier") {
    io::require_keys(cfg, {"divisor", "n_schedule"}, "multiplier config");
    const auto d = divisor();
    const auto samples = multiplier_limit_check(d, int_list(cfg.at("n_schedule"), "n_schedule"));
    std::ostringstream os;
    os << "n,deviation\n";
    for (const auto& s : samples) os << s.n << ',' << io::format_double(s.deviation) << '\n';
    csv = os.str();
    result = io::multiplier_to_json(samples);
  } else {
    throw PreconditionError("unknown experiment \"" + name + "\"");
  }
  return json{{"experiment", name}, {"config", cfg}, {"result", result}};
}

int fail(int code, const char* kind, const std::string& msg) {
  std::cerr << json{{"error", kind}, {"message", msg}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical divisors of Blaschke products and their boundary extension"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "orbit-matching tolerance")->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "orbit search depth / lamination depth")
      ->check(CLI::NonNegativeNumber);
  app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { g.seed = s; },
                                         "random seed for sweeps");
  app.add_flag("--deterministic", g.deterministic, "omit timestamps from SVG output");
  app.add_option("--out", g.out, "output file (default stdout)");

  int m = 1;
  std::optional<int> m_override;
  std::string zeros_arg, ram_arg, input_arg, svg_path, config_arg, format = "json";

  auto* critpts = app.add_subcommand("critpts", "free critical points of B from its free zeros");
  critpts->add_option("--m", m, "order of the zero at 0")->check(CLI::PositiveNumber);
  critpts->add_option("--zeros", zeros_arg, "zero divisor JSON or @file")->required();
  critpts->add_option("--svg", svg_path, "also write an SVG figure");

  auto* invert = app.add_subcommand("invert", "free zeros of B from its free critical points");
  invert->add_option("--m", m, "order of the zero at 0")->check(CLI::PositiveNumber);
  invert->add_option("--ram", ram_arg, "critical divisor JSON or @file")->required();

  auto* extend = app.add_subcommand("extend", "extended critical divisor of a boundary divisor");
  extend->add_option("--input", input_arg, "boundary divisor JSON or @file")->required();
  extend->add_option_function<int>("--m", [&](const int& v) { m_override = v; },
                                   "order at 0 (default: from the input)");

  auto* classify_cmd = app.add_subcommand("classify", "type R / type S classification");
  classify_cmd->add_option("--input", input_arg, "boundary divisor JSON or @file")->required();

  auto* lam = app.add_subcommand("lamination", "exact angle table on the preimage tree of 1");
  lam->add_option("--input", input_arg, "boundary divisor JSON or @file")->required();
  lam->add_option("--svg", svg_path, "also write the leaves as an SVG figure");

  auto* experiment = app.add_subcommand("experiment", "run a numerical experiment");
  std::string exp_name;
  experiment->add_option("name", exp_name, "converge | cont-orbit | prescribe | multiplier")
      ->required()
      ->check(CLI::IsMember({"converge", "cont-orbit", "prescribe", "multiplier"}));
  experiment->add_option("--config", config_arg, "experiment config JSON or @file")->required();
  experiment->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* render = app.add_subcommand("render", "SVG figure of zeros and critical points");
  auto* render_zeros = render->add_option("--zeros", zeros_arg, "free zeros JSON or @file");
  render->add_option("--input", input_arg, "divisor or boundary divisor JSON or @file")
      ->excludes(render_zeros);
  render->add_option("--m", m, "order of the zero at 0")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const bool explicit_depth = app.count("--depth") > 0;

  try {
    const svg::Options svg_opts{g.deterministic};
    if (*critpts) {
      const auto zeros = io::divisor_from_loose_json(load(zeros_arg), Region::interior);
      const auto b = BlaschkeProduct::from_zero_divisor(zeros, m);
      const auto ram = critical_divisor(b).free_ram;
      if (!svg_path.empty()) write_side(svg_path, svg::critical_figure(zeros, ram, true, svg_opts));
      emit(g, dump(io::divisor_to_json(ram)));
    } else if (*invert) {
      const auto ram = io::divisor_from_loose_json(load(ram_arg), Region::interior);
      emit(g, dump(io::divisor_to_json(zeros_from_critical(ram, m).free_zeros())));
    } else if (*extend) {
      const auto d = io::boundary_from_json(load(input_arg));
      emit(g, dump(io::divisor_to_json(extend_phi(d, m_override.value_or(d.interior_part().m())))));
    } else if (*classify_cmd) {
      const auto d = io::boundary_from_json(load(input_arg));
      emit(g, dump(io::report_to_json(classify(d, g.depth, g.tol))));
    } else if (*lam) {
      const auto d = io::boundary_from_json(load(input_arg));
      const auto table = lamination_table(d, explicit_depth ? g.depth : 3);
      if (!svg_path.empty()) write_side(svg_path, svg::lamination_figure(table, svg_opts));
      std::ostringstream os;
      write_csv(os, table);
      emit(g, os.str());
    } else if (*experiment) {
      std::string csv;
      const auto report = run_experiment(exp_name, load(config_arg), g, csv);
      emit(g, format == "csv" ? csv : dump(report));
    } else if (*render) {
      if (!zeros_arg.empty()) {
        const auto zeros = io::divisor_from_loose_json(load(zeros_arg), Region::interior);
        const auto ram = critical_divisor(BlaschkeProduct::from_zero_divisor(zeros, m)).free_ram;
        emit(g, svg::critical_figure(zeros, ram, true, svg_opts));
      } else if (!input_arg.empty()) {
        const auto j = load(input_arg);
        const bool boundary = j.is_object() && j.contains("S");
        const Divisor d = boundary ? io::boundary_from_json(j).zero_divisor() : io::divisor_from_json(j);
        emit(g, svg::divisor_figure(d, svg_opts));
      } else {
        throw PreconditionError("render needs --zeros or --input");
      }
    }
  } catch (const PreconditionError& e) {
    return fail(2, "precondition", e.what());
  } catch (const NumericalError& e) {
    return fail(3, "numerical", e.what());
  } catch (const SchemaError& e) {
    return fail(4, "schema", e.what());
  } catch (const json::exception& e) {
    return fail(4, "schema", e.what());
  }
  return 0;
}
