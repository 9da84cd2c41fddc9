// Copyright 2026 The gausscx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gausscx/coherent.hpp"
#include "gausscx/complexity.hpp"
#include "gausscx/errors.hpp"
#include "gausscx/nonreversible.hpp"
#include "gausscx/state_io.hpp"
#include "gausscx/variational_oracle.hpp"
#include "gausscx/weyl.hpp"

namespace gausscx::cli {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum class Format { kJson, kCsv };

struct RunConfig {
  std::string command;
  std::string reference_file;
  std::string target_file;
  std::string batch_dir;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  Format format = Format::kJson;

  std::string omega_spec;
  int quad_steps = 128;

  std::vector<double> start{0.0, 0.0};
  std::vector<double> velocity{1.0, 0.0};
  std::string potential_spec = "none";
  double length = 0.0;
  int rk_steps = 256;
  std::string path_csv;

  int segments = 16;
  int restarts = 5;
  int max_iterations = 200;
  int restoration_steps = 30;
  bool cold_start = false;
};

int exit_code(ErrorCode code) {
  switch (error_class(code)) {
    case ErrorClass::kNumericDomain:
      return 2;
    case ErrorClass::kConvergence:
      return 4;
    case ErrorClass::kValidation:
      break;
  }
  return 3;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  if (x == 0.0) return std::signbit(x) ? "-0.0" : "0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// nlohmann's serializer picks the shortest round-trip form; floats here are
// always written with 17 significant digits.
void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(key).dump() << (indent > 0 ? ": " : ":");
        write_json(os, value, indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::none_of(j.begin(), j.end(),
                                     [](const Json& e) { return e.is_structured(); });
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << (flat ? ", " : ",");
        if (!flat) os << nl << pad;
        first = false;
        write_json(os, value, indent, depth + 1);
      }
      if (!flat) os << nl << close;
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void emit_json(std::ostream& out, const Json& j) {
  write_json(out, j, 2, 0);
  out << '\n';
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Bosonic spectra are real and positive; fermionic ones lie on the unit
// circle and are written as [re, im] pairs.
Json spectrum_json(const RelativeComplexStructure& delta) {
  std::vector<std::complex<double>> eig;
  const Eigen::VectorXcd values = delta.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) eig.push_back(values(i));
  std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  Json out = Json::array();
  for (const auto& e : eig) {
    if (delta.kind() == StateKind::kBoson) {
      out.push_back(e.real());
    } else {
      out.push_back(Json::array({e.real(), e.imag()}));
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::kParseError, what + ": cannot read a number from '" + text + "'");
  }
  return value;
}

WeylFactor parse_omega(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kParseError, "omega spec must look like kind:value, got '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "const") return WeylFactor::constant(parse_number(arg, "omega constant"));
  if (kind == "linear") return WeylFactor::linear(parse_number(arg, "omega slope"));
  if (kind == "table") {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::kParseError, "cannot open omega table '" + arg + "'");
    std::vector<double> r;
    std::vector<double> omega;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      const auto cells = split(line, ',');
      if (line_no == 1 && !cells.empty() && cells[0].find_first_of("0123456789") == std::string::npos) {
        continue;
      }
      if (cells.size() != 2) {
        throw Error(ErrorCode::kParseError,
                    arg + ":" + std::to_string(line_no) + ": expected two columns r,omega");
      }
      r.push_back(parse_number(cells[0], "omega table r"));
      omega.push_back(parse_number(cells[1], "omega table omega"));
    }
    return WeylFactor::tabulated(std::move(r), std::move(omega));
  }
  throw Error(ErrorCode::kParseError, "unknown omega kind '" + kind + "'");
}

VectorPotential parse_potential(const std::string& spec) {
  if (spec == "none") return VectorPotential::none();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kParseError, "unknown potential spec '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "const") return VectorPotential::constant(parse_number(arg, "potential constant"));
  if (kind == "grad") {
    if (arg.rfind("h=", 0) != 0) throw Error(ErrorCode::kParseError, "expected grad:h=<poly>");
    return VectorPotential::gradient(Polynomial::parse(arg.substr(2)));
  }
  if (kind == "field") {
    const auto comma = arg.rfind(",eps=");
    if (arg.rfind("f0=", 0) != 0 || comma == std::string::npos) {
      throw Error(ErrorCode::kParseError, "expected field:f0=<poly>,eps=<value>");
    }
    return VectorPotential::modulated(Polynomial::parse(arg.substr(3, comma - 3)),
                                      parse_number(arg.substr(comma + 5), "field eps"));
  }
  throw Error(ErrorCode::kParseError, "unknown potential kind '" + kind + "'");
}

struct Outcome {
  Json result = Json::object();
  int code = 0;
};

Outcome error_outcome(const Error& e) {
  Outcome o;
  o.result["error"] = std::string(e.name());
  o.result["message"] = e.what();
  o.code = exit_code(e.code());
  return o;
}

Json cmd_complexity(const RunConfig& c, const GaussianState& ref, const GaussianState& target) {
  const auto delta = relative_complex_structure(ref, target, c.tol);
  Json j;
  j["complexity"] = state_complexity(ref, target, c.tol);
  j["generator"] = matrix_json(delta.generator());
  j["delta_eigenvalues"] = spectrum_json(delta);
  return j;
}

Json cmd_coherent(const RunConfig& c, const GaussianState& ref, const GaussianState& target) {
  const auto geo = coherent_geodesic(ref, target, c.tol);
  Json j;
  j["complexity"] = coherent_complexity(geo);
  j["generator"] = matrix_json(geo.delta.generator());
  j["delta_eigenvalues"] = spectrum_json(geo.delta);
  j["z_target"] = vector_json(geo.z_target);
  j["N_matrix"] = matrix_json(geo.n_matrix);
  return j;
}

Json cmd_weyl(const RunConfig& c, const GaussianState& ref, const GaussianState& target) {
  const auto weyl = parse_omega(c.omega_spec);
  const double base = state_complexity(ref, target, c.tol);
  Json j;
  j["complexity"] = weyl_complexity(base, weyl, c.quad_steps);
  j["base_complexity"] = base;
  j["omega"] = weyl.name();
  j["quad_steps"] = c.quad_steps;
  return j;
}

Outcome cmd_oracle(const RunConfig& c, const GaussianState& ref, const GaussianState& target) {
  OracleOptions options;
  options.segments = c.segments;
  options.restarts = c.restarts;
  options.seed = c.seed;
  options.max_iterations_per_stage = c.max_iterations;
  options.max_restoration_steps = c.restoration_steps;
  options.warm_start = !c.cold_start;
  const double closed = target.has_displacement()
                            ? coherent_complexity(coherent_geodesic(ref, target, c.tol))
                            : state_complexity(ref, target, c.tol);
  const auto result = minimize_to_target(ref, target, options);
  const double gap = closed > 0.0 ? (result.length - closed) / closed : result.length;
  Outcome o;
  if (!result.converged) {
    o.result["error"] = std::string(error_name(ErrorCode::kNoConvergence));
    o.result["message"] = "endpoint constraint residual stayed above tolerance";
    o.code = exit_code(ErrorCode::kNoConvergence);
  }
  o.result["closed_form"] = closed;
  o.result["oracle_length"] = result.length;
  o.result["relative_gap"] = gap;
  o.result["constraint_residual"] = result.constraint_residual;
  o.result["best_restart"] = result.best_restart;
  o.result["segments"] = c.segments;
  o.result["restarts"] = c.restarts;
  return o;
}

Outcome run_pair(const RunConfig& c, const GaussianState& ref, const std::string& target_file) {
  try {
    const auto target = load_state(target_file, c.tol);
    if (c.command == "oracle-verify") return cmd_oracle(c, ref, target);
    Outcome o;
    if (c.command == "complexity") o.result = cmd_complexity(c, ref, target);
    if (c.command == "coherent") o.result = cmd_coherent(c, ref, target);
    if (c.command == "weyl") o.result = cmd_weyl(c, ref, target);
    return o;
  } catch (const Error& e) {
    return error_outcome(e);
  }
}

void emit_csv(std::ostream& out, const std::vector<std::pair<std::string, Outcome>>& rows,
              bool with_target) {
  std::vector<std::string> columns;
  for (const auto& [name, o] : rows) {
    for (const auto& [key, value] : o.result.items()) {
      if (value.is_structured()) continue;
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  if (with_target) out << "target";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i > 0 || with_target ? "," : "") << columns[i];
  }
  out << '\n';
  for (const auto& [name, o] : rows) {
    if (with_target) out << name;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i > 0 || with_target) out << ',';
      if (!o.result.contains(columns[i])) continue;
      const Json& v = o.result[columns[i]];
      if (v.is_number_float()) {
        out << format_double(v.get<double>());
      } else if (v.is_string()) {
        out << v.get<std::string>();
      } else {
        out << v.dump();
      }
    }
    out << '\n';
  }
}

int run_state_command(const RunConfig& c, std::ostream& out) {
  const GaussianState ref = load_state(c.reference_file, c.tol);
  if (c.batch_dir.empty()) {
    const Outcome o = run_pair(c, ref, c.target_file);
    if (c.format == Format::kCsv && o.code == 0) {
      emit_csv(out, {{c.target_file, o}}, false);
    } else {
      emit_json(out, o.result);
    }
    return o.code;
  }

  if (!fs::is_directory(c.batch_dir)) {
    throw Error(ErrorCode::kInvalidArgument, "batch path '" + c.batch_dir + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(c.batch_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [&c, &ref, f] { return run_pair(c, ref, f.string()); }));
  }
  std::vector<std::pair<std::string, Outcome>> rows;
  int code = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    rows.emplace_back(files[i].filename().string(), jobs[i].get());
    if (code == 0) code = rows.back().second.code;
  }
  if (c.format == Format::kCsv) {
    emit_csv(out, rows, true);
  } else {
    Json results = Json::array();
    for (const auto& [name, o] : rows) {
      Json entry;
      entry["target"] = name;
      for (const auto& [key, value] : o.result.items()) entry[key] = value;
      results.push_back(std::move(entry));
    }
    Json j;
    j["results"] = std::move(results);
    emit_json(out, j);
  }
  return code;
}

int run_nonrev(const RunConfig& c, std::ostream& out) {
  if (!c.batch_dir.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--batch does not apply to nonrev");
  }
  const auto potential = parse_potential(c.potential_spec);
  const auto path = lorentz_geodesic({c.start[0], c.start[1]}, {c.velocity[0], c.velocity[1]},
                                     potential, c.length, {c.rk_steps, 1e-6});
  const auto forward = nonreversible_cost_breakdown(path, potential);
  const auto backward = nonreversible_cost_breakdown(reversed(path), potential);
  if (!c.path_csv.empty()) {
    std::ofstream file(c.path_csv);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + c.path_csv + "'");
    write_path_csv(file, path, forward.accumulated);
  }
  if (c.format == Format::kCsv) {
    write_path_csv(out, path, forward.accumulated);
    return 0;
  }
  Json j;
  j["forward_cost"] = forward.total;
  j["reverse_cost"] = backward.total;
  j["length"] = forward.length;
  j["potential_term"] = forward.potential_term;
  j["end"] = Json::array({path.points.back().r, path.points.back().phi});
  j["samples"] = path.size();
  j["reached_chart_boundary"] = path.reached_chart_boundary;
  emit_json(out, j);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Circuit complexity of pure Gaussian states", "gausscx"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", c.tol, "Tolerance for input validation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for the variational oracle")->capture_default_str();
  std::map<std::string, Format> formats{{"json", Format::kJson}, {"csv", Format::kCsv}};
  app.add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("json");
  app.add_option("--batch", c.batch_dir,
                 "Treat every *.json file in this directory as a target");

  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("reference", c.reference_file, "Reference state JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("target", c.target_file, "Target state JSON")->check(CLI::ExistingFile);
  };
  auto* complexity = app.add_subcommand("complexity", "Complexity of a zero-displacement target");
  add_pair(complexity);
  auto* coherent = app.add_subcommand("coherent", "Complexity including a displaced target");
  add_pair(coherent);
  auto* weyl = app.add_subcommand("weyl", "Complexity under a Weyl-rescaled metric");
  add_pair(weyl);
  weyl->add_option("--omega", c.omega_spec, "const:c | linear:beta | table:file.csv")->required();
  weyl->add_option("--quad-steps", c.quad_steps, "Simpson steps")
      ->check(CLI::Range(2, 1 << 24))
      ->capture_default_str();
  auto* nonrev = app.add_subcommand("nonrev", "Lorentz-force geodesic and its non-reversible cost");
  nonrev->add_option("--start", c.start, "r,phi")->delimiter(',')->expected(2)->capture_default_str();
  nonrev->add_option("--velocity", c.velocity, "vr,vphi")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  nonrev->add_option("--potential", c.potential_spec,
                     "none | const:c | grad:h=<poly> | field:f0=<poly>,eps=<e>")
      ->capture_default_str();
  nonrev->add_option("--length", c.length, "Arc length")->required()->check(CLI::NonNegativeNumber);
  nonrev->add_option("--rk-steps", c.rk_steps, "RK4 steps")
      ->check(CLI::Range(8, 1 << 24))
      ->capture_default_str();
  nonrev->add_option("--path-csv", c.path_csv, "Also write path samples to this file");
  auto* oracle = app.add_subcommand("oracle-verify", "Compare the closed form with the oracle");
  add_pair(oracle);
  oracle->add_option("--segments", c.segments, "Path segments")
      ->check(CLI::Range(4, 4096))
      ->capture_default_str();
  oracle->add_option("--restarts", c.restarts, "Random restarts")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  oracle->add_option("--max-iterations", c.max_iterations, "LBFGS iterations per penalty stage")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  oracle->add_option("--restoration-steps", c.restoration_steps,
                     "Gauss-Newton steps onto the endpoint constraint")
      ->check(CLI::Range(0, 1000))
      ->capture_default_str();
  oracle->add_flag("--cold-start", c.cold_start, "Start every restart from a random path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    Json j;
    j["error"] = "UsageError";
    j["message"] = e.what();
    emit_json(out, j);
    return 3;
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.command == "nonrev") return run_nonrev(c, out);
    if (c.batch_dir.empty() && c.target_file.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "a target file or --batch directory is required");
    }
    return run_state_command(c, out);
  } catch (const Error& e) {
    const Outcome o = error_outcome(e);
    emit_json(out, o.result);
    return o.code;
  }
}

}  // namespace gausscx::cli
