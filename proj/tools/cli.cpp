// Copyright 2026 The cavnet Authors
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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavnet/dynamics.hpp"
#include "cavnet/eliminate.hpp"
#include "cavnet/linop.hpp"
#include "cavnet/netio.hpp"

namespace cavnet::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kExamplePrefix = "example:";
constexpr double kScatterTolerance = 1e-10;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NetworkSpec load_spec(const std::string& source) {
  if (source.starts_with(kExamplePrefix)) return builtin_example(source.substr(kExamplePrefix.size()));
  return parse_network(read_file(source));
}

// Significant digits for CSV and text output; CAVNET_PRECISION overrides.
int output_precision() {
  if (const char* env = std::getenv("CAVNET_PRECISION")) {
    const int digits = std::atoi(env);
    if (digits >= 1 && digits <= 17) return digits;
  }
  return 12;
}

std::string number(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

std::vector<std::string> cavity_ids(const NetworkSpec& spec) {
  std::vector<std::string> ids;
  for (const auto& c : spec.cavities) ids.push_back(c.id);
  return ids;
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

struct Options {
  std::string spec;
  std::string output;
  std::string excite;
  std::string model = "full";
  std::string target;
  std::string format;
  double time = 0.0;
  int steps = 0;
  double J = 0.0;
  double g = 0.0;
  double eps = -1.0;
  bool json_out = false;
  bool csv_out = false;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const NetworkSpec spec = load_spec(o.spec);
  const auto report = validate_network(spec);
  json j;
  j["ok"] = report.ok();
  j["warnings"] = json::array();
  for (const auto& w : report.warnings) j["warnings"].push_back(w.str());
  json ratios = json::object();
  for (Eigen::Index i = 0; i < report.validity.size(); ++i) {
    ratios[spec.cavities[static_cast<std::size_t>(i)].id] = report.validity(i);
  }
  j["validity_ratio"] = std::move(ratios);
  j["threshold"] = kValidityWarningThreshold;
  emit(j.dump(2) + "\n", o.output, out);
  return 0;
}

int cmd_effective(const Options& o, std::ostream& out) {
  const NetworkSpec spec = load_spec(o.spec);
  const auto eff = adiabatic_eliminate(build_coupling_blocks(spec));
  const auto ids = cavity_ids(spec);
  const auto n = eff.lambda.rows();
  const int digits = output_precision();

  if (o.json_out) {
    json j;
    j["cavities"] = ids;
    j["lambda"] = json::parse(write_matrix(eff.lambda));
    j["couplings"] = json::array();
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = a + 1; b < n; ++b) {
        const Complex v = eff.lambda(a, b);
        if (v == Complex{}) continue;
        j["couplings"].push_back({{"a", ids[static_cast<std::size_t>(a)]},
                                  {"b", ids[static_cast<std::size_t>(b)]},
                                  {"lambda", complex_json(v)},
                                  {"j_eff", complex_json(0.5 * v)},
                                  {"magnitude", std::abs(v)},
                                  {"phase", std::arg(v)}});
      }
    }
    j["validity_ratio"] = std::vector<double>(eff.validity.data(), eff.validity.data() + eff.validity.size());
    j["tolerance"] = eff.tolerance;
    emit(j.dump(2) + "\n", o.output, out);
    return 0;
  }
  std::ostringstream os;
  if (o.csv_out) {
    os << "row,col,re,im\n";
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        os << ids[static_cast<std::size_t>(a)] << ',' << ids[static_cast<std::size_t>(b)] << ','
           << number(eff.lambda(a, b).real(), digits) << ',' << number(eff.lambda(a, b).imag(), digits)
           << '\n';
      }
    }
  } else {
    os << "effective coupling lambda (rad/s), H_eff = sum_ij lambda_ij c_i^dagger c_j\n";
    for (Eigen::Index a = 0; a < n; ++a) {
      os << ids[static_cast<std::size_t>(a)] << ':';
      for (Eigen::Index b = 0; b < n; ++b) {
        os << "  (" << number(eff.lambda(a, b).real(), 6) << ", " << number(eff.lambda(a, b).imag(), 6)
           << ")";
      }
      os << '\n';
    }
    os << "pair couplings (J_eff = lambda_ab / 2):\n";
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = a + 1; b < n; ++b) {
        const Complex v = eff.lambda(a, b);
        if (v == Complex{}) continue;
        os << "  " << ids[static_cast<std::size_t>(a)] << " -- " << ids[static_cast<std::size_t>(b)]
           << ": |lambda| = " << number(std::abs(v), digits) << ", arg = " << number(std::arg(v), digits)
           << ", J_eff = (" << number(0.5 * v.real(), digits) << ", " << number(0.5 * v.imag(), digits)
           << ")\n";
      }
    }
    os << "max validity ratio: " << number(eff.validity.size() ? eff.validity.maxCoeff() : 0.0, digits)
       << '\n';
  }
  emit(os.str(), o.output, out);
  return 0;
}

int cmd_graph(const Options& o, std::ostream& out) {
  const NetworkSpec spec = load_spec(o.spec);
  const auto eff = adiabatic_eliminate(build_coupling_blocks(spec));
  std::optional<double> eps;
  if (o.eps >= 0.0) eps = o.eps;
  emit(export_dot(connectivity_graph(eff.lambda, cavity_ids(spec), eps)), o.output, out);
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const NetworkSpec spec = load_spec(o.spec);
  const Model model = o.model == "effective" ? Model::kEffective : Model::kFull;
  const auto series = simulate(spec, model, excite(spec, o.excite), o.time, o.steps);
  emit(export_timeseries_csv(series, output_precision()), o.output, out);
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const NetworkSpec spec = load_spec(o.spec);
  const auto cmp = compare_full_vs_effective(spec, excite(spec, o.excite), o.time, o.steps);
  const auto& r = cmp.report;
  json j;
  j["spec"] = spec.name;
  j["excite"] = o.excite;
  j["time"] = o.time;
  j["steps"] = o.steps;
  j["max_cavity_deviation"] = r.max_cavity_deviation;
  j["max_fiber_population"] = r.max_fiber_population;
  j["population_frequency"] = r.population_frequency ? json(*r.population_frequency) : json(nullptr);
  j["coupling_frequency"] = r.coupling_frequency ? json(*r.coupling_frequency) : json(nullptr);
  j["validity_ratio"] = r.validity_ratio;
  emit(j.dump(2) + "\n", o.output, out);
  return 0;
}

int cmd_synthesize(const Options& o, std::ostream& out) {
  const CMatrix target = parse_matrix(read_file(o.target));
  emit(write_network(synthesize_network(target, o.J, o.g)), o.output, out);
  return 0;
}

int cmd_scatter_check(const Options& o, std::ostream& out) {
  const NetworkSpec spec = load_spec(o.spec);
  bool ok = true;
  json j = json::array();
  for (const auto& c : scatter_check(spec)) {
    const bool pass = c.detuned || c.max_error <= kScatterTolerance;
    ok = ok && pass;
    j.push_back({{"component", c.component},
                 {"J", c.J},
                 {"time", c.time},
                 {"max_error", c.max_error},
                 {"detuned", c.detuned},
                 {"ok", pass}});
  }
  emit(json({{"tolerance", kScatterTolerance}, {"components", j}, {"ok", ok}}).dump(2) + "\n", o.output,
       out);
  return ok ? 0 : 1;
}

int cmd_example(const std::string& name, const Options& o, std::ostream& out) {
  emit(write_network(builtin_example(name)), o.output, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fiber-linked cavity networks: effective couplings, dynamics and synthesis", "cavnet"};
  app.require_subcommand(1);
  Options o;
  std::string example_name;
  const std::string spec_help = "network file, or example:<name>";

  auto* validate = app.add_subcommand("validate", "validate a network and report validity ratios");
  validate->add_option("spec", o.spec, spec_help)->required();
  validate->add_option("-o,--output", o.output, "output file");

  auto* effective = app.add_subcommand("effective", "effective cavity-cavity coupling matrix");
  effective->add_option("spec", o.spec, spec_help)->required();
  auto* json_flag = effective->add_flag("--json", o.json_out, "JSON output");
  effective->add_flag("--csv", o.csv_out, "CSV output")->excludes(json_flag);
  effective->add_option("-o,--output", o.output, "output file");

  auto* graph = app.add_subcommand("graph", "connectivity graph as DOT");
  graph->add_option("spec", o.spec, spec_help)->required();
  graph->add_option("--eps", o.eps, "edge threshold in rad/s")->check(CLI::NonNegativeNumber);
  graph->add_option("-o,--output", o.output, "output file");

  auto* sim = app.add_subcommand("simulate", "single-excitation populations as CSV");
  auto* cmp = app.add_subcommand("compare", "full versus effective dynamics report as JSON");
  for (auto* sub : {sim, cmp}) {
    sub->add_option("spec", o.spec, spec_help)->required();
    sub->add_option("--excite", o.excite, "cavity id initially excited")->required();
    sub->add_option("--time", o.time, "duration in s")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--steps", o.steps, "grid intervals")->required()->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", o.output, "output file");
  }
  sim->add_option("--model", o.model, "full or effective")->check(CLI::IsMember({"full", "effective"}));

  auto* synth = app.add_subcommand("synthesize", "network realising a target coupling matrix");
  synth->add_option("--target", o.target, "matrix file {\"re\": [[...]], \"im\": [[...]]}")->required();
  synth->add_option("--J", o.J, "fiber coupling J in rad/s")->required()->check(CLI::PositiveNumber);
  synth->add_option("--g", o.g, "cavity-fiber coupling g in rad/s")->required()->check(CLI::PositiveNumber);
  synth->add_option("-o,--output", o.output, "output file");

  auto* scatter = app.add_subcommand("scatter-check", "verify exp(-i M pi/J) = -i W per component");
  scatter->add_option("spec", o.spec, spec_help)->required();
  scatter->add_option("-o,--output", o.output, "output file");

  auto* example = app.add_subcommand("example", "print a built-in network");
  example->add_option("name", example_name, "one of: fig1-bmbs fig2-two-cavity fig3-mz-cell fig4-pyramid")
      ->required();
  example->add_option("-o,--output", o.output, "output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (effective->parsed()) return cmd_effective(o, out);
    if (graph->parsed()) return cmd_graph(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    if (synth->parsed()) return cmd_synthesize(o, out);
    if (scatter->parsed()) return cmd_scatter_check(o, out);
    if (example->parsed()) return cmd_example(example_name, o, out);
  } catch (const SpecError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << d.str() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cavnet::cli
