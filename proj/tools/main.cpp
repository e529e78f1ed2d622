#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wgcasimir/config.hpp"
#include "wgcasimir/sweep.hpp"
#include "wgcasimir/validate.hpp"

namespace sw = wgcasimir::sweep;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string grid;
  std::string engine;
  unsigned threads = 0;
  std::optional<int> total_cutoff;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "SystemConfig JSON file")->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output path (.csv or .json)");
  app->add_option("--grid", c.grid, "grid size N1xN2");
  app->add_option("--engine", c.engine, "master|diagrams|analytic|all");
  app->add_option("--threads", c.threads, "worker threads, 0 = all cores");
  app->add_option("--total-cutoff", c.total_cutoff, "total excitation cap of the master basis");
}

std::pair<int, int> parse_grid(const std::string& text, int n1, int n2) {
  if (text.empty()) return {n1, n2};
  const auto x = text.find('x');
  if (x == std::string::npos) throw std::invalid_argument("grid must look like N1xN2: " + text);
  const int a = std::stoi(text.substr(0, x));
  const int b = std::stoi(text.substr(x + 1));
  if (a < 1 || b < 1) throw std::invalid_argument("grid sizes must be positive: " + text);
  return {a, b};
}

/// "parameter:first:last"
sw::Axis parse_axis(const std::string& text, int count) {
  std::vector<std::string> parts;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("axis must look like parameter:first:last: " + text);
  return {parts[0], sw::linspace(std::stod(parts[1]), std::stod(parts[2]), count)};
}

std::vector<sw::Observable> parse_observables(const std::string& text) {
  std::vector<sw::Observable> out;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ',');) out.push_back(sw::parse_observable(item));
  return out;
}

void apply_common(sw::ScanSpec& spec, const Common& c) {
  if (!c.engine.empty()) spec.engines = sw::parse_engines(c.engine);
  spec.threads = c.threads;
  if (c.total_cutoff) spec.truncation.total = c.total_cutoff;
}

void emit(const sw::ScanResult& result, const std::string& out) {
  if (out.empty()) {
    std::cout << sw::to_csv(result);
  } else {
    sw::write_result(result, out);
    std::cerr << "wrote " << out << " (" << result.provenance.elapsed_seconds << " s)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric photon-pair emission from waveguide-coupled modulated qubits"};
  app.require_subcommand(1);

  Common spectrum_opts;
  double omega_lo = -10.0;
  double omega_hi = 20.0;
  auto* spectrum = app.add_subcommand("spectrum", "emission spectrum of p_- at the configured drive");
  add_common(spectrum, spectrum_opts);
  spectrum->add_option("--from", omega_lo, "first detuning omega - omega0");
  spectrum->add_option("--to", omega_hi, "last detuning omega - omega0");

  Common scan_opts;
  std::string axis1;
  std::string axis2;
  std::string observables = "I_minus";
  bool overlays = false;
  auto* scan = app.add_subcommand("scan", "two-dimensional parameter scan");
  add_common(scan, scan_opts);
  scan->add_option("--axis1", axis1, "parameter:first:last")->required();
  scan->add_option("--axis2", axis2, "parameter:first:last")->required();
  scan->add_option("--observables", observables, "comma-separated observables");
  scan->add_flag("--overlays", overlays, "emit eigenvalue and special-point overlays");

  Common figure_opts;
  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "run a figure preset");
  add_common(figure, figure_opts);
  figure->add_option("id", figure_id, "preset id")->required()->check(CLI::IsMember(sw::figure_ids()));

  Common validate_opts;
  std::string level = "quick";
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  add_common(validate, validate_opts);
  validate->add_option("--level", level, "quick|full")->check(CLI::IsMember({"quick", "full"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) {
      if (spectrum_opts.config.empty()) throw std::invalid_argument("spectrum needs --config");
      const auto base = wgcasimir::load_config(spectrum_opts.config);
      const auto [n1, n2] = parse_grid(spectrum_opts.grid, 1, 201);
      if (n1 != 1) throw std::invalid_argument("spectrum takes a 1xN grid");
      sw::ScanSpec spec;
      spec.base = base;
      spec.axis1 = {"Omega", {base.drive_freq}};
      spec.axis2 = {"omega_scan", sw::linspace(base.omega0 + omega_lo, base.omega0 + omega_hi, n2)};
      spec.observables = {sw::Observable::spectrum};
      apply_common(spec, spectrum_opts);
      emit(sw::run_scan(spec), spectrum_opts.out);
      return 0;
    }
    if (*scan) {
      if (scan_opts.config.empty()) throw std::invalid_argument("scan needs --config");
      const auto [n1, n2] = parse_grid(scan_opts.grid, 101, 101);
      sw::ScanSpec spec;
      spec.base = wgcasimir::load_config(scan_opts.config);
      spec.axis1 = parse_axis(axis1, n1);
      spec.axis2 = parse_axis(axis2, n2);
      spec.observables = parse_observables(observables);
      spec.overlays = overlays;
      apply_common(spec, scan_opts);
      emit(sw::run_scan(spec), scan_opts.out);
      return 0;
    }
    if (*figure) {
      const auto [n1, n2] = parse_grid(figure_opts.grid, 101, 101);
      auto spec = sw::figure_preset(figure_id, n1, n2);
      if (!figure_opts.config.empty()) spec.base = wgcasimir::load_config(figure_opts.config);
      apply_common(spec, figure_opts);
      emit(sw::run_scan(spec), figure_opts.out);
      return 0;
    }
    const auto report = sw::validate(sw::parse_level(level), validate_opts.threads);
    for (const auto& c : report.criteria) {
      std::cerr << sw::summary_line(c) << "\n";
      for (const auto& line : c.info) std::cerr << "    " << line << "\n";
    }
    nlohmann::json doc = report;
    if (validate_opts.out.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::ofstream(validate_opts.out) << doc.dump(2) << "\n";
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
