#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wgcasimir/config.hpp"

namespace wgcasimir::sweep {

enum class Engine { master, diagrams, analytic };
enum class Observable { I1, I_minus, I_plus, G2mm, spectrum, directivity };

std::string_view to_string(Engine engine);
std::string_view to_string(Observable observable);
Engine parse_engine(std::string_view name);
Observable parse_observable(std::string_view name);
/// "master", "diagrams", "analytic" or "all".
std::vector<Engine> parse_engines(std::string_view name);

/// Parameter names: Omega, qd, U, omega_scan and phi_<j> with j counted from 1.
struct Axis {
  std::string parameter;
  std::vector<double> values;
};

struct Truncation {
  int per_mode = 2;
  std::optional<int> total;
};

struct ScanSpec {
  SystemConfig base;
  Axis axis1;
  Axis axis2;
  std::vector<Observable> observables;
  std::vector<Engine> engines{Engine::master};
  Truncation truncation;
  /// Emit eigenvalue and special-point overlay layers.
  bool overlays = false;
  unsigned threads = 0;

  /// Throws std::invalid_argument for unknown parameters, non-finite values, or unsupported
  /// engine/observable pairs requested explicitly.
  void validate() const;
};

/// Whether `engine` can evaluate `observable` for configurations shaped like `base`.
bool supports(Engine engine, Observable observable, const SystemConfig& base);

/// Axis metadata. Frequency axes are reported as detunings (Omega - 2 omega0, omega - omega0).
struct AxisInfo {
  std::string parameter;
  std::string label;
  std::vector<double> values;
  std::vector<double> reported;
};

struct Layer {
  Observable observable;
  Engine engine;
  /// rows follow axis1, columns axis2.
  RMatrix values;
};

/// 1 where an engine failed at a grid point; the affected layer values are NaN.
struct MaskLayer {
  Engine engine;
  Eigen::MatrixXi flags;
};

struct OverlayLayer {
  std::string name;
  RMatrix values;
};

struct Provenance {
  std::string code_version;
  std::string created_utc;
  double elapsed_seconds = 0.0;
  unsigned threads = 1;
  Truncation truncation;
  std::vector<std::string> notes;
};

struct ScanResult {
  SystemConfig base;
  AxisInfo axis1;
  AxisInfo axis2;
  std::vector<Layer> layers;
  std::vector<MaskLayer> masks;
  std::vector<OverlayLayer> overlays;
  Provenance provenance;

  const Layer* find(Observable observable, Engine engine) const;
  const Layer& layer(Observable observable, Engine engine) const;
};

/// Configuration at one grid point of the spec (omega_scan does not enter the configuration).
SystemConfig point_config(const ScanSpec& spec, double value1, double value2);

/// Evaluates every grid point independently; results do not depend on the thread count.
ScanResult run_scan(const ScanSpec& spec);

/// Presets: fig2, fig3a..fig3d, fig4a..fig4d, fig5a, fig5b, fig6.
std::vector<std::string> figure_ids();
ScanSpec figure_preset(std::string_view id, int n1 = 101, int n2 = 101);

std::vector<double> linspace(double first, double last, int count);

inline constexpr std::string_view kUnitsLine = "all frequencies in units of gamma_1D";

/// Long-format CSV: '#' header lines, then one row per grid point.
std::string to_csv(const ScanResult& result);
ScanResult parse_csv(std::string_view text);
nlohmann::json to_json(const ScanResult& result);
ScanResult from_json(const nlohmann::json& doc);
/// Writes CSV or JSON depending on the extension.
void write_result(const ScanResult& result, const std::string& path);

std::string column_name(Observable observable, Engine engine);

}  // namespace wgcasimir::sweep
