#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wgcasimir/types.hpp"

namespace wgcasimir {

/// Physical parameters of a driven qubit array. All frequencies and rates are in units of gamma1d.
struct SystemConfig {
  int n_qubits = 1;
  double omega0 = 1000.0;
  double gamma1d = 1.0;
  double gamma_nr = 0.0;
  double anharmonicity = 0.0;
  double qd = 0.0;
  std::vector<double> drive_amps{0.0};
  std::vector<double> drive_phases{0.0};
  double drive_freq = 2000.0;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  double gamma_sigma() const noexcept { return gamma1d + gamma_nr; }
  double max_drive() const noexcept;
  /// Complex pair-creation amplitudes g_j exp(-i phi_j).
  CVector pair_amplitudes() const;

  /// Uniform drive of n qubits at the two-photon resonance 2 omega0 + U.
  static SystemConfig uniform(int n_qubits, double anharmonicity, double qd, double g, double omega0 = 1000.0);

  bool operator==(const SystemConfig&) const = default;
};

void to_json(nlohmann::json& j, const SystemConfig& config);
/// Strict parser: unknown keys are rejected. Optional keys: omega0, gamma1d, gamma_nr,
/// drive_phases (zeros) and drive_freq (2 omega0 + anharmonicity).
void from_json(const nlohmann::json& j, SystemConfig& config);

SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& json_text);

}  // namespace wgcasimir
