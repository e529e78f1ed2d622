#include "wgcasimir/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wgcasimir {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"n_qubits", "omega0",        "gamma1d",      "gamma_nr",  "anharmonicity",
                                          "qd",       "drive_amps",    "drive_phases", "drive_freq"};
  return keys;
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

void SystemConfig::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
  require_finite(omega0, "omega0");
  require_finite(gamma1d, "gamma1d");
  require_finite(gamma_nr, "gamma_nr");
  require_finite(anharmonicity, "anharmonicity");
  require_finite(qd, "qd");
  require_finite(drive_freq, "drive_freq");
  if (!(gamma1d > 0.0)) throw std::invalid_argument("gamma1d must be > 0");
  if (gamma_nr < 0.0) throw std::invalid_argument("gamma_nr must be >= 0");
  const auto n = static_cast<std::size_t>(n_qubits);
  if (drive_amps.size() != n) throw std::invalid_argument("drive_amps must have n_qubits entries");
  if (drive_phases.size() != n) throw std::invalid_argument("drive_phases must have n_qubits entries");
  for (double g : drive_amps) require_finite(g, "drive_amps");
  for (double p : drive_phases) require_finite(p, "drive_phases");
}

double SystemConfig::max_drive() const noexcept {
  double m = 0.0;
  for (double g : drive_amps) m = std::max(m, std::abs(g));
  return m;
}

CVector SystemConfig::pair_amplitudes() const {
  CVector g(n_qubits);
  for (int j = 0; j < n_qubits; ++j) {
    const auto k = static_cast<std::size_t>(j);
    g(j) = drive_amps[k] * std::exp(-kI * drive_phases[k]);
  }
  return g;
}

SystemConfig SystemConfig::uniform(int n_qubits, double anharmonicity, double qd, double g, double omega0) {
  SystemConfig c;
  c.n_qubits = n_qubits;
  c.omega0 = omega0;
  c.anharmonicity = anharmonicity;
  c.qd = qd;
  c.drive_amps.assign(static_cast<std::size_t>(n_qubits), g);
  c.drive_phases.assign(static_cast<std::size_t>(n_qubits), 0.0);
  c.drive_freq = 2.0 * omega0 + anharmonicity;
  return c;
}

void to_json(nlohmann::json& j, const SystemConfig& c) {
  j = nlohmann::json{{"n_qubits", c.n_qubits},     {"omega0", c.omega0},
                     {"gamma1d", c.gamma1d},       {"gamma_nr", c.gamma_nr},
                     {"anharmonicity", c.anharmonicity}, {"qd", c.qd},
                     {"drive_amps", c.drive_amps}, {"drive_phases", c.drive_phases},
                     {"drive_freq", c.drive_freq}};
}

void from_json(const nlohmann::json& j, SystemConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known_keys().count(item.key())) throw std::invalid_argument("unknown config key: " + item.key());
  }
  for (const char* key : {"n_qubits", "anharmonicity", "qd", "drive_amps"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing config key: ") + key);
  }
  SystemConfig out;
  out.n_qubits = j.at("n_qubits").get<int>();
  out.omega0 = j.value("omega0", 1000.0);
  out.gamma1d = j.value("gamma1d", 1.0);
  out.gamma_nr = j.value("gamma_nr", 0.0);
  out.anharmonicity = j.at("anharmonicity").get<double>();
  out.qd = j.at("qd").get<double>();
  out.drive_amps = j.at("drive_amps").get<std::vector<double>>();
  out.drive_phases = j.contains("drive_phases") ? j.at("drive_phases").get<std::vector<double>>()
                                                : std::vector<double>(out.drive_amps.size(), 0.0);
  out.drive_freq = j.value("drive_freq", 2.0 * out.omega0 + out.anharmonicity);
  out.validate();
  c = std::move(out);
}

SystemConfig parse_config(const std::string& json_text) {
  return nlohmann::json::parse(json_text).get<SystemConfig>();
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return nlohmann::json::parse(in).get<SystemConfig>();
}

}  // namespace wgcasimir
