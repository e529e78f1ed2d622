#include <stdexcept>

#include "wgcasimir/sweep.hpp"

namespace wgcasimir::sweep {

namespace {

constexpr double kOmega0 = 1000.0;
constexpr double kQdMin = 0.02;
constexpr double kQdMax = kPi - 0.02;
constexpr double kMargin = 10.0;

SystemConfig base_config(int n, double u, double gamma_nr, double g) {
  SystemConfig c = SystemConfig::uniform(n, u, 0.0, g, kOmega0);
  c.gamma_nr = gamma_nr;
  return c;
}

Axis qd_axis(int count) { return {"qd", linspace(kQdMin, kQdMax, count)}; }

Axis omega_drive_axis(const SystemConfig& c, int count) {
  return {"Omega", linspace(2.0 * c.omega0 - kMargin, 2.0 * c.omega0 + c.anharmonicity + kMargin, count)};
}

/// Two qubits, intensity to the left versus (qd, Omega).
ScanSpec intensity_map(double u, double phi, int n1, int n2) {
  ScanSpec spec;
  spec.base = base_config(2, u, 0.1, 0.1);
  spec.base.drive_phases[1] = phi;
  spec.axis1 = qd_axis(n1);
  spec.axis2 = omega_drive_axis(spec.base, n2);
  spec.observables = {Observable::I_minus};
  spec.overlays = true;
  return spec;
}

/// Two qubits at Omega = 2 omega0 + U, intensity and directivity versus (qd, phi).
ScanSpec phase_map(double u, int n1, int n2) {
  ScanSpec spec;
  spec.base = base_config(2, u, 0.05, 0.1);
  spec.axis1 = qd_axis(n1);
  spec.axis2 = {"phi_2", linspace(0.0, 2.0 * kPi, n2)};
  spec.observables = {Observable::I_minus, Observable::I_plus, Observable::directivity};
  return spec;
}

ScanSpec correlation_map(double phi, int n1, int n2) {
  ScanSpec spec;
  spec.base = base_config(2, 10.0, 0.1, 0.1);
  spec.base.drive_phases[1] = phi;
  spec.axis1 = qd_axis(n1);
  spec.axis2 = omega_drive_axis(spec.base, n2);
  spec.observables = {Observable::G2mm};
  spec.overlays = true;
  return spec;
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b", "fig6"};
}

ScanSpec figure_preset(std::string_view id, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("grid sizes must be positive");
  if (id == "fig2") {
    ScanSpec spec;
    spec.base = base_config(1, 10.0, 0.0, 0.1);
    spec.axis1 = omega_drive_axis(spec.base, n1);
    spec.axis2 = {"omega_scan",
                  linspace(spec.base.omega0 - kMargin, spec.base.omega0 + spec.base.anharmonicity + kMargin, n2)};
    spec.observables = {Observable::spectrum, Observable::I1};
    return spec;
  }
  if (id == "fig3a") return intensity_map(1.0, 0.0, n1, n2);
  if (id == "fig3b") return intensity_map(4.0, 0.0, n1, n2);
  if (id == "fig3c") return intensity_map(10.0, 0.0, n1, n2);
  if (id == "fig3d") return intensity_map(10.0, kPi, n1, n2);
  if (id == "fig4a") return phase_map(1.0, n1, n2);
  if (id == "fig4b") return phase_map(4.0, n1, n2);
  if (id == "fig4c") return phase_map(10.0, n1, n2);
  if (id == "fig4d") return phase_map(100.0, n1, n2);
  if (id == "fig5a") return correlation_map(0.0, n1, n2);
  if (id == "fig5b") return correlation_map(kPi, n1, n2);
  if (id == "fig6") {
    ScanSpec spec;
    spec.base = base_config(4, 10.0, 0.0, 0.1);
    spec.base.drive_amps = {0.1, 0.0, 0.0, 0.0};
    spec.axis1 = qd_axis(n1);
    spec.axis2 = omega_drive_axis(spec.base, n2);
    spec.observables = {Observable::G2mm};
    spec.truncation.total = 2;
    spec.overlays = true;
    return spec;
  }
  throw std::invalid_argument("unknown figure id: " + std::string(id));
}

}  // namespace wgcasimir::sweep
