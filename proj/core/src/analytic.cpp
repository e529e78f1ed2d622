#include "wgcasimir/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace wgcasimir::analytic {

namespace {

void require_qubits(const SystemConfig& config, int n, const char* what) {
  config.validate();
  if (config.n_qubits != n) throw std::invalid_argument(std::string(what) + " needs n_qubits=" + std::to_string(n));
}

double drive_detuning(const SystemConfig& config) { return config.drive_freq - 2.0 * config.omega0; }

/// |(x + 2i)(x - U + 2i) + 4 e^{2i qd}|^2 in units of gamma1d.
double symmetric_denominator(const SystemConfig& config) {
  const double g = config.gamma1d;
  const double x = drive_detuning(config);
  const cplx den = (x + 2.0 * kI * g) * (x - config.anharmonicity + 2.0 * kI * g) +
                   4.0 * g * g * std::exp(2.0 * kI * config.qd);
  return std::norm(den);
}

}  // namespace

std::string_view formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::eq9: return "eq9";
    case FormulaId::eq10: return "eq10";
    case FormulaId::eq11: return "eq11";
    case FormulaId::eq12: return "eq12";
    case FormulaId::b1: return "b1";
    case FormulaId::b2: return "b2";
    case FormulaId::b3: return "b3";
    case FormulaId::b4: return "b4";
    case FormulaId::g2zero_freq: return "g2zero_freq";
    case FormulaId::imin_freq: return "imin_freq";
    case FormulaId::subradiant_n4: return "subradiant_n4";
  }
  return "unknown";
}

std::string_view validity_note(FormulaId id) {
  switch (id) {
    case FormulaId::eq9: return "single qubit, weak drive";
    case FormulaId::eq10: return "single qubit, weak drive, Omega = 2 omega0 + U";
    case FormulaId::eq11: return "two qubits, g1 = g2, gamma = 0, U >> gamma_1D, Omega = 2 omega0 + U";
    case FormulaId::eq12: return "two qubits, g1 = g2, U >> gamma_1D, Omega = 2 omega0 + U";
    case FormulaId::b1: return "two qubits, U >> gamma_1D, |Omega - 2 omega0 - U| <~ gamma_1D";
    case FormulaId::b2: return "two qubits, U >> gamma_1D, |Omega - 2 omega0 - U| <~ gamma_1D";
    case FormulaId::b3: return "two qubits, g1 = g2, gamma = 0";
    case FormulaId::b4: return "two qubits, g1 = g2, gamma = 0; optical-theorem units (twice <p^dag p>)";
    case FormulaId::g2zero_freq: return "two qubits, g1 = g2, gamma = 0";
    case FormulaId::imin_freq: return "two qubits, g1 = g2, gamma = 0; approximate location";
    case FormulaId::subradiant_n4: return "four qubits, qd << 1";
  }
  return "";
}

ClosedFormResult make_result(FormulaId id, double value) { return {value, id, validity_note(id)}; }

ClosedFormResult i1_single(const SystemConfig& config) {
  config.validate();
  const double g = config.drive_amps.front();
  const double gs = config.gamma_sigma();
  const double omega = config.drive_freq;
  const double pair = config.anharmonicity + 2.0 * config.omega0;
  const double num = 4.0 * g * g * (omega * omega + pair * pair + 4.0 * gs * gs);
  const double den = (4.0 * gs * gs + (omega - pair) * (omega - pair)) * (4.0 * gs * gs + (omega + pair) * (omega + pair));
  return make_result(FormulaId::eq9, num / den);
}

ClosedFormResult spectrum_single(const SystemConfig& config, double omega) {
  const double i1 = i1_single(config).value;
  const double gs = config.gamma_sigma();
  const double u = config.anharmonicity;
  const double dw = omega - config.omega0;
  const double lower = (8.0 * gs * gs + u * (u + 2.0 * dw)) / (dw * dw + gs * gs);
  const double upper = u * (3.0 * u - 2.0 * (dw - u)) / ((dw - u) * (dw - u) + 9.0 * gs * gs);
  return make_result(FormulaId::eq10, i1 / (2.0 * kPi) * gs / (u * u + 4.0 * gs * gs) * (lower + upper));
}

TwoQubitHighU two_qubit_highU(const SystemConfig& config) {
  require_qubits(config, 2, "two_qubit_highU");
  const CVector g = config.pair_amplitudes();
  const double g1 = config.gamma1d;
  const double detuning = config.drive_freq - 2.0 * config.omega0 - config.anharmonicity;
  const double lorentz = detuning * detuning + 4.0 * g1 * g1;
  const double c = std::cos(2.0 * config.qd);
  const double s = std::sin(2.0 * config.qd);

  TwoQubitHighU out;
  out.g2_b1 = make_result(FormulaId::b1, std::norm(g(0) + g(1) * std::exp(2.0 * kI * config.qd)) / lorentz);
  const double n1 = std::norm(g(0));
  const double n2 = std::norm(g(1));
  const double cross = (g(0) * std::conj(g(1))).imag();
  out.i_minus_b2 = make_result(FormulaId::b2, ((7.0 - 3.0 * c) * n1 + (5.0 - c) * n2 + 2.0 * s * cross) / ((3.0 - c) * lorentz));
  out.i_plus_b2 = make_result(FormulaId::b2, ((7.0 - 3.0 * c) * n2 + (5.0 - c) * n1 - 2.0 * s * cross) / ((3.0 - c) * lorentz));

  const double a1 = config.drive_amps[0];
  const double a2 = config.drive_amps[1];
  if (std::abs(a1 - a2) <= 1e-12 * std::max(std::abs(a1), std::abs(a2))) {
    SystemConfig single;
    single.n_qubits = 1;
    single.omega0 = config.omega0;
    single.gamma1d = config.gamma1d;
    single.gamma_nr = config.gamma_nr;
    single.anharmonicity = config.anharmonicity;
    single.drive_amps = {a1};
    single.drive_phases = {0.0};
    single.drive_freq = 2.0 * config.omega0 + config.anharmonicity;
    const double i1 = i1_single(single).value;
    const double phi = config.drive_phases[1] - config.drive_phases[0];
    const double asym = std::sin(phi) * s / (3.0 - c);
    out.i_minus_eq11 = make_result(FormulaId::eq11, i1 * (2.0 + asym));
    out.i_plus_eq11 = make_result(FormulaId::eq11, i1 * (2.0 - asym));
    out.g2_eq12 = make_result(FormulaId::eq12, i1 * (1.0 + std::cos(2.0 * config.qd - phi)));
  }
  return out;
}

SpecialPoints two_qubit_special_points(const SystemConfig& config) {
  require_qubits(config, 2, "two_qubit_special_points");
  const double g1 = config.gamma1d;
  SpecialPoints out;
  if (std::abs(std::cos(config.qd)) > 1e-12)
    out.g2_zero_freq = make_result(FormulaId::g2zero_freq, 2.0 * config.omega0 - 2.0 * g1 * std::tan(config.qd));
  out.intensity_min_freq = make_result(FormulaId::imin_freq, 2.0 * config.omega0 - g1 * std::sin(2.0 * config.qd));
  return out;
}

TwoQubitSymmetric two_qubit_symmetric(const SystemConfig& config) {
  require_qubits(config, 2, "two_qubit_symmetric");
  const CVector amps = config.pair_amplitudes();
  if (std::abs(amps(0) - amps(1)) > 1e-12 * std::abs(amps(0)))
    throw std::invalid_argument("two_qubit_symmetric needs equal complex drive amplitudes");
  if (config.gamma_nr != 0.0) throw std::invalid_argument("two_qubit_symmetric needs gamma_nr = 0");
  const double g = config.drive_amps[0];
  const double g1 = config.gamma1d;
  const double x = drive_detuning(config);
  const double q = config.qd;
  const double den = symmetric_denominator(config);
  const double g2_num = x * std::cos(q) + 2.0 * g1 * std::sin(q);
  const double i_num =
      std::pow(x + g1 * std::sin(2.0 * q), 2) + 2.0 * g1 * g1 * (3.0 - std::cos(2.0 * q)) * std::pow(std::sin(q), 2);
  TwoQubitSymmetric out;
  out.g2_b3 = make_result(FormulaId::b3, 4.0 * g * g * g2_num * g2_num / den);
  out.intensity_b4 = make_result(FormulaId::b4, 8.0 * g * g * i_num / den);
  out.special_points = two_qubit_special_points(config);
  return out;
}

std::pair<ClosedFormResult, ClosedFormResult> subradiant_energies_n4(const SystemConfig& config) {
  require_qubits(config, 4, "subradiant_energies_n4");
  const double base = 2.0 * config.omega0;
  const double g1 = config.gamma1d;
  return {make_result(FormulaId::subradiant_n4, base - 2.0 * g1 * config.qd),
          make_result(FormulaId::subradiant_n4, base - 14.0 / 3.0 * g1 * config.qd)};
}

}  // namespace wgcasimir::analytic
