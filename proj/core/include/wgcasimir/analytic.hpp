#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "wgcasimir/config.hpp"

namespace wgcasimir::analytic {

enum class FormulaId {
  eq9,
  eq10,
  eq11,
  eq12,
  b1,
  b2,
  b3,
  b4,
  g2zero_freq,
  imin_freq,
  subradiant_n4,
};

std::string_view formula_name(FormulaId id);
std::string_view validity_note(FormulaId id);

struct ClosedFormResult {
  double value = 0.0;
  FormulaId formula_id = FormulaId::eq9;
  std::string_view validity_note;
};

ClosedFormResult make_result(FormulaId id, double value);

/// Closed-form intensities from the optical theorem (b4 and the diagrammatic intensity sum) count
/// photons twice relative to the master-equation expectation <p^dag p>.
inline constexpr double kOpticalTheoremScale = 2.0;

/// Single-qubit emission intensity <a^dag a>, exact in omega0 and Omega.
ClosedFormResult i1_single(const SystemConfig& config);
/// Single-qubit emission spectrum at omega, valid for Omega = 2 omega0 + U.
ClosedFormResult spectrum_single(const SystemConfig& config, double omega);

struct TwoQubitHighU {
  ClosedFormResult g2_b1;
  ClosedFormResult i_minus_b2;
  /// Mirror image of b2 (qubit order reversed).
  ClosedFormResult i_plus_b2;
  /// Present only for equal amplitudes g1 = g2; evaluated on resonance with phi = phi2 - phi1.
  std::optional<ClosedFormResult> i_minus_eq11;
  std::optional<ClosedFormResult> i_plus_eq11;
  std::optional<ClosedFormResult> g2_eq12;
};

/// Two qubits, U >> gamma1d, Omega near 2 omega0 + U.
TwoQubitHighU two_qubit_highU(const SystemConfig& config);

struct SpecialPoints {
  /// Omega where the pair correlation vanishes; empty at qd = pi/2 (mod pi).
  std::optional<ClosedFormResult> g2_zero_freq;
  ClosedFormResult intensity_min_freq;
};

struct TwoQubitSymmetric {
  ClosedFormResult g2_b3;
  /// I_+ = I_- in optical-theorem units, see kOpticalTheoremScale.
  ClosedFormResult intensity_b4;
  SpecialPoints special_points;
};

/// Two qubits with equal drive g1 = g2, lossless.
TwoQubitSymmetric two_qubit_symmetric(const SystemConfig& config);
SpecialPoints two_qubit_special_points(const SystemConfig& config);

/// Two-excitation subradiant energies of four qubits, 2 omega0 - 2 qd and 2 omega0 - (14/3) qd.
std::pair<ClosedFormResult, ClosedFormResult> subradiant_energies_n4(const SystemConfig& config);

}  // namespace wgcasimir::analytic
