#pragma once

#include <string>
#include <vector>

#include "wgcasimir/config.hpp"
#include "wgcasimir/model.hpp"

namespace wgcasimir::diagrams {

using model::Direction;

/// Conventions: H is the decaying single-excitation Hamiltonian omega0 + D - i gamma_nr, and the
/// photon emission vertex is A = -D, so that sum_j G_ij e^{i qd j} = [A G]_{0i} / (i gamma1d) holds for
/// any gamma_nr. At gamma_nr = 0, A = omega0 - H. Pair-creation amplitudes are g_j e^{-i phi_j}.

/// G(omega) = (omega - H)^{-1}.
CMatrix single_green(const SystemConfig& config, cplx omega);

/// Outgoing photon line. Direction::left uses phases e^{+i qd j}, matching p_-.
CVector outgoing_line(const SystemConfig& config, cplx omega, Direction direction);

/// Emission vertex A = -D.
CMatrix emission_vertex(const SystemConfig& config);

struct PairPropagator {
  CMatrix sigma;
  double drive_freq = 0.0;
};

/// Sigma_ij = [(Omega - H (x) 1 - 1 (x) H)^{-1}]_{ii,jj}.
PairPropagator pair_propagator(const SystemConfig& config, double omega);

struct QuadratureOptions {
  /// Half-width of the finite window around the single-excitation resonances.
  double window = 200.0;
  double tolerance = 1e-12;
  unsigned max_depth = 20;
};

/// Sigma_ij = i/(2 pi) integral of G_ij(w) G_ij(Omega - w) over the real axis, by adaptive
/// Gauss-Kronrod on a window split at the resonances plus mapped semi-infinite tails.
PairPropagator pair_propagator_quadrature(const SystemConfig& config, double omega, const QuadratureOptions& options = {});

struct DressedVertex {
  /// M = (U^{-1} - Sigma)^{-1}; zero when U = 0.
  CMatrix m;
  /// [(Omega - H2)(Omega - H2 - V)^{-1} V]_{ii,jj}.
  CMatrix m_resolvent_form;
  /// max |m - m_resolvent_form| / max |m|, zero when U = 0.
  double discrepancy = 0.0;
};

/// Throws NumericalError when the two representations disagree beyond 1e-9.
DressedVertex dressed_vertex(const SystemConfig& config, double omega);

/// Outgoing directions of the two photons: (left, left) or (left, right).
enum class PairChannel { left_left, left_right };

/// psi(omega1, Omega - omega1) with the energy delta stripped:
/// gamma1d sum_ij s_i(omega1) s'_i(omega2) [1 + M Sigma]_ij g_j.
cplx two_photon_amplitude(const SystemConfig& config, PairChannel channel, double omega1);

/// Exact zero-delay pair correlation of left-going photons.
double g2_zero_diagram(const SystemConfig& config);
/// Leading high-U form |sum_i g_i e^{2 i qd i}|^2 / ((Omega - 2 omega0 - U)^2 + 4 gamma_sigma^2).
double g2_zero_high_u(const SystemConfig& config);
/// Low-Omega form (1/U^2) |sum_ij Sigma+_i [Sigma^{-1}]_ij g_j|^2.
double g2_zero_low_omega(const SystemConfig& config);

struct DirectionalIntensities {
  double left_left = 0.0;
  double left_right = 0.0;
  double right_right = 0.0;
  double right_left = 0.0;
  double i_minus = 0.0;
  double i_plus = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr int kMaxFourCopyQubits = 6;

/// Closed four-copy form of the integrated |psi|^2 for every channel. Refuses N > 6.
DirectionalIntensities emission_intensities_diagram(const SystemConfig& config);
/// High-U simplification of the same quantities.
DirectionalIntensities emission_intensities_high_u(const SystemConfig& config);

struct OpticalTheorem {
  cplx s;
  double intensity_sum = 0.0;
  /// 2 - 2|s|^2 - intensity_sum, of order g^4.
  double residual = 0.0;
};

OpticalTheorem optical_theorem(const SystemConfig& config);

}  // namespace wgcasimir::diagrams
