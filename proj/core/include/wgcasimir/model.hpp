#pragma once

#include "wgcasimir/config.hpp"
#include "wgcasimir/hilbert.hpp"

namespace wgcasimir::model {

using hilbert::FockBasis;
using hilbert::OperatorMatrix;

/// left selects p_-, right selects p_+.
enum class Direction { left, right };

/// Waveguide Green matrix D_jk = -i gamma1d exp(i qd |j-k|).
CMatrix photon_green(const SystemConfig& config);

/// gamma_jk = gamma1d cos(qd |j-k|) + delta_jk gamma_nr.
RMatrix decay_matrix(const SystemConfig& config);

/// Hamiltonian without the modulation; onsite energy, Kerr term and waveguide-mediated hopping.
OperatorMatrix build_h0(const SystemConfig& config, const FockBasis& basis);

/// (a_j^dag + a_j)^2 in normal order, a^dag a^dag + a a + 2 a^dag a + 1.
OperatorMatrix drive_operator(const SystemConfig& config, const FockBasis& basis, int j);

/// Phases e^{+i qd j} (left) or e^{-i qd j} (right), j counted from 0.
CVector direction_phases(const SystemConfig& config, Direction direction);

/// p_- = sum_j a_j e^{+i qd j}, p_+ = sum_j a_j e^{-i qd j}.
OperatorMatrix directional_operator(const SystemConfig& config, const FockBasis& basis, Direction direction);

struct EffectiveHamiltonian {
  CMatrix entries;
  int excitation_sector = 1;
};

/// omega0 + D - i gamma_nr; eigenvalues lie in the lower half plane.
EffectiveHamiltonian single_excitation_hamiltonian(const SystemConfig& config);

/// V_{ij,kl} = U delta_ij delta_kl delta_ik on the pair space with composite index i*N + j.
CMatrix pair_interaction(const SystemConfig& config);

struct TwoExcitationSpectrum {
  EffectiveHamiltonian hamiltonian;
  CVector eigenvalues;
};

/// H (x) 1 + 1 (x) H + V and its eigenvalues sorted by real part.
TwoExcitationSpectrum two_excitation_hamiltonian(const SystemConfig& config);

/// A (x) B with (A (x) B)_{ij,kl} = A_ik B_jl.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace wgcasimir::model
