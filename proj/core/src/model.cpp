#include "wgcasimir/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace wgcasimir::model {

namespace {

void check_basis(const SystemConfig& config, const FockBasis& basis) {
  if (basis.n_modes() != config.n_qubits) throw std::invalid_argument("basis mode count does not match n_qubits");
}

}  // namespace

CMatrix photon_green(const SystemConfig& config) {
  config.validate();
  const int n = config.n_qubits;
  CMatrix d(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) d(j, k) = -kI * config.gamma1d * std::exp(kI * (config.qd * std::abs(j - k)));
  }
  return d;
}

RMatrix decay_matrix(const SystemConfig& config) {
  config.validate();
  const int n = config.n_qubits;
  RMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) g(j, k) = config.gamma1d * std::cos(config.qd * std::abs(j - k));
    g(j, j) += config.gamma_nr;
  }
  return g;
}

OperatorMatrix build_h0(const SystemConfig& config, const FockBasis& basis) {
  check_basis(config, basis);
  const CMatrix d = photon_green(config);
  const int n = config.n_qubits;
  std::vector<OperatorMatrix> a;
  std::vector<OperatorMatrix> ad;
  for (int j = 0; j < n; ++j) {
    a.push_back(hilbert::annihilation(basis, j));
    ad.push_back(a.back().adjoint());
  }
  CMatrix h = CMatrix::Zero(basis.size(), basis.size());
  for (int j = 0; j < n; ++j) {
    const auto& aj = a[static_cast<std::size_t>(j)].matrix();
    const auto& adj = ad[static_cast<std::size_t>(j)].matrix();
    h += config.omega0 * adj * aj + 0.5 * config.anharmonicity * adj * adj * aj * aj;
    for (int k = 0; k < n; ++k) {
      const double hop = d(j, k).real();
      if (hop != 0.0) h += hop * adj * a[static_cast<std::size_t>(k)].matrix();
    }
  }
  return OperatorMatrix(std::move(h));
}

OperatorMatrix drive_operator(const SystemConfig& config, const FockBasis& basis, int j) {
  check_basis(config, basis);
  if (j < 0 || j >= config.n_qubits) throw std::out_of_range("qubit index out of range");
  const CMatrix a = hilbert::annihilation(basis, j).matrix();
  const CMatrix ad = a.adjoint();
  CMatrix x = ad * ad + a * a + 2.0 * ad * a + CMatrix::Identity(basis.size(), basis.size());
  return OperatorMatrix(std::move(x));
}

CVector direction_phases(const SystemConfig& config, Direction direction) {
  const double sign = direction == Direction::left ? 1.0 : -1.0;
  CVector p(config.n_qubits);
  for (int j = 0; j < config.n_qubits; ++j) p(j) = std::exp(kI * (sign * config.qd * j));
  return p;
}

OperatorMatrix directional_operator(const SystemConfig& config, const FockBasis& basis, Direction direction) {
  check_basis(config, basis);
  const CVector phases = direction_phases(config, direction);
  CMatrix p = CMatrix::Zero(basis.size(), basis.size());
  for (int j = 0; j < config.n_qubits; ++j) p += phases(j) * hilbert::annihilation(basis, j).matrix();
  return OperatorMatrix(std::move(p));
}

EffectiveHamiltonian single_excitation_hamiltonian(const SystemConfig& config) {
  CMatrix h = photon_green(config);
  h.diagonal().array() += config.omega0 - kI * config.gamma_nr;
  return {std::move(h), 1};
}

CMatrix pair_interaction(const SystemConfig& config) {
  const int n = config.n_qubits;
  CMatrix v = CMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) v(i * n + i, i * n + i) = config.anharmonicity;
  return v;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

TwoExcitationSpectrum two_excitation_hamiltonian(const SystemConfig& config) {
  const CMatrix h = single_excitation_hamiltonian(config).entries;
  const CMatrix id = CMatrix::Identity(h.rows(), h.cols());
  CMatrix h2 = kron(h, id) + kron(id, h) + pair_interaction(config);
  Eigen::ComplexEigenSolver<CMatrix> solver(h2, false);
  if (solver.info() != Eigen::Success) throw NumericalError("two-excitation eigensolve failed", 0.0);
  CVector ev = solver.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), [](cplx x, cplx y) { return x.real() < y.real(); });
  return {{std::move(h2), 2}, std::move(ev)};
}

}  // namespace wgcasimir::model
