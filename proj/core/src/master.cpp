#include "wgcasimir/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "wgcasimir/detail/parallel.hpp"

namespace wgcasimir::master {

namespace {

constexpr double kBorderedRcondFloor = 1e-13;
constexpr double kResolventRcondFloor = 1e-14;
constexpr double kStrongDriveWarning = 0.3;

using hilbert::sandwich_superop;

void check_basis(const SystemConfig& config, const FockBasis& basis) {
  if (basis.n_modes() != config.n_qubits) throw std::invalid_argument("basis mode count does not match n_qubits");
}

void check_operator(const FloquetSolution& sol, const OperatorMatrix& op) {
  if (op.dim() != sol.basis().size()) throw std::invalid_argument("operator dimension does not match the basis");
}

/// Tr(A B) without forming the product.
cplx trace_product(const CMatrix& a, const CMatrix& b) { return a.transpose().cwiseProduct(b).sum(); }

double real_expectation(const CMatrix& op, const CMatrix& rho, const char* what) {
  const cplx value = trace_product(op, rho);
  const double scale = std::max(1.0, std::abs(value.real()));
  if (std::abs(value.imag()) > 1e-10 * scale) {
    std::ostringstream msg;
    msg << what << " has imaginary part " << value.imag();
    throw std::runtime_error(msg.str());
  }
  return value.real();
}

Eigen::PartialPivLU<CMatrix> factorize_resolvent(const CMatrix& m, const char* what) {
  Eigen::PartialPivLU<CMatrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > kResolventRcondFloor)) throw NumericalError(std::string(what) + " is singular", rcond);
  return lu;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix entries, std::shared_ptr<const FockBasis> basis)
    : entries_(std::move(entries)), basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("density matrix needs a basis");
  if (entries_.rows() != basis_->size() || entries_.cols() != basis_->size())
    throw std::invalid_argument("density matrix dimension does not match the basis");
}

cplx DensityMatrix::expectation(const OperatorMatrix& op) const {
  if (op.dim() != entries_.rows()) throw std::invalid_argument("operator dimension does not match the basis");
  return trace_product(op.matrix(), entries_);
}

FloquetSolution::FloquetSolution(SystemConfig config, std::shared_ptr<const FockBasis> basis,
                                 SuperOperator liouvillian, DensityMatrix rho, FloquetDiagnostics diagnostics)
    : config_(std::move(config)),
      basis_(std::move(basis)),
      liouvillian_(std::move(liouvillian)),
      rho_(std::move(rho)),
      diagnostics_(std::move(diagnostics)) {}

SuperOperator build_liouvillian(const SystemConfig& config, const FockBasis& basis) {
  check_basis(config, basis);
  const int n = config.n_qubits;
  const OperatorMatrix id = hilbert::identity(basis);
  const OperatorMatrix h0 = model::build_h0(config, basis);
  const RMatrix gamma = model::decay_matrix(config);

  std::vector<OperatorMatrix> a;
  for (int j = 0; j < n; ++j) a.push_back(hilbert::annihilation(basis, j));

  OperatorMatrix k(CMatrix::Zero(basis.size(), basis.size()));
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      k += cplx(gamma(j, l)) * (a[static_cast<std::size_t>(j)].adjoint() * a[static_cast<std::size_t>(l)]);

  SuperOperator liouvillian = -kI * sandwich_superop(h0, id);
  liouvillian += kI * sandwich_superop(id, h0);
  liouvillian -= sandwich_superop(k, id);
  liouvillian -= sandwich_superop(id, k);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      if (gamma(j, l) == 0.0) continue;
      liouvillian += cplx(2.0 * gamma(j, l)) *
                     sandwich_superop(a[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(l)].adjoint());
    }
  }
  return liouvillian;
}

DriveSuperops build_drive_superops(const SystemConfig& config, const FockBasis& basis) {
  check_basis(config, basis);
  const OperatorMatrix id = hilbert::identity(basis);
  const auto dim = basis.size() * basis.size();
  SuperOperator forward(CMatrix::Zero(dim, dim));
  SuperOperator backward(CMatrix::Zero(dim, dim));
  for (int j = 0; j < config.n_qubits; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    if (config.drive_amps[idx] == 0.0) continue;
    const OperatorMatrix x = model::drive_operator(config, basis, j);
    const SuperOperator commutator = sandwich_superop(x, id) - sandwich_superop(id, x);
    const cplx phase = std::exp(kI * config.drive_phases[idx]);
    forward += (-kI * config.drive_amps[idx] * phase) * commutator;
    backward += (-kI * config.drive_amps[idx] * std::conj(phase)) * commutator;
  }
  return {std::move(forward), std::move(backward)};
}

FloquetSolution stationary_rho(const SystemConfig& config, const FockBasis& basis) {
  config.validate();
  check_basis(config, basis);
  auto shared_basis = std::make_shared<const FockBasis>(basis);
  const Eigen::Index d = basis.size();
  const Eigen::Index dd = d * d;

  SuperOperator liouvillian = build_liouvillian(config, basis);
  const DriveSuperops drive = build_drive_superops(config, basis);
  const CMatrix& l = liouvillian.matrix();
  const CMatrix id = CMatrix::Identity(dd, dd);

  CVector vacuum = CVector::Zero(dd);
  vacuum(0) = 1.0;

  FloquetDiagnostics diag;
  CVector rhs = CVector::Zero(dd);
  if (config.max_drive() > 0.0) {
    const double omega = config.drive_freq;
    const auto up = factorize_resolvent(l + kI * omega * id, "resolvent (L + i Omega)");
    const auto down = factorize_resolvent(l - kI * omega * id, "resolvent (L - i Omega)");
    rhs = 0.25 * (drive.forward.matrix() * up.solve(drive.backward.matrix() * vacuum) +
                  drive.backward.matrix() * down.solve(drive.forward.matrix() * vacuum));
  }

  const Eigen::RowVectorXcd trace_row = hilbert::trace_functional(d);
  CMatrix bordered = CMatrix::Zero(dd + 1, dd + 1);
  bordered.topLeftCorner(dd, dd) = l;
  bordered.block(0, dd, dd, 1) = trace_row.transpose();
  bordered.block(dd, 0, 1, dd) = trace_row;
  Eigen::PartialPivLU<CMatrix> lu(bordered);
  diag.rcond = lu.rcond();
  if (!(diag.rcond > kBorderedRcondFloor)) {
    throw DegenerateModelError("stationary state is not unique (bordered system rcond=" + std::to_string(diag.rcond) +
                               "); the Liouvillian has more than one steady state");
  }
  CVector b = CVector::Zero(dd + 1);
  b.head(dd) = rhs;
  const CVector sol = lu.solve(b);
  const CVector x = sol.head(dd);

  const double rhs_norm = rhs.norm();
  diag.residual = rhs_norm > 0.0 ? (l * x - rhs).norm() / rhs_norm : (l * x).norm();

  CMatrix rho = hilbert::unvec(x);
  rho(0, 0) += 1.0;
  diag.asymmetry = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  diag.trace_deviation = std::abs(rho.trace() - 1.0);

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho, Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = eig.eigenvalues().minCoeff();
  diag.eigenvalue_floor = -10.0 * std::pow(config.max_drive() / config.gamma1d, 4);

  if (config.max_drive() > kStrongDriveWarning * config.gamma1d)
    diag.warnings.emplace_back("drive amplitude exceeds 0.3 gamma1d; second-order truncation may be inaccurate");
  if (diag.min_eigenvalue < diag.eigenvalue_floor)
    diag.warnings.emplace_back("density matrix eigenvalue below the O(g^4) positivity floor");

  DensityMatrix density(std::move(rho), shared_basis);
  return FloquetSolution(config, std::move(shared_basis), std::move(liouvillian), std::move(density), std::move(diag));
}

FloquetSolution stationary_rho(const SystemConfig& config, std::optional<int> total_cutoff) {
  config.validate();
  return stationary_rho(config, hilbert::build_basis(config.n_qubits, 2, total_cutoff));
}

double emission_intensity(const FloquetSolution& sol, const OperatorMatrix& op) {
  check_operator(sol, op);
  const CMatrix n = op.matrix().adjoint() * op.matrix();
  return real_expectation(n, sol.rho().matrix(), "emission intensity");
}

double g2_zero(const FloquetSolution& sol, const OperatorMatrix& op) {
  check_operator(sol, op);
  const CMatrix pp = op.matrix() * op.matrix();
  return real_expectation(pp.adjoint() * pp, sol.rho().matrix(), "pair correlation");
}

double emission_spectrum_at(const FloquetSolution& sol, const OperatorMatrix& op, double omega) {
  check_operator(sol, op);
  const CMatrix& l = sol.liouvillian().matrix();
  CMatrix shifted = l;
  shifted.diagonal().array() -= kI * omega;
  const auto lu = factorize_resolvent(shifted, "spectral resolvent");
  const CVector y = lu.solve(hilbert::vec(op.matrix() * sol.rho().matrix()));
  return -trace_product(op.matrix().adjoint(), hilbert::unvec(y)).real() / kPi;
}

std::vector<SpectrumPoint> emission_spectrum(const FloquetSolution& sol, const OperatorMatrix& op,
                                             const std::vector<double>& omega_grid, unsigned threads) {
  check_operator(sol, op);
  std::vector<SpectrumPoint> out(omega_grid.size());
  detail::parallel_for(omega_grid.size(), threads, [&](std::size_t i) {
    out[i].omega = omega_grid[i];
    try {
      out[i].value = emission_spectrum_at(sol, op, omega_grid[i]);
    } catch (const NumericalError&) {
      out[i].value = std::numeric_limits<double>::quiet_NaN();
      out[i].valid = false;
    }
  });
  return out;
}

std::vector<CorrelationPoint> g2_tau(const FloquetSolution& sol, const OperatorMatrix& op,
                                     const std::vector<double>& tau_grid) {
  check_operator(sol, op);
  for (double tau : tau_grid) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and >= 0");
  }
  const CMatrix& p = op.matrix();
  const CMatrix n = p.adjoint() * p;
  const CMatrix& l = sol.liouvillian().matrix();

  std::vector<std::size_t> order(tau_grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return tau_grid[x] < tau_grid[y]; });

  std::vector<CorrelationPoint> out(tau_grid.size());
  std::map<double, CMatrix> propagators;
  CVector state = hilbert::vec(p * sol.rho().matrix() * p.adjoint());
  double current = 0.0;
  for (std::size_t idx : order) {
    const double step = tau_grid[idx] - current;
    if (step > 0.0) {
      auto it = propagators.find(step);
      if (it == propagators.end()) it = propagators.emplace(step, (l * step).exp().eval()).first;
      state = it->second * state;
      current = tau_grid[idx];
    }
    out[idx].tau = tau_grid[idx];
    out[idx].value = trace_product(n, hilbert::unvec(state)).real();
  }
  return out;
}

}  // namespace wgcasimir::master
