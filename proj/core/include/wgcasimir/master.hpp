#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wgcasimir/config.hpp"
#include "wgcasimir/hilbert.hpp"
#include "wgcasimir/model.hpp"

namespace wgcasimir::master {

using hilbert::FockBasis;
using hilbert::OperatorMatrix;
using hilbert::SuperOperator;

class DensityMatrix {
 public:
  DensityMatrix(CMatrix entries, std::shared_ptr<const FockBasis> basis);

  const CMatrix& matrix() const noexcept { return entries_; }
  const FockBasis& basis() const noexcept { return *basis_; }
  cplx expectation(const OperatorMatrix& op) const;

 private:
  CMatrix entries_;
  std::shared_ptr<const FockBasis> basis_;
};

struct FloquetDiagnostics {
  /// ||L x - RHS|| / ||RHS|| of the bordered solve.
  double residual = 0.0;
  double trace_deviation = 0.0;
  /// max |rho - rho^dag| before hermitization.
  double asymmetry = 0.0;
  double min_eigenvalue = 0.0;
  /// Positivity floor -10 (max g / gamma1d)^4.
  double eigenvalue_floor = 0.0;
  double rcond = 0.0;
  std::vector<std::string> warnings;
};

class FloquetSolution {
 public:
  FloquetSolution(SystemConfig config, std::shared_ptr<const FockBasis> basis, SuperOperator liouvillian,
                  DensityMatrix rho, FloquetDiagnostics diagnostics);

  const SystemConfig& config() const noexcept { return config_; }
  const FockBasis& basis() const noexcept { return *basis_; }
  const SuperOperator& liouvillian() const noexcept { return liouvillian_; }
  const DensityMatrix& rho() const noexcept { return rho_; }
  const FloquetDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  SystemConfig config_;
  std::shared_ptr<const FockBasis> basis_;
  SuperOperator liouvillian_;
  DensityMatrix rho_;
  FloquetDiagnostics diagnostics_;
};

SuperOperator build_liouvillian(const SystemConfig& config, const FockBasis& basis);

/// forward carries g_j e^{+i phi_j}, backward g_j e^{-i phi_j}; only the coefficients are conjugated.
struct DriveSuperops {
  SuperOperator forward;
  SuperOperator backward;
};
DriveSuperops build_drive_superops(const SystemConfig& config, const FockBasis& basis);

/// Time-averaged second-order Floquet steady state with harmonics -1, 0, 1.
FloquetSolution stationary_rho(const SystemConfig& config, const FockBasis& basis);
/// Same on a three-level-per-qubit basis with an optional total excitation cutoff.
FloquetSolution stationary_rho(const SystemConfig& config, std::optional<int> total_cutoff = std::nullopt);

/// Tr(op^dag op rho0).
double emission_intensity(const FloquetSolution& sol, const OperatorMatrix& op);
/// Tr(op^dag op^dag op op rho0).
double g2_zero(const FloquetSolution& sol, const OperatorMatrix& op);

struct SpectrumPoint {
  double omega = 0.0;
  double value = 0.0;
  bool valid = true;
};
/// Regression-theorem spectrum, one resolvent solve per frequency. Singular points are flagged invalid.
std::vector<SpectrumPoint> emission_spectrum(const FloquetSolution& sol, const OperatorMatrix& op,
                                             const std::vector<double>& omega_grid, unsigned threads = 1);
/// Spectrum at a single frequency; throws NumericalError at a singular resolvent.
double emission_spectrum_at(const FloquetSolution& sol, const OperatorMatrix& op, double omega);

struct CorrelationPoint {
  double tau = 0.0;
  double value = 0.0;
};
/// Tr(op^dag op e^{L tau}[op rho0 op^dag]) for tau >= 0.
std::vector<CorrelationPoint> g2_tau(const FloquetSolution& sol, const OperatorMatrix& op,
                                     const std::vector<double>& tau_grid);

}  // namespace wgcasimir::master
