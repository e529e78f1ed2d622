#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wgcasimir {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// The stationary problem has no unique solution (more than one steady state).
class DegenerateModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense solve was singular or too ill-conditioned to trust.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double rcond)
      : std::runtime_error(what + " (rcond=" + std::to_string(rcond) + ")"), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

}  // namespace wgcasimir
