#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wgcasimir/types.hpp"

namespace wgcasimir::hilbert {

using Occupation = std::vector<int>;

/// Truncated multi-mode bosonic Fock basis.
///
/// States are every occupation tuple with entries in [0, per_mode_cutoff] and, when a
/// total cutoff is set, total occupation <= total_cutoff. They are stored in
/// lexicographic order with mode 0 most significant, so the vacuum is index 0.
class FockBasis {
 public:
  FockBasis(int n_modes, int per_mode_cutoff, std::optional<int> total_cutoff = std::nullopt);

  int n_modes() const noexcept { return n_modes_; }
  int per_mode_cutoff() const noexcept { return per_mode_cutoff_; }
  std::optional<int> total_cutoff() const noexcept { return total_cutoff_; }

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(states_.size()); }
  const std::vector<Occupation>& states() const noexcept { return states_; }
  const Occupation& state(Eigen::Index i) const { return states_.at(static_cast<std::size_t>(i)); }
  std::optional<Eigen::Index> index_of(const Occupation& occupation) const;
  int total_occupation(Eigen::Index i) const;

  bool operator==(const FockBasis& other) const noexcept { return states_ == other.states_; }

 private:
  int n_modes_;
  int per_mode_cutoff_;
  std::optional<int> total_cutoff_;
  std::vector<Occupation> states_;
  std::map<Occupation, Eigen::Index> index_;
};

FockBasis build_basis(int n_modes, int per_mode_cutoff, std::optional<int> total_cutoff = std::nullopt);

/// Dense operator on the states of one FockBasis.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(CMatrix entries);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& matrix() const noexcept { return entries_; }
  OperatorMatrix adjoint() const { return OperatorMatrix(entries_.adjoint()); }

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(cplx scale);

  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
  friend OperatorMatrix operator*(cplx scale, OperatorMatrix op) { return op *= scale; }
  friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

 private:
  CMatrix entries_;
};

/// Linear map on column-stacked density matrices, dim = (state dim)^2.
class SuperOperator {
 public:
  SuperOperator() = default;
  explicit SuperOperator(CMatrix entries);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  Eigen::Index state_dim() const noexcept { return state_dim_; }
  const CMatrix& matrix() const noexcept { return entries_; }

  SuperOperator& operator+=(const SuperOperator& rhs);
  SuperOperator& operator-=(const SuperOperator& rhs);
  SuperOperator& operator*=(cplx scale);

  friend SuperOperator operator+(SuperOperator lhs, const SuperOperator& rhs) { return lhs += rhs; }
  friend SuperOperator operator-(SuperOperator lhs, const SuperOperator& rhs) { return lhs -= rhs; }
  friend SuperOperator operator*(cplx scale, SuperOperator op) { return op *= scale; }
  friend SuperOperator operator*(const SuperOperator& lhs, const SuperOperator& rhs);

 private:
  CMatrix entries_;
  Eigen::Index state_dim_ = 0;
};

OperatorMatrix identity(const FockBasis& basis);
OperatorMatrix annihilation(const FockBasis& basis, int mode);
OperatorMatrix creation(const FockBasis& basis, int mode);
OperatorMatrix number(const FockBasis& basis, int mode);

/// S with unvec(S vec(rho)) = A rho B. Column stacking: S = B^T (x) A.
SuperOperator sandwich_superop(const OperatorMatrix& a, const OperatorMatrix& b);

CVector vec(const CMatrix& rho);
CMatrix unvec(const CVector& v);

/// Row vector t with t * vec(rho) = trace(rho).
Eigen::RowVectorXcd trace_functional(Eigen::Index state_dim);

}  // namespace wgcasimir::hilbert
