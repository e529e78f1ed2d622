#include "wgcasimir/hilbert.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace wgcasimir::hilbert {

namespace {

void enumerate(int mode, int n_modes, int per_mode, std::optional<int> total, Occupation& current, int used,
               std::vector<Occupation>& out) {
  if (mode == n_modes) {
    out.push_back(current);
    return;
  }
  for (int n = 0; n <= per_mode; ++n) {
    if (total && used + n > *total) break;
    current[static_cast<std::size_t>(mode)] = n;
    enumerate(mode + 1, n_modes, per_mode, total, current, used + n, out);
  }
  current[static_cast<std::size_t>(mode)] = 0;
}

void check_mode(const FockBasis& basis, int mode) {
  if (mode < 0 || mode >= basis.n_modes()) throw std::out_of_range("mode index out of range");
}

}  // namespace

FockBasis::FockBasis(int n_modes, int per_mode_cutoff, std::optional<int> total_cutoff)
    : n_modes_(n_modes), per_mode_cutoff_(per_mode_cutoff), total_cutoff_(total_cutoff) {
  if (n_modes < 1) throw std::invalid_argument("FockBasis needs at least one mode");
  if (per_mode_cutoff < 0) throw std::invalid_argument("per-mode cutoff must be >= 0");
  if (total_cutoff && *total_cutoff < 0) throw std::invalid_argument("total cutoff must be >= 0");
  Occupation current(static_cast<std::size_t>(n_modes), 0);
  enumerate(0, n_modes, per_mode_cutoff, total_cutoff, current, 0, states_);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], static_cast<Eigen::Index>(i));
}

std::optional<Eigen::Index> FockBasis::index_of(const Occupation& occupation) const {
  auto it = index_.find(occupation);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FockBasis::total_occupation(Eigen::Index i) const {
  const auto& s = state(i);
  return std::accumulate(s.begin(), s.end(), 0);
}

FockBasis build_basis(int n_modes, int per_mode_cutoff, std::optional<int> total_cutoff) {
  return FockBasis(n_modes, per_mode_cutoff, total_cutoff);
}

OperatorMatrix::OperatorMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("operator matrix must be square");
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  if (rhs.dim() != dim()) throw std::invalid_argument("operator dimension mismatch");
  entries_ += rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  if (rhs.dim() != dim()) throw std::invalid_argument("operator dimension mismatch");
  entries_ -= rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx scale) {
  entries_ *= scale;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  if (rhs.dim() != lhs.dim()) throw std::invalid_argument("operator dimension mismatch");
  return OperatorMatrix(lhs.entries_ * rhs.entries_);
}

SuperOperator::SuperOperator(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("superoperator must be square");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(entries_.rows()))));
  if (d * d != entries_.rows()) throw std::invalid_argument("superoperator dimension is not a square");
  state_dim_ = d;
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& rhs) {
  if (rhs.dim() != dim()) throw std::invalid_argument("superoperator dimension mismatch");
  entries_ += rhs.entries_;
  return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& rhs) {
  if (rhs.dim() != dim()) throw std::invalid_argument("superoperator dimension mismatch");
  entries_ -= rhs.entries_;
  return *this;
}

SuperOperator& SuperOperator::operator*=(cplx scale) {
  entries_ *= scale;
  return *this;
}

SuperOperator operator*(const SuperOperator& lhs, const SuperOperator& rhs) {
  if (rhs.dim() != lhs.dim()) throw std::invalid_argument("superoperator dimension mismatch");
  return SuperOperator(lhs.entries_ * rhs.entries_);
}

OperatorMatrix identity(const FockBasis& basis) {
  return OperatorMatrix(CMatrix::Identity(basis.size(), basis.size()));
}

OperatorMatrix annihilation(const FockBasis& basis, int mode) {
  check_mode(basis, mode);
  CMatrix a = CMatrix::Zero(basis.size(), basis.size());
  for (Eigen::Index col = 0; col < basis.size(); ++col) {
    Occupation s = basis.state(col);
    const int n = s[static_cast<std::size_t>(mode)];
    if (n == 0) continue;
    s[static_cast<std::size_t>(mode)] = n - 1;
    if (auto row = basis.index_of(s)) a(*row, col) = std::sqrt(static_cast<double>(n));
  }
  return OperatorMatrix(std::move(a));
}

OperatorMatrix creation(const FockBasis& basis, int mode) { return annihilation(basis, mode).adjoint(); }

OperatorMatrix number(const FockBasis& basis, int mode) { return creation(basis, mode) * annihilation(basis, mode); }

SuperOperator sandwich_superop(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
  return SuperOperator(Eigen::kroneckerProduct(b.matrix().transpose(), a.matrix()).eval());
}

CVector vec(const CMatrix& rho) { return Eigen::Map<const CVector>(rho.data(), rho.size()); }

CMatrix unvec(const CVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw std::invalid_argument("vector length is not a square");
  return Eigen::Map<const CMatrix>(v.data(), d, d);
}

Eigen::RowVectorXcd trace_functional(Eigen::Index state_dim) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(state_dim * state_dim);
  for (Eigen::Index i = 0; i < state_dim; ++i) t(i * state_dim + i) = 1.0;
  return t;
}

}  // namespace wgcasimir::hilbert
