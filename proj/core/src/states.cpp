// SPDX-License-Identifier: Apache-2.0
#include "qpriv/states.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qpriv {

DensityMatrix::DensityMatrix(RegisterLayout layout, Matrix m)
    : layout_(std::move(layout)), mat_(std::move(m)) {
  const auto d = static_cast<Eigen::Index>(layout_.dim());
  if (mat_.rows() != d || mat_.cols() != d) {
    throw std::invalid_argument("density matrix dimension does not match layout");
  }
  double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kStateTol) {
    throw std::invalid_argument("density matrix is not Hermitian (deviation " +
                                std::to_string(herm_dev) + ")");
  }
  double tr_dev = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (tr_dev > kStateTol) {
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(tr_dev));
  }
}

PureState::PureState(RegisterLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
  if (amp_.size() != static_cast<Eigen::Index>(layout_.dim())) {
    throw std::invalid_argument("state vector dimension does not match layout");
  }
  double norm_dev = std::abs(amp_.norm() - 1.0);
  if (norm_dev > kStateTol) {
    throw std::invalid_argument("state vector norm differs from 1 by " +
                                std::to_string(norm_dev));
  }
}

DensityMatrix PureState::to_density() const {
  Matrix m = amp_ * amp_.adjoint();
  return DensityMatrix(layout_, std::move(m));
}

PureState PureState::basis(RegisterLayout layout, std::uint64_t basis_index) {
  if (basis_index >= layout.dim()) {
    throw std::invalid_argument("basis index out of range");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  v[static_cast<Eigen::Index>(basis_index)] = 1.0;
  return PureState(std::move(layout), std::move(v));
}

CqState::CqState(std::vector<std::string> label_names, RegisterLayout quantum_layout,
                 std::vector<Member> members)
    : label_names_(std::move(label_names)),
      layout_(std::move(quantum_layout)),
      members_(std::move(members)) {
  for (const std::string& n : label_names_) {
    if (layout_.has(n)) {
      throw std::invalid_argument("classical label name collides with quantum register: " + n);
    }
  }
  double total = 0;
  std::map<std::vector<std::string>, int> seen;
  for (const Member& m : members_) {
    if (m.label.size() != label_names_.size()) {
      throw std::invalid_argument("label arity does not match label names");
    }
    if (m.prob < -kStateTol) {
      throw std::invalid_argument("negative member probability");
    }
    if (++seen[m.label] > 1) {
      throw std::invalid_argument("duplicate classical label in ensemble");
    }
    const RegisterLayout& ml = std::holds_alternative<PureState>(m.state)
                                   ? std::get<PureState>(m.state).layout()
                                   : std::get<DensityMatrix>(m.state).layout();
    if (!(ml == layout_)) {
      throw std::invalid_argument("ensemble member layout differs from shared layout");
    }
    total += m.prob;
  }
  if (std::abs(total - 1.0) > kStateTol) {
    throw std::invalid_argument("member probabilities sum to " + std::to_string(total));
  }
}

bool CqState::is_classical_name(std::string_view name) const {
  for (const std::string& n : label_names_) {
    if (n == name) return true;
  }
  return false;
}

bool CqState::all_members_pure() const {
  for (const Member& m : members_) {
    if (!std::holds_alternative<PureState>(m.state)) return false;
  }
  return true;
}

}  // namespace qpriv
