// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "qpriv/register_layout.hpp"

namespace qpriv {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Absolute tolerances; all comparisons in this library are absolute.
inline constexpr double kStateTol = 1e-10;   // norm / trace / Hermiticity at construction
inline constexpr double kEigClip = 1e-12;    // eigenvalues below this count as zero in entropies
inline constexpr double kEigFloor = -1e-10;  // eigenvalues below this reject the matrix

// Dense complex density matrix attached to a register layout.
// Construction validates Hermiticity and unit trace; the eigenvalue floor is
// enforced wherever a spectrum is actually computed.
class DensityMatrix {
 public:
  DensityMatrix(RegisterLayout layout, Matrix m);

  const RegisterLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  int width() const { return layout_.total_width(); }
  std::uint64_t dim() const { return layout_.dim(); }

 private:
  RegisterLayout layout_;
  Matrix mat_;
};

// Dense state vector attached to a register layout. Unit norm within 1e-10.
class PureState {
 public:
  PureState(RegisterLayout layout, Vector amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amp_; }
  int width() const { return layout_.total_width(); }
  std::uint64_t dim() const { return layout_.dim(); }

  DensityMatrix to_density() const;

  // |basis_index> on the given layout.
  static PureState basis(RegisterLayout layout, std::uint64_t basis_index);

 private:
  RegisterLayout layout_;
  Vector amp_;
};

// Classical-quantum ensemble: a probability distribution over classical
// labels, each label carrying a quantum state on one shared layout.
// Distinct labels are perfectly distinguishable, so the joint state is block
// diagonal and its entropies decompose classically.
class CqState {
 public:
  struct Member {
    std::vector<std::string> label;
    double prob = 0;
    std::variant<PureState, DensityMatrix> state;
  };

  CqState(std::vector<std::string> label_names, RegisterLayout quantum_layout,
          std::vector<Member> members);

  const std::vector<std::string>& label_names() const { return label_names_; }
  const RegisterLayout& quantum_layout() const { return layout_; }
  const std::vector<Member>& members() const { return members_; }

  bool is_classical_name(std::string_view name) const;
  bool all_members_pure() const;

 private:
  std::vector<std::string> label_names_;
  RegisterLayout layout_;
  std::vector<Member> members_;
};

}  // namespace qpriv
