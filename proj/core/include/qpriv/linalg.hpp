// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qpriv/states.hpp"

namespace qpriv {

// Kronecker products; the first operand's registers occupy the most
// significant qubit positions. Layouts are concatenated and must stay under
// the qubit cap with unique names.
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const PureState& b);
DensityMatrix tensor(const PureState& a, const DensityMatrix& b);

// Reduced state on the kept registers (original layout order), tracing out
// the rest. Trace preserving.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const PureState& psi, const std::vector<std::string>& keep);

// Eigenvalues in ascending order. Values below the -1e-10 floor reject the
// input; small negatives are clamped to zero.
std::vector<double> eigenvalues(const DensityMatrix& rho);

// -sum(p log2 p) with the 1e-12 clip; 0 log 0 := 0. Works for any
// sub-normalized spectrum or classical distribution.
double entropy_of_spectrum(const std::vector<double>& spectrum);

// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of the reduced state on `regs`, which may mix classical label
// names and quantum register names. Uses the block-diagonal decomposition
// S = H(labels) + sum_label p * S(quantum block).
double cq_entropy(const CqState& cq, const std::vector<std::string>& regs);

// I(A:B|C) = S(AC) + S(BC) - S(C) - S(ABC), base-2. C may be empty.
double conditional_mutual_information(const DensityMatrix& rho,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c);
double conditional_mutual_information(const CqState& cq,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c);
double mutual_information(const DensityMatrix& rho,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// (1/2) sum |eigenvalues of rho - sigma|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

// Tr(rho^2).
double purity(const DensityMatrix& rho);

namespace detail {

// Entropy of sum_i w_i Tr_rest |psi_i><psi_i| restricted to `block`, without
// assembling the large joint matrix: the nonzero spectrum of W W^dag equals
// that of W^dag W, so the eigenproblem is solved on the smaller side.
double weighted_pure_block_entropy(const RegisterLayout& layout,
                                   const std::vector<std::pair<double, const Vector*>>& members,
                                   const std::vector<std::string>& block);

std::vector<double> hermitian_spectrum(const Matrix& m);  // ascending, validated floor

}  // namespace detail

}  // namespace qpriv
