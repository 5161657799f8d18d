// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpriv/protocol.hpp"

namespace qpriv {

// Two-round inner-product protocol: P0 sends (1/sqrt(2^n)) sum_r |r>_Q
// |r.x>_R, P1 XORs y into Q and returns both registers, P0 uncomputes r.x
// and measures R.
Protocol build_ip_protocol(int n);

// First-message amplitudes for input x (registers Q, R).
Vector ip_first_message(int n, std::uint64_t x);

// The averaged first message sum_x 2^-n |phi_x><phi_x|, built from its
// closed-form coefficient table and cross-checked entrywise against the
// ensemble construction (throws if they disagree beyond 1e-10).
DensityMatrix analytic_m1(int n);

// Closed-form spectrum of the averaged first message: the uniform pure-state
// ensemble inherits the nonzero spectrum of its normalized Gram matrix,
// which here has unit diagonal and constant off-diagonal 1/2. Valid for
// n <= 16 with no dense matrices involved.
std::vector<double> gram_spectrum_oracle(int n);
double gram_spectrum_entropy(int n);

// Side-by-side reference values: asymptotic claims (stated up to
// exponentially small terms) next to closed forms where one exists.
struct IpReferenceRow {
  std::string quantity;
  double asymptotic = 0;
  std::optional<double> closed_form;
  std::string provenance;
};
std::vector<IpReferenceRow> theoretical_ip_table(int n);

// Privacy tradeoff composition: the base protocol on the first t bits, then
// roles swapped on the remaining n-t bits, P1 forwarding his outcome bit.
// The decoder XORs the two sub-results.
Protocol build_ip_tradeoff(int n, int t);

}  // namespace qpriv
