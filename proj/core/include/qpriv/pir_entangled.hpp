// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpriv/privacy.hpp"
#include "qpriv/protocol.hpp"

namespace qpriv {

// Recursive halving of a string of length 2^s: path bit 0 selects the first
// half, 1 the second. An empty path returns z itself.
std::string slice(const std::string& z, const std::vector<int>& path);

// Same on a packed bit field of the given width.
std::uint64_t slice_bits(std::uint64_t value, int width, int path_bit);

// Retrieval with prior entanglement over n = 2^ell bits: the parties share
// one maximally correlated pair (R_k, R'_k) per level plus two query qubits
// Q_0, Q_1; each level parity-injects database slices into the query qubits,
// the user phase-flips Q_{i_k}, and Hadamard layers convert the collected
// phases into the XOR-shared slices the decoder combines.
Protocol build_ppir(int ell);

// b^1[i_2..i_l] XOR b^2[i_3..i_l] XOR ... XOR b^l XOR a^l for the 1-based
// index i; b[k-1] holds the 2^(l-k)-bit string measured on R'_k.
int ppir_decode(int a_ell, const std::vector<std::string>& b, int i);

// Fidelity between the simulated system at the end of loop iteration k and
// the closed-form level-k state.
double lemma_state_check(int ell, const std::string& x, int i, int k);

struct PpirPrivacyCheck {
  double max_trace_distance = 0;     // over levels and index pairs
  double max_mixture_deviation = 0;  // entrywise, against the dephased form
};

// Server-held state after each user reply, compared across all indices and
// against the explicit dephased mixture.
PpirPrivacyCheck ppir_user_privacy(int ell, const std::string& x);

struct PpirReport {
  PrivacyReport l_user, l_server;
  bool user_private = false;
  bool server_within_bound = false;  // L_S <= 2*ell + 1
  int communication_qubits = 0;
  std::optional<OrderingCheck> ordering;
  std::vector<std::string> notes;
};

PpirReport ppir_privacy_report(int ell, bool include_sic_qic);

}  // namespace qpriv
