// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "qpriv/pir_classical.hpp"
#include "qpriv/privacy.hpp"
#include "qpriv/protocol.hpp"

namespace qpriv {

// Compiles a classical ell-server scheme into the one-server protocol: the
// user superposes all randomness values, keeps a copy of every query in his
// private register Q, and routes (Q_k, Ans_k) through the single server one
// at a time; the server XORs the answer into Ans_k in place.
Protocol build_qpir(const ClassicalPirScheme& scheme);

// Maximum trace distance, over the server's receiving rounds and all pairs
// of user indices, between the states the server holds. Zero certifies that
// nothing about i reaches the server.
double server_view_independence(const Protocol& qpir, const std::string& x);

struct QpirReport {
  PrivacyReport l_user, l_server;
  bool user_private = false;     // |L_U| <= 1e-10
  bool server_within_comm = false;  // L_S <= total communication
  int communication_qubits = 0;
  std::optional<OrderingCheck> ordering;  // populated when SIC/QIC widths fit
  std::vector<std::string> notes;
};

QpirReport qpir_privacy_report(const ClassicalPirScheme& scheme, bool include_sic_qic);

}  // namespace qpriv
