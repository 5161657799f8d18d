// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qpriv/protocol.hpp"

namespace qpriv {

// Per-round comparison between a prescribed execution and an observed one.
// The receiver-plus-message reduction must match entrywise; the sender-side
// reduction only up to its eigenvalue spectrum, since a local operation on
// the sender's workspace cannot change the spectrum of that reduction.
struct RoundDiagnostic {
  int round = 0;
  double receiver_block_deviation = 0;  // max entrywise |difference|
  double sender_spectrum_deviation = 0;
  double prescribed_receiver_purity = 1;
  double observed_receiver_purity = 1;
};

struct HonestyReport {
  bool accepted = true;
  int failing_round = 0;  // 0 when accepted
  std::string failing_x, failing_y;
  std::string reason;
  std::vector<RoundDiagnostic> diagnostics;  // for the failing input pair, or the last pair
};

HonestyReport verify_honest_execution(const Protocol& prescribed, const Protocol& executed,
                                      double tol = 1e-9);

// The 2-round echo scheme: P0 prepares (|00> + |11>)/sqrt(2) on (Q, R), sends
// R; P1 sends R back untouched. Register W is P1's declared workspace.
Protocol make_epr_echo();
// Same rounds, except P1 copies R into W with a CNOT before returning it.
Protocol make_epr_echo_copy_attack();
// Same rounds, plus an extra local unitary on W only (a permissible local
// operation).
Protocol make_epr_echo_local_unitary(const Eigen::Matrix2cd& u);

}  // namespace qpriv
