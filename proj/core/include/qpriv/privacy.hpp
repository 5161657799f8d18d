// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpriv/protocol.hpp"

namespace qpriv {

struct RoundTerm {
  int round = 0;
  double bits = 0;
};

// One privacy quantity for one side of one protocol: the per-round
// conditional mutual information terms and their sum.
struct PrivacyReport {
  std::string protocol;
  std::string quantity;  // "L", "SIC" or "QIC"
  Party side = Party::P0;
  std::string side_name;
  std::optional<int> measurement_round;  // SIC only
  std::vector<RoundTerm> terms;
  double total = 0;
  std::vector<std::string> notes;
};

// Privacy loss with classical input registers: for side P0 the sum over
// P0-sent rounds of I(M_k : X | Y, B_k), symmetrically for P1.
PrivacyReport privacy_loss(const Protocol& protocol, const JointDistribution& mu, Party side);

// The same sums with the opposing party's input register in superposition,
// optionally measured after `measurement_round` (nullopt = never).
PrivacyReport superposed_ic(const Protocol& protocol, const JointDistribution& mu, Party side,
                            std::optional<int> measurement_round);

// The same sums against the purifying environment register.
PrivacyReport quantum_ic(const Protocol& protocol, const JointDistribution& mu, Party side);

// The inequality chain L <= SIC <= QIC, for both sides. Measuring the
// superposed input before round 1 reduces SIC to L, so the chain is asserted
// through that reduction: SIC at measurement round 0 must equal L, SIC at
// every measurement round must stay below QIC, and L must stay below QIC.
// A fixed later measurement round carries no one-sided relation to L (the
// compiled retrieval protocol at n = 2 gives SIC below L on the server side
// when the input register is never measured), so none is asserted; every
// per-round value is still reported.
struct OrderingCheck {
  struct Entry {
    Party side = Party::P0;
    std::optional<int> measurement_round;
    double l = 0, sic = 0, qic = 0;
    bool sic_le_qic = false;
    bool ok = false;  // sic_le_qic, plus the L reduction when m = 0
  };
  std::vector<Entry> entries;
  double max_sic_p0 = 0, max_sic_p1 = 0;
  bool ok = true;
};
OrderingCheck ordering_check(const Protocol& protocol, const JointDistribution& mu);

}  // namespace qpriv
