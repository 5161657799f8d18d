// SPDX-License-Identifier: Apache-2.0
#include "qpriv/privacy.hpp"

#include <algorithm>

namespace qpriv {

namespace {

// Receiver workspace at the round-k snapshot: everything the receiver holds
// after the transfer, minus the message itself (taken before the receiver's
// next local operation).
std::vector<std::string> receiver_workspace(const Protocol& p, int k) {
  const Round& round = p.rounds[static_cast<std::size_t>(k - 1)];
  const Party receiver = other(round.sender);
  std::vector<std::string> ws = p.ownership_after(k)[static_cast<int>(receiver)];
  for (const std::string& m : round.message) {
    ws.erase(std::remove(ws.begin(), ws.end(), m), ws.end());
  }
  return ws;
}

PrivacyReport round_sum(const Protocol& p, Party side, const AnalysisMode& mode, const std::string& quantity,
                        const std::string& leak_target) {
  PrivacyReport report;
  report.protocol = p.name;
  report.quantity = quantity;
  report.side = side;
  report.side_name = p.party_names[static_cast<int>(side)];
  report.measurement_round = mode.measurement_round;

  const std::string receiver_input =
      side == Party::P0 ? kInputRegP1 : kInputRegP0;

  for (int k = 1; k <= p.round_count(); ++k) {
    const Round& round = p.rounds[static_cast<std::size_t>(k - 1)];
    if (round.sender != side || round.message.empty()) continue;
    CqState cq = round_state(p, mode, k);
    std::vector<std::string> cond = {receiver_input};
    for (const std::string& ws : receiver_workspace(p, k)) cond.push_back(ws);
    double term =
        conditional_mutual_information(cq, round.message, {leak_target}, cond);
    report.terms.push_back(RoundTerm{k, term});
    report.total += term;
  }
  return report;
}

}  // namespace

PrivacyReport privacy_loss(const Protocol& p, const JointDistribution& mu, Party side) {
  const std::string own_input = side == Party::P0 ? kInputRegP0 : kInputRegP1;
  return round_sum(p, side, AnalysisMode::classical(mu), "L", own_input);
}

PrivacyReport superposed_ic(const Protocol& p, const JointDistribution& mu, Party side,
                            std::optional<int> measurement_round) {
  const std::string own_input = side == Party::P0 ? kInputRegP0 : kInputRegP1;
  AnalysisMode mode = AnalysisMode::superposed(other(side), mu, measurement_round);
  PrivacyReport report = round_sum(p, side, mode, "SIC", own_input);
  if (measurement_round) {
    report.notes.push_back("opposing input measured after round " +
                           std::to_string(*measurement_round));
  } else {
    report.notes.push_back("opposing input never measured");
  }
  return report;
}

PrivacyReport quantum_ic(const Protocol& p, const JointDistribution& mu, Party side) {
  PrivacyReport report =
      round_sum(p, side, AnalysisMode::purified(mu), "QIC", kEnvironmentReg);
  if (p.initial_amplitudes.size() != 0) {
    report.notes.push_back(
        "protocol starts with a shared state; the purifying register covers the inputs only");
  }
  return report;
}

OrderingCheck ordering_check(const Protocol& p, const JointDistribution& mu) {
  OrderingCheck check;
  for (Party side : {Party::P0, Party::P1}) {
    const double l = privacy_loss(p, mu, side).total;
    const double qic = quantum_ic(p, mu, side).total;
    std::vector<std::optional<int>> rounds;
    for (int m = 0; m <= p.round_count(); ++m) rounds.emplace_back(m);
    rounds.emplace_back(std::nullopt);
    double max_sic = 0;
    for (const auto& m : rounds) {
      const double sic = superposed_ic(p, mu, side, m).total;
      max_sic = std::max(max_sic, sic);
      OrderingCheck::Entry e;
      e.side = side;
      e.measurement_round = m;
      e.l = l;
      e.sic = sic;
      e.qic = qic;
      e.sic_le_qic = sic <= qic + 1e-9;
      e.ok = e.sic_le_qic && l <= qic + 2e-9;
      if (m && *m == 0) e.ok = e.ok && std::abs(sic - l) <= 1e-9;
      check.ok = check.ok && e.ok;
      check.entries.push_back(e);
    }
    // L <= SIC via the measure-immediately reduction.
    check.ok = check.ok && l <= max_sic + 1e-9;
    (side == Party::P0 ? check.max_sic_p0 : check.max_sic_p1) = max_sic;
  }
  return check;
}

}  // namespace qpriv
