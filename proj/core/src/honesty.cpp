// SPDX-License-Identifier: Apache-2.0
#include "qpriv/honesty.hpp"

#include <cmath>
#include <stdexcept>

namespace qpriv {

namespace {

double spectrum_deviation(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<double> sa = eigenvalues(a);
  std::vector<double> sb = eigenvalues(b);
  double dev = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    dev = std::max(dev, std::abs(sa[i] - sb[i]));
  }
  return dev;
}

}  // namespace

HonestyReport verify_honest_execution(const Protocol& prescribed, const Protocol& executed,
                                      double tol) {
  if (!(prescribed.layout == executed.layout) ||
      prescribed.alphabet != executed.alphabet ||
      prescribed.round_count() != executed.round_count()) {
    throw std::invalid_argument("protocols do not share register and round declarations");
  }
  for (int k = 1; k <= prescribed.round_count(); ++k) {
    if (prescribed.rounds[static_cast<std::size_t>(k - 1)].message !=
            executed.rounds[static_cast<std::size_t>(k - 1)].message ||
        prescribed.rounds[static_cast<std::size_t>(k - 1)].sender !=
            executed.rounds[static_cast<std::size_t>(k - 1)].sender) {
      throw std::invalid_argument("protocols do not share message declarations");
    }
  }

  HonestyReport report;
  for (const std::string& x : prescribed.alphabet[0]) {
    for (const std::string& y : prescribed.alphabet[1]) {
      report.diagnostics.clear();
      for (int k = 1; k <= prescribed.round_count(); ++k) {
        PureState want = run_to_round(prescribed, x, y, k);
        PureState have = run_to_round(executed, x, y, k);

        const Round& round = prescribed.rounds[static_cast<std::size_t>(k - 1)];
        const Party receiver = other(round.sender);
        auto owned = prescribed.ownership_after(k);

        // Receiver side including the message just received.
        std::vector<std::string> recv_block = owned[static_cast<int>(receiver)];
        DensityMatrix want_recv = partial_trace(want, recv_block);
        DensityMatrix have_recv = partial_trace(have, recv_block);
        RoundDiagnostic diag;
        diag.round = k;
        diag.receiver_block_deviation =
            (want_recv.matrix() - have_recv.matrix()).cwiseAbs().maxCoeff();
        diag.prescribed_receiver_purity = purity(want_recv);
        diag.observed_receiver_purity = purity(have_recv);

        std::vector<std::string> sender_block = owned[static_cast<int>(round.sender)];
        if (!sender_block.empty()) {
          diag.sender_spectrum_deviation = spectrum_deviation(
              partial_trace(want, sender_block), partial_trace(have, sender_block));
        }
        report.diagnostics.push_back(diag);

        if (diag.receiver_block_deviation > tol) {
          report.accepted = false;
          report.failing_round = k;
          report.failing_x = x;
          report.failing_y = y;
          report.reason = "round " + std::to_string(k) +
                          ": receiver-side state deviates by " +
                          std::to_string(diag.receiver_block_deviation) + " (purity " +
                          std::to_string(diag.observed_receiver_purity) + " vs prescribed " +
                          std::to_string(diag.prescribed_receiver_purity) + ")";
          return report;
        }
        if (diag.sender_spectrum_deviation > tol) {
          report.accepted = false;
          report.failing_round = k;
          report.failing_x = x;
          report.failing_y = y;
          report.reason = "round " + std::to_string(k) +
                          ": sender-side spectrum deviates by " +
                          std::to_string(diag.sender_spectrum_deviation);
          return report;
        }
      }
    }
  }
  return report;
}

namespace {

Protocol echo_base() {
  Protocol p;
  p.name = "epr-echo";
  p.alphabet = {{std::vector<std::string>{"-"}, std::vector<std::string>{"-"}}};
  p.layout = RegisterLayout({{"Q", 1}, {"R", 1}, {"W", 1}});
  p.initial_ownership = {{std::vector<std::string>{"Q", "R"}, std::vector<std::string>{"W"}}};

  Round r1;
  r1.sender = Party::P0;
  r1.steps = [](const std::string&) {
    PrepOp prep;
    prep.regs = {"Q", "R"};
    Vector v = Vector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    prep.amplitudes = std::move(v);
    return std::vector<StepOp>{std::move(prep)};
  };
  r1.message = {"R"};
  p.rounds.push_back(std::move(r1));

  Round r2;
  r2.sender = Party::P1;
  r2.message = {"R"};
  p.rounds.push_back(std::move(r2));

  p.decoder.party = Party::P0;
  return p;
}

}  // namespace

Protocol make_epr_echo() { return echo_base(); }

Protocol make_epr_echo_copy_attack() {
  Protocol p = echo_base();
  p.name = "epr-echo-copy";
  p.rounds[1].steps = [](const std::string&) {
    // CNOT with R as control, W as target.
    PermuteOp cnot;
    cnot.regs = {"R", "W"};
    cnot.map = {0, 1, 3, 2};
    return std::vector<StepOp>{std::move(cnot)};
  };
  return p;
}

Protocol make_epr_echo_local_unitary(const Eigen::Matrix2cd& u) {
  Protocol p = echo_base();
  p.name = "epr-echo-local";
  Matrix m = u;
  p.rounds[1].steps = [m](const std::string&) {
    return std::vector<StepOp>{GateOp{{"W"}, m, false}};
  };
  return p;
}

}  // namespace qpriv
