// SPDX-License-Identifier: Apache-2.0
#include "qpriv/pir_quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace qpriv {

namespace {

std::string q_reg(int k) { return "Q" + std::to_string(k); }
std::string ans_reg(int k) { return "Ans" + std::to_string(k); }

int index_width(int n) {
  int w = 1;
  while ((1 << w) < n) ++w;
  return w;
}

std::vector<std::string> index_alphabet(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

Protocol build_qpir(const ClassicalPirScheme& scheme) {
  const int ell = scheme.ell;
  const int mq = scheme.query_bits;
  const int ma = scheme.answer_bits;
  const int total = 2 * ell * mq + ell * ma;
  if (total > kMaxQubits) {
    throw std::invalid_argument("compiled protocol needs " + std::to_string(total) +
                                " qubits, above the " + std::to_string(kMaxQubits) + " cap");
  }

  Protocol p;
  p.name = "qpir-" + scheme.name;
  p.party_names = {"user", "server"};
  p.alphabet = {{index_alphabet(scheme.n), bitstrings(scheme.n)}};

  std::vector<RegisterLayout::Register> regs;
  regs.push_back({"Q", ell * mq});
  for (int k = 1; k <= ell; ++k) regs.push_back({q_reg(k), mq});
  for (int k = 1; k <= ell; ++k) regs.push_back({ans_reg(k), ma});
  p.layout = RegisterLayout(std::move(regs));

  std::vector<std::string> user_regs = p.layout.names();
  p.initial_ownership = {{user_regs, std::vector<std::string>{}}};
  p.input_width = {index_width(scheme.n), scheme.n};
  p.input_encoder = {
      [](const std::string& v) { return static_cast<std::uint64_t>(std::stoi(v) - 1); },
      bits_to_index};

  // Round 1: prepare the query superposition (copy plus routed copies,
  // answers zeroed) and send the first server slot.
  const ClassicalPirScheme sch = scheme;
  Round r1;
  r1.sender = Party::P0;
  r1.steps = [sch, ell, mq, ma](const std::string& input) {
    const int i = std::stoi(input);
    PrepOp prep;
    prep.regs = {"Q"};
    for (int k = 1; k <= ell; ++k) prep.regs.push_back(q_reg(k));
    for (int k = 1; k <= ell; ++k) prep.regs.push_back(ans_reg(k));
    const int width = 2 * ell * mq + ell * ma;
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << width));
    const double a = 1.0 / std::sqrt(static_cast<double>(sch.randomness_count));
    for (std::uint64_t r = 0; r < sch.randomness_count; ++r) {
      std::uint64_t tuple = 0;
      for (int k = 1; k <= ell; ++k) {
        tuple = (tuple << mq) | sch.query(r, i, k);
      }
      std::uint64_t idx = tuple;             // register Q
      idx = (idx << (ell * mq)) | tuple;     // routed copies Q_1..Q_ell
      idx <<= ell * ma;                      // zeroed answers
      amps[static_cast<Eigen::Index>(idx)] += a;
    }
    prep.amplitudes = std::move(amps);
    return std::vector<StepOp>{std::move(prep)};
  };
  r1.message = {q_reg(1), ans_reg(1)};
  p.rounds.push_back(std::move(r1));

  for (int k = 1; k <= ell; ++k) {
    Round reply;
    reply.sender = Party::P1;
    reply.steps = [sch, k, mq, ma](const std::string& input) {
      const std::uint64_t x = bits_to_index(input);
      PermuteOp op;
      op.regs = {q_reg(k), ans_reg(k)};
      const std::uint64_t d = std::uint64_t{1} << (mq + ma);
      op.map.resize(d);
      for (std::uint64_t idx = 0; idx < d; ++idx) {
        const std::uint64_t q = idx >> ma;
        op.map[idx] = idx ^ sch.answer(k, q, x);
      }
      return std::vector<StepOp>{std::move(op)};
    };
    reply.message = {q_reg(k), ans_reg(k)};
    p.rounds.push_back(std::move(reply));

    if (k < ell) {
      Round next;
      next.sender = Party::P0;
      next.message = {q_reg(k + 1), ans_reg(k + 1)};
      p.rounds.push_back(std::move(next));
    }
  }

  // Measure everything; a branch outcome is a classical run (r, answers).
  p.decoder.party = Party::P0;
  std::vector<std::string> measure = p.layout.names();
  p.decoder.measure = measure;
  FieldIndexer tuple_field(p.layout, {"Q"});
  std::vector<FieldIndexer> ans_fields;
  for (int k = 1; k <= ell; ++k) ans_fields.emplace_back(p.layout, std::vector<std::string>{ans_reg(k)});
  p.decoder.interpret = [sch, ell, mq, tuple_field, ans_fields](const std::string& input,
                                                                std::uint64_t outcome) {
    const int i = std::stoi(input);
    const std::uint64_t tuple = tuple_field.extract(outcome);
    std::uint64_t r = 0;
    bool found = false;
    for (std::uint64_t cand = 0; cand < sch.randomness_count && !found; ++cand) {
      std::uint64_t t = 0;
      for (int k = 1; k <= ell; ++k) t = (t << mq) | sch.query(cand, i, k);
      if (t == tuple) {
        r = cand;
        found = true;
      }
    }
    if (!found) throw std::logic_error("measured query tuple matches no randomness value");
    std::vector<std::uint64_t> answers(static_cast<std::size_t>(ell));
    for (int k = 0; k < ell; ++k) {
      answers[static_cast<std::size_t>(k)] = ans_fields[static_cast<std::size_t>(k)].extract(outcome);
    }
    return sch.reconstruct(i, r, answers);
  };
  return p;
}

double server_view_independence(const Protocol& qpir, const std::string& x) {
  const std::vector<std::string>& indices = qpir.alphabet[0];
  double max_distance = 0;
  for (int k = 1; k <= qpir.round_count(); ++k) {
    const Round& round = qpir.rounds[static_cast<std::size_t>(k - 1)];
    if (round.sender != Party::P0 || round.message.empty()) continue;
    std::vector<std::string> server_regs = qpir.ownership_after(k)[static_cast<int>(Party::P1)];
    std::vector<DensityMatrix> views;
    views.reserve(indices.size());
    for (const std::string& i : indices) {
      views.push_back(partial_trace(run_to_round(qpir, i, x, k), server_regs));
    }
    for (std::size_t a = 0; a < views.size(); ++a) {
      for (std::size_t b = a + 1; b < views.size(); ++b) {
        max_distance = std::max(max_distance, trace_distance(views[a], views[b]));
      }
    }
  }
  return max_distance;
}

QpirReport qpir_privacy_report(const ClassicalPirScheme& scheme, bool include_sic_qic) {
  Protocol p = build_qpir(scheme);
  JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);

  QpirReport report;
  report.l_user = privacy_loss(p, mu, Party::P0);
  report.l_server = privacy_loss(p, mu, Party::P1);
  report.communication_qubits = p.communication_qubits();
  report.user_private = std::abs(report.l_user.total) <= 1e-10;
  report.server_within_comm =
      report.l_server.total <= static_cast<double>(report.communication_qubits) + 1e-9;

  if (include_sic_qic) {
    const int purified_width =
        p.layout.total_width() + 2 * (p.input_width[0] + p.input_width[1]);
    if (purified_width <= kMaxQubits) {
      report.ordering = ordering_check(p, mu);
    } else {
      report.notes.push_back("SIC/QIC skipped: purified analysis needs " +
                             std::to_string(purified_width) + " qubits");
    }
  }
  return report;
}

}  // namespace qpriv
