// SPDX-License-Identifier: Apache-2.0
#include "qpriv/pir_entangled.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qpriv {

std::string slice(const std::string& z, const std::vector<int>& path) {
  if (!std::has_single_bit(z.size())) {
    throw std::invalid_argument("slice needs a power-of-two length, got " +
                                std::to_string(z.size()));
  }
  std::string cur = z;
  for (int bit : path) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("path bits must be 0 or 1");
    if (cur.size() == 1) throw std::invalid_argument("slice path longer than log2 |z|");
    const std::size_t half = cur.size() / 2;
    cur = bit == 0 ? cur.substr(0, half) : cur.substr(half);
  }
  return cur;
}

std::uint64_t slice_bits(std::uint64_t value, int width, int path_bit) {
  const int half = width / 2;
  return path_bit == 0 ? value >> half : value & ((std::uint64_t{1} << half) - 1);
}

namespace {

std::string r_reg(int k) { return "R" + std::to_string(k); }
std::string rp_reg(int k) { return "R" + std::to_string(k) + "p"; }

int level_width(int ell, int k) { return 1 << (ell - k); }

void check_ell(int ell) {
  if (ell < 1 || ell > 3) throw std::invalid_argument("ell out of range [1, 3]");
}

// Exact trace distance for small matrices; for larger ones a Frobenius-based
// upper bound first, falling back to the exact spectrum only when the bound
// cannot certify the target tolerance.
double trace_distance_certified(const DensityMatrix& a, const DensityMatrix& b, double tol) {
  const auto d = static_cast<double>(a.dim());
  if (d <= 64) return trace_distance(a, b);
  const double frob = (a.matrix() - b.matrix()).norm();
  const double bound = 0.5 * std::sqrt(d) * frob;
  if (bound <= tol) return bound;
  return trace_distance(a, b);
}

// k-th index bit (1-based) of the 1-based index i, per i = 1 + sum i_k 2^(l-k).
int index_bit(int i, int ell, int k) { return ((i - 1) >> (ell - k)) & 1; }

std::vector<std::string> index_alphabet(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

// Parity injection |z>|a>|b> -> |z>|a + z.w0>|b + z.w1> on (R_1, Q_0, Q_1),
// where (w0, w1) are the database halves.
PermuteOp level_one_injection(int ell, std::uint64_t x) {
  const int zw = level_width(ell, 1);
  const std::uint64_t w0 = slice_bits(x, 1 << ell, 0);
  const std::uint64_t w1 = slice_bits(x, 1 << ell, 1);
  PermuteOp op;
  op.regs = {r_reg(1), "Q0", "Q1"};
  const std::uint64_t d = std::uint64_t{1} << (zw + 2);
  op.map.resize(d);
  for (std::uint64_t idx = 0; idx < d; ++idx) {
    const std::uint64_t z = idx >> 2;
    const std::uint64_t flips = (static_cast<std::uint64_t>(dot2(z, w0)) << 1) |
                                static_cast<std::uint64_t>(dot2(z, w1));
    op.map[idx] = idx ^ flips;
  }
  return op;
}

// |y>|z>|a>|b> -> |y>|z>|a + z.y[0]>|b + z.y[1]> on (R_{k-1}, R_k, Q_0, Q_1).
PermuteOp level_k_injection(int ell, int k) {
  const int yw = level_width(ell, k - 1);
  const int zw = level_width(ell, k);
  PermuteOp op;
  op.regs = {r_reg(k - 1), r_reg(k), "Q0", "Q1"};
  const std::uint64_t d = std::uint64_t{1} << (yw + zw + 2);
  op.map.resize(d);
  for (std::uint64_t idx = 0; idx < d; ++idx) {
    const std::uint64_t y = idx >> (zw + 2);
    const std::uint64_t z = (idx >> 2) & ((std::uint64_t{1} << zw) - 1);
    const std::uint64_t y0 = slice_bits(y, yw, 0);
    const std::uint64_t y1 = slice_bits(y, yw, 1);
    const std::uint64_t flips = (static_cast<std::uint64_t>(dot2(z, y0)) << 1) |
                                static_cast<std::uint64_t>(dot2(z, y1));
    op.map[idx] = idx ^ flips;
  }
  return op;
}

StepOp injection(int ell, int k, std::uint64_t x) {
  if (k == 1) return level_one_injection(ell, x);
  return level_k_injection(ell, k);
}

StepOp pauli_z_on(const std::string& reg) {
  PermuteOp op;
  op.regs = {reg};
  op.map = {0, 1};
  op.phase = {Complex(1, 0), Complex(-1, 0)};
  return op;
}

RegisterLayout ppir_layout(int ell) {
  std::vector<RegisterLayout::Register> regs;
  for (int k = 1; k <= ell; ++k) {
    regs.push_back({r_reg(k), level_width(ell, k)});
    regs.push_back({rp_reg(k), level_width(ell, k)});
  }
  regs.push_back({"Q0", 1});
  regs.push_back({"Q1", 1});
  return RegisterLayout(std::move(regs));
}

Vector ppir_initial(int ell, const RegisterLayout& layout) {
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  std::vector<FieldIndexer> r_fields, rp_fields;
  for (int k = 1; k <= ell; ++k) {
    r_fields.emplace_back(layout, std::vector<std::string>{r_reg(k)});
    rp_fields.emplace_back(layout, std::vector<std::string>{rp_reg(k)});
  }
  const int pairs_width = (1 << ell) - 1;  // sum of level widths
  const double a = std::pow(2.0, -0.5 * pairs_width);
  const std::uint64_t combos = std::uint64_t{1} << pairs_width;
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t idx = 0;
    int consumed = 0;
    for (int k = 1; k <= ell; ++k) {
      const int w = level_width(ell, k);
      const std::uint64_t z = (c >> consumed) & ((std::uint64_t{1} << w) - 1);
      consumed += w;
      idx = r_fields[static_cast<std::size_t>(k - 1)].deposit(z, idx);
      idx = rp_fields[static_cast<std::size_t>(k - 1)].deposit(z, idx);
    }
    amp[static_cast<Eigen::Index>(idx)] = a;
  }
  return amp;
}

}  // namespace

Protocol build_ppir(int ell) {
  check_ell(ell);
  const int n = 1 << ell;

  Protocol p;
  p.name = "ppir-ell" + std::to_string(ell);
  p.party_names = {"user", "server"};
  p.alphabet = {{index_alphabet(n), bitstrings(n)}};
  p.layout = ppir_layout(ell);
  p.initial_amplitudes = ppir_initial(ell, p.layout);

  std::vector<std::string> server_regs = {"Q0", "Q1"};
  std::vector<std::string> user_regs;
  for (int k = 1; k <= ell; ++k) {
    server_regs.push_back(r_reg(k));
    user_regs.push_back(rp_reg(k));
  }
  p.initial_ownership = {{user_regs, server_regs}};
  p.input_width = {ell, n};
  p.input_encoder = {
      [](const std::string& v) { return static_cast<std::uint64_t>(std::stoi(v) - 1); },
      bits_to_index};

  // The server speaks first, so round 1 is a declared-empty user round.
  p.rounds.push_back(Round{Party::P0, nullptr, {}});

  for (int k = 1; k <= ell; ++k) {
    Round query;
    query.sender = Party::P1;
    query.steps = [ell, k](const std::string& input) {
      const std::uint64_t x = bits_to_index(input);
      std::vector<StepOp> steps;
      if (k >= 2) {
        // Close out the previous level before opening this one.
        steps.push_back(injection(ell, k - 1, x));
        steps.push_back(hadamard_layer(r_reg(k - 1)));
      }
      steps.push_back(injection(ell, k, x));
      return steps;
    };
    query.message = {"Q0", "Q1"};
    p.rounds.push_back(std::move(query));

    Round reply;
    reply.sender = Party::P0;
    reply.steps = [ell, k](const std::string& input) {
      const int i = std::stoi(input);
      std::vector<StepOp> steps;
      if (k >= 2) steps.push_back(hadamard_layer(rp_reg(k - 1)));
      steps.push_back(pauli_z_on(index_bit(i, ell, k) == 0 ? "Q0" : "Q1"));
      return steps;
    };
    reply.message = {"Q0", "Q1"};
    p.rounds.push_back(std::move(reply));
  }

  Round last;
  last.sender = Party::P1;
  last.steps = [ell](const std::string& input) {
    const std::uint64_t x = bits_to_index(input);
    return std::vector<StepOp>{injection(ell, ell, x), hadamard_layer(r_reg(ell))};
  };
  last.message = {r_reg(ell)};
  p.rounds.push_back(std::move(last));

  p.decoder.party = Party::P0;
  p.decoder.steps = [ell](const std::string&) {
    return std::vector<StepOp>{hadamard_layer(rp_reg(ell))};
  };
  for (int k = 1; k <= ell; ++k) p.decoder.measure.push_back(rp_reg(k));
  p.decoder.measure.push_back(r_reg(ell));

  // The outcome packs the measured registers in list order, R'_1..R'_ell
  // then R_ell, most significant first.
  p.decoder.interpret = [ell](const std::string& input, std::uint64_t outcome) {
    const int i = std::stoi(input);
    int shift = 1 << ell;  // sum of share widths plus the final qubit
    std::vector<std::string> b;
    for (int k = 1; k <= ell; ++k) {
      const int w = level_width(ell, k);
      shift -= w;
      b.push_back(index_to_bits((outcome >> shift) & ((std::uint64_t{1} << w) - 1), w));
    }
    return ppir_decode(static_cast<int>(outcome & 1), b, i);
  };
  return p;
}

int ppir_decode(int a_ell, const std::vector<std::string>& b, int i) {
  const int ell = static_cast<int>(b.size());
  if (ell < 1) throw std::invalid_argument("empty share list");
  for (int k = 1; k <= ell; ++k) {
    if (b[static_cast<std::size_t>(k - 1)].size() != std::size_t{1} << (ell - k)) {
      throw std::invalid_argument("share " + std::to_string(k) + " has the wrong length");
    }
  }
  int bit = a_ell & 1;
  for (int k = 1; k <= ell; ++k) {
    std::vector<int> path;
    for (int j = k + 1; j <= ell; ++j) path.push_back(index_bit(i, ell, j));
    bit ^= slice(b[static_cast<std::size_t>(k - 1)], path)[0] - '0';
  }
  return bit;
}

double lemma_state_check(int ell, const std::string& x, int i, int k) {
  check_ell(ell);
  if (k < 1 || k > ell) throw std::invalid_argument("iteration out of range");
  RegisterLayout layout = ppir_layout(ell);
  PureState state(layout, ppir_initial(ell, layout));
  const std::uint64_t xv = bits_to_index(x);

  // Replay the loop in its written order, pausing after iteration k.
  for (int j = 1; j <= k; ++j) {
    state = apply_op(state, injection(ell, j, xv));
    state = apply_op(state, pauli_z_on(index_bit(i, ell, j) == 0 ? "Q0" : "Q1"));
    state = apply_op(state, injection(ell, j, xv));
    state = apply_op(state, hadamard_layer(r_reg(j)));
    state = apply_op(state, hadamard_layer(rp_reg(j)));
  }

  // Closed-form level-k state: shared slices on the first k levels, untouched
  // pairs beyond, query qubits back to |00>.
  std::vector<FieldIndexer> r_fields, rp_fields;
  for (int j = 1; j <= ell; ++j) {
    r_fields.emplace_back(layout, std::vector<std::string>{r_reg(j)});
    rp_fields.emplace_back(layout, std::vector<std::string>{rp_reg(j)});
  }
  Vector expected = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  int free_width = 0;
  for (int j = 1; j <= ell; ++j) free_width += level_width(ell, j);  // y^j for j<=k, pair value beyond
  const std::uint64_t combos = std::uint64_t{1} << free_width;
  const double a = std::pow(2.0, -0.5 * free_width);
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t idx = 0;
    int consumed = 0;
    std::uint64_t prev = xv;
    int prev_width = 1 << ell;
    for (int j = 1; j <= ell; ++j) {
      const int w = level_width(ell, j);
      const std::uint64_t y = (c >> consumed) & ((std::uint64_t{1} << w) - 1);
      consumed += w;
      idx = r_fields[static_cast<std::size_t>(j - 1)].deposit(y, idx);
      if (j <= k) {
        const std::uint64_t share = slice_bits(prev, prev_width, index_bit(i, ell, j)) ^ y;
        idx = rp_fields[static_cast<std::size_t>(j - 1)].deposit(share, idx);
        prev = y;
        prev_width = w;
      } else {
        idx = rp_fields[static_cast<std::size_t>(j - 1)].deposit(y, idx);
      }
    }
    expected[static_cast<Eigen::Index>(idx)] = a;
  }
  return fidelity(state, PureState(layout, std::move(expected)));
}

PpirPrivacyCheck ppir_user_privacy(int ell, const std::string& x) {
  check_ell(ell);
  Protocol p = build_ppir(ell);
  const int n = 1 << ell;
  PpirPrivacyCheck check;

  std::vector<std::string> server_regs;
  for (int k = 1; k <= ell; ++k) server_regs.push_back(r_reg(k));
  server_regs.push_back("Q0");
  server_regs.push_back("Q1");

  for (int k = 1; k <= ell; ++k) {
    const int round = 2 * k + 1;  // the user's reply of iteration k
    std::vector<DensityMatrix> views;
    for (int i = 1; i <= n; ++i) {
      views.push_back(partial_trace(run_to_round(p, std::to_string(i), x, round), server_regs));
    }
    for (std::size_t a = 0; a < views.size(); ++a) {
      for (std::size_t b = a + 1; b < views.size(); ++b) {
        check.max_trace_distance = std::max(
            check.max_trace_distance, trace_distance_certified(views[a], views[b], 1e-11));
      }
    }

    // The proof's dephased form: a uniform classical mixture over the level
    // histories with the query qubits carrying the injected parities.
    RegisterLayout server_layout = p.layout.sub_layout(server_regs);
    std::vector<FieldIndexer> fields;
    for (int j = 1; j <= ell; ++j) {
      fields.emplace_back(server_layout, std::vector<std::string>{r_reg(j)});
    }
    FieldIndexer fq0(server_layout, {"Q0"});
    FieldIndexer fq1(server_layout, {"Q1"});
    Matrix mixture = Matrix::Zero(static_cast<Eigen::Index>(server_layout.dim()),
                                  static_cast<Eigen::Index>(server_layout.dim()));
    int hist_width = 0;
    for (int j = 1; j <= ell; ++j) hist_width += level_width(ell, j);
    const std::uint64_t combos = std::uint64_t{1} << hist_width;
    const double weight = 1.0 / static_cast<double>(combos);
    const std::uint64_t xv = bits_to_index(x);
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t idx = 0;
      int consumed = 0;
      std::uint64_t prev = xv;
      int prev_width = 1 << ell;
      std::uint64_t q0 = 0, q1 = 0;
      for (int j = 1; j <= ell; ++j) {
        const int w = level_width(ell, j);
        const std::uint64_t v = (c >> consumed) & ((std::uint64_t{1} << w) - 1);
        consumed += w;
        idx = fields[static_cast<std::size_t>(j - 1)].deposit(v, idx);
        if (j == k) {
          q0 = static_cast<std::uint64_t>(dot2(v, slice_bits(prev, prev_width, 0)));
          q1 = static_cast<std::uint64_t>(dot2(v, slice_bits(prev, prev_width, 1)));
        }
        if (j <= k) {
          prev = v;
          prev_width = w;
        }
      }
      idx = fq0.deposit(q0, idx);
      idx = fq1.deposit(q1, idx);
      mixture(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) += weight;
    }
    DensityMatrix expected(server_layout, std::move(mixture));
    for (const DensityMatrix& view : views) {
      check.max_mixture_deviation =
          std::max(check.max_mixture_deviation,
                   (view.matrix() - expected.matrix()).cwiseAbs().maxCoeff());
    }
  }
  return check;
}

PpirReport ppir_privacy_report(int ell, bool include_sic_qic) {
  check_ell(ell);
  if (ell > 2) {
    throw std::invalid_argument("full-ensemble analysis is limited to ell <= 2");
  }
  Protocol p = build_ppir(ell);
  JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);

  PpirReport report;
  report.l_user = privacy_loss(p, mu, Party::P0);
  report.l_server = privacy_loss(p, mu, Party::P1);
  report.communication_qubits = p.communication_qubits();
  report.user_private = std::abs(report.l_user.total) <= 1e-10;
  report.server_within_bound = report.l_server.total <= 2.0 * ell + 1.0 + 1e-9;
  report.notes.push_back(
      "prior entanglement consumed; QIC evaluated with the environment purifying the inputs only");

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
