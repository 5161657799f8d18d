// SPDX-License-Identifier: Apache-2.0
#include "qpriv/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "qpriv/classical_protocol.hpp"
#include "qpriv/honesty.hpp"
#include "qpriv/inner_product.hpp"
#include "qpriv/pir_classical.hpp"
#include "qpriv/pir_entangled.hpp"
#include "qpriv/pir_quantum.hpp"
#include "qpriv/privacy.hpp"
#include "qpriv/protocol.hpp"

namespace qpriv {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::ostringstream detail;
  int checks = 0;

  void require(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void require_close(double got, double want, double tol, const std::string& what) {
    require(std::abs(got - want) <= tol,
            what + " = " + std::to_string(got) + ", expected " + std::to_string(want) +
                " within " + std::to_string(tol));
  }
  void require_le(double got, double bound, const std::string& what) {
    require(got <= bound, what + " = " + std::to_string(got) + " exceeds " +
                              std::to_string(bound));
  }
  std::string summary(const std::string& on_pass) const {
    return ok ? on_pass : detail.str();
  }
};

CriterionResult run_one(const std::string& id, const std::string& name,
                        const std::string& section,
                        const std::function<void(Checker&)>& body) {
  CriterionResult result{id, name, section, false, "", 0};
  const auto start = Clock::now();
  Checker c;
  try {
    body(c);
    result.pass = c.ok;
    result.detail = c.summary(std::to_string(c.checks) + " checks");
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

// --- C1: exhaustive correctness of the inner-product protocol ---------------

void c1_ip_correctness(Checker& c) {
  const auto start = Clock::now();
  for (int n = 1; n <= 4; ++n) {
    Protocol p = build_ip_protocol(n);
    for (const std::string& x : p.alphabet[0]) {
      for (const std::string& y : p.alphabet[1]) {
        RunResult run = run_honest(p, x, y);
        const int expected = dot2(bits_to_index(x), bits_to_index(y));
        c.require(run.output == expected && run.output_probability >= 1.0 - 1e-9,
                  "n=" + std::to_string(n) + " x=" + x + " y=" + y + " decoded " +
                      std::to_string(run.output) + " (p=" +
                      std::to_string(run.output_probability) + ")");
        if (!c.ok) return;
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  c.require_le(secs, 10.0, "exhaustive run seconds");
}

// --- C2: first-message matrix against its two independent constructions -----

void c2_first_message(Checker& c) {
  for (int n = 1; n <= 6; ++n) {
    DensityMatrix m1 = analytic_m1(n);  // throws if the table and ensemble disagree > 1e-10
    c.require_close(von_neumann_entropy(m1), gram_spectrum_entropy(n), 1e-9,
                    "entropy(M1) vs spectrum oracle at n=" + std::to_string(n));
  }
}

// --- C3: privacy-loss values against closed forms ----------------------------

void c3_ip_privacy_values(Checker& c) {
  for (int n = 1; n <= 4; ++n) {
    Protocol p = build_ip_protocol(n);
    JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);
    const double la = privacy_loss(p, mu, Party::P0).total;
    const double lb = privacy_loss(p, mu, Party::P1).total;
    c.require_close(la, gram_spectrum_entropy(n), 1e-9, "L_A at n=" + std::to_string(n));
    c.require_close(lb, 1.0 - std::pow(2.0, -n), 1e-9, "L_B at n=" + std::to_string(n));
    if (n <= 3) {
      const double qa = quantum_ic(p, mu, Party::P0).total;
      c.require_close(qa, la, 1e-9, "QIC_A vs L_A at n=" + std::to_string(n));
    }
  }
}

// --- C4: L <= SIC <= QIC on the three protocol families ----------------------

void c4_ordering(Checker& c) {
  auto run_check = [&](const Protocol& p, const std::string& label) {
    JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);
    OrderingCheck check = ordering_check(p, mu);
    for (const auto& e : check.entries) {
      if (!e.ok) {
        std::string round = e.measurement_round ? std::to_string(*e.measurement_round) : "never";
        c.require(false, label + " side " + std::to_string(static_cast<int>(e.side)) +
                             " m=" + round + ": L=" + std::to_string(e.l) + " SIC=" +
                             std::to_string(e.sic) + " QIC=" + std::to_string(e.qic));
      }
    }
    c.require(check.ok, label + " ordering");
  };
  for (int n = 1; n <= 3; ++n) run_check(build_ip_protocol(n), "ip n=" + std::to_string(n));
  run_check(build_qpir(two_server_xor_scheme(2)), "qpir n=2");
  run_check(build_ppir(1), "ppir ell=1");
}

// --- C5: the tradeoff composition -------------------------------------------

void c5_tradeoff(Checker& c) {
  const int n = 4;
  for (int t = 0; t <= n; ++t) {
    Protocol p = build_ip_tradeoff(n, t);
    for (const std::string& x : p.alphabet[0]) {
      for (const std::string& y : p.alphabet[1]) {
        RunResult run = run_honest(p, x, y);
        const int expected = dot2(bits_to_index(x), bits_to_index(y));
        c.require(run.output == expected && run.output_probability >= 1.0 - 1e-9,
                  "t=" + std::to_string(t) + " x=" + x + " y=" + y);
        if (!c.ok) return;
      }
    }
    JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);
    const double la = privacy_loss(p, mu, Party::P0).total;
    const double lb = privacy_loss(p, mu, Party::P1).total;
    c.require_le(la, t / 2.0 + 1.5 + 1e-9, "L_A at t=" + std::to_string(t));
    c.require_le(lb, (n - t) / 2.0 + 2.5 + 1e-9, "L_B at t=" + std::to_string(t));
  }
}

// --- C6: classical schemes -----------------------------------------------

void c6_classical_pir(Checker& c) {
  for (int n = 1; n <= 8; ++n) {
    SchemeVerdict v = verify_scheme(two_server_xor_scheme(n));
    c.require(v.correct, "two-server n=" + std::to_string(n) + " correctness");
    c.require(v.max_tv_distance == 0.0,
              "two-server n=" + std::to_string(n) + " query TV distance " +
                  std::to_string(v.max_tv_distance));
  }
  for (int n : {4, 9, 16}) {
    SchemeVerdict v = verify_scheme(cube_scheme(n, 2));
    c.require(v.correct, "cube n=" + std::to_string(n) + " correctness");
    c.require(v.max_tv_distance == 0.0, "cube n=" + std::to_string(n) + " query TV distance");
  }
}

// --- C7: the compiled one-server protocol ------------------------------------

void c7_qpir(Checker& c) {
  ClassicalPirScheme scheme = two_server_xor_scheme(4);
  Protocol p = build_qpir(scheme);

  for (const std::string& x : p.alphabet[1]) {
    for (const std::string& i : p.alphabet[0]) {
      RunResult run = run_honest(p, i, x);
      const int expected = database_bit(bits_to_index(x), scheme.n, std::stoi(i));
      bool every_branch = !run.branches.empty();
      for (const Branch& b : run.branches) every_branch = every_branch && b.value == expected;
      c.require(every_branch && run.output_probability >= 1.0 - 1e-9,
                "decode x=" + x + " i=" + i);
      if (!c.ok) return;
    }
  }

  double max_view = 0;
  for (const std::string& x : p.alphabet[1]) {
    max_view = std::max(max_view, server_view_independence(p, x));
  }
  c.require_le(max_view, 1e-10, "server-view trace distance");

  QpirReport report = qpir_privacy_report(scheme, false);
  c.require_le(std::abs(report.l_user.total), 1e-10, "|L_U|");
  c.require_le(report.l_server.total,
               2.0 * scheme.ell * (scheme.query_bits + scheme.answer_bits) + 1e-9, "L_S");
  c.require(report.communication_qubits ==
                2 * scheme.ell * (scheme.query_bits + scheme.answer_bits),
            "communication " + std::to_string(report.communication_qubits));
}

// --- C8: retrieval with prior entanglement -----------------------------------

void c8_ppir(Checker& c) {
  std::mt19937 rng(20240917);
  for (int ell = 1; ell <= 3; ++ell) {
    Protocol p = build_ppir(ell);
    c.require(p.communication_qubits() == 4 * ell + 1,
              "communication at ell=" + std::to_string(ell) + " is " +
                  std::to_string(p.communication_qubits()));

    std::vector<std::pair<std::string, std::string>> cases;  // (i, x)
    if (ell <= 2) {
      for (const std::string& i : p.alphabet[0]) {
        for (const std::string& x : p.alphabet[1]) cases.emplace_back(i, x);
      }
    } else {
      std::uniform_int_distribution<int> pick_i(1, 1 << ell);
      std::uniform_int_distribution<std::uint64_t> pick_x(0, (std::uint64_t{1} << (1 << ell)) - 1);
      for (int t = 0; t < 64; ++t) {
        cases.emplace_back(std::to_string(pick_i(rng)), index_to_bits(pick_x(rng), 1 << ell));
      }
    }
    for (const auto& [i, x] : cases) {
      RunResult run = run_honest(p, i, x);
      const int expected = database_bit(bits_to_index(x), 1 << ell, std::stoi(i));
      bool every_branch = !run.branches.empty();
      for (const Branch& b : run.branches) every_branch = every_branch && b.value == expected;
      c.require(every_branch && run.output_probability >= 1.0 - 1e-9,
                "ell=" + std::to_string(ell) + " x=" + x + " i=" + i);
      for (int k = 1; k <= ell; ++k) {
        c.require(lemma_state_check(ell, x, std::stoi(i), k) >= 1.0 - 1e-10,
                  "level state ell=" + std::to_string(ell) + " k=" + std::to_string(k));
      }
      if (!c.ok) return;
    }

    std::vector<std::string> priv_dbs;
    if (ell <= 2) {
      priv_dbs = p.alphabet[1];
    } else {
      std::uniform_int_distribution<std::uint64_t> pick_x(0, (std::uint64_t{1} << (1 << ell)) - 1);
      for (int t = 0; t < 4; ++t) priv_dbs.push_back(index_to_bits(pick_x(rng), 1 << ell));
    }
    double max_dist = 0, max_mix = 0;
    for (const std::string& x : priv_dbs) {
      PpirPrivacyCheck pc = ppir_user_privacy(ell, x);
      max_dist = std::max(max_dist, pc.max_trace_distance);
      max_mix = std::max(max_mix, pc.max_mixture_deviation);
    }
    c.require_le(max_dist, 1e-10, "server-state distance at ell=" + std::to_string(ell));
    c.require_le(max_mix, 1e-9, "dephased-form deviation at ell=" + std::to_string(ell));

    if (ell <= 2) {
      PpirReport report = ppir_privacy_report(ell, false);
      c.require_le(std::abs(report.l_user.total), 1e-10,
                   "|L_U| at ell=" + std::to_string(ell));
      c.require_le(report.l_server.total, 2.0 * ell + 1.0 + 1e-9,
                   "L_S at ell=" + std::to_string(ell));
    }
  }
}

// --- C9: the honesty checker -------------------------------------------------

void c9_honesty(Checker& c) {
  Protocol ip = build_ip_protocol(2);
  c.require(verify_honest_execution(ip, ip).accepted, "honest inner-product accepted");

  Protocol echo = make_epr_echo();
  c.require(verify_honest_execution(echo, echo).accepted, "honest echo accepted");

  HonestyReport copy = verify_honest_execution(echo, make_epr_echo_copy_attack());
  c.require(!copy.accepted && copy.failing_round == 2, "copy attack rejected at round 2");
  double observed = 0, prescribed = 0;
  for (const RoundDiagnostic& d : copy.diagnostics) {
    if (d.round == copy.failing_round) {
      observed = d.observed_receiver_purity;
      prescribed = d.prescribed_receiver_purity;
    }
  }
  c.require_close(observed, 0.5, 1e-9, "copied-state purity");
  c.require_close(prescribed, 1.0, 1e-9, "prescribed purity");

  Eigen::Matrix2cd u;
  u << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.8), Complex(0.6, 0.0);
  c.require(verify_honest_execution(echo, make_epr_echo_local_unitary(u)).accepted,
            "local workspace unitary accepted");
}

// --- C10: classical chain rule ------------------------------------------------

ClassicalProtocol random_classical_protocol(std::mt19937& rng) {
  std::uniform_int_distribution<int> bits(1, 3);
  std::uniform_int_distribution<int> nrounds(1, 3);
  std::uniform_int_distribution<int> msg_bits(1, 2);
  std::uniform_int_distribution<int> coin(0, 1);

  ClassicalProtocol p;
  p.name = "random";
  p.alphabet_x = bitstrings(bits(rng));
  p.alphabet_y = bitstrings(bits(rng));
  const int rounds = nrounds(rng);
  for (int k = 0; k < rounds; ++k) {
    const int mb = msg_bits(rng);
    // Random lookup table keyed by (input, transcript-so-far).
    auto table = std::make_shared<std::map<std::string, std::string>>();
    auto gen = std::make_shared<std::mt19937>(rng());
    ClassicalProtocol::Round round;
    round.sender = k % 2 == 0 ? Party::P0 : Party::P1;
    round.message = [table, gen, mb](const std::string& own, const std::string&,
                                     const std::vector<std::string>& transcript) {
      std::string key = own;
      for (const std::string& m : transcript) key += "|" + m;
      auto it = table->find(key);
      if (it != table->end()) return it->second;
      std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << mb) - 1);
      std::string msg = index_to_bits(pick(*gen), mb);
      (*table)[key] = msg;
      return msg;
    };
    p.rounds.push_back(std::move(round));
  }
  (void)coin;
  return p;
}

void c10_chain_rule(Checker& c) {
  std::mt19937 rng(7250823);
  for (int t = 0; t < 100; ++t) {
    ClassicalProtocol p = random_classical_protocol(rng);
    JointDistribution mu = JointDistribution::uniform(p.alphabet_x, p.alphabet_y);
    try {
      classical_transcript_privacy(p, mu);  // throws on a chain-rule mismatch
    } catch (const std::exception& e) {
      c.require(false, "random protocol " + std::to_string(t) + ": " + e.what());
      return;
    }
  }
  c.require(true, "");

  const int domain = 16;
  ClassicalProtocol honest = make_id_minimum(domain);
  ClassicalProtocol random_alice = make_id_minimum_random_alice(domain);
  JointDistribution mu =
      JointDistribution::uniform(honest.alphabet_x, honest.alphabet_y);
  classical_transcript_privacy(honest, mu);        // chain-rule equality
  classical_transcript_privacy(random_alice, mu);  //
  // The ascending-halt game leaks nothing beyond its output; the random
  // substitute input names the opponent's value outright, so the leakage
  // beyond the output strictly increases from zero.
  ExcessLeakage he = excess_transcript_leakage(honest, mu, id_minimum_output);
  ExcessLeakage re = excess_transcript_leakage(random_alice, mu, id_minimum_output);
  c.require_le(std::abs(he.beyond_output_y), 1e-9, "honest leakage beyond the output");
  c.require(re.beyond_output_y > he.beyond_output_y + 1e-6,
            "random-input excess " + std::to_string(re.beyond_output_y) +
                " does not exceed honest " + std::to_string(he.beyond_output_y));
}

}  // namespace

std::vector<std::string> acceptance_sections() {
  return {"ip", "ordering", "pir", "pir-entangled", "honesty", "classical"};
}

std::vector<CriterionResult> run_acceptance(const std::string& selector) {
  const auto start = Clock::now();
  std::vector<CriterionResult> results;
  auto want = [&selector](const std::string& section) {
    return selector == "all" || selector == section;
  };

  if (want("ip")) {
    results.push_back(run_one("C1", "inner-product correctness, n in 1..4 exhaustive", "ip",
                              c1_ip_correctness));
    results.push_back(run_one(
        "C2", "first-message matrix: table vs ensemble vs spectrum oracle, n in 1..6", "ip",
        c2_first_message));
    results.push_back(run_one(
        "C3", "privacy-loss values vs closed forms (L_A, L_B, QIC_A)", "ip",
        c3_ip_privacy_values));
    results.push_back(
        run_one("C5", "tradeoff composition: correctness and leak bounds at n=4", "ip",
                c5_tradeoff));
  }
  if (want("ordering")) {
    results.push_back(run_one(
        "C4", "ordering chain: SIC=L at round 0, SIC<=QIC at every round, L<=QIC", "ordering",
        c4_ordering));
  }
  if (want("pir")) {
    results.push_back(run_one(
        "C6", "classical schemes: correctness and uniform queries", "pir", c6_classical_pir));
    results.push_back(run_one(
        "C7", "compiled one-server protocol at n=4: decoding, server view, L_U, L_S", "pir",
        c7_qpir));
  }
  if (want("pir-entangled")) {
    results.push_back(run_one(
        "C8", "prior-entanglement protocol: correctness, level states, privacy",
        "pir-entangled", c8_ppir));
  }
  if (want("honesty")) {
    results.push_back(
        run_one("C9", "honesty checker accepts honest runs, rejects the copy attack", "honesty",
                c9_honesty));
  }
  if (want("classical")) {
    results.push_back(run_one(
        "C10", "classical chain rule on random protocols and the ascending-halt game",
        "classical", c10_chain_rule));
  }
  if (selector == "all") {
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult runtime{"C11", "full suite under the 5-minute budget", "runtime",
                            secs < 300.0, std::to_string(secs) + " s", secs};
    results.push_back(runtime);
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace qpriv
