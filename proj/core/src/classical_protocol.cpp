// SPDX-License-Identifier: Apache-2.0
#include "qpriv/classical_protocol.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qpriv {

namespace {

// A weighted outcome of one protocol execution: fixed-position fields are
// (x, y, coin, m_1, ..., m_K).
struct Sample {
  std::vector<std::string> fields;
  double prob = 0;
};

double grouped_entropy(const std::vector<Sample>& samples, const std::vector<int>& fields) {
  std::map<std::vector<std::string>, double> mass;
  for (const Sample& s : samples) {
    std::vector<std::string> key;
    key.reserve(fields.size());
    for (int f : fields) key.push_back(s.fields[static_cast<std::size_t>(f)]);
    mass[key] += s.prob;
  }
  double h = 0;
  for (const auto& [key, p] : mass) {
    if (p > 1e-15) h -= p * std::log2(p);
  }
  return h;
}

double discrete_cmi(const std::vector<Sample>& samples, std::vector<int> a, std::vector<int> b,
                    std::vector<int> c) {
  std::vector<int> ac = a, bc = b, abc = a;
  ac.insert(ac.end(), c.begin(), c.end());
  bc.insert(bc.end(), c.begin(), c.end());
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  return grouped_entropy(samples, ac) + grouped_entropy(samples, bc) -
         grouped_entropy(samples, c) - grouped_entropy(samples, abc);
}

}  // namespace

TranscriptPrivacy classical_transcript_privacy(const ClassicalProtocol& protocol,
                                               const JointDistribution& mu) {
  const int rounds = static_cast<int>(protocol.rounds.size());
  std::vector<std::pair<std::string, double>> coins = {{"", 1.0}};
  bool coin_public = true;
  if (protocol.randomness) {
    coins = protocol.randomness->values;
    coin_public = protocol.randomness->public_coin;
  }

  // Field positions: 0 = x, 1 = y, 2 = coin, 3 + k = message of round k+1.
  std::vector<Sample> samples;
  for (const auto& atom : mu.support()) {
    if (atom.prob <= 0) continue;
    for (const auto& [coin, pc] : coins) {
      if (pc <= 0) continue;
      Sample s;
      s.prob = atom.prob * pc;
      s.fields = {atom.x, atom.y, coin};
      std::vector<std::string> transcript;
      for (const auto& round : protocol.rounds) {
        const std::string& own = round.sender == Party::P0 ? atom.x : atom.y;
        std::string msg = round.message(own, coin, transcript);
        transcript.push_back(msg);
        s.fields.push_back(std::move(msg));
      }
      samples.push_back(std::move(s));
    }
  }

  std::vector<int> base_cond;
  if (coin_public) base_cond.push_back(2);

  std::vector<int> all_messages;
  for (int k = 0; k < rounds; ++k) all_messages.push_back(3 + k);

  TranscriptPrivacy out;
  {
    std::vector<int> cond_y = base_cond;
    cond_y.push_back(1);
    std::vector<int> cond_x = base_cond;
    cond_x.push_back(0);
    out.direct_x_given_y = discrete_cmi(samples, all_messages, {0}, cond_y);
    out.direct_y_given_x = discrete_cmi(samples, all_messages, {1}, cond_x);
  }

  for (int k = 0; k < rounds; ++k) {
    std::vector<int> cond = base_cond;
    cond.push_back(protocol.rounds[static_cast<std::size_t>(k)].sender == Party::P0 ? 1 : 0);
    for (int j = 0; j < k; ++j) cond.push_back(3 + j);
    const int own_field = protocol.rounds[static_cast<std::size_t>(k)].sender == Party::P0 ? 0 : 1;
    double term = discrete_cmi(samples, {3 + k}, {own_field}, cond);
    if (protocol.rounds[static_cast<std::size_t>(k)].sender == Party::P0) {
      out.per_round_x.emplace_back(k + 1, term);
      out.sum_x += term;
    } else {
      out.per_round_y.emplace_back(k + 1, term);
      out.sum_y += term;
    }
  }

  if (std::abs(out.direct_x_given_y - out.sum_x) > 1e-9 ||
      std::abs(out.direct_y_given_x - out.sum_y) > 1e-9) {
    throw std::logic_error("chain-rule decomposition mismatch: direct (" +
                           std::to_string(out.direct_x_given_y) + ", " +
                           std::to_string(out.direct_y_given_x) + ") vs summed (" +
                           std::to_string(out.sum_x) + ", " + std::to_string(out.sum_y) + ")");
  }
  return out;
}

ExcessLeakage excess_transcript_leakage(
    const ClassicalProtocol& protocol, const JointDistribution& mu,
    const std::function<std::string(const std::string& x, const std::string& y)>& output) {
  std::vector<std::pair<std::string, double>> coins = {{"", 1.0}};
  bool coin_public = true;
  if (protocol.randomness) {
    coins = protocol.randomness->values;
    coin_public = protocol.randomness->public_coin;
  }

  // Field positions: 0 = x, 1 = y, 2 = coin, 3 = output, 4.. = messages.
  std::vector<Sample> samples;
  for (const auto& atom : mu.support()) {
    if (atom.prob <= 0) continue;
    for (const auto& [coin, pc] : coins) {
      if (pc <= 0) continue;
      Sample s;
      s.prob = atom.prob * pc;
      s.fields = {atom.x, atom.y, coin, output(atom.x, atom.y)};
      std::vector<std::string> transcript;
      for (const auto& round : protocol.rounds) {
        const std::string& own = round.sender == Party::P0 ? atom.x : atom.y;
        std::string msg = round.message(own, coin, transcript);
        transcript.push_back(msg);
        s.fields.push_back(std::move(msg));
      }
      samples.push_back(std::move(s));
    }
  }

  std::vector<int> messages;
  for (std::size_t k = 0; k < protocol.rounds.size(); ++k) {
    messages.push_back(4 + static_cast<int>(k));
  }
  std::vector<int> cond_y = {1, 3};
  std::vector<int> cond_x = {0, 3};
  if (coin_public) {
    cond_y.push_back(2);
    cond_x.push_back(2);
  }
  ExcessLeakage out;
  out.beyond_output_x = discrete_cmi(samples, messages, {0}, cond_y);
  out.beyond_output_y = discrete_cmi(samples, messages, {1}, cond_x);
  return out;
}

std::string id_minimum_output(const std::string& x, const std::string& y) {
  const int xi = std::stoi(x);
  const int yi = std::stoi(y);
  return std::to_string(std::min(xi, yi)) + (xi <= yi ? ":P0" : ":P1");
}

std::vector<std::string> id_minimum_alphabet(int n) {
  std::vector<std::string> out;
  for (int v = 1; v <= n; ++v) {
    std::string s = std::to_string(v);
    if (s.size() < 2) s = "0" + s;
    out.push_back(s);
  }
  return out;
}

namespace {

bool halted(const std::vector<std::string>& transcript) {
  for (const std::string& m : transcript) {
    if (m == "1") return true;
  }
  return false;
}

// Round k (1-based) probes value (k+1)/2 for Alice (odd k) and k/2 for Bob.
ClassicalProtocol id_minimum_base(int n, bool alice_random) {
  if (n < 1 || n > 64) throw std::invalid_argument("IdMinimum domain out of range");
  ClassicalProtocol p;
  p.name = alice_random ? "id-minimum-random-alice" : "id-minimum";
  p.alphabet_x = id_minimum_alphabet(n);
  p.alphabet_y = p.alphabet_x;
  if (alice_random) {
    ClassicalProtocol::Randomness r;
    r.public_coin = false;
    for (const std::string& v : p.alphabet_x) {
      r.values.emplace_back(v, 1.0 / n);
    }
    p.randomness = r;
  }
  for (int k = 1; k <= 2 * n; ++k) {
    ClassicalProtocol::Round round;
    round.sender = (k % 2 == 1) ? Party::P0 : Party::P1;
    const int probe = (k + 1) / 2;
    const bool use_coin = alice_random && round.sender == Party::P0;
    round.message = [probe, use_coin](const std::string& own, const std::string& coin,
                                      const std::vector<std::string>& transcript) -> std::string {
      if (halted(transcript)) return "-";
      const std::string& effective = use_coin ? coin : own;
      return std::stoi(effective) == probe ? "1" : "0";
    };
    p.rounds.push_back(std::move(round));
  }
  return p;
}

}  // namespace

ClassicalProtocol make_id_minimum(int n) { return id_minimum_base(n, false); }

ClassicalProtocol make_id_minimum_random_alice(int n) { return id_minimum_base(n, true); }

}  // namespace qpriv
