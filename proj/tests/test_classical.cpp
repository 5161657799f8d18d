// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "doctest.h"
#include "qpriv/classical_protocol.hpp"

using namespace qpriv;

namespace {

// Independent plug-in estimator: I(A:B|C) = sum_cells p(abc) log[ p(abc) p(c)
// / (p(ac) p(bc)) ], a deliberately different algorithm from the
// entropy-difference route used by the library.
double plugin_cmi(
    const std::vector<std::tuple<std::string, std::string, std::string, double>>& samples) {
  std::map<std::string, double> pabc, pac, pbc, pc;
  std::map<std::string, std::tuple<std::string, std::string, std::string>> cells;
  for (const auto& [a, b, c, p] : samples) {
    if (p <= 0) continue;
    const std::string cell = a + "\x1f" + b + "\x1f" + c;
    pabc[cell] += p;
    pac[a + "\x1f" + c] += p;
    pbc[b + "\x1f" + c] += p;
    pc[c] += p;
    cells[cell] = {a, b, c};
  }
  double v = 0;
  for (const auto& [cell, abc] : cells) {
    const auto& [a, b, c] = abc;
    const double p_abc = pabc[cell];
    v += p_abc * std::log2(p_abc * pc[c] / (pac[a + "\x1f" + c] * pbc[b + "\x1f" + c]));
  }
  return v;
}

std::string transcript_of(const ClassicalProtocol& p, const std::string& x,
                          const std::string& y, const std::string& coin) {
  std::vector<std::string> transcript;
  std::string flat;
  for (const auto& round : p.rounds) {
    const std::string& own = round.sender == Party::P0 ? x : y;
    std::string m = round.message(own, coin, transcript);
    transcript.push_back(m);
    flat += m + "|";
  }
  return flat;
}

}  // namespace

TEST_CASE("one-round full revelation leaks exactly n bits") {
  const int n = 3;
  ClassicalProtocol p;
  p.alphabet_x = bitstrings(n);
  p.alphabet_y = bitstrings(n);
  p.rounds.push_back({Party::P0, [](const std::string& own, const std::string&,
                                    const std::vector<std::string>&) { return own; }});
  JointDistribution mu = JointDistribution::uniform(p.alphabet_x, p.alphabet_y);
  TranscriptPrivacy tp = classical_transcript_privacy(p, mu);
  CHECK(tp.direct_x_given_y == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(tp.direct_y_given_x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tp.sum_x == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("chain-rule equality on seeded random protocols") {
  std::mt19937 rng(515253);
  std::uniform_int_distribution<int> bits(1, 3);
  std::uniform_int_distribution<int> nrounds(1, 3);
  std::uniform_int_distribution<int> mbits(1, 2);
  for (int trial = 0; trial < 30; ++trial) {
    ClassicalProtocol p;
    p.alphabet_x = bitstrings(bits(rng));
    p.alphabet_y = bitstrings(bits(rng));
    const int rounds = nrounds(rng);
    for (int k = 0; k < rounds; ++k) {
      const int mb = mbits(rng);
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
    JointDistribution mu = JointDistribution::uniform(p.alphabet_x, p.alphabet_y);
    // classical_transcript_privacy throws if the two routes disagree > 1e-9.
    CHECK_NOTHROW(classical_transcript_privacy(p, mu));
  }
}

TEST_CASE("ascending-halt game leaks exactly the output") {
  const int n = 8;
  ClassicalProtocol p = make_id_minimum(n);
  JointDistribution mu = JointDistribution::uniform(p.alphabet_x, p.alphabet_y);
  TranscriptPrivacy tp = classical_transcript_privacy(p, mu);

  // Oracle route: the transcript is a deterministic function of the output
  // (min value + which side halted), so I(Pi:Y|X) must equal I(F:Y|X)
  // computed by the independent plug-in estimator.
  std::vector<std::tuple<std::string, std::string, std::string, double>> f_samples,
      t_samples;
  const double w = 1.0 / (n * n);
  for (const std::string& x : p.alphabet_x) {
    for (const std::string& y : p.alphabet_y) {
      const int xi = std::stoi(x);
      const int yi = std::stoi(y);
      const std::string f = std::to_string(std::min(xi, yi)) +
                            (xi <= yi ? "A" : "B");  // value and halter, Alice wins ties
      f_samples.emplace_back(f, y, x, w);
      t_samples.emplace_back(transcript_of(p, x, y, ""), y, x, w);
    }
  }
  const double output_leak = plugin_cmi(f_samples);
  const double transcript_leak = plugin_cmi(t_samples);
  CHECK(transcript_leak == doctest::Approx(output_leak).epsilon(1e-9));
  CHECK(tp.direct_y_given_x == doctest::Approx(transcript_leak).epsilon(1e-9));

  // Same on Alice's side.
  std::vector<std::tuple<std::string, std::string, std::string, double>> fx, tx;
  for (const std::string& x : p.alphabet_x) {
    for (const std::string& y : p.alphabet_y) {
      const int xi = std::stoi(x), yi = std::stoi(y);
      const std::string f =
          std::to_string(std::min(xi, yi)) + (xi <= yi ? "A" : "B");
      fx.emplace_back(f, x, y, w);
      tx.emplace_back(transcript_of(p, x, y, ""), x, y, w);
    }
  }
  CHECK(tp.direct_x_given_y == doctest::Approx(plugin_cmi(tx)).epsilon(1e-9));
  CHECK(plugin_cmi(tx) == doctest::Approx(plugin_cmi(fx)).epsilon(1e-9));
}

TEST_CASE("random substitute input strictly increases the leakage beyond the output") {
  const int n = 8;
  ClassicalProtocol honest = make_id_minimum(n);
  ClassicalProtocol random_alice = make_id_minimum_random_alice(n);
  JointDistribution mu = JointDistribution::uniform(honest.alphabet_x, honest.alphabet_y);
  TranscriptPrivacy hp = classical_transcript_privacy(honest, mu);
  TranscriptPrivacy rp = classical_transcript_privacy(random_alice, mu);
  // Averaged over uniform inputs the raw conditional quantities happen to
  // coincide, so the increase shows up past the ideal output, not before it.
  CHECK(rp.direct_y_given_x >= hp.direct_y_given_x - 1e-9);
  ExcessLeakage he = excess_transcript_leakage(honest, mu, id_minimum_output);
  ExcessLeakage re = excess_transcript_leakage(random_alice, mu, id_minimum_output);
  CHECK(std::abs(he.beyond_output_y) < 1e-9);
  CHECK(std::abs(he.beyond_output_x) < 1e-9);
  CHECK(re.beyond_output_y > 1e-2);

  // Cross-check the library value with the independent estimator, with the
  // substitute input marginalized out of every term.
  std::vector<std::tuple<std::string, std::string, std::string, double>> samples;
  const double w = 1.0 / (n * n * n);
  for (const std::string& coin : honest.alphabet_x) {
    for (const std::string& x : honest.alphabet_x) {
      for (const std::string& y : honest.alphabet_y) {
        samples.emplace_back(transcript_of(random_alice, x, y, coin), y, x, w);
      }
    }
  }
  CHECK(rp.direct_y_given_x == doctest::Approx(plugin_cmi(samples)).epsilon(1e-9));

  // Bob halts (and thereby names his input) exactly when y < x'; over uniform
  // pairs that happens with probability (n-1)/2n, approaching one half.
  int bob_halts = 0;
  for (const std::string& coin : honest.alphabet_x) {
    for (const std::string& y : honest.alphabet_y) {
      if (std::stoi(y) < std::stoi(coin)) ++bob_halts;
    }
  }
  CHECK(bob_halts == n * (n - 1) / 2);
}

TEST_CASE("public coins do not change the leakage") {
  // A one-round protocol where Alice sends x XOR coin: with the coin public,
  // the message still reveals x exactly.
  ClassicalProtocol p;
  p.alphabet_x = bitstrings(2);
  p.alphabet_y = bitstrings(1);
  ClassicalProtocol::Randomness r;
  r.public_coin = true;
  for (const std::string& c : bitstrings(2)) r.values.emplace_back(c, 0.25);
  p.randomness = r;
  p.rounds.push_back({Party::P0, [](const std::string& own, const std::string& coin,
                                    const std::vector<std::string>&) {
                        return index_to_bits(bits_to_index(own) ^ bits_to_index(coin), 2);
                      }});
  JointDistribution mu = JointDistribution::uniform(p.alphabet_x, p.alphabet_y);
  TranscriptPrivacy tp = classical_transcript_privacy(p, mu);
  CHECK(tp.direct_x_given_y == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("non-classical domain guard") {
  CHECK_THROWS_AS(make_id_minimum(0), std::invalid_argument);
  CHECK_THROWS_AS(make_id_minimum(100), std::invalid_argument);
}
