// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpriv/distribution.hpp"
#include "qpriv/protocol.hpp"

namespace qpriv {

// Deterministic or coin-assisted classical protocol. Messages are arbitrary
// functions of the sender's input, the coin, and the transcript so far.
struct ClassicalProtocol {
  struct Randomness {
    std::vector<std::pair<std::string, double>> values;
    // Public coins are conditioned on in every information term; private
    // randomness (one player substituting a random input) is marginalized.
    bool public_coin = true;
  };
  struct Round {
    Party sender = Party::P0;
    std::function<std::string(const std::string& own_input, const std::string& coin,
                              const std::vector<std::string>& transcript)>
        message;
  };

  std::string name;
  std::vector<std::string> alphabet_x, alphabet_y;
  std::optional<Randomness> randomness;
  std::vector<Round> rounds;
};

struct TranscriptPrivacy {
  double direct_x_given_y = 0;  // I(Pi : X | Y)
  double direct_y_given_x = 0;  // I(Pi : Y | X)
  std::vector<std::pair<int, double>> per_round_x;  // P0-sent rounds
  std::vector<std::pair<int, double>> per_round_y;  // P1-sent rounds
  double sum_x = 0, sum_y = 0;
};

// Computes the transcript quantities both directly and as the round-by-round
// sum of conditional terms, and requires the two to agree within 1e-9.
TranscriptPrivacy classical_transcript_privacy(const ClassicalProtocol& protocol,
                                               const JointDistribution& mu);

// What the transcript reveals beyond a stated output: I(Pi : X | Y, F) and
// I(Pi : Y | X, F) for F = output(x, y). A protocol that leaks only its
// output scores zero here; a player substituting a random input does not.
struct ExcessLeakage {
  double beyond_output_x = 0;
  double beyond_output_y = 0;
};
ExcessLeakage excess_transcript_leakage(
    const ClassicalProtocol& protocol, const JointDistribution& mu,
    const std::function<std::string(const std::string& x, const std::string& y)>& output);

// The ideal IdMinimum output: the minimum value and who holds it, P0 winning
// ties.
std::string id_minimum_output(const std::string& x, const std::string& y);

// Ascending-halt protocol for IdMinimum on [1, n]: at successive rounds the
// players announce whether they hold the next value, Alice probing first.
ClassicalProtocol make_id_minimum(int n);
// Same rounds, but Alice plays a uniformly random substitute input.
ClassicalProtocol make_id_minimum_random_alice(int n);

// Value alphabet {"01", ..., zero-padded n} shared by the builders above.
std::vector<std::string> id_minimum_alphabet(int n);

}  // namespace qpriv
