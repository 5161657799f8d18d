// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpriv/distribution.hpp"
#include "qpriv/linalg.hpp"
#include "qpriv/states.hpp"

namespace qpriv {

// P0 sends at odd rounds (the Alice / user role), P1 at even rounds.
// Protocols whose first message belongs to P1 declare an empty first round.
enum class Party { P0 = 0, P1 = 1 };
inline Party other(Party p) { return p == Party::P0 ? Party::P1 : Party::P0; }

// ---------------------------------------------------------------------------
// Primitive operations a round is built from. Every op names the registers it
// touches; the index convention inside an op is the registers as listed,
// first register most significant.

// Writes `amplitudes` onto registers currently in |0...0>. Extends to a
// unitary on the touched subspace, so honest executions stay well defined.
struct PrepOp {
  std::vector<std::string> regs;
  Vector amplitudes;
};

// Dense unitary on a (small) register subset. Checked against U U^dag = I at
// application unless the builder already certified it.
struct GateOp {
  std::vector<std::string> regs;
  Matrix matrix;
  bool certified_unitary = false;
};

// Basis permutation with optional per-source phases: |b> -> phase[b] |map[b]>.
// Unitary by construction once the map is a bijection and phases are unit.
struct PermuteOp {
  std::vector<std::string> regs;
  std::vector<std::uint64_t> map;
  std::vector<Complex> phase;  // empty means all-ones
};

// The same single-qubit gate on every qubit of one register.
struct QubitLayerOp {
  std::string reg;
  Eigen::Matrix2cd gate;
};

using StepOp = std::variant<PrepOp, GateOp, PermuteOp, QubitLayerOp>;

QubitLayerOp hadamard_layer(std::string reg);
// |b> -> |b XOR mask> over the combined width of `regs`.
PermuteOp xor_permutation(std::vector<std::string> regs, int width, std::uint64_t mask);

// Applies one op to a state; `ctrl` restricts to basis indices whose control
// field equals `ctrl_value` (used for protocols run on superposed inputs).
PureState apply_op(const PureState& state, const StepOp& op);
PureState apply_op(const PureState& state, const StepOp& op, const FieldIndexer& ctrl,
                   std::uint64_t ctrl_value);

// ---------------------------------------------------------------------------

struct Round {
  Party sender = Party::P0;
  // Ops parameterized by the sender's classical input; null means no ops.
  std::function<std::vector<StepOp>(const std::string& input)> steps;
  // Registers handed to the other party when the round ends; may be empty.
  std::vector<std::string> message;
};

struct Decoder {
  Party party = Party::P0;
  std::function<std::vector<StepOp>(const std::string& input)> steps;  // pre-measurement
  std::vector<std::string> measure;
  std::function<int(const std::string& input, std::uint64_t outcome)> interpret;
};

struct Protocol {
  std::string name;
  std::array<std::string, 2> party_names{{"Alice", "Bob"}};
  std::array<std::vector<std::string>, 2> alphabet;  // P0 inputs, P1 inputs
  RegisterLayout layout;
  std::array<std::vector<std::string>, 2> initial_ownership;
  Vector initial_amplitudes;  // over the full layout; empty means |0...0>
  std::vector<Round> rounds;
  Decoder decoder;

  // Encoding of classical inputs into basis states, needed when an input
  // register is promoted to a quantum register (superposed/purified modes).
  std::array<int, 2> input_width{{0, 0}};
  std::array<std::function<std::uint64_t(const std::string&)>, 2> input_encoder;

  int round_count() const { return static_cast<int>(rounds.size()); }
  // Register ownership immediately after the round-k message transfer
  // (k = 0 gives the initial ownership).
  std::array<std::vector<std::string>, 2> ownership_after(int k) const;
  // Total qubits sent over the full protocol.
  int communication_qubits() const;

  void validate() const;
};

// Helpers for protocol builders.
std::vector<std::string> bitstrings(int n);              // all n-bit strings, MSB first
std::uint64_t bits_to_index(const std::string& bits);    // "101" -> 5
std::string index_to_bits(std::uint64_t v, int n);
int dot2(std::uint64_t a, std::uint64_t b);              // GF(2) inner product

// ---------------------------------------------------------------------------
// Honest execution.

struct Branch {
  std::uint64_t outcome = 0;
  double probability = 0;
  int value = 0;
};

struct RunResult {
  std::vector<PureState> snapshots;  // state after each round's message transfer
  PureState final_state;             // after the last round
  PureState decoded_state;           // after the decoder's local ops
  int output = 0;
  double output_probability = 0;
  std::vector<Branch> branches;  // all measurement branches above 1e-12 mass
};

RunResult run_honest(const Protocol& protocol, const std::string& x, const std::string& y);

// Runs rounds 1..k only and returns the snapshot after round k.
PureState run_to_round(const Protocol& protocol, const std::string& x, const std::string& y,
                       int k);

// ---------------------------------------------------------------------------
// Analysis-time views of the protocol state.

struct AnalysisMode {
  enum class Kind { ClassicalInputs, SuperposedP0, SuperposedP1, Purified };
  Kind kind = Kind::ClassicalInputs;
  JointDistribution mu;
  // Superposed modes: round after which the superposed party measures the
  // input register; 0 measures immediately, nullopt never measures.
  std::optional<int> measurement_round;

  static AnalysisMode classical(JointDistribution mu);
  static AnalysisMode superposed(Party superposed_party, JointDistribution mu,
                                 std::optional<int> measurement_round);
  static AnalysisMode purified(JointDistribution mu);
};

// Reserved register names added by the analysis modes.
inline constexpr const char* kInputRegP0 = "X";
inline constexpr const char* kInputRegP1 = "Y";
inline constexpr const char* kEnvironmentReg = "Renv";

// Joint state over all live registers immediately after the round-k message,
// as an ensemble keyed by whatever classical labels the mode retains.
// k = 0 gives the pre-protocol state.
CqState round_state(const Protocol& protocol, const AnalysisMode& mode, int k);

}  // namespace qpriv
