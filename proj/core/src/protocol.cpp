// SPDX-License-Identifier: Apache-2.0
#include "qpriv/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace qpriv {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kBranchFloor = 1e-12;

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const std::vector<std::string>& op_regs(const StepOp& op) {
  static const std::vector<std::string> empty;
  if (const auto* p = std::get_if<PrepOp>(&op)) return p->regs;
  if (const auto* g = std::get_if<GateOp>(&op)) return g->regs;
  if (const auto* m = std::get_if<PermuteOp>(&op)) return m->regs;
  // QubitLayerOp holds a single register name; materialized by caller.
  return empty;
}

std::vector<std::string> touched_regs(const StepOp& op) {
  if (const auto* l = std::get_if<QubitLayerOp>(&op)) return {l->reg};
  return op_regs(op);
}

void check_unit_phase(const std::vector<Complex>& phase) {
  for (const Complex& p : phase) {
    if (std::abs(std::abs(p) - 1.0) > kUnitaryTol) {
      throw std::invalid_argument("permutation phase is not unit modulus");
    }
  }
}

void check_bijection(const std::vector<std::uint64_t>& map, std::uint64_t dim) {
  if (map.size() != dim) throw std::invalid_argument("permutation size does not match registers");
  std::vector<bool> seen(dim, false);
  for (std::uint64_t v : map) {
    if (v >= dim || seen[v]) throw std::invalid_argument("permutation map is not a bijection");
    seen[v] = true;
  }
}

struct Ctrl {
  const FieldIndexer* field = nullptr;
  std::uint64_t value = 0;
  bool matches(std::uint64_t idx) const { return !field || field->extract(idx) == value; }
};

Vector apply_gate(const RegisterLayout& layout, const Vector& amp, const GateOp& op,
                  const Ctrl& ctrl) {
  FieldIndexer f(layout, op.regs);
  const std::uint64_t d = f.dim();
  if (op.matrix.rows() != static_cast<Eigen::Index>(d) ||
      op.matrix.cols() != static_cast<Eigen::Index>(d)) {
    throw std::invalid_argument("gate dimension does not match its registers");
  }
  if (!op.certified_unitary) {
    double dev = (op.matrix.adjoint() * op.matrix -
                  Matrix::Identity(op.matrix.rows(), op.matrix.cols()))
                     .cwiseAbs()
                     .maxCoeff();
    if (dev > kUnitaryTol) {
      throw std::invalid_argument("gate fails the unitarity check (deviation " +
                                  std::to_string(dev) + ")");
    }
  }
  FieldIndexer fr(layout, layout.complement(op.regs));
  Vector out = amp;
  Vector scratch(static_cast<Eigen::Index>(d));
  const std::uint64_t rest_count = fr.dim();
  for (std::uint64_t rest = 0; rest < rest_count; ++rest) {
    std::uint64_t base = fr.deposit(rest, 0);
    if (!ctrl.matches(base)) continue;
    for (std::uint64_t s = 0; s < d; ++s) {
      scratch[static_cast<Eigen::Index>(s)] =
          amp[static_cast<Eigen::Index>(f.deposit(s, base))];
    }
    Vector res = op.matrix * scratch;
    for (std::uint64_t s = 0; s < d; ++s) {
      out[static_cast<Eigen::Index>(f.deposit(s, base))] = res[static_cast<Eigen::Index>(s)];
    }
  }
  return out;
}

Vector apply_permute(const RegisterLayout& layout, const Vector& amp, const PermuteOp& op,
                     const Ctrl& ctrl) {
  FieldIndexer f(layout, op.regs);
  const std::uint64_t d = f.dim();
  check_bijection(op.map, d);
  if (!op.phase.empty()) {
    if (op.phase.size() != d) throw std::invalid_argument("phase table size mismatch");
    check_unit_phase(op.phase);
  }
  const std::uint64_t dim = layout.dim();
  Vector out = amp;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    if (!ctrl.matches(idx)) continue;
    std::uint64_t s = f.extract(idx);
    Complex v = amp[static_cast<Eigen::Index>(idx)];
    if (!op.phase.empty()) v *= op.phase[s];
    out[static_cast<Eigen::Index>(f.deposit(op.map[s], idx))] = v;
  }
  return out;
}

Vector apply_layer(const RegisterLayout& layout, const Vector& amp, const QubitLayerOp& op,
                   const Ctrl& ctrl) {
  double dev = (op.gate.adjoint() * op.gate - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) {
    throw std::invalid_argument("qubit layer gate fails the unitarity check");
  }
  const int w = layout.width(op.reg);
  const int shift = layout.shift(op.reg);
  const std::uint64_t dim = layout.dim();
  Vector out = amp;
  for (int q = 0; q < w; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (shift + q);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
      if (idx & bit) continue;
      if (!ctrl.matches(idx)) continue;
      Complex a0 = out[static_cast<Eigen::Index>(idx)];
      Complex a1 = out[static_cast<Eigen::Index>(idx | bit)];
      out[static_cast<Eigen::Index>(idx)] = op.gate(0, 0) * a0 + op.gate(0, 1) * a1;
      out[static_cast<Eigen::Index>(idx | bit)] = op.gate(1, 0) * a0 + op.gate(1, 1) * a1;
    }
  }
  return out;
}

Vector apply_prep(const RegisterLayout& layout, const Vector& amp, const PrepOp& op,
                  const Ctrl& ctrl) {
  FieldIndexer f(layout, op.regs);
  const std::uint64_t d = f.dim();
  if (op.amplitudes.size() != static_cast<Eigen::Index>(d)) {
    throw std::invalid_argument("prep amplitude dimension does not match its registers");
  }
  if (std::abs(op.amplitudes.norm() - 1.0) > kUnitaryTol) {
    throw std::invalid_argument("prep amplitudes are not normalized");
  }
  const std::uint64_t dim = layout.dim();
  double residue = 0;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    if (!ctrl.matches(idx)) continue;
    if (f.extract(idx) != 0) residue += std::norm(amp[static_cast<Eigen::Index>(idx)]);
  }
  if (residue > kBranchFloor) {
    throw std::invalid_argument("prep target registers are not in |0...0>");
  }
  Vector out = amp;
  FieldIndexer fr(layout, layout.complement(op.regs));
  const std::uint64_t rest_count = fr.dim();
  for (std::uint64_t rest = 0; rest < rest_count; ++rest) {
    std::uint64_t base = fr.deposit(rest, 0);
    if (!ctrl.matches(base)) continue;
    Complex a0 = amp[static_cast<Eigen::Index>(base)];
    for (std::uint64_t s = 0; s < d; ++s) {
      out[static_cast<Eigen::Index>(f.deposit(s, base))] =
          op.amplitudes[static_cast<Eigen::Index>(s)] * a0;
    }
  }
  return out;
}

Vector apply_impl(const RegisterLayout& layout, const Vector& amp, const StepOp& op,
                  const Ctrl& ctrl) {
  if (const auto* p = std::get_if<PrepOp>(&op)) return apply_prep(layout, amp, *p, ctrl);
  if (const auto* g = std::get_if<GateOp>(&op)) return apply_gate(layout, amp, *g, ctrl);
  if (const auto* m = std::get_if<PermuteOp>(&op)) return apply_permute(layout, amp, *m, ctrl);
  return apply_layer(layout, amp, std::get<QubitLayerOp>(op), ctrl);
}

Vector initial_vector(const Protocol& p) {
  if (p.initial_amplitudes.size() == 0) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(p.layout.dim()));
    v[0] = 1.0;
    return v;
  }
  if (p.initial_amplitudes.size() != static_cast<Eigen::Index>(p.layout.dim())) {
    throw std::invalid_argument("initial state dimension does not match layout");
  }
  return p.initial_amplitudes;
}

void check_input(const Protocol& p, Party party, const std::string& value) {
  if (!contains(p.alphabet[static_cast<int>(party)], value)) {
    throw std::invalid_argument("input '" + value + "' is not in " +
                                p.party_names[static_cast<int>(party)] + "'s alphabet");
  }
}

std::vector<StepOp> round_ops(const Round& r, const std::string& input) {
  if (!r.steps) return {};
  return r.steps(input);
}

}  // namespace

QubitLayerOp hadamard_layer(std::string reg) {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return QubitLayerOp{std::move(reg), h};
}

PermuteOp xor_permutation(std::vector<std::string> regs, int width, std::uint64_t mask) {
  PermuteOp op;
  op.regs = std::move(regs);
  const std::uint64_t d = std::uint64_t{1} << width;
  if (mask >= d) throw std::invalid_argument("xor mask exceeds register width");
  op.map.resize(d);
  for (std::uint64_t b = 0; b < d; ++b) op.map[b] = b ^ mask;
  return op;
}

PureState apply_op(const PureState& state, const StepOp& op) {
  return PureState(state.layout(), apply_impl(state.layout(), state.amplitudes(), op, Ctrl{}));
}

PureState apply_op(const PureState& state, const StepOp& op, const FieldIndexer& ctrl,
                   std::uint64_t ctrl_value) {
  return PureState(state.layout(),
                   apply_impl(state.layout(), state.amplitudes(), op, Ctrl{&ctrl, ctrl_value}));
}

std::array<std::vector<std::string>, 2> Protocol::ownership_after(int k) const {
  if (k < 0 || k > round_count()) throw std::invalid_argument("round index out of range");
  auto owned = initial_ownership;
  for (int r = 0; r < k; ++r) {
    const Round& round = rounds[static_cast<std::size_t>(r)];
    auto& from = owned[static_cast<int>(round.sender)];
    auto& to = owned[static_cast<int>(other(round.sender))];
    for (const std::string& reg : round.message) {
      auto it = std::find(from.begin(), from.end(), reg);
      if (it == from.end()) {
        throw std::logic_error("register-ownership violation: round " + std::to_string(r + 1) +
                               " sends '" + reg + "' not held by the sender");
      }
      from.erase(it);
      to.push_back(reg);
    }
  }
  return owned;
}

int Protocol::communication_qubits() const {
  int total = 0;
  for (const Round& r : rounds) {
    for (const std::string& reg : r.message) total += layout.width(reg);
  }
  return total;
}

void Protocol::validate() const {
  if (layout.total_width() > kMaxQubits) {
    throw std::invalid_argument("protocol exceeds the qubit cap");
  }
  std::vector<std::string> all = initial_ownership[0];
  all.insert(all.end(), initial_ownership[1].begin(), initial_ownership[1].end());
  for (const auto& reg : layout.registers()) {
    if (!contains(all, reg.name)) {
      throw std::invalid_argument("register '" + reg.name + "' has no initial owner");
    }
  }
  ownership_after(round_count());  // throws on any mid-protocol ownership violation
}

std::vector<std::string> bitstrings(int n) {
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    out.push_back(index_to_bits(v, n));
  }
  return out;
}

std::uint64_t bits_to_index(const std::string& bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("not a bitstring: " + bits);
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::string index_to_bits(std::uint64_t v, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((v >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

int dot2(std::uint64_t a, std::uint64_t b) {
  return static_cast<int>(std::popcount(a & b) & 1);
}

namespace {

struct Execution {
  PureState state;
  std::array<std::vector<std::string>, 2> owned;
};

Execution execute_rounds(const Protocol& p, const std::string& x, const std::string& y, int upto,
                         std::vector<PureState>* snapshots) {
  check_input(p, Party::P0, x);
  check_input(p, Party::P1, y);
  Execution exec{PureState(p.layout, initial_vector(p)), p.initial_ownership};
  for (int k = 1; k <= upto; ++k) {
    const Round& round = p.rounds[static_cast<std::size_t>(k - 1)];
    const std::string& input = round.sender == Party::P0 ? x : y;
    auto& from = exec.owned[static_cast<int>(round.sender)];
    auto& to = exec.owned[static_cast<int>(other(round.sender))];
    for (const StepOp& op : round_ops(round, input)) {
      for (const std::string& reg : touched_regs(op)) {
        if (!contains(from, reg)) {
          throw std::logic_error("register-ownership violation: round " + std::to_string(k) +
                                 " acts on '" + reg + "' not held by the sender");
        }
      }
      exec.state = apply_op(exec.state, op);
    }
    for (const std::string& reg : round.message) {
      auto it = std::find(from.begin(), from.end(), reg);
      if (it == from.end()) {
        throw std::logic_error("register-ownership violation: round " + std::to_string(k) +
                               " sends '" + reg + "' not held by the sender");
      }
      from.erase(it);
      to.push_back(reg);
    }
    if (snapshots) snapshots->push_back(exec.state);
  }
  return exec;
}

}  // namespace

PureState run_to_round(const Protocol& p, const std::string& x, const std::string& y, int k) {
  if (k < 0 || k > p.round_count()) throw std::invalid_argument("round index out of range");
  return execute_rounds(p, x, y, k, nullptr).state;
}

RunResult run_honest(const Protocol& p, const std::string& x, const std::string& y) {
  p.validate();
  std::vector<PureState> snapshots;
  Execution exec = execute_rounds(p, x, y, p.round_count(), &snapshots);

  const std::string& dec_input = p.decoder.party == Party::P0 ? x : y;
  PureState decoded = exec.state;
  if (p.decoder.steps) {
    const auto& owned = exec.owned[static_cast<int>(p.decoder.party)];
    for (const StepOp& op : p.decoder.steps(dec_input)) {
      for (const std::string& reg : touched_regs(op)) {
        if (!contains(owned, reg)) {
          throw std::logic_error("register-ownership violation: decoder acts on '" + reg + "'");
        }
      }
      decoded = apply_op(decoded, op);
    }
  }

  RunResult result{std::move(snapshots), exec.state, decoded, 0, 0.0, {}};
  if (!p.decoder.interpret || p.decoder.measure.empty()) return result;

  FieldIndexer fm(decoded.layout(), p.decoder.measure);
  std::map<std::uint64_t, double> outcome_mass;
  const std::uint64_t dim = decoded.dim();
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    double pr = std::norm(decoded.amplitudes()[static_cast<Eigen::Index>(idx)]);
    if (pr > 0) outcome_mass[fm.extract(idx)] += pr;
  }
  std::map<int, double> value_mass;
  for (const auto& [outcome, mass] : outcome_mass) {
    if (mass < kBranchFloor) continue;
    int value = p.decoder.interpret(dec_input, outcome);
    result.branches.push_back(Branch{outcome, mass, value});
    value_mass[value] += mass;
  }
  for (const auto& [value, mass] : value_mass) {
    if (mass > result.output_probability) {
      result.output_probability = mass;
      result.output = value;
    }
  }
  return result;
}

AnalysisMode AnalysisMode::classical(JointDistribution mu) {
  return AnalysisMode{Kind::ClassicalInputs, std::move(mu), std::nullopt};
}

AnalysisMode AnalysisMode::superposed(Party superposed_party, JointDistribution mu,
                                      std::optional<int> measurement_round) {
  AnalysisMode mode;
  mode.kind = superposed_party == Party::P0 ? Kind::SuperposedP0 : Kind::SuperposedP1;
  if (!mu.is_product()) {
    throw std::invalid_argument("superposed modes require a product input distribution");
  }
  mode.mu = std::move(mu);
  mode.measurement_round = measurement_round;
  return mode;
}

AnalysisMode AnalysisMode::purified(JointDistribution mu) {
  return AnalysisMode{Kind::Purified, std::move(mu), std::nullopt};
}

namespace {

void check_reserved_names(const Protocol& p) {
  for (const char* name : {kInputRegP0, kInputRegP1, kEnvironmentReg}) {
    if (p.layout.has(name)) {
      throw std::invalid_argument(std::string("protocol register name '") + name +
                                  "' collides with an analysis register");
    }
  }
}

std::uint64_t encode_input(const Protocol& p, Party party, const std::string& value) {
  const auto& enc = p.input_encoder[static_cast<int>(party)];
  if (!enc || p.input_width[static_cast<int>(party)] <= 0) {
    throw std::invalid_argument("protocol does not declare a quantum input encoding for " +
                                p.party_names[static_cast<int>(party)]);
  }
  std::uint64_t v = enc(value);
  if (v >= (std::uint64_t{1} << p.input_width[static_cast<int>(party)])) {
    throw std::invalid_argument("encoded input exceeds the declared input width");
  }
  return v;
}

// Runs rounds 1..k with `superposed`'s input register held in superposition
// (all that party's operations become controlled on it) while the other
// party uses the fixed classical input.
PureState run_superposed(const Protocol& p, Party superposed, const std::string& fixed_input,
                         const std::vector<std::pair<std::string, double>>& marginal, int k) {
  const char* reg_name = superposed == Party::P0 ? kInputRegP0 : kInputRegP1;
  const int w = p.input_width[static_cast<int>(superposed)];
  RegisterLayout ext = RegisterLayout::concat(
      RegisterLayout({{reg_name, w}}), p.layout);

  Vector base = initial_vector(p);
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(ext.dim()));
  const std::uint64_t block = p.layout.dim();
  for (const auto& [value, prob] : marginal) {
    if (prob <= 0) continue;
    std::uint64_t e = encode_input(p, superposed, value);
    amp.segment(static_cast<Eigen::Index>(e * block), static_cast<Eigen::Index>(block)) =
        std::sqrt(prob) * base;
  }
  PureState state(ext, std::move(amp));

  FieldIndexer ctrl(ext, {reg_name});
  for (int r = 1; r <= k; ++r) {
    const Round& round = p.rounds[static_cast<std::size_t>(r - 1)];
    if (round.sender == superposed) {
      for (const auto& [value, prob] : marginal) {
        if (prob <= 0) continue;
        std::uint64_t e = encode_input(p, superposed, value);
        for (const StepOp& op : round_ops(round, value)) {
          state = apply_op(state, op, ctrl, e);
        }
      }
    } else {
      for (const StepOp& op : round_ops(round, fixed_input)) {
        state = apply_op(state, op);
      }
    }
  }
  return state;
}

CqState purified_state(const Protocol& p, const JointDistribution& mu, int k) {
  const int wx = p.input_width[0];
  const int wy = p.input_width[1];
  if (wx <= 0 || wy <= 0) {
    throw std::invalid_argument("purified mode needs quantum input encodings for both parties");
  }
  const int total = p.layout.total_width() + 2 * (wx + wy);
  if (total > kMaxQubits) {
    throw std::invalid_argument("purified analysis exceeds the " + std::to_string(kMaxQubits) +
                                "-qubit cap (" + std::to_string(total) + " needed)");
  }
  RegisterLayout ext = RegisterLayout::concat(
      RegisterLayout({{kEnvironmentReg, wx + wy}, {kInputRegP0, wx}, {kInputRegP1, wy}}),
      p.layout);

  Vector base = initial_vector(p);
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(ext.dim()));
  FieldIndexer fr(ext, {kEnvironmentReg});
  FieldIndexer fx(ext, {kInputRegP0});
  FieldIndexer fy(ext, {kInputRegP1});
  const std::uint64_t block = p.layout.dim();
  for (const auto& atom : mu.support()) {
    if (atom.prob <= 0) continue;
    std::uint64_t ex = encode_input(p, Party::P0, atom.x);
    std::uint64_t ey = encode_input(p, Party::P1, atom.y);
    std::uint64_t idx = fr.deposit((ex << wy) | ey, 0);
    idx = fx.deposit(ex, idx);
    idx = fy.deposit(ey, idx);
    // The copy-basis purification: R holds |x,y> alongside classical X, Y.
    Eigen::Index offset = static_cast<Eigen::Index>(idx);
    amp.segment(offset, static_cast<Eigen::Index>(block)) = std::sqrt(atom.prob) * base;
  }
  PureState state(ext, std::move(amp));

  FieldIndexer cx(ext, {kInputRegP0});
  FieldIndexer cy(ext, {kInputRegP1});
  auto mx = mu.marginal_x();
  auto my = mu.marginal_y();
  for (int r = 1; r <= k; ++r) {
    const Round& round = p.rounds[static_cast<std::size_t>(r - 1)];
    const bool is_p0 = round.sender == Party::P0;
    const auto& values = is_p0 ? mx : my;
    const FieldIndexer& ctrl = is_p0 ? cx : cy;
    for (const auto& [value, prob] : values) {
      if (prob <= 0) continue;
      std::uint64_t e = encode_input(p, round.sender, value);
      for (const StepOp& op : round_ops(round, value)) {
        state = apply_op(state, op, ctrl, e);
      }
    }
  }
  RegisterLayout ext_layout = state.layout();
  std::vector<CqState::Member> members;
  members.push_back(CqState::Member{{}, 1.0, std::move(state)});
  return CqState({}, std::move(ext_layout), std::move(members));
}

}  // namespace

CqState round_state(const Protocol& p, const AnalysisMode& mode, int k) {
  if (k < 0 || k > p.round_count()) throw std::invalid_argument("round index out of range");
  check_reserved_names(p);

  switch (mode.kind) {
    case AnalysisMode::Kind::ClassicalInputs: {
      std::vector<CqState::Member> members;
      for (const auto& atom : mode.mu.support()) {
        if (atom.prob <= 0) continue;
        members.push_back(
            CqState::Member{{atom.x, atom.y}, atom.prob, run_to_round(p, atom.x, atom.y, k)});
      }
      return CqState({kInputRegP0, kInputRegP1}, p.layout, std::move(members));
    }
    case AnalysisMode::Kind::SuperposedP0:
    case AnalysisMode::Kind::SuperposedP1: {
      const Party sup = mode.kind == AnalysisMode::Kind::SuperposedP0 ? Party::P0 : Party::P1;
      // Once the superposed register has been measured, the ensemble is the
      // classical one: a computational-basis measurement commutes with the
      // remaining input-controlled operations.
      if (mode.measurement_round && k > *mode.measurement_round) {
        return round_state(p, AnalysisMode::classical(mode.mu), k);
      }
      const auto sup_marginal = sup == Party::P0 ? mode.mu.marginal_x() : mode.mu.marginal_y();
      const auto fixed_marginal = sup == Party::P0 ? mode.mu.marginal_y() : mode.mu.marginal_x();
      std::vector<CqState::Member> members;
      RegisterLayout ext;
      for (const auto& [value, prob] : fixed_marginal) {
        if (prob <= 0) continue;
        PureState st = run_superposed(p, sup, value, sup_marginal, k);
        ext = st.layout();
        members.push_back(CqState::Member{{value}, prob, std::move(st)});
      }
      const char* fixed_name = sup == Party::P0 ? kInputRegP1 : kInputRegP0;
      return CqState({fixed_name}, ext, std::move(members));
    }
    case AnalysisMode::Kind::Purified:
      return purified_state(p, mode.mu, k);
  }
  throw std::logic_error("unreachable");
}

}  // namespace qpriv
