// SPDX-License-Identifier: Apache-2.0
#include "qpriv/inner_product.hpp"

#include <cmath>
#include <stdexcept>

namespace qpriv {

namespace {

constexpr int kIpMaxN = 6;

void check_n(int n, int cap) {
  if (n < 1 || n > cap) {
    throw std::invalid_argument("n out of range [1, " + std::to_string(cap) + "]");
  }
}

PermuteOp xor_on_q(int n, std::uint64_t y) {
  return xor_permutation({"Q"}, n, y);
}

// |r>|b> -> |r>|b XOR r.x> on (Q, R).
PermuteOp uncompute_dot(int n, std::uint64_t x) {
  PermuteOp op;
  op.regs = {"Q", "R"};
  const std::uint64_t d = std::uint64_t{1} << (n + 1);
  op.map.resize(d);
  for (std::uint64_t idx = 0; idx < d; ++idx) {
    const std::uint64_t r = idx >> 1;
    op.map[idx] = idx ^ static_cast<std::uint64_t>(dot2(r, x));
  }
  return op;
}

}  // namespace

Vector ip_first_message(int n, std::uint64_t x) {
  const std::uint64_t rs = std::uint64_t{1} << n;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(rs << 1));
  const double a = 1.0 / std::sqrt(static_cast<double>(rs));
  for (std::uint64_t r = 0; r < rs; ++r) {
    v[static_cast<Eigen::Index>((r << 1) | static_cast<std::uint64_t>(dot2(r, x)))] = a;
  }
  return v;
}

Protocol build_ip_protocol(int n) {
  check_n(n, kIpMaxN);
  Protocol p;
  p.name = "ip-n" + std::to_string(n);
  p.alphabet = {{bitstrings(n), bitstrings(n)}};
  p.layout = RegisterLayout({{"Q", n}, {"R", 1}});
  p.initial_ownership = {{std::vector<std::string>{"Q", "R"}, std::vector<std::string>{}}};
  p.input_width = {n, n};
  p.input_encoder = {bits_to_index, bits_to_index};

  Round r1;
  r1.sender = Party::P0;
  r1.steps = [n](const std::string& x) {
    return std::vector<StepOp>{PrepOp{{"Q", "R"}, ip_first_message(n, bits_to_index(x))}};
  };
  r1.message = {"Q", "R"};
  p.rounds.push_back(std::move(r1));

  Round r2;
  r2.sender = Party::P1;
  r2.steps = [n](const std::string& y) {
    return std::vector<StepOp>{xor_on_q(n, bits_to_index(y))};
  };
  r2.message = {"Q", "R"};
  p.rounds.push_back(std::move(r2));

  p.decoder.party = Party::P0;
  p.decoder.steps = [n](const std::string& x) {
    return std::vector<StepOp>{uncompute_dot(n, bits_to_index(x))};
  };
  p.decoder.measure = {"R"};
  p.decoder.interpret = [](const std::string&, std::uint64_t outcome) {
    return static_cast<int>(outcome);
  };
  return p;
}

DensityMatrix analytic_m1(int n) {
  check_n(n, 8);
  const std::uint64_t rs = std::uint64_t{1} << n;
  const auto dim = static_cast<Eigen::Index>(rs << 1);
  const double scale = std::pow(2.0, -2.0 * n);

  // Coefficient c(r, r', i, j) = #{x : r.x = i and r'.x = j}.
  auto coeff = [n, rs](std::uint64_t r, std::uint64_t rp, int i, int j) -> double {
    if (r == 0 && rp == 0 && i == 0 && j == 0) return static_cast<double>(rs);
    if (r == rp && i != j) return 0;
    if (r == 0 && i == 1) return 0;
    if (rp == 0 && j == 1) return 0;
    if (r == rp && r != 0 && i == j) return static_cast<double>(rs >> 1);
    if (r == 0 && rp != 0 && i == 0) return static_cast<double>(rs >> 1);
    if (rp == 0 && r != 0 && j == 0) return static_cast<double>(rs >> 1);
    return static_cast<double>(rs >> 2);
  };

  Matrix m(dim, dim);
  for (std::uint64_t r = 0; r < rs; ++r) {
    for (int i = 0; i < 2; ++i) {
      for (std::uint64_t rp = 0; rp < rs; ++rp) {
        for (int j = 0; j < 2; ++j) {
          m(static_cast<Eigen::Index>((r << 1) | static_cast<std::uint64_t>(i)),
            static_cast<Eigen::Index>((rp << 1) | static_cast<std::uint64_t>(j))) =
              scale * coeff(r, rp, i, j);
        }
      }
    }
  }

  Matrix ensemble = Matrix::Zero(dim, dim);
  const double px = 1.0 / static_cast<double>(rs);
  for (std::uint64_t x = 0; x < rs; ++x) {
    Vector phi = ip_first_message(n, x);
    ensemble.noalias() += px * (phi * phi.adjoint());
  }
  double dev = (m - ensemble).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw std::logic_error("coefficient table disagrees with the ensemble construction by " +
                           std::to_string(dev));
  }
  return DensityMatrix(RegisterLayout({{"Q", n}, {"R", 1}}), std::move(m));
}

std::vector<double> gram_spectrum_oracle(int n) {
  check_n(n, 16);
  const double pow2n = std::pow(2.0, n);
  std::vector<double> spectrum;
  spectrum.reserve(static_cast<std::size_t>(pow2n));
  spectrum.push_back((pow2n + 1.0) / (2.0 * pow2n));
  const double rest = 1.0 / (2.0 * pow2n);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) spectrum.push_back(rest);
  return spectrum;
}

double gram_spectrum_entropy(int n) {
  return entropy_of_spectrum(gram_spectrum_oracle(n));
}

std::vector<IpReferenceRow> theoretical_ip_table(int n) {
  check_n(n, 16);
  const double half_n = n / 2.0;
  const double gram = gram_spectrum_entropy(n);
  const double lb = 1.0 - std::pow(2.0, -n);
  std::vector<IpReferenceRow> rows;
  rows.push_back({"L_A", half_n + 0.5, gram, "closed form: averaged first-message entropy"});
  rows.push_back({"L_B", 1.0, lb, "closed form: 1 - 2^-n"});
  rows.push_back({"SIC_A", half_n + 0.5, gram, "closed form: equals L_A"});
  rows.push_back({"SIC_B", half_n + 0.5, std::nullopt, "asymptotic claim only"});
  rows.push_back({"QIC_A", half_n + 0.5, gram, "closed form: equals L_A"});
  rows.push_back({"QIC_B", half_n + 1.5, std::nullopt, "asymptotic claim only"});
  for (IpReferenceRow& row : rows) {
    row.provenance += "; asymptotic value stated up to exponentially small terms";
  }
  return rows;
}

Protocol build_ip_tradeoff(int n, int t) {
  check_n(n, kIpMaxN);
  if (t < 0 || t > n) throw std::invalid_argument("t out of range [0, n]");
  const int u = n - t;

  Protocol p;
  p.name = "ip-tradeoff-n" + std::to_string(n) + "-t" + std::to_string(t);
  p.alphabet = {{bitstrings(n), bitstrings(n)}};
  p.layout = RegisterLayout({{"Q1", t}, {"R1", 1}, {"Q2", u}, {"R2", 1}});
  p.initial_ownership = {{std::vector<std::string>{"Q1", "R1"},
                          std::vector<std::string>{"Q2", "R2"}}};
  p.input_width = {n, n};
  p.input_encoder = {bits_to_index, bits_to_index};

  auto prefix = [t](const std::string& s) { return bits_to_index(s.substr(0, t)); };
  auto suffix = [t](const std::string& s) { return bits_to_index(s.substr(t)); };

  auto sub_prep = [](std::vector<std::string> regs, int bits, std::uint64_t input) {
    PrepOp prep;
    prep.regs = std::move(regs);
    prep.amplitudes = ip_first_message(bits, input);
    return prep;
  };
  auto sub_uncompute = [](std::vector<std::string> regs, int bits, std::uint64_t input) {
    PermuteOp op = uncompute_dot(bits, input);
    op.regs = std::move(regs);
    return op;
  };

  // First invocation on the leading t bits, standard roles.
  Round r1;
  r1.sender = Party::P0;
  r1.steps = [=](const std::string& x) {
    return std::vector<StepOp>{sub_prep({"Q1", "R1"}, t, prefix(x))};
  };
  r1.message = {"Q1", "R1"};
  p.rounds.push_back(std::move(r1));

  Round r2;
  r2.sender = Party::P1;
  r2.steps = [=](const std::string& y) {
    return std::vector<StepOp>{xor_permutation({"Q1"}, t, prefix(y))};
  };
  r2.message = {"Q1", "R1"};
  p.rounds.push_back(std::move(r2));

  // P0 finishes the first invocation locally; the round carries no message.
  Round r3;
  r3.sender = Party::P0;
  r3.steps = [=](const std::string& x) {
    return std::vector<StepOp>{sub_uncompute({"Q1", "R1"}, t, prefix(x))};
  };
  p.rounds.push_back(std::move(r3));

  // Second invocation on the trailing n-t bits with roles swapped.
  Round r4;
  r4.sender = Party::P1;
  r4.steps = [=](const std::string& y) {
    return std::vector<StepOp>{sub_prep({"Q2", "R2"}, u, suffix(y))};
  };
  r4.message = {"Q2", "R2"};
  p.rounds.push_back(std::move(r4));

  Round r5;
  r5.sender = Party::P0;
  r5.steps = [=](const std::string& x) {
    return std::vector<StepOp>{xor_permutation({"Q2"}, u, suffix(x))};
  };
  r5.message = {"Q2", "R2"};
  p.rounds.push_back(std::move(r5));

  // P1 decodes his sub-result and forwards the outcome bit.
  Round r6;
  r6.sender = Party::P1;
  r6.steps = [=](const std::string& y) {
    return std::vector<StepOp>{sub_uncompute({"Q2", "R2"}, u, suffix(y))};
  };
  r6.message = {"R2"};
  p.rounds.push_back(std::move(r6));

  p.decoder.party = Party::P0;
  p.decoder.measure = {"R1", "R2"};
  p.decoder.interpret = [](const std::string&, std::uint64_t outcome) {
    return static_cast<int>((outcome ^ (outcome >> 1)) & 1);
  };
  return p;
}

}  // namespace qpriv
