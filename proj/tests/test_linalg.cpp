// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "qpriv/linalg.hpp"

using namespace qpriv;

namespace {

PureState make_pure(RegisterLayout layout, std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v[i++] = a;
  return PureState(std::move(layout), std::move(v));
}

PureState random_pure(const RegisterLayout& layout, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(layout.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
  v /= v.norm();
  return PureState(layout, std::move(v));
}

// Random mixed state over `layout` obtained by purifying into a sacrificial
// register of the same width and tracing it out.
DensityMatrix random_mixed(const RegisterLayout& layout, std::mt19937& rng) {
  RegisterLayout doubled = RegisterLayout::concat(
      layout, RegisterLayout({{"_purifier", layout.total_width()}}));
  PureState big = random_pure(doubled, rng);
  return partial_trace(big, layout.names());
}

const double kLog3 = std::log2(3.0);  // reused in hand-frozen entropies

}  // namespace

TEST_CASE("tensor products follow the big-endian convention") {
  RegisterLayout a({{"A", 1}});
  RegisterLayout b({{"B", 1}});
  PureState zero = PureState::basis(a, 0);
  PureState one = PureState::basis(b, 1);

  PureState zo = tensor(zero, one);
  CHECK(zo.dim() == 4);
  CHECK(std::abs(zo.amplitudes()[1] - Complex(1, 0)) < 1e-15);  // |01>

  const double s = 1.0 / std::sqrt(2.0);
  PureState plus_a = make_pure(a, {s, s});
  PureState plus_b = make_pure(b, {s, s});
  PureState pp = tensor(plus_a, plus_b);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(pp.amplitudes()[i] - Complex(0.5, 0)) < 1e-12);
  }

  Matrix half = 0.5 * Matrix::Identity(2, 2);
  DensityMatrix mixed(a, half);
  DensityMatrix prod = tensor(mixed, PureState::basis(b, 0).to_density());
  CHECK(std::abs(prod.matrix()(0, 0) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(prod.matrix()(1, 1)) < 1e-12);
  CHECK(std::abs(prod.matrix()(2, 2) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(prod.matrix()(3, 3)) < 1e-12);
}

TEST_CASE("tensor rejects width-cap violations and duplicate names") {
  RegisterLayout big({{"A", 12}});
  RegisterLayout more({{"B", 10}});
  // 22 qubits in total: the layout constructor must refuse.
  CHECK_THROWS_AS(RegisterLayout::concat(big, more), std::invalid_argument);
  RegisterLayout dup({{"A", 1}});
  CHECK_THROWS_AS(RegisterLayout::concat(big, dup), std::invalid_argument);
}

TEST_CASE("partial trace of the Bell pair is maximally mixed") {
  RegisterLayout qr({{"Q", 1}, {"R", 1}});
  const double s = 1.0 / std::sqrt(2.0);
  PureState bell = make_pure(qr, {s, 0, 0, s});
  for (const char* keep : {"Q", "R"}) {
    DensityMatrix red = partial_trace(bell, {keep});
    CHECK((red.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace of a product basis state") {
  RegisterLayout ab({{"A", 1}, {"B", 1}});
  PureState s01 = PureState::basis(ab, 1);  // |01>
  DensityMatrix red = partial_trace(s01, {"A"});
  CHECK(std::abs(red.matrix()(0, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(red.matrix()(1, 1)) < 1e-12);
}

TEST_CASE("partial trace of the n=1 first message removes the answer register") {
  // (1/sqrt 2)(|0>_Q |0>_R + |1>_Q |1>_R) for x = 1: register Q reduces to I/2.
  RegisterLayout qr({{"Q", 1}, {"R", 1}});
  const double s = 1.0 / std::sqrt(2.0);
  PureState phi = make_pure(qr, {s, 0, 0, s});
  DensityMatrix q = partial_trace(phi, {"Q"});
  CHECK((q.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace preserves trace on random inputs") {
  std::mt19937 rng(42);
  RegisterLayout layout({{"A", 2}, {"B", 1}, {"C", 2}});
  for (int it = 0; it < 20; ++it) {
    DensityMatrix rho = random_mixed(layout, rng);
    DensityMatrix red = partial_trace(rho, {"A", "C"});
    CHECK(std::abs(red.matrix().trace().real() - 1.0) < 1e-10);
    CHECK(std::abs(red.matrix().trace().imag()) < 1e-12);
  }
}

TEST_CASE("unknown register names are rejected") {
  RegisterLayout layout({{"A", 1}, {"B", 1}});
  std::mt19937 rng(3);
  DensityMatrix rho = random_mixed(layout, rng);
  CHECK_THROWS_AS(partial_trace(rho, {"Z"}), std::invalid_argument);
}

TEST_CASE("entropy of pure and maximally mixed states") {
  RegisterLayout q({{"Q", 1}});
  std::mt19937 rng(7);
  PureState psi = random_pure(q, rng);
  CHECK(von_neumann_entropy(psi.to_density()) == doctest::Approx(0.0).epsilon(1e-9));
  DensityMatrix half(q, 0.5 * Matrix::Identity(2, 2));
  CHECK(von_neumann_entropy(half) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy of the {3/4, 1/4} spectrum") {
  // -3/4 log(3/4) - 1/4 log(1/4) = 2 - (3/4) log 3 = 0.811278124459133.
  RegisterLayout qr({{"Q", 1}, {"R", 1}});
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  DensityMatrix rho(qr, m);
  const double expected = 2.0 - 0.75 * kLog3;
  CHECK(std::abs(expected - 0.811278124459133) < 1e-14);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("entropy stays within [0, width] on random states") {
  std::mt19937 rng(11);
  RegisterLayout layout({{"A", 1}, {"B", 2}});
  for (int it = 0; it < 20; ++it) {
    DensityMatrix rho = random_mixed(layout, rng);
    double s = von_neumann_entropy(rho);
    CHECK(s >= -1e-9);
    CHECK(s <= layout.total_width() + 1e-9);
  }
}

TEST_CASE("non-Hermitian and trace-deficient matrices are rejected") {
  RegisterLayout q({{"Q", 1}});
  Matrix bad(2, 2);
  bad << Complex(0.5, 0), Complex(0.5, 0.2), Complex(0.1, 0), Complex(0.5, 0);
  CHECK_THROWS_AS(DensityMatrix(q, bad), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(q, 0.7 * Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("eigenvalues below the validity floor are rejected") {
  RegisterLayout q({{"Q", 1}});
  Matrix m(2, 2);
  m << Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0);
  DensityMatrix rho(q, m);  // Hermitian, unit trace, but not positive
  CHECK_THROWS_AS(eigenvalues(rho), std::domain_error);
}

TEST_CASE("mutual information vanishes on product states and is 1 for a copied bit") {
  std::mt19937 rng(5);
  RegisterLayout a({{"A", 1}});
  RegisterLayout b({{"B", 2}});
  DensityMatrix prod = tensor(random_mixed(a, rng), random_mixed(b, rng));
  CHECK(std::abs(mutual_information(prod, {"A"}, {"B"})) < 1e-9);

  RegisterLayout ab({{"A", 1}, {"B", 1}});
  Matrix copy = Matrix::Zero(4, 4);
  copy(0, 0) = 0.5;
  copy(3, 3) = 0.5;
  CHECK(mutual_information(DensityMatrix(ab, copy), {"A"}, {"B"}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditional mutual information of the GHZ state") {
  RegisterLayout abc({{"A", 1}, {"B", 1}, {"C", 1}});
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(8);
  v[0] = s;
  v[7] = s;
  DensityMatrix ghz = PureState(abc, std::move(v)).to_density();
  // S(AC) = S(BC) = S(C) = 1 and S(ABC) = 0.
  CHECK(conditional_mutual_information(ghz, {"A"}, {"B"}, {"C"}) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("overlapping register sets are rejected") {
  RegisterLayout abc({{"A", 1}, {"B", 1}, {"C", 1}});
  std::mt19937 rng(9);
  DensityMatrix rho = random_mixed(abc, rng);
  CHECK_THROWS_AS(conditional_mutual_information(rho, {"A"}, {"A"}, {"C"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(conditional_mutual_information(rho, {"A"}, {"B"}, {"B"}),
                  std::invalid_argument);
}

TEST_CASE("strong subadditivity holds on random three-register states") {
  std::mt19937 rng(13);
  RegisterLayout layout({{"A", 1}, {"B", 1}, {"C", 1}});
  for (int it = 0; it < 30; ++it) {
    DensityMatrix rho = random_mixed(layout, rng);
    CHECK(conditional_mutual_information(rho, {"A"}, {"B"}, {"C"}) >= -1e-9);
  }
}

TEST_CASE("cq entropy of simple ensembles") {
  RegisterLayout q({{"Q", 1}});
  std::vector<CqState::Member> members;
  members.push_back({{"0"}, 0.5, PureState::basis(q, 0)});
  members.push_back({{"1"}, 0.5, PureState::basis(q, 1)});
  CqState uniform2({"X"}, q, members);
  // One classical bit carried by orthogonal pure states.
  CHECK(cq_entropy(uniform2, {"X", "Q"}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cq_entropy(uniform2, {"X"}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cq_entropy(uniform2, {"Q"}) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<CqState::Member> single;
  single.push_back({{"only"}, 1.0, DensityMatrix(q, 0.5 * Matrix::Identity(2, 2))});
  CqState one_label({"X"}, q, single);
  CHECK(cq_entropy(one_label, {"X", "Q"}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cq_entropy(one_label, {"X"}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("classical-only registers work through the ensemble path") {
  // Two perfectly correlated classical bits and no quantum part at all.
  RegisterLayout trivial;
  Vector unit(1);
  unit[0] = 1.0;
  std::vector<CqState::Member> members;
  members.push_back({{"0", "0"}, 0.5, PureState(trivial, unit)});
  members.push_back({{"1", "1"}, 0.5, PureState(trivial, unit)});
  CqState cq({"A", "B"}, trivial, members);
  CHECK(cq_entropy(cq, {"A"}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cq_entropy(cq, {"A", "B"}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conditional_mutual_information(cq, {"A"}, {"B"}, {}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cq entropy name validation") {
  RegisterLayout q({{"Q", 1}});
  std::vector<CqState::Member> members;
  members.push_back({{"a"}, 1.0, PureState::basis(q, 0)});
  CqState cq({"X"}, q, members);
  CHECK_THROWS_AS(cq_entropy(cq, {"Nope"}), std::invalid_argument);
}

// The central consistency property: the grouped block-diagonal shortcut must
// agree with the entropy of the explicitly assembled joint matrix, for every
// register subset, on random ensembles.
TEST_CASE("cq entropy equals the assembled block-diagonal matrix entropy") {
  std::mt19937 rng(2025);
  RegisterLayout layout({{"A", 1}, {"B", 1}});
  const int label_count = 4;  // two classical "registers" of one bit each

  for (int trial = 0; trial < 8; ++trial) {
    std::vector<CqState::Member> members;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> probs;
    double total = 0;
    for (int l = 0; l < label_count; ++l) {
      probs.push_back(u(rng));
      total += probs.back();
    }
    for (int l = 0; l < label_count; ++l) {
      members.push_back({{std::to_string(l / 2), std::to_string(l % 2)}, probs[l] / total,
                         random_pure(layout, rng)});
    }
    CqState cq({"K", "L"}, layout, members);

    // Assemble explicitly: labels become two one-qubit registers.
    RegisterLayout full({{"K", 1}, {"L", 1}, {"A", 1}, {"B", 1}});
    Matrix joint = Matrix::Zero(16, 16);
    for (int l = 0; l < label_count; ++l) {
      const PureState& ps = std::get<PureState>(members[l].state);
      Matrix rho = ps.amplitudes() * ps.amplitudes().adjoint();
      joint.block(4 * l, 4 * l, 4, 4) = members[l].prob * rho;
    }
    DensityMatrix assembled(full, joint);

    const std::vector<std::vector<std::string>> queries = {
        {"K"},      {"L"},      {"A"},           {"B"},
        {"K", "A"}, {"L", "B"}, {"K", "L", "A"}, {"K", "L", "A", "B"},
        {"A", "B"}, {"K", "B"}, {"L", "A", "B"}};
    for (const auto& regs : queries) {
      double direct = von_neumann_entropy(partial_trace(assembled, regs));
      CHECK(cq_entropy(cq, regs) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("cq entropy handles mixed members the same way") {
  std::mt19937 rng(77);
  RegisterLayout layout({{"A", 1}, {"B", 1}});
  std::vector<CqState::Member> members;
  members.push_back({{"0"}, 0.4, random_mixed(layout, rng)});
  members.push_back({{"1"}, 0.6, random_pure(layout, rng)});
  CqState cq({"X"}, layout, members);

  RegisterLayout full({{"X", 1}, {"A", 1}, {"B", 1}});
  Matrix joint = Matrix::Zero(8, 8);
  joint.block(0, 0, 4, 4) = 0.4 * std::get<DensityMatrix>(members[0].state).matrix();
  const PureState& ps = std::get<PureState>(members[1].state);
  joint.block(4, 4, 4, 4) = 0.6 * (ps.amplitudes() * ps.amplitudes().adjoint());
  DensityMatrix assembled(full, joint);

  for (const auto& regs : std::vector<std::vector<std::string>>{
           {"X"}, {"A"}, {"X", "A"}, {"A", "B"}, {"X", "A", "B"}}) {
    double direct = von_neumann_entropy(partial_trace(assembled, regs));
    CHECK(cq_entropy(cq, regs) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("trace distance basics and frozen values") {
  RegisterLayout q({{"Q", 1}});
  DensityMatrix zero = PureState::basis(q, 0).to_density();
  DensityMatrix one = PureState::basis(q, 1).to_density();
  DensityMatrix half(q, 0.5 * Matrix::Identity(2, 2));
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
  // Eigenvalues of the difference are +1/2 and -1/2.
  CHECK(trace_distance(zero, half) == doctest::Approx(0.5).epsilon(1e-12));

  RegisterLayout two({{"Q", 2}});
  std::mt19937 rng(21);
  CHECK_THROWS_AS(trace_distance(zero, random_mixed(two, rng)), std::invalid_argument);
}

TEST_CASE("trace distance is a metric on sampled triples") {
  std::mt19937 rng(23);
  RegisterLayout layout({{"A", 1}, {"B", 1}});
  for (int it = 0; it < 10; ++it) {
    DensityMatrix a = random_mixed(layout, rng);
    DensityMatrix b = random_mixed(layout, rng);
    DensityMatrix c = random_mixed(layout, rng);
    double ab = trace_distance(a, b);
    double ba = trace_distance(b, a);
    double bc = trace_distance(b, c);
    double ac = trace_distance(a, c);
    CHECK(std::abs(ab - ba) < 1e-9);
    CHECK(ac <= ab + bc + 1e-9);
    CHECK(ab >= -1e-12);
    CHECK(ab <= 1.0 + 1e-9);
  }
}

TEST_CASE("fidelity and purity") {
  RegisterLayout q({{"Q", 1}});
  std::mt19937 rng(31);
  PureState psi = random_pure(q, rng);
  CHECK(fidelity(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(psi.to_density()) == doctest::Approx(1.0).epsilon(1e-10));
  DensityMatrix half(q, 0.5 * Matrix::Identity(2, 2));
  CHECK(purity(half) == doctest::Approx(0.5).epsilon(1e-12));
}
