// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "qpriv/inner_product.hpp"
#include "qpriv/privacy.hpp"

using namespace qpriv;

TEST_CASE("protocol output equals the inner product, exhaustively") {
  for (int n = 1; n <= 3; ++n) {
    Protocol p = build_ip_protocol(n);
    for (const std::string& x : p.alphabet[0]) {
      for (const std::string& y : p.alphabet[1]) {
        RunResult run = run_honest(p, x, y);
        CHECK(run.output == dot2(bits_to_index(x), bits_to_index(y)));
        CHECK(run.output_probability >= 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("spot checks from the protocol description") {
  Protocol p2 = build_ip_protocol(2);
  CHECK(run_honest(p2, "11", "11").output == 0);
  Protocol p4 = build_ip_protocol(4);
  CHECK(run_honest(p4, "1011", "1101").output == 0);
  CHECK(run_honest(p4, "1011", "1101").output_probability >= 1.0 - 1e-9);
}

TEST_CASE("pre-measurement state is the uniform register next to the answer bit") {
  const int n = 2;
  Protocol p = build_ip_protocol(n);
  for (const std::string& x : p.alphabet[0]) {
    for (const std::string& y : p.alphabet[1]) {
      RunResult run = run_honest(p, x, y);
      const int bit = dot2(bits_to_index(x), bits_to_index(y));
      Vector expected = Vector::Zero(8);
      const double a = 0.5;  // 1/sqrt(2^n)
      for (std::uint64_t r = 0; r < 4; ++r) {
        expected[static_cast<Eigen::Index>((r << 1) | static_cast<std::uint64_t>(bit))] = a;
      }
      PureState want(p.layout, std::move(expected));
      CHECK(fidelity(run.decoded_state, want) >= 1.0 - 1e-10);
    }
  }
}

TEST_CASE("analytic first message: coefficient table entries") {
  for (int n = 1; n <= 6; ++n) {
    // Construction throws if the table and the ensemble disagree beyond 1e-10.
    DensityMatrix m1 = analytic_m1(n);
    const double top = std::pow(2.0, -n);
    CHECK(std::abs(m1.matrix()(0, 0) - Complex(top, 0)) < 1e-12);  // r=r'=i=j=0
    // r = r' with i != j vanishes; entry ((0,0),(0,1)) is such a pair.
    CHECK(std::abs(m1.matrix()(0, 1)) < 1e-12);
    CHECK(std::abs(m1.matrix().trace() - Complex(1, 0)) < 1e-10);
  }
}

TEST_CASE("analytic first message entropy equals the spectrum oracle") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(von_neumann_entropy(analytic_m1(n)) ==
          doctest::Approx(gram_spectrum_entropy(n)).epsilon(1e-9));
  }
}

TEST_CASE("round-1 message marginal reproduces the analytic matrix in every mode") {
  for (int n : {1, 2}) {
    Protocol p = build_ip_protocol(n);
    JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);
    DensityMatrix m1 = analytic_m1(n);

    CqState cls = round_state(p, AnalysisMode::classical(mu), 1);
    Matrix avg = Matrix::Zero(m1.matrix().rows(), m1.matrix().cols());
    for (const auto& member : cls.members()) {
      const PureState& ps = std::get<PureState>(member.state);
      avg += member.prob * partial_trace(ps, {"Q", "R"}).matrix();
    }
    CHECK((avg - m1.matrix()).cwiseAbs().maxCoeff() < 1e-10);

    CqState pur = round_state(p, AnalysisMode::purified(mu), 1);
    const PureState& global = std::get<PureState>(pur.members()[0].state);
    DensityMatrix purified_marginal = partial_trace(global, {"Q", "R"});
    CHECK((purified_marginal.matrix() - m1.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("spectrum oracle frozen values") {
  auto s1 = gram_spectrum_oracle(1);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(s1[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gram_spectrum_entropy(1) ==
        doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-12));

  auto s2 = gram_spectrum_oracle(2);
  REQUIRE(s2.size() == 4);
  CHECK(s2[0] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(s2[1] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(gram_spectrum_entropy(2) ==
        doctest::Approx(0.625 * (3.0 - std::log2(5.0)) + 1.125).epsilon(1e-12));

  for (int n = 1; n <= 16; ++n) {
    double sum = 0;
    for (double v : gram_spectrum_oracle(n)) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reference table carries both constants") {
  auto rows = theoretical_ip_table(4);
  REQUIRE(rows.size() == 6);
  CHECK(rows[1].quantity == "L_B");
  CHECK(rows[1].asymptotic == doctest::Approx(1.0));
  CHECK(*rows[1].closed_form == doctest::Approx(1.0 - std::pow(2.0, -4)).epsilon(1e-12));
  CHECK(rows[5].quantity == "QIC_B");
  CHECK(rows[5].asymptotic == doctest::Approx(3.5));
  CHECK(rows[0].quantity == "L_A");
  // The averaged-first-message entropy sits above the n/2 + 1/2 claim.
  CHECK(*rows[0].closed_form == doctest::Approx(2.8285353655857572).epsilon(1e-12));
}

TEST_CASE("tradeoff protocol computes the inner product for every split") {
  const int n = 3;
  for (int t = 0; t <= n; ++t) {
    Protocol p = build_ip_tradeoff(n, t);
    for (const std::string& x : p.alphabet[0]) {
      for (const std::string& y : p.alphabet[1]) {
        RunResult run = run_honest(p, x, y);
        CHECK(run.output == dot2(bits_to_index(x), bits_to_index(y)));
        CHECK(run.output_probability >= 1.0 - 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(build_ip_tradeoff(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_ip_tradeoff(3, -1), std::invalid_argument);
}

TEST_CASE("degenerate split equals the plain protocol plus a constant round") {
  JointDistribution mu4 =
      JointDistribution::uniform(bitstrings(4), bitstrings(4));
  Protocol plain = build_ip_protocol(4);
  Protocol degenerate = build_ip_tradeoff(4, 4);
  CHECK(privacy_loss(degenerate, mu4, Party::P0).total ==
        doctest::Approx(privacy_loss(plain, mu4, Party::P0).total).epsilon(1e-9));
  CHECK(privacy_loss(degenerate, mu4, Party::P1).total ==
        doctest::Approx(privacy_loss(plain, mu4, Party::P1).total).epsilon(1e-9));
}

TEST_CASE("tradeoff leak bounds at the middle split") {
  const int n = 4, t = 2;
  Protocol p = build_ip_tradeoff(n, t);
  JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);
  CHECK(privacy_loss(p, mu, Party::P0).total <= t / 2.0 + 1.5 + 1e-9);
  CHECK(privacy_loss(p, mu, Party::P1).total <= (n - t) / 2.0 + 2.5 + 1e-9);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_ip_protocol(0), std::invalid_argument);
  CHECK_THROWS_AS(build_ip_protocol(7), std::invalid_argument);
  CHECK_THROWS_AS(analytic_m1(9), std::invalid_argument);
  CHECK_THROWS_AS(gram_spectrum_oracle(17), std::invalid_argument);
}
