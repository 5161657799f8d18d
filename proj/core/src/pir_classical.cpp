// SPDX-License-Identifier: Apache-2.0
#include "qpriv/pir_classical.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qpriv/parallel.hpp"

namespace qpriv {

ClassicalPirScheme two_server_xor_scheme(int n) {
  if (n < 1 || n > 24) throw std::invalid_argument("database size out of range");
  ClassicalPirScheme s;
  s.name = "two-server-xor-n" + std::to_string(n);
  s.ell = 2;
  s.n = n;
  s.query_bits = n;
  s.answer_bits = 1;
  s.randomness_count = std::uint64_t{1} << n;
  s.query = [n](std::uint64_t r, int i, int server) -> std::uint64_t {
    return server == 1 ? r : r ^ (std::uint64_t{1} << (n - i));
  };
  s.answer = [](int, std::uint64_t q, std::uint64_t x) -> std::uint64_t {
    return static_cast<std::uint64_t>(std::popcount(q & x) & 1);
  };
  s.reconstruct = [](int, std::uint64_t, const std::vector<std::uint64_t>& answers) -> int {
    return static_cast<int>((answers[0] ^ answers[1]) & 1);
  };
  return s;
}

namespace {

// i - 1 written in base m, most significant digit first; digits are 1-based.
std::vector<int> cube_digits(int i, int m, int d) {
  std::vector<int> digits(static_cast<std::size_t>(d));
  int v = i - 1;
  for (int k = d - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = v % m + 1;
    v /= m;
  }
  return digits;
}

}  // namespace

ClassicalPirScheme cube_scheme(int n, int d) {
  if (d < 1 || d > 4) throw std::invalid_argument("cube dimension out of range");
  const int m = static_cast<int>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
  bool exact = false;
  for (int c : {m - 1, m, m + 1}) {
    if (c >= 1) {
      std::int64_t p = 1;
      for (int k = 0; k < d; ++k) p *= c;
      if (p == n) exact = true;
    }
  }
  std::int64_t mp = 1;
  for (int k = 0; k < d; ++k) mp *= m;
  if (!exact || mp != n) {
    throw std::invalid_argument(std::to_string(n) + " is not a perfect " + std::to_string(d) +
                                "-th power");
  }
  if (d * m > 24 || n > 24) throw std::invalid_argument("cube size out of range");

  ClassicalPirScheme s;
  s.name = "cube-n" + std::to_string(n) + "-d" + std::to_string(d);
  s.ell = 1 << d;
  s.n = n;
  s.query_bits = d * m;
  s.answer_bits = 1;
  s.randomness_count = std::uint64_t{1} << (d * m);

  // Query fields: the per-axis subsets S_1..S_d, each m bits, S_1 first.
  s.query = [m, d](std::uint64_t r, int i, int server) -> std::uint64_t {
    std::vector<int> digits = cube_digits(i, m, d);
    const int eps = server - 1;
    std::uint64_t q = r;
    for (int k = 1; k <= d; ++k) {
      const int eps_k = (eps >> (d - k)) & 1;
      if (eps_k) {
        const int field_shift = (d - k) * m;
        q ^= std::uint64_t{1} << (field_shift + m - digits[static_cast<std::size_t>(k - 1)]);
      }
    }
    return q;
  };

  // Parity of x over the product subcube, via the characteristic mask: the
  // innermost axis pattern is shifted into place once per chosen element of
  // each outer axis, so the mask costs O(d * m) bit operations.
  s.answer = [m, d](int, std::uint64_t q, std::uint64_t x) -> std::uint64_t {
    const std::uint64_t axis_mask = (std::uint64_t{1} << m) - 1;
    std::uint64_t mask = q & axis_mask;  // subset of the last axis
    int block = 1;
    for (int k = d - 1; k >= 1; --k) {
      block *= m;
      const std::uint64_t chi = (q >> ((d - k) * m)) & axis_mask;
      std::uint64_t lifted = 0;
      for (int j = 1; j <= m; ++j) {
        if ((chi >> (m - j)) & 1) lifted |= mask << ((m - j) * block);
      }
      mask = lifted;
    }
    return static_cast<std::uint64_t>(std::popcount(x & mask) & 1);
  };

  s.reconstruct = [](int, std::uint64_t, const std::vector<std::uint64_t>& answers) -> int {
    std::uint64_t v = 0;
    for (std::uint64_t a : answers) v ^= a;
    return static_cast<int>(v & 1);
  };
  return s;
}

SchemeVerdict verify_scheme(const ClassicalPirScheme& scheme) {
  const std::uint64_t db_count = std::uint64_t{1} << scheme.n;
  if (scheme.randomness_count > (std::uint64_t{1} << 24) / db_count) {
    throw std::invalid_argument("exhaustion budget exceeded: R * 2^n > 2^24");
  }

  SchemeVerdict verdict;
  std::vector<char> index_ok(static_cast<std::size_t>(scheme.n), 0);
  std::vector<std::uint64_t> index_cases(static_cast<std::size_t>(scheme.n), 0);

  parallel_for(static_cast<std::size_t>(scheme.n), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    bool ok = true;
    std::uint64_t cases = 0;
    std::vector<std::uint64_t> queries(static_cast<std::size_t>(scheme.ell));
    std::vector<std::uint64_t> answers(static_cast<std::size_t>(scheme.ell));
    for (std::uint64_t r = 0; r < scheme.randomness_count && ok; ++r) {
      for (int srv = 1; srv <= scheme.ell; ++srv) {
        queries[static_cast<std::size_t>(srv - 1)] = scheme.query(r, i, srv);
      }
      for (std::uint64_t x = 0; x < db_count; ++x) {
        for (int srv = 1; srv <= scheme.ell; ++srv) {
          answers[static_cast<std::size_t>(srv - 1)] =
              scheme.answer(srv, queries[static_cast<std::size_t>(srv - 1)], x);
        }
        ++cases;
        if (scheme.reconstruct(i, r, answers) != database_bit(x, scheme.n, i)) {
          ok = false;
          break;
        }
      }
    }
    index_ok[idx] = ok ? 1 : 0;
    index_cases[idx] = cases;
  });

  verdict.correct = true;
  for (std::size_t idx = 0; idx < index_ok.size(); ++idx) {
    verdict.correct = verdict.correct && index_ok[idx] != 0;
    verdict.cases_checked += index_cases[idx];
  }

  // Exact query-count tabulation per (server, index); identical count maps
  // mean total-variation distance exactly zero.
  double max_tv = 0;
  bool uniform = true;
  for (int srv = 1; srv <= scheme.ell; ++srv) {
    std::vector<std::map<std::uint64_t, std::uint64_t>> counts(
        static_cast<std::size_t>(scheme.n));
    for (int i = 1; i <= scheme.n; ++i) {
      for (std::uint64_t r = 0; r < scheme.randomness_count; ++r) {
        ++counts[static_cast<std::size_t>(i - 1)][scheme.query(r, i, srv)];
      }
      for (const auto& [q, c] : counts[static_cast<std::size_t>(i - 1)]) {
        uniform = uniform && c == counts[static_cast<std::size_t>(i - 1)].begin()->second;
      }
    }
    for (int i = 0; i < scheme.n; ++i) {
      for (int j = i + 1; j < scheme.n; ++j) {
        const auto& a = counts[static_cast<std::size_t>(i)];
        const auto& b = counts[static_cast<std::size_t>(j)];
        std::map<std::uint64_t, std::int64_t> delta;
        for (const auto& [q, c] : a) delta[q] += static_cast<std::int64_t>(c);
        for (const auto& [q, c] : b) delta[q] -= static_cast<std::int64_t>(c);
        std::uint64_t l1 = 0;
        for (const auto& [q, dv] : delta) l1 += static_cast<std::uint64_t>(std::abs(dv));
        max_tv = std::max(max_tv, 0.5 * static_cast<double>(l1) /
                                      static_cast<double>(scheme.randomness_count));
      }
    }
  }
  verdict.max_tv_distance = max_tv;
  verdict.queries_index_independent = max_tv == 0.0;
  verdict.queries_uniform_on_support = uniform;
  verdict.ok = verdict.correct && verdict.queries_index_independent;
  verdict.detail = verdict.ok ? "correct; per-server query distributions independent of i"
                              : (verdict.correct ? "queries leak the index" : "reconstruction fails");
  return verdict;
}

}  // namespace qpriv
