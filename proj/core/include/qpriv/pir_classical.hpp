// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qpriv {

// Two-round ell-server scheme: shared randomness r maps to one query per
// server, servers answer from (query, database), a reconstructor recovers
// x_i. Queries and answers are bit fields packed most-significant-bit first;
// database bit j (1-based) sits at position n - j.
struct ClassicalPirScheme {
  std::string name;
  int ell = 0;          // server count
  int n = 0;            // database bits
  int query_bits = 0;   // m_q
  int answer_bits = 0;  // m_a
  std::uint64_t randomness_count = 0;  // |R|

  // server is 1-based; i is the 1-based target index.
  std::function<std::uint64_t(std::uint64_t r, int i, int server)> query;
  std::function<std::uint64_t(int server, std::uint64_t q, std::uint64_t x)> answer;
  std::function<int(int i, std::uint64_t r, const std::vector<std::uint64_t>& answers)>
      reconstruct;

  int total_communication_bits() const { return ell * (query_bits + answer_bits); }
};

inline int database_bit(std::uint64_t x, int n, int j) {
  return static_cast<int>((x >> (n - j)) & 1);
}

// r encodes a subset S of [n]; server 1 sees S, server 2 sees S toggled at i;
// both answer the parity of their indexed bits, whose XOR is x_i.
ClassicalPirScheme two_server_xor_scheme(int n);

// 2^d servers over the d-cube decomposition n = m^d; server epsilon sees the
// per-axis subsets toggled according to its bits and answers the parity of x
// over the product subcube. d=1 degenerates to the two-server scheme.
ClassicalPirScheme cube_scheme(int n, int d);

struct SchemeVerdict {
  bool ok = false;
  bool correct = false;
  bool queries_index_independent = false;
  bool queries_uniform_on_support = false;  // exact counts, per server and index
  double max_tv_distance = 0;  // over servers and index pairs, exact counts
  std::uint64_t cases_checked = 0;
  std::string detail;
};

// Exhaustive correctness over (x, i, r) plus exact per-server query
// distribution comparison across indices. Requires R * 2^n <= 2^24.
SchemeVerdict verify_scheme(const ClassicalPirScheme& scheme);

}  // namespace qpriv
