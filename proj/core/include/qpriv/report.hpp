// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpriv/privacy.hpp"

namespace qpriv {

inline constexpr const char* kToolVersion = "1.0.0";

// One named value with optional reference value and provenance. Reference
// rows whose provenance says "asymptotic" are informational, never gating.
struct ValueRow {
  std::string section;
  std::string name;
  double value = 0;
  std::optional<double> reference;
  std::optional<double> delta;
  std::string provenance;
  bool operator==(const ValueRow&) const = default;
};

struct RoundRow {
  std::string quantity;
  std::string side;
  int round = 0;
  double bits = 0;
  bool operator==(const RoundRow&) const = default;
};

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
  bool operator==(const CheckRow&) const = default;
};

struct ReportDocument {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string protocol;
  std::string mode;
  std::vector<ValueRow> values;
  std::vector<RoundRow> round_terms;
  std::vector<CheckRow> checks;
  std::vector<std::string> notes;

  bool passed() const;
  void add_privacy(const PrivacyReport& report, const std::string& display_name);
  // One row per (side, measurement round) of the sweep, named with the
  // given party labels.
  void add_ordering(const OrderingCheck& check,
                    const std::array<std::string, 2>& party_names);
  bool operator==(const ReportDocument&) const = default;
};

// Deterministic serializations: fixed key order, floats printed with 17
// significant digits. Identical documents serialize to identical bytes.
std::string to_json(const ReportDocument& doc);
std::string to_csv(const ReportDocument& doc);
std::string to_table(const ReportDocument& doc);

ReportDocument parse_json_document(const std::string& text);

}  // namespace qpriv
