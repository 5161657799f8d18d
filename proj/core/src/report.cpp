// SPDX-License-Identifier: Apache-2.0
#include "qpriv/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qpriv {

namespace {

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void emit_str(std::string& out, const std::string& s) {
  out += '"';
  out += json_escape(s);
  out += '"';
}

void emit_opt(std::string& out, const std::optional<double>& v) {
  if (v) {
    out += fmt_double(*v);
  } else {
    out += "null";
  }
}

}  // namespace

bool ReportDocument::passed() const {
  for (const CheckRow& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void ReportDocument::add_privacy(const PrivacyReport& report, const std::string& display_name) {
  values.push_back(ValueRow{"privacy", display_name, report.total, std::nullopt, std::nullopt,
                            "computed"});
  for (const RoundTerm& t : report.terms) {
    round_terms.push_back(RoundRow{display_name, report.side_name, t.round, t.bits});
  }
  for (const std::string& n : report.notes) {
    notes.push_back(display_name + ": " + n);
  }
}

void ReportDocument::add_ordering(const OrderingCheck& check,
                                  const std::array<std::string, 2>& party_names) {
  for (const OrderingCheck::Entry& e : check.entries) {
    const std::string& who = party_names[static_cast<int>(e.side)];
    const std::string m =
        e.measurement_round ? "m=" + std::to_string(*e.measurement_round) : "never measured";
    values.push_back(ValueRow{"ordering", "SIC " + who + " (" + m + ")", e.sic, e.qic,
                              e.sic - e.qic, "superposed value vs environment bound"});
  }
  for (Party side : {Party::P0, Party::P1}) {
    for (const OrderingCheck::Entry& e : check.entries) {
      if (e.side != side) continue;
      const std::string& who = party_names[static_cast<int>(side)];
      values.push_back(ValueRow{"ordering", "L " + who, e.l, std::nullopt, std::nullopt,
                                "classical input registers"});
      values.push_back(ValueRow{"ordering", "QIC " + who, e.qic, std::nullopt, std::nullopt,
                                "purified input registers"});
      break;
    }
  }
}

std::string to_json(const ReportDocument& doc) {
  std::string out;
  out += "{\n";
  out += "  \"tool_version\": ";
  emit_str(out, doc.tool_version);
  out += ",\n  \"command\": ";
  emit_str(out, doc.command);
  out += ",\n  \"protocol\": ";
  emit_str(out, doc.protocol);
  out += ",\n  \"mode\": ";
  emit_str(out, doc.mode);
  out += ",\n  \"values\": [";
  for (std::size_t i = 0; i < doc.values.size(); ++i) {
    const ValueRow& r = doc.values[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"section\": ";
    emit_str(out, r.section);
    out += ", \"name\": ";
    emit_str(out, r.name);
    out += ", \"value\": " + fmt_double(r.value);
    out += ", \"reference\": ";
    emit_opt(out, r.reference);
    out += ", \"delta\": ";
    emit_opt(out, r.delta);
    out += ", \"provenance\": ";
    emit_str(out, r.provenance);
    out += "}";
  }
  out += doc.values.empty() ? "],\n" : "\n  ],\n";
  out += "  \"round_terms\": [";
  for (std::size_t i = 0; i < doc.round_terms.size(); ++i) {
    const RoundRow& r = doc.round_terms[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"quantity\": ";
    emit_str(out, r.quantity);
    out += ", \"side\": ";
    emit_str(out, r.side);
    out += ", \"round\": " + std::to_string(r.round);
    out += ", \"bits\": " + fmt_double(r.bits);
    out += "}";
  }
  out += doc.round_terms.empty() ? "],\n" : "\n  ],\n";
  out += "  \"checks\": [";
  for (std::size_t i = 0; i < doc.checks.size(); ++i) {
    const CheckRow& c = doc.checks[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"name\": ";
    emit_str(out, c.name);
    out += ", \"pass\": ";
    out += c.pass ? "true" : "false";
    out += ", \"detail\": ";
    emit_str(out, c.detail);
    out += "}";
  }
  out += doc.checks.empty() ? "],\n" : "\n  ],\n";
  out += "  \"notes\": [";
  for (std::size_t i = 0; i < doc.notes.size(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    emit_str(out, doc.notes[i]);
  }
  out += doc.notes.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string to_csv(const ReportDocument& doc) {
  std::string out =
      "kind,section_or_quantity,name_or_side,round,value,reference,delta,"
      "provenance_or_detail,pass\n";
  for (const ValueRow& r : doc.values) {
    out += "value," + csv_field(r.section) + "," + csv_field(r.name) + ",," +
           fmt_double(r.value) + ",";
    if (r.reference) out += fmt_double(*r.reference);
    out += ",";
    if (r.delta) out += fmt_double(*r.delta);
    out += "," + csv_field(r.provenance) + ",\n";
  }
  for (const RoundRow& r : doc.round_terms) {
    out += "round," + csv_field(r.quantity) + "," + csv_field(r.side) + "," +
           std::to_string(r.round) + "," + fmt_double(r.bits) + ",,,,\n";
  }
  for (const CheckRow& c : doc.checks) {
    out += "check,," + csv_field(c.name) + ",,,,," + csv_field(c.detail) + "," +
           (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string to_table(const ReportDocument& doc) {
  std::ostringstream out;
  out << doc.protocol << "  [" << doc.mode << "]\n";
  if (!doc.values.empty()) {
    out << "  values:\n";
    for (const ValueRow& r : doc.values) {
      out << "    " << r.section << "/" << r.name << " = " << fmt_double(r.value);
      if (r.reference) {
        out << "  (reference " << fmt_double(*r.reference);
        if (r.delta) out << ", delta " << fmt_double(*r.delta);
        out << ")";
      }
      if (!r.provenance.empty()) out << "  -- " << r.provenance;
      out << "\n";
    }
  }
  if (!doc.round_terms.empty()) {
    out << "  per-round terms:\n";
    for (const RoundRow& r : doc.round_terms) {
      out << "    " << r.quantity << " (" << r.side << ") round " << r.round << ": "
          << fmt_double(r.bits) << " bits\n";
    }
  }
  if (!doc.checks.empty()) {
    out << "  checks:\n";
    for (const CheckRow& c : doc.checks) {
      out << "    [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) out << " -- " << c.detail;
      out << "\n";
    }
  }
  for (const std::string& n : doc.notes) {
    out << "  note: " << n << "\n";
  }
  return out.str();
}

ReportDocument parse_json_document(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ReportDocument doc;
  doc.tool_version = j.at("tool_version").get<std::string>();
  doc.command = j.at("command").get<std::string>();
  doc.protocol = j.at("protocol").get<std::string>();
  doc.mode = j.at("mode").get<std::string>();
  for (const auto& r : j.at("values")) {
    ValueRow row;
    row.section = r.at("section").get<std::string>();
    row.name = r.at("name").get<std::string>();
    row.value = r.at("value").get<double>();
    if (!r.at("reference").is_null()) row.reference = r.at("reference").get<double>();
    if (!r.at("delta").is_null()) row.delta = r.at("delta").get<double>();
    row.provenance = r.at("provenance").get<std::string>();
    doc.values.push_back(std::move(row));
  }
  for (const auto& r : j.at("round_terms")) {
    RoundRow row;
    row.quantity = r.at("quantity").get<std::string>();
    row.side = r.at("side").get<std::string>();
    row.round = r.at("round").get<int>();
    row.bits = r.at("bits").get<double>();
    doc.round_terms.push_back(std::move(row));
  }
  for (const auto& c : j.at("checks")) {
    CheckRow row;
    row.name = c.at("name").get<std::string>();
    row.pass = c.at("pass").get<bool>();
    row.detail = c.at("detail").get<std::string>();
    doc.checks.push_back(std::move(row));
  }
  for (const auto& n : j.at("notes")) {
    doc.notes.push_back(n.get<std::string>());
  }
  return doc;
}

}  // namespace qpriv
