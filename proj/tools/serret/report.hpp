#pragma once

// Report container shared by every subcommand, with JSON, CSV and text
// renderers. Numeric fields are always decimal strings.

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "serret/numkernel.hpp"

namespace serret::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

struct Report {
  std::string command;
  Json params = Json::object();
  int digits = 0;
  std::vector<Json> results;
  std::vector<std::string> citations;
  std::string summary;
  int exit_code = 0;

  std::string number(const BigReal& x) const { return to_decimal(x, digits); }
};

inline Json to_json(const Report& r) {
  Json out = Json::object();
  out["command"] = r.command;
  out["params"] = r.params;
  out["digits"] = std::to_string(r.digits);
  out["results"] = r.results;
  out["citations"] = r.citations;
  if (!r.summary.empty()) out["summary"] = r.summary;
  return out;
}

namespace detail {

inline std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += cell_text(v[i]);
    }
    return s;
  }
  if (v.is_null()) return "";
  return v.dump();
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Header is the union of row keys in order of first appearance.
inline std::string to_csv(const Report& r) {
  std::vector<std::string> columns;
  for (const auto& row : r.results) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + detail::csv_quote(columns[i]);
  out += "\n";
  for (const auto& row : r.results) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (row.contains(columns[i])) out += detail::csv_quote(detail::cell_text(row.at(columns[i])));
    }
    out += "\n";
  }
  return out;
}

inline std::string to_text(const Report& r) {
  std::string out = r.command + " (" + std::to_string(r.digits) + " digits)\n";
  for (const auto& [key, value] : r.params.items()) out += "  " + key + " = " + detail::cell_text(value) + "\n";
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    out += "\n[" + std::to_string(i) + "]\n";
    std::size_t width = 0;
    for (const auto& [key, value] : r.results[i].items()) width = std::max(width, key.size());
    for (const auto& [key, value] : r.results[i].items()) {
      out += "  " + key + std::string(width - key.size(), ' ') + "  " + detail::cell_text(value) + "\n";
    }
  }
  if (!r.citations.empty()) {
    out += "\nformulas:\n";
    for (const auto& c : r.citations) out += "  " + c + "\n";
  }
  if (!r.summary.empty()) out += "\n" + r.summary + "\n";
  return out;
}

inline std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::csv: return to_csv(r);
    case Format::text: return to_text(r);
    default: return to_json(r).dump(2) + "\n";
  }
}

}  // namespace serret::cli
