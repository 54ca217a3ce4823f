// Copyright 2026 The pricetree Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Aggregation of scored records into rate tables and plot series.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pricetree/eval.hpp"

namespace pricetree::eval {
namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string>& KnownKeys() {
  static const std::vector<std::string> keys = {"ansDepth",      "numVars", "cutDepth",
                                                "compositeName", "order",   "mode",
                                                "variant"};
  return keys;
}

std::string KeyValue(const EvalRecord& r, const std::string& key) {
  if (key == "ansDepth") return std::to_string(r.ans_depth);
  if (key == "numVars") return std::to_string(r.num_vars);
  if (key == "cutDepth") return std::to_string(r.cut_depth);
  if (key == "compositeName") return r.composite_name ? "true" : "false";
  if (key == "order") return r.order;
  if (key == "mode") return std::string(ToString(r.mode));
  if (key == "variant") return std::string(ToString(r.variant));
  Fail(ErrorCode::kInvalidConfig, "unknown group key '" + key + "'");
}

std::optional<long long> AsInt(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

struct KeyLess {
  bool operator()(const std::vector<std::string>& a, const std::vector<std::string>& b) const {
    for (size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
      if (a[k] == b[k]) continue;
      const auto x = AsInt(a[k]);
      const auto y = AsInt(b[k]);
      if (x && y) return *x < *y;
      return a[k] < b[k];
    }
    return a.size() < b.size();
  }
};

// Terminal columns taken by a UTF-8 string (one per code point).
size_t Width(const std::string& s) {
  return static_cast<size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

json RateJson(const Rate& r) { return r.empty() ? json(nullptr) : json(r.value()); }

std::string RateCsv(const Rate& r) {
  if (r.empty()) return "";
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << r.value();
  return out.str();
}

}  // namespace

std::string Rate::Percent() const {
  if (empty()) return "—";
  // Tenths of a percent, rounded half up, in integer arithmetic.
  const int64_t tenths = (2 * num * 1000 + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::vector<std::string> ParseGroupKeys(std::string_view csv) {
  std::vector<std::string> keys;
  size_t start = 0;
  while (start <= csv.size()) {
    const size_t comma = std::min(csv.find(',', start), csv.size());
    std::string key(csv.substr(start, comma - start));
    key.erase(0, key.find_first_not_of(' '));
    key.erase(key.find_last_not_of(' ') + 1);
    if (!key.empty()) {
      if (std::find(KnownKeys().begin(), KnownKeys().end(), key) == KnownKeys().end()) {
        Fail(ErrorCode::kInvalidConfig, "unknown group key '" + key + "'");
      }
      keys.push_back(std::move(key));
    }
    start = comma + 1;
  }
  return keys;
}

MetricsTable Aggregate(const std::vector<EvalRecord>& records,
                       const std::vector<std::string>& group_by) {
  std::map<std::vector<std::string>, CellMetrics, KeyLess> cells;
  for (const EvalRecord& r : records) {
    std::vector<std::string> key;
    for (const std::string& g : group_by) key.push_back(KeyValue(r, g));
    CellMetrics& c = cells[key];
    c.key = key;
    if (r.transport_failed) {
      ++c.excluded;
      continue;
    }
    ++c.n;
    if (r.variant == Variant::kUnanswerable) {
      ++c.unanswerable;
      if (r.outcome == Outcome::kHallucination) ++c.hallucinations;
    } else {
      ++c.answerable;
      if (r.outcome == Outcome::kCorrectAnswer) ++c.correct;
      if (r.outcome == Outcome::kWrongAnswer) ++c.wrong;
      if (r.outcome == Outcome::kFalseUnanswerable) ++c.false_unanswerable;
      if (r.unparseable) ++c.unparseable;
    }
  }
  MetricsTable table;
  table.group_by = group_by;
  for (auto& [key, cell] : cells) table.cells.push_back(std::move(cell));
  return table;
}

std::string FormatTextTable(const MetricsTable& table) {
  std::vector<std::string> header = table.group_by;
  for (const char* h : {"n", "excluded", "hallucination", "accuracy", "false-unans", "unparseable"}) {
    header.emplace_back(h);
  }
  std::vector<std::vector<std::string>> rows;
  for (const CellMetrics& c : table.cells) {
    std::vector<std::string> row = c.key;
    row.push_back(std::to_string(c.n));
    row.push_back(std::to_string(c.excluded));
    row.push_back(c.hallucination_rate().Percent());
    row.push_back(c.accuracy().Percent());
    row.push_back(c.false_unanswerable_rate().Percent());
    row.push_back(std::to_string(c.unparseable));
    rows.push_back(std::move(row));
  }
  std::vector<size_t> widths(header.size());
  for (size_t k = 0; k < header.size(); ++k) widths[k] = Width(header[k]);
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) widths[k] = std::max(widths[k], Width(row[k]));
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (size_t k = 0; k < row.size(); ++k) {
      if (k > 0) out << " | ";
      out << std::string(widths[k] - Width(row[k]), ' ') << row[k];
    }
    out << "\n";
  };
  emit(header);
  for (size_t k = 0; k < header.size(); ++k) {
    if (k > 0) out << "-+-";
    out << std::string(widths[k], '-');
  }
  out << "\n";
  for (const auto& row : rows) emit(row);
  return out.str();
}

std::string FormatJson(const MetricsTable& table) {
  json cells = json::array();
  for (const CellMetrics& c : table.cells) {
    json key = json::object();
    for (size_t k = 0; k < table.group_by.size(); ++k) key[table.group_by[k]] = c.key[k];
    cells.push_back(json{{"key", std::move(key)},
                         {"n", c.n},
                         {"excluded", c.excluded},
                         {"unanswerable", c.unanswerable},
                         {"hallucinations", c.hallucinations},
                         {"hallucinationRate", RateJson(c.hallucination_rate())},
                         {"answerable", c.answerable},
                         {"correct", c.correct},
                         {"wrong", c.wrong},
                         {"accuracy", RateJson(c.accuracy())},
                         {"falseUnanswerable", c.false_unanswerable},
                         {"falseUnanswerableRate", RateJson(c.false_unanswerable_rate())},
                         {"unparseable", c.unparseable}});
  }
  return json{{"groupBy", table.group_by}, {"cells", std::move(cells)}}.dump(2) + "\n";
}

std::string FormatCsv(const MetricsTable& table) {
  std::ostringstream out;
  for (const std::string& g : table.group_by) out << g << ",";
  out << "n,excluded,unanswerable,hallucinations,hallucination_rate,answerable,correct,accuracy,"
         "false_unanswerable,false_unanswerable_rate,unparseable\n";
  for (const CellMetrics& c : table.cells) {
    for (const std::string& v : c.key) out << v << ",";
    out << c.n << "," << c.excluded << "," << c.unanswerable << "," << c.hallucinations << ","
        << RateCsv(c.hallucination_rate()) << "," << c.answerable << "," << c.correct << ","
        << RateCsv(c.accuracy()) << "," << c.false_unanswerable << ","
        << RateCsv(c.false_unanswerable_rate()) << "," << c.unparseable << "\n";
  }
  return out.str();
}

std::string WriteReport(const std::vector<EvalRecord>& records,
                        const std::vector<std::string>& group_by, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write " + (fs::path(out_dir) / name).string());
    out << content;
  };
  const MetricsTable table = Aggregate(records, group_by);
  const std::string text = FormatTextTable(table);
  write("metrics.txt", text);
  write("metrics.json", FormatJson(table));
  write("metrics.csv", FormatCsv(table));
  write("fig_structure.csv", FormatCsv(Aggregate(records, {"ansDepth", "numVars", "compositeName"})));
  write("fig_cutdepth.csv", FormatCsv(Aggregate(records, {"ansDepth", "cutDepth"})));
  return text;
}

}  // namespace pricetree::eval
