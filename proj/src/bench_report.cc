// Copyright 2026 The Authors.
//
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

#include <fstream>
#include <sstream>

#include "leadsel/bench.h"
#include "leadsel/errors.h"
#include "leadsel/trace_io.h"

namespace leadsel::bench {
namespace {

using nlohmann::json;

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string CsvValue(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "";
    case json::value_t::string: return CsvField(v.get<std::string>());
    case json::value_t::number_float: return FormatReal(v.get<double>());
    default: return CsvField(v.dump());
  }
}

void WriteRow(std::ostringstream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

void RoundFloats(json& j) {
  if (j.is_number_float()) {
    j = RoundReal(j.get<double>());
  } else if (j.is_structured()) {
    for (json& child : j) RoundFloats(child);
  }
}

constexpr const char* kCellColumns[] = {
    "instance", "topology", "group",  "n",        "k",     "graph_seed",
    "seed",     "algorithm", "oracle", "epsilon", "baseline", "status",
    "error",    "iteration", "node",   "objective", "gain", "calls",
    "seconds",  "recomputations", "sample_size"};

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw InvalidArgument("unknown report format: " + std::string(name));
}

std::string CellsCsv(const ExperimentReport& report) {
  std::ostringstream os;
  WriteRow(os, {std::begin(kCellColumns), std::end(kCellColumns)});
  for (const CellResult& c : report.cells) {
    std::vector<std::string> head = {
        std::to_string(c.instance),
        CsvField(c.topology),
        CsvField(c.group),
        std::to_string(c.n),
        std::to_string(c.k),
        std::to_string(c.graph_seed),
        std::to_string(c.seed),
        std::string(ToString(c.algorithm.algorithm)),
        std::string(ToString(c.algorithm.oracle)),
        FormatReal(c.epsilon),
        c.baseline ? "true" : "false",
        c.ok() ? "ok" : "failed",
        CsvField(c.error)};
    if (!c.ok()) {
      head.resize(std::size(kCellColumns));
      WriteRow(os, head);
      continue;
    }
    const auto& records = c.trace->records;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const IterationRecord& r = records[i];
      std::vector<std::string> row = head;
      row.push_back(std::to_string(i + 1));
      row.push_back(std::to_string(r.chosen));
      row.push_back(FormatReal(r.objective));
      row.push_back(r.gain ? FormatReal(*r.gain) : "");
      row.push_back(std::to_string(r.calls));
      row.push_back(FormatReal(r.seconds));
      row.push_back(std::to_string(r.recomputations));
      row.push_back(std::to_string(r.sample.size()));
      WriteRow(os, row);
    }
  }
  return os.str();
}

std::string TableCsv(const Table& table) {
  std::ostringstream os;
  std::vector<std::string> header;
  for (const std::string& c : table.columns) header.push_back(CsvField(c));
  WriteRow(os, header);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const json& v : row) fields.push_back(CsvValue(v));
    WriteRow(os, fields);
  }
  return os.str();
}

std::string FitsCsv(const ExperimentReport& report) {
  std::ostringstream os;
  WriteRow(os, {"series", "metric", "points", "coefficient", "exponent",
                "exponent_ci95_low", "exponent_ci95_high", "r_squared"});
  for (const NamedFit& f : report.fits) {
    WriteRow(os, {CsvField(f.series), CsvField(f.metric),
                  std::to_string(f.fit.points), FormatReal(f.fit.coefficient),
                  FormatReal(f.fit.exponent), FormatReal(f.fit.exponent_low),
                  FormatReal(f.fit.exponent_high),
                  FormatReal(f.fit.r_squared)});
  }
  return os.str();
}

nlohmann::json ReportToJson(const ExperimentReport& report) {
  json j;
  j["config"] = ConfigToJson(report.config);
  json cells = json::array();
  for (const CellResult& c : report.cells) {
    json cell;
    cell["instance"] = c.instance;
    cell["topology"] = c.topology;
    cell["group"] = c.group;
    cell["n"] = c.n;
    cell["k"] = c.k;
    cell["graph_seed"] = c.graph_seed;
    cell["seed"] = c.seed;
    cell["algorithm"] = std::string(ToString(c.algorithm.algorithm));
    cell["oracle"] = std::string(ToString(c.algorithm.oracle));
    cell["epsilon"] = RoundReal(c.epsilon);
    cell["baseline"] = c.baseline;
    cell["status"] = c.ok() ? "ok" : "failed";
    cell["error"] = c.error;
    cell["trace"] = c.ok() ? TraceToJson(*c.trace) : json(nullptr);
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  json tables = json::array();
  for (const Table& t : report.tables) {
    json table;
    table["name"] = t.name;
    table["columns"] = t.columns;
    table["rows"] = t.rows;
    RoundFloats(table["rows"]);
    tables.push_back(std::move(table));
  }
  j["tables"] = std::move(tables);
  json fits = json::array();
  for (const NamedFit& f : report.fits) {
    fits.push_back({{"series", f.series},
                    {"metric", f.metric},
                    {"points", f.fit.points},
                    {"coefficient", RoundReal(f.fit.coefficient)},
                    {"exponent", RoundReal(f.fit.exponent)},
                    {"exponent_ci95_low", RoundReal(f.fit.exponent_low)},
                    {"exponent_ci95_high", RoundReal(f.fit.exponent_high)},
                    {"r_squared", RoundReal(f.fit.r_squared)}});
  }
  j["fits"] = std::move(fits);
  j["summary"] = {{"cells", report.cells.size()},
                  {"failed", report.failed_cells()}};
  return j;
}

std::vector<std::filesystem::path> EmitReport(const ExperimentReport& report,
                                              ReportFormat format,
                                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    const auto path = dir / name;
    WriteFile(path, text);
    written.push_back(path);
  };
  if (format == ReportFormat::kJson) {
    emit("report.json", ReportToJson(report).dump(2) + "\n");
    return written;
  }
  emit("cells.csv", CellsCsv(report));
  emit("fits.csv", FitsCsv(report));
  for (const Table& t : report.tables) emit(t.name + ".csv", TableCsv(t));
  return written;
}

}  // namespace leadsel::bench
