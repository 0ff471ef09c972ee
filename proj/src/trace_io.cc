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

#include "leadsel/trace_io.h"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace leadsel {

std::string FormatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double RoundReal(double v) { return std::strtod(FormatReal(v).c_str(), nullptr); }

nlohmann::json TraceToJson(const SelectionTrace& trace) {
  nlohmann::json j;
  j["algorithm"] = std::string(ToString(trace.algorithm));
  j["oracle"] = std::string(ToString(trace.oracle));
  j["k"] = trace.k;
  j["epsilon"] = RoundReal(trace.epsilon);
  j["seed"] = trace.seed;
  j["clusters"] = trace.clusters;
  j["inner"] = trace.inner ? nlohmann::json(std::string(ToString(*trace.inner)))
                           : nlohmann::json(nullptr);
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const IterationRecord& r = trace.records[i];
    nlohmann::json rec;
    rec["iteration"] = i + 1;
    rec["node"] = r.chosen;
    rec["objective"] = RoundReal(r.objective);
    rec["gain"] = r.gain ? nlohmann::json(RoundReal(*r.gain))
                         : nlohmann::json(nullptr);
    rec["calls"] = r.calls;
    rec["seconds"] = RoundReal(r.seconds);
    rec["recomputations"] = r.recomputations;
    rec["sample_size"] = r.sample.size();
    rec["sample"] = r.sample;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  nlohmann::json stage = nlohmann::json::array();
  for (const SelectionTrace& s : trace.stage_one) stage.push_back(TraceToJson(s));
  j["stage_one"] = std::move(stage);
  return j;
}

void WriteTraceCsv(std::ostream& os, const SelectionTrace& trace) {
  os << kTraceCsvHeader << '\n';
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const IterationRecord& r = trace.records[i];
    os << i + 1 << ',' << r.chosen << ',' << FormatReal(r.objective) << ','
       << (r.gain ? FormatReal(*r.gain) : "") << ',' << r.calls << ','
       << FormatReal(r.seconds) << ',' << r.recomputations << ','
       << r.sample.size() << '\n';
  }
}

}  // namespace leadsel
