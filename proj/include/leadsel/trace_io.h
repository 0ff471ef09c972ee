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

#ifndef LEADSEL_TRACE_IO_H_
#define LEADSEL_TRACE_IO_H_

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "leadsel/greedy.h"

namespace leadsel {

// Reals are written with 12 significant digits so that identical traces
// serialise to identical bytes.
std::string FormatReal(double v);
double RoundReal(double v);

// {"algorithm", "oracle", "k", "epsilon", "seed", "clusters", "inner",
//  "records": [{"iteration", "node", "objective", "gain", "calls",
//               "seconds", "recomputations", "sample_size", "sample"}],
//  "stage_one": [...]}
// "gain" is null on the first iteration.
nlohmann::json TraceToJson(const SelectionTrace& trace);

inline constexpr const char* kTraceCsvHeader =
    "iteration,node,objective,gain,calls,seconds,recomputations,sample_size";

// Header plus one row per iteration; an absent gain is an empty field.
void WriteTraceCsv(std::ostream& os, const SelectionTrace& trace);

}  // namespace leadsel

#endif  // LEADSEL_TRACE_IO_H_
