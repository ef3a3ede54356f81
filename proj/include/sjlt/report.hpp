// Copyright 2026 The sjlt Authors.
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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sjlt/analysis.hpp"
#include "sjlt/params.hpp"

namespace sjlt {

void to_json(nlohmann::json& j, const FailureReport& r);
void from_json(const nlohmann::json& j, FailureReport& r);
void to_json(nlohmann::json& j, const JlParams& p);

/// One experiment-grid cell: the sizing it ran at plus the outcome.
struct GridRow {
  std::string scheme;
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  std::uint64_t s = 0;
  double eps = 0.0;
  double delta = 0.0;
  FailureReport report;
  std::string verdict;
};

std::string csv_header();
std::string csv_row(const GridRow& row);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace sjlt
