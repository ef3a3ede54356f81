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

#include "sjlt/report.hpp"

#include <charconv>
#include <sstream>

namespace sjlt {

void to_json(nlohmann::json& j, const FailureReport& r) {
  j = nlohmann::json{{"trials", r.trials},
                     {"failures", r.failures},
                     {"rate", r.rate},
                     {"wilson_upper_95", r.wilson_upper_95},
                     {"eps_used", r.eps_used},
                     {"construction_tag", r.construction_tag},
                     {"vector_tag", r.vector_tag}};
}

void from_json(const nlohmann::json& j, FailureReport& r) {
  j.at("trials").get_to(r.trials);
  j.at("failures").get_to(r.failures);
  j.at("rate").get_to(r.rate);
  j.at("wilson_upper_95").get_to(r.wilson_upper_95);
  j.at("eps_used").get_to(r.eps_used);
  j.at("construction_tag").get_to(r.construction_tag);
  j.at("vector_tag").get_to(r.vector_tag);
}

void to_json(nlohmann::json& j, const JlParams& p) {
  j = nlohmann::json{{"d", p.d},     {"k", p.k},       {"s", p.s},         {"ell", p.ell},
                     {"eps", p.eps}, {"delta", p.delta}, {"seed", p.seed}, {"c_k", p.c_k},
                     {"c_s", p.c_s}, {"k_min", p.k_min}};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_header() {
  return "scheme,d,k,s,eps,delta,vector,trials,failures,rate,wilson_upper_95,eps_used,verdict";
}

std::string csv_row(const GridRow& row) {
  std::ostringstream os;
  os << row.scheme << ',' << row.d << ',' << row.k << ',' << row.s << ',' << format_double(row.eps)
     << ',' << format_double(row.delta) << ',' << row.report.vector_tag << ',' << row.report.trials
     << ',' << row.report.failures << ',' << format_double(row.report.rate) << ','
     << format_double(row.report.wilson_upper_95) << ',' << format_double(row.report.eps_used)
     << ',' << row.verdict;
  return os.str();
}

}  // namespace sjlt
