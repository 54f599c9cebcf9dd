// Copyright 2026 The wassdep Authors
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

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cli/cli.hpp"
#include "cli/json_util.hpp"

namespace wassdep::cli {

double round12(double v) {
  if (!std::isfinite(v)) {
    throw SerializationError("report contains a non-finite number");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

nlohmann::ordered_json report_json(const IndexReport& r) {
  nlohmann::ordered_json j;
  j["index"] = r.index;
  j["value"] = round12(r.value);
  j["numerator"] = round12(r.numerator);
  j["denominator"] = round12(r.denominator);
  j["exceeds_one"] = r.exceeds_one;
  j["estimator"] = r.estimator;
  if (r.variant) j["variant"] = *r.variant;
  j["p"] = round12(r.p);
  if (r.q) j["q"] = round12(*r.q);
  if (r.alpha) j["alpha"] = round12(*r.alpha);
  if (r.epsilon) j["epsilon"] = round12(*r.epsilon);
  if (r.bins) j["bins"] = *r.bins;
  if (r.center) j["a"] = round12(*r.center);
  j["n"] = r.n;
  j["seed"] = r.seed;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string emit_report(const IndexReport& report) {
  return dump(report_json(report));
}

IndexReport parse_report(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
    IndexReport r;
    r.index = j.at("index").get<std::string>();
    r.value = j.at("value").get<double>();
    r.numerator = j.at("numerator").get<double>();
    r.denominator = j.at("denominator").get<double>();
    r.exceeds_one = j.at("exceeds_one").get<bool>();
    r.estimator = j.at("estimator").get<std::string>();
    if (j.contains("variant")) r.variant = j["variant"].get<std::string>();
    r.p = j.at("p").get<double>();
    if (j.contains("q")) r.q = j["q"].get<double>();
    if (j.contains("alpha")) r.alpha = j["alpha"].get<double>();
    if (j.contains("epsilon")) r.epsilon = j["epsilon"].get<double>();
    if (j.contains("bins")) r.bins = j["bins"].get<int>();
    if (j.contains("a")) r.center = j["a"].get<double>();
    r.n = j.at("n").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace wassdep::cli
