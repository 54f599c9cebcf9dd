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

#ifndef WASSDEP_TOOLS_JSON_UTIL_HPP
#define WASSDEP_TOOLS_JSON_UTIL_HPP

#include <string>

#include "json.hpp"
#include "wassdep/report.hpp"

namespace wassdep::cli {

nlohmann::ordered_json report_json(const IndexReport& r);
// Two-space indent plus a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace wassdep::cli

#endif  // WASSDEP_TOOLS_JSON_UTIL_HPP
