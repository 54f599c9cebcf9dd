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

// Plumbing behind the `wassdep` executable: CSV input, JSON reports and
// subcommand dispatch.

#ifndef WASSDEP_TOOLS_CLI_HPP
#define WASSDEP_TOOLS_CLI_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wassdep/empirical.hpp"
#include "wassdep/report.hpp"
#include "wassdep/types.hpp"

namespace wassdep::cli {

// Bad input data: unreadable file, malformed CSV, non-numeric cell.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN or infinity in a report.
class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  Matrix values;  // one row per data row
};

// RFC 4180 style: comma separated, optional double quotes, header row
// required, CRLF or LF. Errors name the 1-based data row and column.
Table parse_csv(const std::string& text, const std::string& source = "<input>");
Table read_csv(const std::string& path);

// Column selectors are 0-based indices or header names.
std::vector<std::size_t> resolve_columns(const Table& table,
                                         const std::vector<std::string>& selectors);

PairedSample load_sample(const std::string& path,
                         const std::vector<std::string>& x_columns,
                         const std::vector<std::string>& y_columns);

// 12 significant digits; throws SerializationError on NaN or infinity.
double round12(double v);

// Stable key order, floats via round12, unset optionals and empty warning
// lists omitted. Ends with a newline.
std::string emit_report(const IndexReport& report);
IndexReport parse_report(const std::string& json);

// Runs one command line (without the program name). Exit codes: 0 success,
// 1 data error, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace wassdep::cli

#endif  // WASSDEP_TOOLS_CLI_HPP
