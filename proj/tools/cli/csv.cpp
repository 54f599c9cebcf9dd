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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"

namespace wassdep::cli {
namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // first line of the record
};

std::vector<Record> split_records(const std::string& text,
                                  const std::string& source) {
  std::vector<Record> out;
  Record current;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  current.line = 1;
  auto end_field = [&] {
    current.fields.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A blank line is not a record.
    if (!(current.fields.size() == 1 && current.fields[0].empty())) {
      out.push_back(std::move(current));
    }
    current = Record{};
    current.line = line;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++line;
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) {
    throw DataError(source + ": unterminated quoted field starting on line " +
                    std::to_string(current.line));
  }
  if (field_started || !field.empty() || !current.fields.empty()) end_record();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Table parse_csv(const std::string& text, const std::string& source) {
  std::string body = text;
  if (body.rfind("\xEF\xBB\xBF", 0) == 0) body.erase(0, 3);  // UTF-8 BOM
  const auto records = split_records(body, source);
  if (records.empty()) throw DataError(source + ": missing header row");
  Table t;
  for (const auto& h : records.front().fields) t.header.push_back(trim(h));
  const std::size_t cols = t.header.size();
  const std::size_t rows = records.size() - 1;
  if (rows == 0) throw DataError(source + ": no data rows");
  t.values = Matrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Record& rec = records[r + 1];
    const std::string where =
        source + ": row " + std::to_string(r + 1) + " (line " +
        std::to_string(rec.line) + ")";
    if (rec.fields.size() != cols) {
      throw DataError(where + ": expected " + std::to_string(cols) +
                      " fields, found " + std::to_string(rec.fields.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string cell = trim(rec.fields[c]);
      double v = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw DataError(where + ", column " + std::to_string(c + 1) + " ('" +
                        t.header[c] + "'): '" + cell + "' is not a finite number");
      }
      t.values(r, c) = v;
    }
  }
  return t;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

std::vector<std::size_t> resolve_columns(const Table& table,
                                         const std::vector<std::string>& selectors) {
  if (selectors.empty()) throw UsageError("empty column selection");
  std::vector<std::size_t> out;
  for (const auto& sel : selectors) {
    const auto it = std::find(table.header.begin(), table.header.end(), sel);
    if (it != table.header.end()) {
      out.push_back(static_cast<std::size_t>(it - table.header.begin()));
      continue;
    }
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(sel.data(), sel.data() + sel.size(), idx);
    if (ec != std::errc() || ptr != sel.data() + sel.size()) {
      throw DataError("no column named '" + sel + "'");
    }
    if (idx >= table.header.size()) {
      throw DataError("column " + sel + " is out of range (" +
                      std::to_string(table.header.size()) + " columns)");
    }
    out.push_back(idx);
  }
  return out;
}

PairedSample load_sample(const std::string& path,
                         const std::vector<std::string>& x_columns,
                         const std::vector<std::string>& y_columns) {
  const Table t = read_csv(path);
  const auto xi = resolve_columns(t, x_columns);
  const auto yi = resolve_columns(t, y_columns);
  const std::size_t n = t.values.rows();
  PairedSample s{Matrix(n, xi.size()), Matrix(n, yi.size()), 0};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < xi.size(); ++k) s.xs(r, k) = t.values(r, xi[k]);
    for (std::size_t k = 0; k < yi.size(); ++k) s.ys(r, k) = t.values(r, yi[k]);
  }
  return s;
}

}  // namespace wassdep::cli
