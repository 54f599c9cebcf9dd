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
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.hpp"
#include "wassdep/harness.hpp"

namespace wassdep::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("wassdep_cli_" + name);
  std::ofstream(p, std::ios::binary) << body;
  return p.string();
}

std::string gaussian_csv(std::size_t n, double rho, std::uint64_t seed) {
  Rng rng(seed);
  const auto s = wassdep::testing::gaussian_pair(n, rho, rng);
  std::string body = "a,b\n";
  char buf[80];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.xs(i, 0), s.ys(i, 0));
    body += buf;
  }
  return body;
}

TEST(Csv, ParsesQuotesCrlfAndBom) {
  const Table t = parse_csv("\xEF\xBB\xBF\"x\",y\r\n1,\"2.5\"\r\n\r\n-3,+4e1\r\n");
  ASSERT_EQ(t.header, (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(t.values.rows(), 2u);
  EXPECT_EQ(t.values(0, 1), 2.5);
  EXPECT_EQ(t.values(1, 0), -3.0);
  EXPECT_EQ(t.values(1, 1), 40.0);
}

TEST(Csv, ColumnSplits) {
  const std::string path = write_temp("four.csv", "a,b,c,d\n1,2,3,4\n5,6,7,8\n");
  const auto s2 = load_sample(path, {"0"}, {"1"});
  EXPECT_EQ(s2.dim_x(), 1u);
  EXPECT_EQ(s2.ys(1, 0), 6.0);
  const auto s4 = load_sample(path, {"0", "1"}, {"c", "d"});
  EXPECT_EQ(s4.dim_x(), 2u);
  EXPECT_EQ(s4.dim_y(), 2u);
  EXPECT_EQ(s4.ys(0, 1), 4.0);
  EXPECT_THROW(load_sample(path, {"9"}, {"1"}), DataError);
  EXPECT_THROW(load_sample(path, {"zz"}, {"1"}), DataError);
}

TEST(Csv, MalformedRowIsNamed) {
  std::string body = "x,y\n";
  for (int i = 1; i <= 20; ++i) {
    body += (i == 17) ? "0.5,abc\n" : std::to_string(i) + "," + std::to_string(i) + "\n";
  }
  try {
    parse_csv(body, "f.csv");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 17"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  }
  const std::string path = write_temp("bad17.csv", body);
  const Outcome r = run({"index", "joint", "--data", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("row 17"), std::string::npos);
}

TEST(Csv, RejectsRaggedAndNonFinite) {
  EXPECT_THROW(parse_csv("x,y\n1\n"), DataError);
  EXPECT_THROW(parse_csv("x,y\n1,nan\n"), DataError);
  EXPECT_THROW(parse_csv("x,y\n1,inf\n"), DataError);
  EXPECT_THROW(parse_csv("x,y\n"), DataError);
  EXPECT_THROW(parse_csv(""), DataError);
}

TEST(Report, RoundTripIsByteIdentical) {
  IndexReport r;
  r.index = "conditional";
  r.value = 0.1234567890123456;
  r.numerator = 1.0 / 3.0;
  r.denominator = 2.0 / 3.0;
  r.estimator = "bins";
  r.variant = "unsnapped";
  r.p = 2.0;
  r.bins = 7;
  r.n = 100;
  r.seed = 42;
  const std::string text = emit_report(r);
  EXPECT_EQ(emit_report(parse_report(text)), text);
  // Unset optionals stay out.
  EXPECT_EQ(text.find("\"alpha\""), std::string::npos);
  EXPECT_EQ(text.find("\"warnings\""), std::string::npos);
  EXPECT_NE(text.find("0.123456789012"), std::string::npos);
  EXPECT_EQ(text.find("0.1234567890123"), std::string::npos);
}

TEST(Report, NaNIsRefused) {
  IndexReport r;
  r.index = "joint";
  r.value = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(emit_report(r), SerializationError);
  EXPECT_THROW(parse_report("{\"index\": 3}"), DataError);
}

TEST(Command, ConditionalSchema) {
  const std::string path = write_temp("gauss.csv", gaussian_csv(400, 0.6, 5));
  const Outcome r = run({"index", "conditional", "--data", path, "--p", "1", "--bins", "auto"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"index", "value", "numerator", "denominator",
                                            "exceeds_one", "estimator", "variant", "p",
                                            "bins", "n", "seed"}));
  EXPECT_NEAR(j["value"].get<double>(),
              j["numerator"].get<double>() / j["denominator"].get<double>(), 1e-11);
  EXPECT_EQ(j["n"].get<int>(), 400);
}

TEST(Command, EveryIndexRuns) {
  const std::string path = write_temp("gauss2.csv", gaussian_csv(120, 0.5, 6));
  for (const char* idx : {"joint", "conditional", "gaussian", "concordance", "marti"}) {
    const Outcome r = run({"index", idx, "--data", path, "--x", "a", "--y", "b"});
    EXPECT_EQ(r.code, 0) << idx << ": " << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["index"], idx);
  }
}

TEST(Command, CurveCsvMatchesTable) {
  const Outcome r = run({"experiment", "figure1", "--grid", "41"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "rho,conditional,gaussian,joint_lower,joint_upper");
  const auto table = figure1_table(rho_grid(41));
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(rows, table.size());
    double v[5];
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2],
                          &v[3], &v[4]),
              5);
    EXPECT_EQ(v[0], table[rows].rho);
    EXPECT_EQ(v[1], table[rows].conditional);
    EXPECT_EQ(v[2], table[rows].gaussian);
    EXPECT_EQ(v[3], table[rows].joint_lower);
    EXPECT_EQ(v[4], table[rows].joint_upper);
    ++rows;
  }
  EXPECT_EQ(rows, 41u);
}

TEST(Command, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"index", "joint", "--data", "x.csv", "--bogus"}).code, 2);
  EXPECT_EQ(run({"index"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"index", "joint"}).code, 2);  // --data missing
  EXPECT_EQ(run({"index", "gaussian", "--data", "x.csv", "--p", "1"}).code, 2);
  EXPECT_EQ(run({"index", "conditional", "--data", "x.csv", "--partition", "exact",
                 "--bins", "4"}).code, 2);
  EXPECT_EQ(run({"test", "--data", "x.csv", "--permutations", "5"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Command, DataErrorsExitOne) {
  EXPECT_EQ(run({"index", "joint", "--data", "/nonexistent/file.csv"}).code, 1);
  const std::string path = write_temp("const.csv", "x,y\n1,2\n1,3\n1,4\n");
  EXPECT_EQ(run({"index", "concordance", "--data", path, "--mode", "raw"}).code, 1);
}

TEST(Command, DeterministicGivenSeed) {
  const std::string path = write_temp("gauss3.csv", gaussian_csv(90, 0.3, 8));
  const std::vector<std::string> args = {"test", "--data", path, "--permutations", "39",
                                         "--seed", "11"};
  const Outcome a = run(args);
  const Outcome b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> split = {"index", "joint", "--data", path,
                                          "--estimator", "split", "--seed", "3"};
  EXPECT_EQ(run(split).out, run(split).out);
}

TEST(Command, OtMatchesShift) {
  const std::string a = write_temp("src.csv", "v\n0\n1\n2\n");
  const std::string b = write_temp("dst.csv", "v\n0.5\n1.5\n2.5\n");
  const Outcome r = run({"ot", "--source", a, "--target", b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["distance"].get<double>(), 0.5, 1e-12);
}

TEST(Command, DiscontinuityExperiment) {
  const Outcome r = run({"experiment", "discontinuity", "--n", "100", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["exact_index"].get<double>(), 1.0);
  EXPECT_LT(j["binned_index"].get<double>(), 0.5);
}

}  // namespace
}  // namespace wassdep::cli
