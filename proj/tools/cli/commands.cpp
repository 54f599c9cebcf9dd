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

#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "cli/cli.hpp"
#include "cli/json_util.hpp"
#include "wassdep/concordance.hpp"
#include "wassdep/conditional_index.hpp"
#include "wassdep/gaussian_index.hpp"
#include "wassdep/harness.hpp"
#include "wassdep/joint_index.hpp"
#include "wassdep/ot.hpp"
#include "wassdep/sinkhorn.hpp"

namespace wassdep::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DataArgs {
  std::string path;
  std::vector<std::string> x{"0"};
  std::vector<std::string> y{"1"};
  std::uint64_t seed = 0;
};

void add_data_args(CLI::App* app, DataArgs& a) {
  app->add_option("--data", a.path, "CSV file with a header row")->required();
  app->add_option("--x", a.x, "x columns (indices or names)")->delimiter(',');
  app->add_option("--y", a.y, "y columns (indices or names)")->delimiter(',');
  app->add_option("--seed", a.seed, "random seed");
}

PairedSample load(const DataArgs& a) {
  PairedSample s = load_sample(a.path, a.x, a.y);
  s.seed = a.seed;
  return s;
}

EstimatorMode estimator_from(const std::string& name) {
  try {
    return parse_estimator_mode(name);
  } catch (const InvalidInput&) {
    throw UsageError("--estimator must be split, permute or full");
  }
}

// "auto" -> 0, else a positive integer.
int bins_from(const std::string& text) {
  if (text == "auto") return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("--bins must be 'auto' or a positive integer");
}

// ------------------------------------------------------------------ index

struct JointArgs {
  DataArgs data;
  double p = 1.0;
  double q = 1.0;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::string estimator = "permute";
  std::string normalization = "min_gmd";
};

IndexReport run_joint(const JointArgs& a) {
  const PairedSample s = load(a.data);
  Rng rng(a.data.seed);
  const EstimatorMode mode = estimator_from(a.estimator);
  CostSpec spec = a.alpha ? CostSpec::weighted(*a.alpha, a.p, s.dim_x(), s.dim_y())
                          : CostSpec::lq(a.q, a.p, {s.dim_x(), s.dim_y()});
  if (a.alpha && a.q != 1.0) throw UsageError("--alpha and --q are exclusive");
  if (a.epsilon) {
    IndexReport r;
    r.index = "joint";
    r.estimator = to_string(mode);
    r.variant = "sinkhorn_divergence";
    r.p = a.p;
    if (a.alpha) r.alpha = a.alpha; else r.q = a.q;
    r.epsilon = a.epsilon;
    r.seed = s.seed;
    r.n = s.size();
    r.numerator = d_joint_entropic(s, *a.epsilon, spec, mode, rng);
    r.denominator = 1.0;
    r.value = r.numerator;
    return r;
  }
  JointIndexOptions opts;
  opts.spec = spec;
  opts.mode = mode;
  if (a.normalization == "scaled_metric") {
    opts.normalization = JointNormalization::kScaledMetric;
  } else if (a.normalization != "min_gmd") {
    throw UsageError("--normalization must be min_gmd or scaled_metric");
  }
  return i_joint(s, opts, rng);
}

struct ConditionalArgs {
  DataArgs data;
  double p = 1.0;
  std::string partition = "bins";
  std::string bins = "auto";
  bool snap = false;
  std::optional<double> epsilon;
};

IndexReport run_conditional(const ConditionalArgs& a, bool bins_given) {
  PartitionOptions po;
  if (a.partition == "exact") {
    if (bins_given || a.snap) throw UsageError("--bins and --snap need --partition bins");
    po.mode = PartitionMode::kExact;
  } else if (a.partition == "bins") {
    po.mode = PartitionMode::kBins;
    po.bins = bins_from(a.bins);
    po.snap_y = a.snap;
  } else {
    throw UsageError("--partition must be exact or bins");
  }
  const PairedSample s = load(a.data);
  IndexReport r = i_conditional(s, po, a.p);
  if (a.epsilon) {
    const ConditionalFamily family = partition(s, po);
    r.numerator = d_conditional_entropic(family, family.marginal, *a.epsilon,
                                         CostSpec::single(a.p));
    r.value = r.numerator / r.denominator;
    r.exceeds_one = r.value > 1.0;
    r.epsilon = a.epsilon;
  }
  return r;
}

struct GaussianArgs {
  DataArgs data;
  double p = 2.0;
};

IndexReport run_gaussian(const GaussianArgs& a) {
  if (a.p != 2.0) throw UsageError("the Gaussian index is defined for --p 2 only");
  const PairedSample s = load(a.data);
  const auto [num, den] = i_gaussian_terms(fit_gaussian_surrogate(s));
  IndexReport r;
  r.index = "gaussian";
  r.estimator = "covariance";
  r.p = 2.0;
  r.seed = s.seed;
  r.n = s.size();
  r.numerator = num;
  r.denominator = den;
  r.value = num / den;
  r.exceeds_one = r.value > 1.0;
  return r;
}

struct ConcordanceArgs {
  DataArgs data;
  double p = 2.0;
  std::string mode = "copula";
  std::optional<double> a;
  bool strict = false;
};

IndexReport run_concordance(const ConcordanceArgs& a) {
  if (a.p != 2.0) throw UsageError("the concordance index is defined for --p 2 only");
  ConcordanceOptions opts;
  if (a.mode == "raw") {
    opts.mode = ConcordanceMode::kRaw;
  } else if (a.mode != "copula") {
    throw UsageError("--mode must be copula or raw");
  }
  if (a.a && opts.mode == ConcordanceMode::kCopula) {
    throw UsageError("--a only applies to --mode raw");
  }
  opts.a = a.a;
  opts.strict = a.strict;
  const PairedSample s = load(a.data);
  const ConcordanceReport c = concordance_index(s, opts);
  IndexReport r;
  r.index = "concordance";
  r.estimator = a.mode;
  r.p = 2.0;
  r.seed = s.seed;
  r.n = s.size();
  r.value = c.value;
  r.numerator = c.numerator;
  r.denominator = c.denominator;
  r.center = c.a;
  r.warnings = c.warnings;
  return r;
}

struct MartiArgs {
  DataArgs data;
  double p = 1.0;
  double q = 1.0;
};

IndexReport run_marti(const MartiArgs& a) {
  const PairedSample s = load(a.data);
  Rng rng(a.data.seed);
  IndexReport r;
  r.index = "marti";
  r.estimator = "permute";
  r.p = a.p;
  r.q = a.q;
  r.seed = s.seed;
  r.n = s.size();
  r.value = marti_index(s, CostSpec::lq(a.q, a.p, {1, 1}), rng);
  r.numerator = r.value;
  r.denominator = 1.0;
  return r;
}

// ------------------------------------------------------------------- test

struct TestArgs {
  DataArgs data;
  std::string statistic = "d_joint";
  int permutations = 99;
  double p = 1.0;
  std::string estimator = "permute";
  std::string partition = "bins";
  std::string bins = "auto";
};

Json run_test(const TestArgs& a) {
  StatisticOptions opts;
  opts.p = a.p;
  opts.mode = estimator_from(a.estimator);
  if (a.partition == "exact") {
    opts.partition = {PartitionMode::kExact, 0, false};
  } else if (a.partition == "bins") {
    opts.partition = {PartitionMode::kBins, bins_from(a.bins), false};
  } else {
    throw UsageError("--partition must be exact or bins");
  }
  StatisticFn fn;
  try {
    fn = named_statistic(a.statistic, opts);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  const PairedSample s = load(a.data);
  const auto r = permutation_test(s, fn, a.permutations, a.data.seed);
  Json j;
  j["test"] = "permutation";
  j["statistic"] = a.statistic;
  j["observed"] = round12(r.statistic);
  j["p_value"] = round12(r.p_value);
  j["permutations"] = r.permutations;
  j["p"] = round12(a.p);
  j["n"] = s.size();
  j["seed"] = r.seed;
  return j;
}

// ------------------------------------------------------------------- ot

struct OtArgs {
  std::string source;
  std::string target;
  double p = 1.0;
  std::optional<double> epsilon;
  bool divergence = false;
};

Json run_ot(const OtArgs& a) {
  const Table src = read_csv(a.source);
  const Table dst = read_csv(a.target);
  if (src.values.cols() != dst.values.cols()) {
    throw DataError("source and target have different column counts");
  }
  const DiscreteMeasure p = DiscreteMeasure::uniform(src.values);
  const DiscreteMeasure q = DiscreteMeasure::uniform(dst.values);
  const CostSpec spec = CostSpec::single(a.p);
  Json j;
  j["p"] = round12(a.p);
  j["n_source"] = p.size();
  j["n_target"] = q.size();
  if (a.epsilon) {
    j["epsilon"] = round12(*a.epsilon);
    if (a.divergence) {
      j["divergence"] = round12(sinkhorn_divergence(p, q, spec, *a.epsilon));
    } else {
      const SinkhornResult r = sinkhorn_discrepancy(p, q, spec, *a.epsilon);
      j["value"] = round12(r.value);
      j["transport_cost"] = round12(r.plan.cost);
      j["iterations"] = r.iterations;
    }
  } else {
    if (a.divergence) throw UsageError("--divergence needs --epsilon");
    j["distance"] = round12(wasserstein(p, q, spec));
  }
  return j;
}

// ------------------------------------------------------------ experiment

struct RatesArgs {
  std::string name = "w1_shift";
  std::vector<std::size_t> sizes;
  int replicates = 20;
  std::uint64_t seed = 0;
  double rho = 0.5;
  double epsilon = 0.5;
};

Json run_rates(const RatesArgs& a) {
  RateCase c;
  std::vector<std::size_t> sizes = a.sizes;
  if (a.name == "w1_shift") {
    c = w1_shift_case();
    if (sizes.empty()) sizes = {100, 200, 400, 800, 1600};
  } else if (a.name == "joint_w2") {
    c = joint_w2_case(a.rho);
    if (sizes.empty()) sizes = {50, 100, 200, 400};
  } else if (a.name == "entropic_joint") {
    c = entropic_joint_case(a.rho, a.epsilon);
    if (sizes.empty()) sizes = {50, 100, 200, 400};
  } else {
    throw UsageError("--case must be w1_shift, joint_w2 or entropic_joint");
  }
  const RateReport r = rate_experiment(c, sizes, a.replicates, a.seed);
  Json j;
  j["experiment"] = "rates";
  j["case"] = r.name;
  j["truth"] = round12(c.truth);
  j["slope"] = round12(r.slope);
  j["ci"] = {round12(r.ci_lo), round12(r.ci_hi)};
  j["band"] = {round12(r.band_lo), round12(r.band_hi)};
  j["in_band"] = r.in_band;
  j["replicates"] = r.replicates;
  j["seed"] = r.seed;
  Json rows = Json::array();
  for (std::size_t k = 0; k < r.n_grid.size(); ++k) {
    Json row;
    row["n"] = r.n_grid[k];
    row["mean_abs_error"] = round12(r.mean_abs_error[k]);
    rows.push_back(row);
  }
  j["table"] = rows;
  return j;
}

std::string figure1_csv(int points) {
  std::string out = "rho,conditional,gaussian,joint_lower,joint_upper\n";
  char buf[160];
  for (const auto& r : figure1_table(rho_grid(points))) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.rho,
                  r.conditional, r.gaussian, r.joint_lower, r.joint_upper);
    out += buf;
  }
  return out;
}

struct DiscontinuityArgs {
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double p = 1.0;
};

Json run_discontinuity(const DiscontinuityArgs& a) {
  Rng rng(a.seed);
  const DiscontinuityReport r = discontinuity_demo(a.n, rng, a.p);
  Json j;
  j["experiment"] = "discontinuity";
  j["n"] = r.n;
  j["p"] = round12(r.p);
  j["exact_index"] = round12(r.exact_index);
  j["binned_index"] = round12(r.binned_index);
  j["bins"] = r.bins;
  j["grid"] = r.grid;
  j["adapted_distance"] = round12(r.adapted_distance);
  j["seed"] = a.seed;
  return j;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Transport-based dependence indices", "wassdep"};
  app.require_subcommand(1);

  OtArgs ot;
  auto* ot_cmd = app.add_subcommand("ot", "distance between two point clouds");
  ot_cmd->add_option("--source", ot.source, "CSV of source points")->required();
  ot_cmd->add_option("--target", ot.target, "CSV of target points")->required();
  ot_cmd->add_option("--p", ot.p, "exponent")->check(CLI::Range(1.0, kInf));
  ot_cmd->add_option("--epsilon", ot.epsilon, "entropic regularization")
      ->check(CLI::PositiveNumber);
  ot_cmd->add_flag("--divergence", ot.divergence, "debiased Sinkhorn divergence");

  auto* index_cmd = app.add_subcommand("index", "dependence indices");
  index_cmd->require_subcommand(1);

  JointArgs joint;
  auto* joint_cmd = index_cmd->add_subcommand("joint", "joint law vs product of marginals");
  add_data_args(joint_cmd, joint.data);
  joint_cmd->add_option("--p", joint.p, "exponent")->check(CLI::Range(1.0, kInf));
  joint_cmd->add_option("--q", joint.q, "lq combination of the factor distances")
      ->check(CLI::Range(1.0, kInf));
  joint_cmd->add_option("--alpha", joint.alpha, "alpha d_X + d_Y metric")
      ->check(CLI::PositiveNumber);
  joint_cmd->add_option("--epsilon", joint.epsilon, "Sinkhorn divergence instead")
      ->check(CLI::PositiveNumber);
  joint_cmd->add_option("--estimator", joint.estimator, "split|permute|full");
  joint_cmd->add_option("--normalization", joint.normalization,
                        "min_gmd|scaled_metric");

  ConditionalArgs cond;
  auto* cond_cmd = index_cmd->add_subcommand("conditional", "conditional laws vs marginal");
  add_data_args(cond_cmd, cond.data);
  cond_cmd->add_option("--p", cond.p, "exponent")->check(CLI::Range(1.0, kInf));
  cond_cmd->add_option("--partition", cond.partition, "exact|bins");
  auto* bins_opt = cond_cmd->add_option("--bins", cond.bins, "auto or cubes per axis");
  cond_cmd->add_flag("--snap", cond.snap, "also snap y to cube centres");
  cond_cmd->add_option("--epsilon", cond.epsilon, "entropic conditional cost")
      ->check(CLI::PositiveNumber);

  GaussianArgs gauss;
  auto* gauss_cmd = index_cmd->add_subcommand("gaussian", "index of the fitted Gaussian");
  add_data_args(gauss_cmd, gauss.data);
  gauss_cmd->add_option("--p", gauss.p, "exponent (2 only)");

  ConcordanceArgs conc;
  auto* conc_cmd = index_cmd->add_subcommand("concordance", "signed concordance index");
  add_data_args(conc_cmd, conc.data);
  conc_cmd->add_option("--p", conc.p, "exponent (2 only)");
  conc_cmd->add_option("--mode", conc.mode, "copula|raw");
  conc_cmd->add_option("--a", conc.a, "symmetry centre for raw mode");
  conc_cmd->add_flag("--strict", conc.strict, "fail when the symmetry check fails");

  MartiArgs marti;
  auto* marti_cmd = index_cmd->add_subcommand("marti", "relative distance to independence");
  add_data_args(marti_cmd, marti.data);
  marti_cmd->add_option("--p", marti.p, "exponent")->check(CLI::Range(1.0, kInf));
  marti_cmd->add_option("--q", marti.q, "lq combination")->check(CLI::Range(1.0, kInf));

  TestArgs test;
  auto* test_cmd = app.add_subcommand("test", "permutation test of independence");
  add_data_args(test_cmd, test.data);
  test_cmd->add_option("--statistic", test.statistic,
                       "d_joint|i_joint|i_conditional|gaussian|concordance");
  test_cmd->add_option("--permutations", test.permutations, "B >= 19")
      ->check(CLI::Range(19, std::numeric_limits<int>::max()));
  test_cmd->add_option("--p", test.p, "exponent")->check(CLI::Range(1.0, kInf));
  test_cmd->add_option("--estimator", test.estimator, "split|permute|full");
  test_cmd->add_option("--partition", test.partition, "exact|bins");
  test_cmd->add_option("--bins", test.bins, "auto or cubes per axis");

  auto* exp_cmd = app.add_subcommand("experiment", "reference experiments");
  exp_cmd->require_subcommand(1);

  RatesArgs rates;
  auto* rates_cmd = exp_cmd->add_subcommand("rates", "convergence-rate fit");
  rates_cmd->add_option("--case", rates.name, "w1_shift|joint_w2|entropic_joint");
  rates_cmd->add_option("--sizes", rates.sizes, "sample sizes")->delimiter(',');
  rates_cmd->add_option("--replicates", rates.replicates, "replicates per size")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()));
  rates_cmd->add_option("--seed", rates.seed, "random seed");
  rates_cmd->add_option("--rho", rates.rho, "correlation")->check(CLI::Range(-0.999, 0.999));
  rates_cmd->add_option("--epsilon", rates.epsilon, "entropic regularization")
      ->check(CLI::PositiveNumber);

  int grid = 41;
  auto* fig_cmd = exp_cmd->add_subcommand("figure1", "bivariate Gaussian curves (CSV)");
  fig_cmd->add_option("--grid", grid, "number of rho values")
      ->check(CLI::Range(2, 100000));

  DiscontinuityArgs disc;
  auto* disc_cmd = exp_cmd->add_subcommand("discontinuity", "exact vs binned grouping");
  disc_cmd->add_option("--n", disc.n, "sample size")->check(CLI::Range(2, 100000));
  disc_cmd->add_option("--seed", disc.seed, "random seed");
  disc_cmd->add_option("--p", disc.p, "exponent")->check(CLI::Range(1.0, kInf));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "wassdep: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*ot_cmd) {
      out << dump(run_ot(ot));
    } else if (*joint_cmd) {
      out << emit_report(run_joint(joint));
    } else if (*cond_cmd) {
      out << emit_report(run_conditional(cond, bins_opt->count() > 0));
    } else if (*gauss_cmd) {
      out << emit_report(run_gaussian(gauss));
    } else if (*conc_cmd) {
      out << emit_report(run_concordance(conc));
    } else if (*marti_cmd) {
      out << emit_report(run_marti(marti));
    } else if (*test_cmd) {
      out << dump(run_test(test));
    } else if (*rates_cmd) {
      out << dump(run_rates(rates));
    } else if (*fig_cmd) {
      out << figure1_csv(grid);
    } else if (*disc_cmd) {
      out << dump(run_discontinuity(disc));
    }
  } catch (const UsageError& e) {
    err << "wassdep: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    // Mostly `--estimator full`, whose product has n^2 atoms.
    err << "wassdep: out of memory; try a smaller sample or another estimator\n";
    return 1;
  } catch (const std::exception& e) {
    err << "wassdep: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace wassdep::cli
