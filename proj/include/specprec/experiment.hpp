#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specprec/cglasso.hpp"
#include "specprec/types.hpp"

namespace specprec {

enum class MRule { FloorSqrtN, Ceil4SqrtN, Explicit };

struct SmoothingRule {
  MRule rule = MRule::FloorSqrtN;
  int explicit_m = 0;
};

/// Resolves the smoothing span for a series of length n; validates 2m+1 <= n.
int resolve_m(const SmoothingRule& rule, int n);

/// A frequency request resolved against the grid F_n. Tokens are either an
/// explicit index ("j=300"), a radian value ("1.5708"), or the shorthands
/// "0", "pi", "pi/2", "pi/4". Radians snap to the nearest Fourier frequency;
/// the snapping distance is recorded.
struct FrequencyChoice {
  std::string request;
  int index = 0;
  double omega = 0.0;
  double delta = 0.0;
};

FrequencyChoice snap_frequency(const std::string& token, int n);

enum class Method { Cglasso, CglassoI, CglassoII, Nodewise, InversePeriodogram };

std::string method_name(Method method);
Method parse_method(const std::string& name);
std::string dgp_name(DgpFamily family);
DgpFamily parse_dgp(const std::string& name);

struct LambdaGridSpec {
  int count = 50;
  double decades = 3.0;
};

struct ExperimentConfig {
  DgpSpec dgp;
  std::string input_csv;  // when set, analyze this panel instead of simulating
  std::vector<std::string> frequencies = {"0"};
  SmoothingRule m_rule;
  std::vector<Method> methods = {Method::CglassoII, Method::Nodewise,
                                 Method::InversePeriodogram};
  LambdaGridSpec grid;
  double gamma = 0.0;
  int replicates = 20;
  std::uint64_t base_seed = 1;
  std::string output_dir;  // empty: keep results in memory only
  int threads = 1;
  SymmetrizeRule nodewise_rule = SymmetrizeRule::Or;
  bool use_stopping_rule = true;
  PathOptions path_options;
};

/// One (replicate, frequency, method) cell of an experiment.
struct MethodRecord {
  int replicate = 0;
  std::string frequency;
  int freq_index = 0;
  std::string method;
  bool available = true;  // false e.g. for a singular inverse periodogram
  double rmse_oracle = 0.0;
  double rmse_bic = 0.0;
  double auroc = 0.0;
  std::optional<double> precision;
  double recall = 0.0;
  double accuracy = 0.0;
  double lambda_selected = 0.0;
  int path_length = 0;
  int converged_points = 0;
  double seconds = 0.0;  // wall time; written to a separate non-deterministic file
};

struct MetricStat {
  int count = 0;
  double mean = 0.0;
  double sd = 0.0;
};

struct SummaryRow {
  std::string frequency;
  std::string method;
  int replicates = 0;
  MetricStat rmse_oracle, rmse_bic, auroc, precision, recall, accuracy;
};

struct ExperimentResult {
  std::vector<FrequencyChoice> frequencies;
  int m = 0;
  std::vector<MethodRecord> records;  // ordered by (replicate, frequency, method)
  std::vector<SummaryRow> summary;
};

/// Runs replicates x frequencies x methods, aggregates Table-style summaries,
/// and (when output_dir is set) writes manifest.json, per_replicate.csv,
/// summary.csv, timings.csv and per-cell estimate JSONs. Outputs other than
/// timings.csv are fully determined by the config and base seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<SummaryRow> summarize(const std::vector<MethodRecord>& records);

struct EstimateFileConfig {
  std::string input_csv;
  std::string frequency = "0";
  SmoothingRule m_rule{MRule::Ceil4SqrtN, 0};
  Method method = Method::CglassoII;
  LambdaGridSpec grid;
  double gamma = 0.0;
  std::string output_dir;  // empty: no files written
  bool center = true;
};

struct EstimateFileResult {
  FrequencyChoice frequency;
  int m = 0;
  CMatrix theta;
  CMatrix partial_coherence;
  double lambda_selected = 0.0;
  bool converged = false;
  std::vector<double> lambdas;
  std::vector<double> ebic;
  std::vector<std::string> names;
};

/// Estimates the spectral precision of a CSV panel at one frequency and
/// exports the estimate, its partial coherence and a plot-ready edge list.
EstimateFileResult estimate_file(const EstimateFileConfig& config);

struct BenchmarkReport {
  int p = 0;
  int n = 0;
  int replicates = 0;
  double lambda_fraction = 0.0;
  std::vector<double> seconds;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;
  double sd_seconds = 0.0;
  // First replicate's problem and solution, for correctness cross-checks.
  CMatrix first_design;
  CVector first_response;
  double first_lambda = 0.0;
  CVector first_beta;
};

/// Timing experiment on synthetic complex designs: X has standard normal
/// real and imaginary parts, beta_k = 1-1i on odd coordinates, real noise,
/// y = X beta + eps. Each fit runs at lambda_fraction * lambda_max.
BenchmarkReport benchmark_classo(int p, int n, int replicates, std::uint64_t seed,
                                 double lambda_fraction = 0.1);

}  // namespace specprec
