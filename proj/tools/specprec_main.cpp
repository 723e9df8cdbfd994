// Command-line front end: data simulation, spectral precision estimation from
// CSV panels, replicated experiments with summary tables, and a solver
// timing benchmark.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specprec/csv.hpp"
#include "specprec/experiment.hpp"
#include "specprec/simulate.hpp"

namespace {

specprec::SmoothingRule parse_m_rule(const std::string& text) {
  specprec::SmoothingRule rule;
  if (text == "floor_sqrt_n") {
    rule.rule = specprec::MRule::FloorSqrtN;
  } else if (text == "ceil_4sqrt_n" || text == "ceil_4_sqrt_n") {
    rule.rule = specprec::MRule::Ceil4SqrtN;
  } else {
    rule.rule = specprec::MRule::Explicit;
    std::size_t used = 0;
    rule.explicit_m = std::stoi(text, &used);
    if (used != text.size()) {
      throw CLI::ValidationError("--m-rule expects floor_sqrt_n, ceil_4sqrt_n or an integer");
    }
  }
  return rule;
}

specprec::LambdaGridSpec parse_lambda_grid(const std::string& text) {
  specprec::LambdaGridSpec grid;
  const auto comma = text.find(',');
  grid.count = std::stoi(text.substr(0, comma));
  if (comma != std::string::npos) grid.decades = std::stod(text.substr(comma + 1));
  if (grid.count < 1 || grid.decades <= 0) {
    throw CLI::ValidationError("--lambda-grid expects count[,decades]");
  }
  return grid;
}

specprec::Method apply_variant(specprec::Method method, const std::string& variant) {
  if (method != specprec::Method::Cglasso || variant.empty() || variant == "plain") return method;
  if (variant == "I" || variant == "i") return specprec::Method::CglassoI;
  if (variant == "II" || variant == "ii") return specprec::Method::CglassoII;
  throw CLI::ValidationError("--variant expects plain, I or II");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse spectral precision estimation for multivariate time series"};
  app.require_subcommand(1);
  app.set_config("--config");

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic panel and write it as CSV");
  std::string sim_dgp = "white_noise";
  int sim_p = 10, sim_n = 200;
  std::uint64_t sim_seed = 1;
  std::string sim_out = "panel.csv";
  sim->add_option("--dgp", sim_dgp, "white_noise | var1 | varma22 | var1_block");
  sim->add_option("--p", sim_p, "number of series");
  sim->add_option("--n", sim_n, "number of time points");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "output CSV path");

  // --- estimate ---
  auto* est = app.add_subcommand("estimate", "Estimate spectral precision from a CSV panel");
  std::string est_input, est_freq = "0", est_mrule = "ceil_4sqrt_n";
  std::string est_method = "cglasso_II", est_variant, est_grid = "50,3";
  double est_gamma = 0.0;
  std::string est_out = "estimate_out";
  bool est_no_center = false;
  est->add_option("--input", est_input, "input CSV (header row, n x p numerics)")->required();
  est->add_option("--freq", est_freq, "Fourier index, radians, or pi/pi2 shorthand");
  est->add_option("--m-rule", est_mrule, "floor_sqrt_n | ceil_4sqrt_n | explicit integer");
  est->add_option("--method", est_method,
                  "cglasso | cglasso_I | cglasso_II | inverse_periodogram");
  est->add_option("--variant", est_variant, "plain | I | II (applies to --method cglasso)");
  est->add_option("--lambda-grid", est_grid, "count[,decades], log-linear");
  est->add_option("--gamma", est_gamma, "EBIC gamma in [0,1]");
  est->add_option("--out", est_out, "output directory");
  est->add_flag("--no-center", est_no_center, "skip column centering");

  // --- experiment ---
  auto* exp = app.add_subcommand("experiment", "Replicated simulation study with summaries");
  std::string exp_dgp = "white_noise";
  int exp_p = 10, exp_n = 200, exp_reps = 20, exp_threads = 1;
  std::uint64_t exp_seed = 1;
  std::vector<std::string> exp_freqs = {"0"};
  std::string exp_mrule = "floor_sqrt_n", exp_grid = "50,3", exp_variant;
  std::vector<std::string> exp_methods = {"cglasso_II", "nodewise", "inverse_periodogram"};
  double exp_gamma = 0.0;
  std::string exp_out = "experiment_out", exp_nodewise_rule = "or";
  bool exp_no_stopping = false;
  exp->add_option("--dgp", exp_dgp, "white_noise | var1 | varma22 | var1_block");
  exp->add_option("--p", exp_p, "number of series");
  exp->add_option("--n", exp_n, "number of time points");
  exp->add_option("--freq", exp_freqs, "frequencies (repeatable)");
  exp->add_option("--m-rule", exp_mrule, "floor_sqrt_n | ceil_4sqrt_n | explicit integer");
  exp->add_option("--method", exp_methods, "methods (repeatable)");
  exp->add_option("--variant", exp_variant, "rewrites plain cglasso entries to I or II");
  exp->add_option("--lambda-grid", exp_grid, "count[,decades]");
  exp->add_option("--gamma", exp_gamma, "EBIC gamma in [0,1]");
  exp->add_option("--replicates", exp_reps, "number of replicates");
  exp->add_option("--seed", exp_seed, "base seed; replicate r uses seed+r");
  exp->add_option("--threads", exp_threads, "replicate-level parallelism");
  exp->add_option("--out", exp_out, "output directory");
  exp->add_option("--nodewise-rule", exp_nodewise_rule, "or | and");
  exp->add_flag("--no-stopping", exp_no_stopping, "disable the truth-based stopping rule");

  // --- benchmark ---
  auto* bench = app.add_subcommand("benchmark", "Time repeated complex lasso fits");
  int bench_p = 50, bench_n = 50, bench_reps = 20;
  std::uint64_t bench_seed = 1;
  double bench_frac = 0.1;
  bench->add_option("--p", bench_p, "number of predictors");
  bench->add_option("--n", bench_n, "number of observations");
  bench->add_option("--replicates", bench_reps, "number of timed fits");
  bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--lambda-frac", bench_frac, "lambda as a fraction of lambda_max");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      specprec::DgpSpec spec{specprec::parse_dgp(sim_dgp), sim_p, sim_n, sim_seed};
      const specprec::VarmaModel model = specprec::build_dgp(spec);
      const specprec::TimeSeriesPanel panel = specprec::simulate_path(model, sim_n, sim_seed);
      specprec::write_panel_csv(sim_out, panel);
      std::cout << "wrote " << sim_out << " (" << panel.n() << " x " << panel.p() << ")\n";
    } else if (est->parsed()) {
      specprec::EstimateFileConfig config;
      config.input_csv = est_input;
      config.frequency = est_freq;
      config.m_rule = parse_m_rule(est_mrule);
      config.method = apply_variant(specprec::parse_method(est_method), est_variant);
      config.grid = parse_lambda_grid(est_grid);
      config.gamma = est_gamma;
      config.output_dir = est_out;
      config.center = !est_no_center;
      const specprec::EstimateFileResult res = specprec::estimate_file(config);
      std::printf("frequency: requested %s, used index %d (omega = %.6f, snap delta %.2e)\n",
                  res.frequency.request.c_str(), res.frequency.index, res.frequency.omega,
                  res.frequency.delta);
      std::printf("m = %d, selected lambda = %.6g, converged = %s\n", res.m, res.lambda_selected,
                  res.converged ? "yes" : "no");
      std::cout << "outputs in " << est_out << "\n";
    } else if (exp->parsed()) {
      specprec::ExperimentConfig config;
      config.dgp = {specprec::parse_dgp(exp_dgp), exp_p, exp_n, exp_seed};
      config.frequencies = exp_freqs;
      config.m_rule = parse_m_rule(exp_mrule);
      config.methods.clear();
      for (const std::string& name : exp_methods) {
        config.methods.push_back(apply_variant(specprec::parse_method(name), exp_variant));
      }
      config.grid = parse_lambda_grid(exp_grid);
      config.gamma = exp_gamma;
      config.replicates = exp_reps;
      config.base_seed = exp_seed;
      config.output_dir = exp_out;
      config.threads = exp_threads;
      config.nodewise_rule = exp_nodewise_rule == "and" ? specprec::SymmetrizeRule::And
                                                        : specprec::SymmetrizeRule::Or;
      config.use_stopping_rule = !exp_no_stopping;
      const specprec::ExperimentResult result = specprec::run_experiment(config);
      std::printf("%-12s %-20s %8s %8s %8s %8s %8s %8s\n", "freq", "method", "rmse_or",
                  "rmse_bic", "auroc", "prec", "recall", "acc");
      for (const specprec::SummaryRow& row : result.summary) {
        const auto cell = [](const specprec::MetricStat& s) {
          char buf[16];
          if (s.count == 0) return std::string("-");
          std::snprintf(buf, sizeof(buf), "%.4f", s.mean);
          return std::string(buf);
        };
        std::printf("%-12s %-20s %8s %8s %8s %8s %8s %8s\n", row.frequency.c_str(),
                    row.method.c_str(), cell(row.rmse_oracle).c_str(), cell(row.rmse_bic).c_str(),
                    cell(row.auroc).c_str(), cell(row.precision).c_str(),
                    cell(row.recall).c_str(), cell(row.accuracy).c_str());
      }
      std::cout << "outputs in " << exp_out << "\n";
    } else if (bench->parsed()) {
      const specprec::BenchmarkReport report =
          specprec::benchmark_classo(bench_p, bench_n, bench_reps, bench_seed, bench_frac);
      std::printf("classo p=%d n=%d, %d fits at lambda = %.2f * lambda_max\n", report.p, report.n,
                  report.replicates, report.lambda_fraction);
      std::printf("mean %.6f s, median %.6f s, sd %.6f s\n", report.mean_seconds,
                  report.median_seconds, report.sd_seconds);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
