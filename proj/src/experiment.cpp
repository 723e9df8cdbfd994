#include "specprec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "specprec/csv.hpp"
#include "specprec/metrics.hpp"
#include "specprec/nodewise.hpp"
#include "specprec/realify.hpp"
#include "specprec/simulate.hpp"
#include "specprec/spectral.hpp"

namespace specprec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string cell_or_dash(double v) { return std::isfinite(v) ? fmt_double(v) : "-"; }

std::string cell_or_dash(const std::optional<double>& v) {
  return v.has_value() ? fmt_double(*v) : "-";
}

json matrix_to_json(const CMatrix& M) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      re_row.push_back(M(r, c).real());
      im_row.push_back(M(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

/// Per-cell export payload kept small enough to hold for a whole experiment.
struct CellExport {
  std::vector<double> lambdas;
  std::vector<double> ebic;
  std::vector<double> rmse_path;
  std::vector<double> kkt;
  std::vector<bool> converged;
  std::vector<int> edge_count;
  bool has_theta = false;
  CMatrix theta;
};

struct Cell {
  MethodRecord record;
  CellExport data;
};

struct ReplicateOutput {
  std::vector<Cell> cells;  // ordered by (frequency, method)
};

int count_edges(const BoolArray& support) {
  int edges = 0;
  for (Eigen::Index k = 0; k < support.rows(); ++k) {
    for (Eigen::Index l = k + 1; l < support.cols(); ++l) {
      if (support(k, l)) ++edges;
    }
  }
  return edges;
}

Scaling method_scaling(Method method) {
  switch (method) {
    case Method::Cglasso:
      return Scaling::none;
    case Method::CglassoI:
      return Scaling::input;
    case Method::CglassoII:
      return Scaling::inner;
    default:
      throw std::logic_error("method_scaling: not a cglasso method");
  }
}

Cell evaluate_cglasso_cell(const CMatrix& fhat, const CMatrix* truth, Method method,
                           const LambdaGridSpec& grid, double gamma, int m, int n_raw,
                           bool use_stopping, const PathOptions& path_options) {
  Cell cell;
  const Scaling scaling = method_scaling(method);
  const double lambda0 = std::max(cglasso_lambda_max(fhat, scaling), 1e-12);
  const std::vector<double> lambdas = lambda_grid(lambda0, grid.count, grid.decades);
  const EbicParams ebic_params{2 * m + 1, n_raw, gamma};
  const PrecisionPath path = cglasso_path(fhat, lambdas, scaling, ebic_params,
                                          use_stopping ? truth : nullptr, path_options);

  MethodRecord& rec = cell.record;
  rec.path_length = static_cast<int>(path.estimates.size());
  rec.rmse_oracle = kNaN;
  rec.rmse_bic = kNaN;
  rec.auroc = kNaN;
  rec.recall = kNaN;
  rec.accuracy = kNaN;
  rec.lambda_selected = kNaN;

  std::vector<BoolArray> supports;
  supports.reserve(path.estimates.size());
  for (std::size_t i = 0; i < path.estimates.size(); ++i) {
    const PrecisionEstimate& est = path.estimates[i];
    if (est.converged) ++rec.converged_points;
    cell.data.lambdas.push_back(path.lambdas[i]);
    cell.data.ebic.push_back(path.ebic[i]);
    cell.data.kkt.push_back(est.kkt_residual);
    cell.data.converged.push_back(est.converged);
    double err = kNaN;
    if (est.theta.allFinite()) {
      supports.push_back(support_of(est.theta));
      cell.data.edge_count.push_back(count_edges(supports.back()));
      if (truth != nullptr) {
        err = rmse(est.theta, *truth);
        if (!std::isfinite(rec.rmse_oracle) || err < rec.rmse_oracle) rec.rmse_oracle = err;
      }
    } else {
      cell.data.edge_count.push_back(-1);
    }
    cell.data.rmse_path.push_back(err);
  }

  if (truth != nullptr && supports.size() >= 2) {
    try {
      rec.auroc = auroc(supports, *truth);
    } catch (const std::invalid_argument&) {
      rec.auroc = kNaN;  // degenerate true support
    }
  }
  if (path.has_selection) {
    const PrecisionEstimate& sel = path.estimates[path.selected_index];
    rec.lambda_selected = sel.lambda;
    cell.data.has_theta = true;
    cell.data.theta = sel.theta;
    if (truth != nullptr) {
      rec.rmse_bic = rmse(sel.theta, *truth);
      const SupportScores s = support_scores(sel.theta, *truth);
      rec.precision = s.precision;
      rec.recall = s.recall;
      rec.accuracy = s.accuracy;
    }
  }
  return cell;
}

Cell evaluate_nodewise_cell(const CMatrix& Z, const CMatrix* truth, const LambdaGridSpec& grid,
                            SymmetrizeRule rule) {
  Cell cell;
  MethodRecord& rec = cell.record;
  rec.rmse_oracle = kNaN;
  rec.rmse_bic = kNaN;
  rec.auroc = kNaN;
  rec.recall = kNaN;
  rec.accuracy = kNaN;
  rec.lambda_selected = kNaN;

  const double lambda0 = std::max(nodewise_lambda_max(Z), 1e-12);
  const std::vector<double> lambdas = lambda_grid(lambda0, grid.count, grid.decades);
  const std::vector<BoolArray> supports = nodewise_support_path(Z, lambdas, rule);
  rec.path_length = static_cast<int>(supports.size());
  rec.converged_points = rec.path_length;
  cell.data.lambdas = lambdas;
  for (const BoolArray& s : supports) cell.data.edge_count.push_back(count_edges(s));
  if (truth != nullptr) {
    try {
      rec.auroc = auroc(supports, *truth);
    } catch (const std::invalid_argument&) {
      rec.auroc = kNaN;
    }
  }
  return cell;
}

Cell evaluate_inverse_periodogram(const CMatrix& fhat, const CMatrix* truth, int m) {
  Cell cell;
  MethodRecord& rec = cell.record;
  rec.rmse_oracle = kNaN;
  rec.rmse_bic = kNaN;
  rec.auroc = kNaN;
  rec.recall = kNaN;
  rec.accuracy = kNaN;
  rec.lambda_selected = kNaN;

  const Eigen::Index p = fhat.rows();
  if (p > 2 * m + 1) {
    rec.available = false;  // rank-deficient smoothed periodogram
    return cell;
  }
  Eigen::LLT<CMatrix> llt(fhat);
  if (llt.info() != Eigen::Success) {
    rec.available = false;
    return cell;
  }
  CMatrix theta = llt.solve(CMatrix::Identity(p, p));
  theta = ((theta + theta.adjoint()) / 2.0).eval();
  cell.data.has_theta = true;
  cell.data.theta = theta;
  if (truth != nullptr) {
    rec.rmse_oracle = rmse(theta, *truth);
    rec.rmse_bic = rec.rmse_oracle;
  }
  return cell;
}

MetricStat accumulate(const std::vector<double>& values) {
  MetricStat s;
  for (const double v : values) {
    if (std::isfinite(v)) {
      s.mean += v;
      ++s.count;
    }
  }
  if (s.count == 0) {
    s.mean = kNaN;
    s.sd = kNaN;
    return s;
  }
  s.mean /= s.count;
  if (s.count >= 2) {
    double ss = 0.0;
    for (const double v : values) {
      if (std::isfinite(v)) ss += (v - s.mean) * (v - s.mean);
    }
    s.sd = std::sqrt(ss / (s.count - 1));
  } else {
    s.sd = kNaN;
  }
  return s;
}

std::string freq_dir_name(int index) { return "j" + std::to_string(index); }

void write_records_csv(const std::string& path, const std::vector<MethodRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "replicate,frequency,freq_index,method,available,rmse_oracle,rmse_bic,auroc,"
         "precision,recall,accuracy,lambda_selected,path_length,converged_points\n";
  for (const MethodRecord& r : records) {
    out << r.replicate << ',' << r.frequency << ',' << r.freq_index << ',' << r.method << ','
        << (r.available ? 1 : 0) << ',' << cell_or_dash(r.rmse_oracle) << ','
        << cell_or_dash(r.rmse_bic) << ',' << cell_or_dash(r.auroc) << ','
        << cell_or_dash(r.precision) << ',' << cell_or_dash(r.recall) << ','
        << cell_or_dash(r.accuracy) << ',' << cell_or_dash(r.lambda_selected) << ','
        << r.path_length << ',' << r.converged_points << '\n';
  }
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "frequency,method,replicates,rmse_oracle_mean,rmse_oracle_sd,rmse_bic_mean,"
         "rmse_bic_sd,auroc_mean,auroc_sd,precision_mean,precision_sd,recall_mean,"
         "recall_sd,accuracy_mean,accuracy_sd\n";
  for (const SummaryRow& row : rows) {
    out << row.frequency << ',' << row.method << ',' << row.replicates;
    for (const MetricStat* s :
         {&row.rmse_oracle, &row.rmse_bic, &row.auroc, &row.precision, &row.recall,
          &row.accuracy}) {
      out << ',' << cell_or_dash(s->mean) << ',' << cell_or_dash(s->sd);
    }
    out << '\n';
  }
}

void write_timings_csv(const std::string& path, const std::vector<MethodRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "replicate,frequency,method,seconds\n";
  for (const MethodRecord& r : records) {
    out << r.replicate << ',' << r.frequency << ',' << r.method << ',' << fmt_double(r.seconds)
        << '\n';
  }
}

json cell_to_json(const Cell& cell) {
  json j;
  j["method"] = cell.record.method;
  j["frequency"] = cell.record.frequency;
  j["freq_index"] = cell.record.freq_index;
  j["available"] = cell.record.available;
  if (!cell.data.lambdas.empty()) j["lambdas"] = cell.data.lambdas;
  if (!cell.data.ebic.empty()) j["ebic"] = cell.data.ebic;
  if (!cell.data.rmse_path.empty()) j["rmse_path"] = cell.data.rmse_path;
  if (!cell.data.kkt.empty()) j["kkt_residual"] = cell.data.kkt;
  if (!cell.data.converged.empty()) j["converged"] = cell.data.converged;
  if (!cell.data.edge_count.empty()) j["edge_count"] = cell.data.edge_count;
  if (std::isfinite(cell.record.lambda_selected)) {
    j["lambda_selected"] = cell.record.lambda_selected;
  }
  if (cell.data.has_theta) j["theta"] = matrix_to_json(cell.data.theta);
  return j;
}

}  // namespace

int resolve_m(const SmoothingRule& rule, int n) {
  if (n < 2) throw std::invalid_argument("resolve_m: need n >= 2");
  int m = 0;
  switch (rule.rule) {
    case MRule::FloorSqrtN:
      m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
      break;
    case MRule::Ceil4SqrtN:
      m = static_cast<int>(std::ceil(4.0 * std::sqrt(static_cast<double>(n))));
      break;
    case MRule::Explicit:
      m = rule.explicit_m;
      break;
  }
  if (m < 0) throw std::invalid_argument("resolve_m: m must be >= 0");
  if (2 * m + 1 > n) {
    throw std::invalid_argument("resolve_m: smoothing span 2m+1 = " + std::to_string(2 * m + 1) +
                                " exceeds series length " + std::to_string(n));
  }
  return m;
}

FrequencyChoice snap_frequency(const std::string& token, int n) {
  if (n < 2) throw std::invalid_argument("snap_frequency: need n >= 2");
  FrequencyChoice choice;
  choice.request = token;

  const auto finish_index = [&](long j) {
    if (!in_fourier_grid(n, static_cast<int>(j))) {
      throw std::invalid_argument("snap_frequency: index " + std::to_string(j) +
                                  " outside F_n for n = " + std::to_string(n));
    }
    choice.index = static_cast<int>(j);
    choice.omega = kTwoPi * choice.index / n;
    choice.delta = 0.0;
  };

  std::string body = token;
  if (body.rfind("j=", 0) == 0) {
    body = body.substr(2);
    std::size_t used = 0;
    const long j = std::stol(body, &used);
    if (used != body.size()) throw std::invalid_argument("snap_frequency: bad index " + token);
    finish_index(j);
    return choice;
  }

  // Bare integers are grid indices; anything with "pi" or a decimal point is
  // a radian request snapped to the nearest Fourier frequency.
  const bool has_pi = body.find("pi") != std::string::npos;
  const bool has_dot = body.find('.') != std::string::npos ||
                       body.find('e') != std::string::npos;
  if (!has_pi && !has_dot) {
    std::size_t used = 0;
    long j = 0;
    try {
      j = std::stol(body, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("snap_frequency: cannot parse " + token);
    }
    if (used != body.size()) throw std::invalid_argument("snap_frequency: cannot parse " + token);
    finish_index(j);
    return choice;
  }

  double omega = 0.0;
  if (has_pi) {
    double sign = 1.0;
    std::string rest = body;
    if (!rest.empty() && rest[0] == '-') {
      sign = -1.0;
      rest = rest.substr(1);
    }
    double factor = 1.0;
    const std::size_t pos = rest.find("pi");
    const std::string pre = rest.substr(0, pos);
    const std::string post = rest.substr(pos + 2);
    if (!pre.empty()) factor *= std::stod(pre);
    if (!post.empty()) {
      if (post[0] != '/') throw std::invalid_argument("snap_frequency: cannot parse " + token);
      factor /= std::stod(post.substr(1));
    }
    omega = sign * factor * std::numbers::pi;
  } else {
    std::size_t used = 0;
    omega = std::stod(body, &used);
    if (used != body.size()) throw std::invalid_argument("snap_frequency: cannot parse " + token);
  }

  const long j = std::lround(omega * n / kTwoPi);
  choice.index = wrap_frequency_index(n, static_cast<int>(j));
  choice.omega = kTwoPi * choice.index / n;
  double d = std::fmod(std::abs(choice.omega - omega), kTwoPi);
  if (d > std::numbers::pi) d = kTwoPi - d;
  choice.delta = d;
  return choice;
}

std::string method_name(Method method) {
  switch (method) {
    case Method::Cglasso:
      return "cglasso";
    case Method::CglassoI:
      return "cglasso_I";
    case Method::CglassoII:
      return "cglasso_II";
    case Method::Nodewise:
      return "nodewise";
    case Method::InversePeriodogram:
      return "inverse_periodogram";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "cglasso") return Method::Cglasso;
  if (name == "cglasso_I" || name == "cglasso_i") return Method::CglassoI;
  if (name == "cglasso_II" || name == "cglasso_ii") return Method::CglassoII;
  if (name == "nodewise") return Method::Nodewise;
  if (name == "inverse_periodogram") return Method::InversePeriodogram;
  throw std::invalid_argument("unknown method: " + name);
}

std::string dgp_name(DgpFamily family) {
  switch (family) {
    case DgpFamily::WhiteNoise:
      return "white_noise";
    case DgpFamily::Var1:
      return "var1";
    case DgpFamily::Varma22:
      return "varma22";
    case DgpFamily::Var1Block:
      return "var1_block";
  }
  return "unknown";
}

DgpFamily parse_dgp(const std::string& name) {
  if (name == "white_noise") return DgpFamily::WhiteNoise;
  if (name == "var1") return DgpFamily::Var1;
  if (name == "varma22") return DgpFamily::Varma22;
  if (name == "var1_block") return DgpFamily::Var1Block;
  throw std::invalid_argument("unknown dgp: " + name);
}

std::vector<SummaryRow> summarize(const std::vector<MethodRecord>& records) {
  std::vector<SummaryRow> rows;
  for (const MethodRecord& r : records) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& row) {
      return row.frequency == r.frequency && row.method == r.method;
    });
    if (it == rows.end()) {
      rows.push_back(SummaryRow{r.frequency, r.method, 0, {}, {}, {}, {}, {}, {}});
    }
  }
  for (SummaryRow& row : rows) {
    std::vector<double> ro, rb, au, pr, re, ac;
    for (const MethodRecord& r : records) {
      if (r.frequency != row.frequency || r.method != row.method) continue;
      ++row.replicates;
      if (!r.available) continue;
      ro.push_back(r.rmse_oracle);
      rb.push_back(r.rmse_bic);
      au.push_back(r.auroc);
      pr.push_back(r.precision.value_or(kNaN));
      re.push_back(r.recall);
      ac.push_back(r.accuracy);
    }
    row.rmse_oracle = accumulate(ro);
    row.rmse_bic = accumulate(rb);
    row.auroc = accumulate(au);
    row.precision = accumulate(pr);
    row.recall = accumulate(re);
    row.accuracy = accumulate(ac);
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.replicates < 1) throw std::invalid_argument("run_experiment: replicates >= 1");
  if (config.methods.empty()) throw std::invalid_argument("run_experiment: no methods");
  const int n = config.dgp.n;
  const int m = resolve_m(config.m_rule, n);

  ExperimentResult result;
  result.m = m;
  for (const std::string& tok : config.frequencies) {
    result.frequencies.push_back(snap_frequency(tok, n));
  }
  if (result.frequencies.empty()) throw std::invalid_argument("run_experiment: no frequencies");

  const VarmaModel model = build_dgp(config.dgp);
  std::vector<CMatrix> truths;
  for (const FrequencyChoice& f : result.frequencies) {
    truths.push_back(true_precision(model, f.omega));
  }

  std::vector<ReplicateOutput> outputs(config.replicates);
  std::atomic<int> next{0};
  const auto run_replicates = [&]() {
    for (int r = next.fetch_add(1); r < config.replicates; r = next.fetch_add(1)) {
      ReplicateOutput out;
      const TimeSeriesPanel panel =
          simulate_path(model, n, config.base_seed + static_cast<std::uint64_t>(r));
      for (std::size_t fi = 0; fi < result.frequencies.size(); ++fi) {
        const FrequencyChoice& freq = result.frequencies[fi];
        const CMatrix* truth = &truths[fi];
        const SpectralEstimate est = averaged_periodogram(panel, freq.index, m);
        CMatrix Z;  // built lazily, only nodewise needs it
        for (const Method method : config.methods) {
          const auto t0 = std::chrono::steady_clock::now();
          Cell cell;
          switch (method) {
            case Method::Cglasso:
            case Method::CglassoI:
            case Method::CglassoII:
              cell = evaluate_cglasso_cell(est.fhat, truth, method, config.grid, config.gamma,
                                           m, n, config.use_stopping_rule, config.path_options);
              break;
            case Method::Nodewise:
              if (Z.size() == 0) Z = dft_data_matrix(panel, freq.index, m);
              cell = evaluate_nodewise_cell(Z, truth, config.grid, config.nodewise_rule);
              break;
            case Method::InversePeriodogram:
              cell = evaluate_inverse_periodogram(est.fhat, truth, m);
              break;
          }
          cell.record.replicate = r;
          cell.record.frequency = freq.request;
          cell.record.freq_index = freq.index;
          cell.record.method = method_name(method);
          cell.record.seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          out.cells.push_back(std::move(cell));
        }
      }
      outputs[r] = std::move(out);
    }
  };

  const int n_threads = std::max(1, std::min(config.threads, config.replicates));
  if (n_threads == 1) {
    run_replicates();
  } else {
    std::exception_ptr worker_error;
    std::mutex error_mutex;
    const auto worker = [&]() {
      try {
        run_replicates();
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!worker_error) worker_error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
  }

  for (const ReplicateOutput& out : outputs) {
    for (const Cell& cell : out.cells) result.records.push_back(cell.record);
  }
  result.summary = summarize(result.records);

  if (!config.output_dir.empty()) {
    const fs::path root(config.output_dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec || !fs::is_directory(root)) {
      throw std::invalid_argument("run_experiment: cannot create output dir " +
                                  config.output_dir);
    }

    json manifest;
    manifest["dgp"] = {{"family", dgp_name(config.dgp.family)},
                       {"p", config.dgp.p},
                       {"n", config.dgp.n}};
    manifest["m"] = m;
    manifest["gamma"] = config.gamma;
    manifest["replicates"] = config.replicates;
    manifest["base_seed"] = config.base_seed;
    manifest["lambda_grid"] = {{"count", config.grid.count}, {"decades", config.grid.decades}};
    manifest["stopping_rule"] = config.use_stopping_rule;
    manifest["nodewise_rule"] = config.nodewise_rule == SymmetrizeRule::Or ? "or" : "and";
    json freqs = json::array();
    for (const FrequencyChoice& f : result.frequencies) {
      freqs.push_back({{"request", f.request},
                       {"index", f.index},
                       {"omega", f.omega},
                       {"snap_delta", f.delta}});
    }
    manifest["frequencies"] = std::move(freqs);
    json methods = json::array();
    for (const Method mth : config.methods) methods.push_back(method_name(mth));
    manifest["methods"] = std::move(methods);
    std::ofstream(root / "manifest.json") << manifest.dump(2) << '\n';

    write_records_csv((root / "per_replicate.csv").string(), result.records);
    write_summary_csv((root / "summary.csv").string(), result.summary);
    write_timings_csv((root / "timings.csv").string(), result.records);

    for (int r = 0; r < config.replicates; ++r) {
      for (const Cell& cell : outputs[r].cells) {
        const fs::path dir =
            root / "estimates" / std::to_string(r) / freq_dir_name(cell.record.freq_index);
        fs::create_directories(dir);
        std::ofstream(dir / (cell.record.method + ".json")) << cell_to_json(cell).dump(2)
                                                            << '\n';
      }
    }
  }
  return result;
}

EstimateFileResult estimate_file(const EstimateFileConfig& config) {
  if (config.method == Method::Nodewise) {
    throw std::invalid_argument(
        "estimate_file: nodewise recovers supports only, not precision values");
  }
  const TimeSeriesPanel panel = read_panel_csv(config.input_csv);
  const int n = static_cast<int>(panel.n());
  const int m = resolve_m(config.m_rule, n);

  EstimateFileResult res;
  res.frequency = snap_frequency(config.frequency, n);
  res.m = m;
  res.names = panel.names;

  const SpectralOptions sopts{.center = config.center};
  const SpectralEstimate est = averaged_periodogram(panel, res.frequency.index, m, sopts);

  if (config.method == Method::InversePeriodogram) {
    if (panel.p() > 2 * m + 1) {
      throw std::invalid_argument(
          "estimate_file: inverse periodogram needs p <= 2m+1; increase the span");
    }
    Eigen::LLT<CMatrix> llt(est.fhat);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("estimate_file: smoothed periodogram is singular");
    }
    res.theta = llt.solve(CMatrix::Identity(panel.p(), panel.p()));
    res.theta = ((res.theta + res.theta.adjoint()) / 2.0).eval();
    res.lambda_selected = 0.0;
    res.converged = true;
  } else {
    const Scaling scaling = method_scaling(config.method);
    const double lambda0 = std::max(cglasso_lambda_max(est.fhat, scaling), 1e-12);
    const std::vector<double> lambdas =
        lambda_grid(lambda0, config.grid.count, config.grid.decades);
    const PrecisionPath path = cglasso_path(est.fhat, lambdas, scaling,
                                            EbicParams{2 * m + 1, n, config.gamma});
    if (!path.has_selection) {
      throw std::invalid_argument("estimate_file: no converged estimate along the path");
    }
    const PrecisionEstimate& sel = path.estimates[path.selected_index];
    res.theta = sel.theta;
    res.lambda_selected = sel.lambda;
    res.converged = sel.converged;
    res.lambdas = path.lambdas;
    res.ebic = path.ebic;
  }
  res.partial_coherence = partial_coherence(res.theta);

  if (!config.output_dir.empty()) {
    const fs::path root(config.output_dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec || !fs::is_directory(root)) {
      throw std::invalid_argument("estimate_file: cannot create output dir " + config.output_dir);
    }
    json j;
    j["input"] = config.input_csv;
    j["n"] = n;
    j["p"] = panel.p();
    j["names"] = panel.names;
    j["m"] = m;
    j["method"] = method_name(config.method);
    j["centered"] = config.center;
    j["frequency"] = {{"request", res.frequency.request},
                      {"index", res.frequency.index},
                      {"omega", res.frequency.omega},
                      {"snap_delta", res.frequency.delta}};
    if (!res.lambdas.empty()) {
      j["lambdas"] = res.lambdas;
      j["ebic"] = res.ebic;
    }
    j["lambda_selected"] = res.lambda_selected;
    j["converged"] = res.converged;
    j["theta"] = matrix_to_json(res.theta);
    j["partial_coherence"] = matrix_to_json(res.partial_coherence);
    std::ofstream(root / "estimate.json") << j.dump(2) << '\n';

    std::ofstream edges(root / "edges.csv");
    edges << "k,l,name_k,name_l,abs_partial_coherence\n";
    for (Eigen::Index k = 0; k < res.theta.rows(); ++k) {
      for (Eigen::Index l = k + 1; l < res.theta.cols(); ++l) {
        const double w = std::abs(res.partial_coherence(k, l));
        if (w > 1e-8) {
          edges << (k + 1) << ',' << (l + 1) << ',' << panel.names[k] << ',' << panel.names[l]
                << ',' << fmt_double(w) << '\n';
        }
      }
    }
  }
  return res;
}

BenchmarkReport benchmark_classo(int p, int n, int replicates, std::uint64_t seed,
                                 double lambda_fraction) {
  if (p < 1 || n < 1 || replicates < 1) {
    throw std::invalid_argument("benchmark_classo: sizes must be positive");
  }
  BenchmarkReport report;
  report.p = p;
  report.n = n;
  report.replicates = replicates;
  report.lambda_fraction = lambda_fraction;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector beta_true(p);
  for (int k = 0; k < p; ++k) {
    beta_true(k) = (k % 2 == 0) ? Complex(1.0, -1.0) : Complex(0.0, 0.0);  // odd 1-based index
  }

  for (int rep = 0; rep < replicates; ++rep) {
    CMatrix X(n, p);
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < n; ++i) X(i, j) = Complex(gauss(rng), gauss(rng));
    }
    CVector y = X * beta_true;
    for (int i = 0; i < n; ++i) y(i) += gauss(rng);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (int j = 0; j < p; ++j) X.col(j) *= sqrt_n / X.col(j).norm();

    const double lambda = lambda_fraction * classo_lambda_max(X, y);
    const auto t0 = std::chrono::steady_clock::now();
    LassoSolution sol = classo(X, y, lambda);
    report.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    if (rep == 0) {
      report.first_design = X;
      report.first_response = y;
      report.first_lambda = lambda;
      report.first_beta = sol.beta;
    }
  }

  std::vector<double> sorted = report.seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t nrep = sorted.size();
  report.median_seconds = nrep % 2 == 1
                              ? sorted[nrep / 2]
                              : (sorted[nrep / 2 - 1] + sorted[nrep / 2]) / 2.0;
  const MetricStat s = accumulate(report.seconds);
  report.mean_seconds = s.mean;
  report.sd_seconds = std::isfinite(s.sd) ? s.sd : 0.0;
  return report;
}

}  // namespace specprec
