#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfgcast/calibrate.hpp"
#include "mfgcast/forecast.hpp"
#include "mfgcast/io.hpp"
#include "mfgcast/oracle.hpp"
#include "mfgcast/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace mfgcast;

struct RunConfig {
  int nx = 21;
  int nt = 11;
  double T = 1.0;
  double lambda = 1.0;
  double a = 1.1;
  double c = 3.0;
  double d = 1.0;
  double alpha = 1e-4;
  double beta = 0.25;
  double r = 50.0;
  double u_left = 2.0;
  double kernel = 1.0;
  double bandwidth = kAutoBandwidth;
  int eps_adjust = 2;
  double eps_cutoff = 0.2;
  std::string stencil = "standard";
  int max_iterations = 5000;
  double tolerance = 1e-5;
  int history = 10;
  double error_floor = 1e-3;
  int period = 0;
  std::uint64_t seed = 20200302;
  int scores_per_week = 500;
  std::string scenario_kind = "manufactured";
  double scenario_A = 0.1;
  double scenario_B = 0.5;
  double scenario_D = 0.02;
  double scenario_m0_B = 0.5;
  int substeps = 100;
};

template <typename T>
void pick(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (path.empty()) return cfg;
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw validation_error("config '" + path + "': " + e.what());
  }
  try {
    if (j.contains("grid")) {
      pick(j["grid"], "nx", cfg.nx);
      pick(j["grid"], "nt", cfg.nt);
      pick(j["grid"], "T", cfg.T);
    }
    if (j.contains("carleman")) {
      pick(j["carleman"], "lambda", cfg.lambda);
      pick(j["carleman"], "a", cfg.a);
      pick(j["carleman"], "c", cfg.c);
      pick(j["carleman"], "d", cfg.d);
    }
    pick(j, "alpha", cfg.alpha);
    if (j.contains("mfg")) {
      pick(j["mfg"], "beta", cfg.beta);
      pick(j["mfg"], "r", cfg.r);
      pick(j["mfg"], "u_left", cfg.u_left);
      pick(j["mfg"], "kernel", cfg.kernel);
    }
    if (j.contains("ingest")) {
      pick(j["ingest"], "bandwidth", cfg.bandwidth);
      pick(j["ingest"], "eps_adjust", cfg.eps_adjust);
    }
    if (j.contains("estimate")) {
      pick(j["estimate"], "eps_cutoff", cfg.eps_cutoff);
      pick(j["estimate"], "stencil", cfg.stencil);
    }
    if (j.contains("solver")) {
      pick(j["solver"], "max_iterations", cfg.max_iterations);
      pick(j["solver"], "tolerance", cfg.tolerance);
      pick(j["solver"], "history", cfg.history);
    }
    pick(j, "error_floor", cfg.error_floor);
    pick(j, "period", cfg.period);
    pick(j, "seed", cfg.seed);
    pick(j, "scores_per_week", cfg.scores_per_week);
    if (j.contains("scenario")) {
      pick(j["scenario"], "kind", cfg.scenario_kind);
      pick(j["scenario"], "A", cfg.scenario_A);
      pick(j["scenario"], "B", cfg.scenario_B);
      pick(j["scenario"], "D", cfg.scenario_D);
      pick(j["scenario"], "m0_B", cfg.scenario_m0_B);
      pick(j["scenario"], "substeps", cfg.substeps);
    }
  } catch (const json::exception& e) {
    throw validation_error("config '" + path + "': " + e.what());
  }
  return cfg;
}

// Flags shared across subcommands; unset optionals fall back to the
// config file, which falls back to the fixed defaults.
struct Overrides {
  std::string config_path;
  std::optional<int> nx, nt, period, max_iterations, scores_per_week;
  std::optional<double> T, beta, r, u_left, alpha, lambda, a, c, d, kernel;
  std::optional<double> bandwidth, tolerance, eps_cutoff;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> stencil;
};

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "JSON configuration file");
  cmd->add_option("--nx", ov.nx, "spatial nodes");
  cmd->add_option("--nt", ov.nt, "time nodes (weeks)");
  cmd->add_option("--T", ov.T, "time horizon");
  cmd->add_option("--beta", ov.beta, "diffusion coefficient");
  cmd->add_option("--r", ov.r, "drift coefficient");
  cmd->add_option("--u-left", ov.u_left, "value function at x=-1, t=0");
  cmd->add_option("--alpha", ov.alpha, "regularization weight");
  cmd->add_option("--lambda", ov.lambda, "weight exponent");
  cmd->add_option("--a", ov.a, "weight balance exponent factor");
  cmd->add_option("--c", ov.c, "weight shift");
  cmd->add_option("--d", ov.d, "second-residual scale");
  cmd->add_option("--kernel", ov.kernel, "constant interaction kernel value");
  cmd->add_option("--bandwidth", ov.bandwidth, "density bandwidth (0 = data-driven)");
  cmd->add_option("--tolerance", ov.tolerance, "optimality tolerance");
  cmd->add_option("--max-iterations", ov.max_iterations, "iteration cap");
  cmd->add_option("--eps-cutoff", ov.eps_cutoff, "cutoff width near x=1");
  cmd->add_option("--stencil", ov.stencil, "forward stencil: standard or paper-literal");
  cmd->add_option("--period", ov.period, "preset period index 1-10");
  cmd->add_option("--seed", ov.seed, "random seed for synthetic scores");
  cmd->add_option("--scores-per-week", ov.scores_per_week, "synthetic scores per week");
}

RunConfig resolve(const Overrides& ov) {
  RunConfig cfg = load_config(ov.config_path);
  if (ov.period) cfg.period = *ov.period;
  if (cfg.period != 0) {
    const PeriodPreset p = period_preset(cfg.period);
    cfg.beta = p.beta;
    cfg.r = p.r;
    cfg.u_left = p.u_left;
  }
  if (ov.nx) cfg.nx = *ov.nx;
  if (ov.nt) cfg.nt = *ov.nt;
  if (ov.T) cfg.T = *ov.T;
  if (ov.beta) cfg.beta = *ov.beta;
  if (ov.r) cfg.r = *ov.r;
  if (ov.u_left) cfg.u_left = *ov.u_left;
  if (ov.alpha) cfg.alpha = *ov.alpha;
  if (ov.lambda) cfg.lambda = *ov.lambda;
  if (ov.a) cfg.a = *ov.a;
  if (ov.c) cfg.c = *ov.c;
  if (ov.d) cfg.d = *ov.d;
  if (ov.kernel) cfg.kernel = *ov.kernel;
  if (ov.bandwidth) cfg.bandwidth = *ov.bandwidth;
  if (ov.tolerance) cfg.tolerance = *ov.tolerance;
  if (ov.max_iterations) cfg.max_iterations = *ov.max_iterations;
  if (ov.eps_cutoff) cfg.eps_cutoff = *ov.eps_cutoff;
  if (ov.stencil) cfg.stencil = *ov.stencil;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.scores_per_week) cfg.scores_per_week = *ov.scores_per_week;
  return cfg;
}

Grid grid_of(const RunConfig& cfg) { return make_grid(cfg.nx, cfg.nt, cfg.T); }

MfgParams params_of(const RunConfig& cfg) {
  MfgParams p;
  p.beta = cfg.beta;
  p.r = cfg.r;
  p.u_left = cfg.u_left;
  p.alpha = cfg.alpha;
  p.kernel = KernelSpec::make_constant(cfg.kernel);
  p.carleman = CarlemanParams{cfg.lambda, cfg.c, cfg.a, cfg.d, cfg.T};
  return p;
}

StencilMode stencil_of(const RunConfig& cfg) {
  if (cfg.stencil == "standard") return StencilMode::standard;
  if (cfg.stencil == "paper-literal") return StencilMode::paper_literal;
  throw validation_error("stencil must be 'standard' or 'paper-literal'");
}

ForecastOptions forecast_options(const RunConfig& cfg) {
  ForecastOptions o;
  o.eps_cutoff = cfg.eps_cutoff;
  o.stencil = stencil_of(cfg);
  o.solve.max_iterations = cfg.max_iterations;
  o.solve.tolerance = cfg.tolerance;
  o.solve.history = cfg.history;
  o.error_floor = cfg.error_floor;
  return o;
}

// Validates every derived object up front so bad configs fail before
// any file is touched.
void validate_all(const RunConfig& cfg) {
  const Grid g = grid_of(cfg);
  validate_params(params_of(cfg));
  stencil_of(cfg);
  if (cfg.eps_adjust < 2 || cfg.eps_adjust > g.nx - 3)
    throw validation_error("ingest.eps_adjust must lie in [2, nx-3]");
  if (!(cfg.eps_cutoff > 0.0 && cfg.eps_cutoff < 1.0))
    throw validation_error("estimate.eps_cutoff must lie in (0, 1)");
  if (cfg.max_iterations < 0) throw validation_error("solver.max_iterations must be >= 0");
  if (!(cfg.tolerance > 0.0)) throw validation_error("solver.tolerance must be positive");
  if (cfg.history < 1) throw validation_error("solver.history must be >= 1");
  if (cfg.scores_per_week < 2)
    throw validation_error("scores_per_week must be >= 2");
  if (cfg.substeps < 1) throw validation_error("scenario.substeps must be >= 1");
}

std::string week_name(int j) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "week_%02d.csv", j + 1);
  return buf;
}

void write_manifest(const fs::path& dir, const std::vector<std::string>& files,
                    Timestamp start) {
  nlohmann::ordered_json j;
  j["weeks"] = files;
  j["start"] = format_iso8601(start);
  write_text_file((dir / "manifest.json").string(), j.dump(2) + "\n");
}

std::vector<DensitySlice> load_weeks(const std::string& densities, const Grid& g) {
  fs::path manifest(densities);
  if (fs::is_directory(manifest)) manifest /= "manifest.json";
  json j;
  try {
    j = json::parse(read_text_file(manifest.string()));
  } catch (const json::exception& e) {
    throw validation_error(manifest.string() + ": " + e.what());
  }
  std::vector<std::string> files;
  try {
    files = j.at("weeks").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw validation_error(manifest.string() + ": " + e.what());
  }
  std::vector<DensitySlice> weeks;
  for (std::size_t k = 0; k < files.size(); ++k) {
    DensitySlice d;
    d.week = static_cast<int>(k);
    d.values = read_density_csv((manifest.parent_path() / files[k]).string(), g);
    weeks.push_back(std::move(d));
  }
  return weeks;
}

Timestamp start_time(const RunConfig& cfg, const std::string& start_flag) {
  if (!start_flag.empty()) return parse_iso8601(start_flag);
  if (cfg.period != 0) return period_start(cfg.period);
  return period_start(1);
}

json params_echo(const RunConfig& cfg) {
  return json{{"beta", cfg.beta},     {"r", cfg.r},         {"u_left", cfg.u_left},
              {"alpha", cfg.alpha},   {"lambda", cfg.lambda}, {"a", cfg.a},
              {"c", cfg.c},           {"d", cfg.d},         {"kernel", cfg.kernel},
              {"nx", cfg.nx},         {"nt", cfg.nt},       {"T", cfg.T},
              {"period", cfg.period}};
}

int cmd_ingest(const RunConfig& cfg, const std::string& scores, const std::string& out_dir,
               const std::string& start_flag) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  const Timestamp start = start_time(cfg, start_flag);

  const SentimentSeries series = load_scores(scores);
  const WeeklyBins bins = weekly_bins(series, start, g.nt);
  std::vector<DensitySlice> weeks;
  for (int k = 0; k < g.nt; ++k) {
    if (bins.bins[static_cast<std::size_t>(k)].size() < 2)
      throw validation_error("week " + std::to_string(k + 1) +
                             " has fewer than 2 scores; cannot estimate a density");
    DensitySlice d = kde_density(bins.bins[static_cast<std::size_t>(k)], cfg.bandwidth, g, k);
    weeks.push_back(preprocess(d, g, cfg.eps_adjust));
  }

  fs::create_directories(out_dir);
  std::vector<std::string> files;
  for (int k = 0; k < g.nt; ++k) {
    files.push_back(week_name(k));
    write_density_csv((fs::path(out_dir) / files.back()).string(),
                      weeks[static_cast<std::size_t>(k)].values, g);
  }
  write_manifest(out_dir, files, start);
  std::cout << "wrote " << g.nt << " weekly densities to " << out_dir << "\n";
  return 0;
}

int cmd_estimate(const RunConfig& cfg, const std::string& densities,
                 const std::string& out_dir) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  const auto weeks = load_weeks(densities, g);
  if (weeks.size() < 3)
    throw validation_error("estimate-u0 needs at least 3 weekly densities");

  const InitEstimate est = estimate_initial_value({weeks[0], weeks[1], weeks[2]},
                                                  params_of(cfg), g, cfg.eps_cutoff,
                                                  stencil_of(cfg));

  fs::create_directories(out_dir);
  std::string csv = "x,u0,ux0,p0\n";
  for (int i = 0; i < g.nx; ++i)
    csv += format_number(g.x(i)) + "," + format_number(est.u0[i]) + "," +
           format_number(est.ux0[i]) + "," + format_number(est.p0[i]) + "\n";
  write_text_file((fs::path(out_dir) / "estimate.csv").string(), csv);

  nlohmann::ordered_json j;
  j["min_density"] = est.min_density;
  j["stencil"] = est.mode == StencilMode::standard ? "standard" : "paper-literal";
  j["u_left"] = cfg.u_left;
  write_text_file((fs::path(out_dir) / "estimate.json").string(), j.dump(2) + "\n");
  std::cout << "wrote initial-value estimate to " << out_dir << "\n";
  return 0;
}

void write_forecast_outputs(const RunConfig& cfg, const Grid& g,
                            const std::vector<DensitySlice>& weeks,
                            const ForecastOutcome& out, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_field_csv((fs::path(out_dir) / "u.csv").string(), out.solve.state.u, g);
  write_field_csv((fs::path(out_dir) / "m.csv").string(), out.solve.state.m, g);
  write_metrics_json((fs::path(out_dir) / "metrics.json").string(), out.metrics);

  nlohmann::ordered_json j;
  j["params"] = params_echo(cfg);
  j["iterations"] = out.solve.iterations;
  j["final_optimality"] = out.solve.final_optimality;
  j["objective_initial"] = out.solve.objective_trace.front();
  j["objective_final"] = out.solve.objective_trace.back();
  j["hit_iteration_cap"] = out.solve.hit_iteration_cap;
  j["max_pinned_violation"] = out.solve.max_pinned_violation;
  j["max_neumann_violation"] = out.solve.max_neumann_violation;
  j["min_initial_density"] = out.init.min_density;
  write_text_file((fs::path(out_dir) / "forecast.json").string(), j.dump(2) + "\n");

  for (int k = 0; k < g.nt; ++k) {
    const std::string title = "week " + std::to_string(k + 1);
    const std::string svg = svg_week_comparison(
        out.solve.state.m.col(k), weeks[static_cast<std::size_t>(k)].values, g, title);
    std::string name = week_name(k);
    name.replace(name.size() - 3, 3, "svg");
    write_text_file((fs::path(out_dir) / name).string(), svg);
  }
  write_text_file((fs::path(out_dir) / "true_cost.svg").string(),
                  svg_curve(out.metrics.true_cost_curve, g, "true cost"));
}

int cmd_forecast(const RunConfig& cfg, const std::string& densities,
                 const std::string& out_dir) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  const auto weeks = load_weeks(densities, g);
  const ForecastOutcome out = forecast(weeks, params_of(cfg), g, forecast_options(cfg));
  write_forecast_outputs(cfg, g, weeks, out, out_dir);
  std::cout << "forecast finished after " << out.solve.iterations
            << " iterations (optimality " << out.solve.final_optimality << "), mean error "
            << out.metrics.summary.mean_error << "\n";
  return 0;
}

int cmd_calibrate(const RunConfig& cfg, const std::string& densities,
                  const std::string& out_dir, std::vector<double> betas,
                  std::vector<double> rs, std::vector<double> u_lefts) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  const auto weeks = load_weeks(densities, g);

  CalibrationSpec spec;
  spec.betas = betas.empty() ? std::vector<double>{cfg.beta} : std::move(betas);
  spec.rs = rs.empty() ? std::vector<double>{cfg.r} : std::move(rs);
  spec.u_lefts = u_lefts.empty() ? std::vector<double>{cfg.u_left} : std::move(u_lefts);

  const CalibrationReport rep =
      sweep(weeks, spec, g, params_of(cfg), forecast_options(cfg));

  fs::create_directories(out_dir);
  write_report_json((fs::path(out_dir) / "report.json").string(), rep);
  write_text_file((fs::path(out_dir) / "error_heatmap.svg").string(),
                  svg_heatmap(rep.entries.front().metrics.error_matrix, g,
                              "relative error, best triple"));
  std::cout << "best triple: beta=" << rep.best.beta << " r=" << rep.best.r
            << " u_left=" << rep.best.u_left << " (score "
            << rep.entries.front().score << ")\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir,
                 const std::string& start_flag) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  const MfgParams p = params_of(cfg);
  const Timestamp start = start_time(cfg, start_flag);

  Field m_true(g.nx, g.nt);
  Field u_true(g.nx, g.nt);
  if (cfg.scenario_kind == "manufactured") {
    const SyntheticScenario sc =
        make_manufactured({cfg.scenario_A, cfg.scenario_B}, p, g);
    m_true = sc.m_star;
    u_true = sc.u_star;
  } else if (cfg.scenario_kind == "dynamics") {
    u_true = hjb_exact_value(cfg.scenario_D, p, g);
    Slice m0(g.nx);
    for (int i = 0; i < g.nx; ++i)
      m0[i] = 0.5 * (1.0 + cfg.scenario_m0_B * std::cos(M_PI * g.x(i)));
    DensitySlice d0;
    d0.values = m0;
    m_true = simulate_fpk(preprocess(d0, g).values, u_true, p, g, cfg.substeps);
  } else {
    throw validation_error("scenario.kind must be 'manufactured' or 'dynamics'");
  }

  std::vector<DensitySlice> weeks;
  for (int j = 0; j < g.nt; ++j) {
    DensitySlice d;
    d.week = j;
    d.values = m_true.col(j);
    weeks.push_back(preprocess(d, g));
  }

  constexpr std::int64_t week_seconds = 7 * 86400;
  std::vector<SentimentRecord> records;
  for (int j = 0; j < g.nt; ++j) {
    const auto scores = sample_scores(weeks[static_cast<std::size_t>(j)].values, g,
                                      cfg.scores_per_week, cfg.seed + static_cast<std::uint64_t>(j));
    const std::int64_t step = week_seconds / cfg.scores_per_week;
    for (int k = 0; k < cfg.scores_per_week; ++k)
      records.push_back({start + j * week_seconds + k * step, scores[static_cast<std::size_t>(k)]});
  }

  fs::create_directories(out_dir);
  std::vector<std::string> files;
  for (int j = 0; j < g.nt; ++j) {
    files.push_back(week_name(j));
    write_density_csv((fs::path(out_dir) / files.back()).string(),
                      weeks[static_cast<std::size_t>(j)].values, g);
  }
  write_manifest(out_dir, files, start);
  write_scores_csv((fs::path(out_dir) / "scores.csv").string(), records);
  write_field_csv((fs::path(out_dir) / "u_true.csv").string(), u_true, g);

  nlohmann::ordered_json j;
  j["kind"] = cfg.scenario_kind;
  j["A"] = cfg.scenario_A;
  j["B"] = cfg.scenario_B;
  j["D"] = cfg.scenario_D;
  j["m0_B"] = cfg.scenario_m0_B;
  j["substeps"] = cfg.substeps;
  j["seed"] = cfg.seed;
  j["scores_per_week"] = cfg.scores_per_week;
  j["params"] = params_echo(cfg);
  write_text_file((fs::path(out_dir) / "scenario.json").string(), j.dump(2) + "\n");
  std::cout << "wrote synthetic dataset to " << out_dir << "\n";
  return 0;
}

int cmd_metrics(const RunConfig& cfg, const std::string& u_csv, const std::string& m_csv,
                const std::string& densities, const std::string& out_path) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  State s;
  s.u = read_field_csv(u_csv, g);
  s.m = read_field_csv(m_csv, g);
  const auto weeks = load_weeks(densities, g);
  if (static_cast<int>(weeks.size()) != g.nt)
    throw validation_error("metrics: need one density slice per time node");
  Field m_data(g.nx, g.nt);
  for (int j = 0; j < g.nt; ++j) m_data.col(j) = weeks[static_cast<std::size_t>(j)].values;

  const MetricsReport rep = make_report(s, params_of(cfg), g, m_data, cfg.error_floor);
  if (const fs::path parent = fs::path(out_path).parent_path(); !parent.empty())
    fs::create_directories(parent);
  write_metrics_json(out_path, rep);
  std::cout << "mean error " << rep.summary.mean_error << ", fraction below 0.25 "
            << rep.summary.fraction_below_quarter << "\n";
  return 0;
}

int cmd_plot(const RunConfig& cfg, const std::string& m_csv, const std::string& densities,
             const std::string& metrics_path, const std::string& out_dir) {
  validate_all(cfg);
  const Grid g = grid_of(cfg);
  const Field m = read_field_csv(m_csv, g);
  const auto weeks = load_weeks(densities, g);
  if (static_cast<int>(weeks.size()) != g.nt)
    throw validation_error("plot: need one density slice per time node");

  fs::create_directories(out_dir);
  for (int k = 0; k < g.nt; ++k) {
    const std::string svg = svg_week_comparison(
        m.col(k), weeks[static_cast<std::size_t>(k)].values, g,
        "week " + std::to_string(k + 1));
    std::string name = week_name(k);
    name.replace(name.size() - 3, 3, "svg");
    write_text_file((fs::path(out_dir) / name).string(), svg);
  }
  if (!metrics_path.empty()) {
    const MetricsReport rep = read_metrics_json(metrics_path);
    if (rep.true_cost_curve.size() == g.nt)
      write_text_file((fs::path(out_dir) / "true_cost.svg").string(),
                      svg_curve(rep.true_cost_curve, g, "true cost"));
    if (rep.error_matrix.rows() == g.nx && rep.error_matrix.cols() == g.nt)
      write_text_file((fs::path(out_dir) / "error_heatmap.svg").string(),
                      svg_heatmap(rep.error_matrix, g, "relative error"));
  }
  std::cout << "wrote plots to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment-density forecasting via a weighted convexified functional"};
  app.require_subcommand(1);

  Overrides ov;
  std::string scores, densities, out_dir = "out", start_flag;
  std::string u_csv, m_csv, metrics_path, out_path = "metrics.json";
  std::vector<double> betas, rs, u_lefts;

  auto* ingest = app.add_subcommand("ingest", "scores CSV to weekly densities");
  add_common(ingest, ov);
  ingest->add_option("--scores", scores, "input scores CSV")->required();
  ingest->add_option("--out", out_dir, "output directory");
  ingest->add_option("--start", start_flag, "first week start (ISO-8601)");

  auto* estimate = app.add_subcommand("estimate-u0", "initial value function from 3 weeks");
  add_common(estimate, ov);
  estimate->add_option("--densities", densities, "density directory or manifest")->required();
  estimate->add_option("--out", out_dir, "output directory");

  auto* fc = app.add_subcommand("forecast", "solve the forecasting problem");
  add_common(fc, ov);
  fc->add_option("--densities", densities, "density directory or manifest")->required();
  fc->add_option("--out", out_dir, "output directory");

  auto* cal = app.add_subcommand("calibrate", "sweep candidate (beta, r, u_left) triples");
  add_common(cal, ov);
  cal->add_option("--densities", densities, "density directory or manifest")->required();
  cal->add_option("--out", out_dir, "output directory");
  cal->add_option("--betas", betas, "candidate beta values")->delimiter(',');
  cal->add_option("--rs", rs, "candidate r values")->delimiter(',');
  cal->add_option("--u-lefts", u_lefts, "candidate u(-1,0) values")->delimiter(',');

  auto* sim = app.add_subcommand("simulate", "emit a synthetic dataset");
  add_common(sim, ov);
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--start", start_flag, "first week start (ISO-8601)");

  auto* met = app.add_subcommand("metrics", "recompute metrics from saved fields");
  add_common(met, ov);
  met->add_option("--u", u_csv, "value function field CSV")->required();
  met->add_option("--m", m_csv, "density field CSV")->required();
  met->add_option("--densities", densities, "density directory or manifest")->required();
  met->add_option("--out", out_path, "output metrics JSON path");

  auto* plot = app.add_subcommand("plot", "render SVG charts from saved outputs");
  add_common(plot, ov);
  plot->add_option("--m", m_csv, "density field CSV")->required();
  plot->add_option("--densities", densities, "density directory or manifest")->required();
  plot->add_option("--metrics", metrics_path, "metrics JSON for curve and heatmap");
  plot->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const RunConfig cfg = resolve(ov);
    if (ingest->parsed()) return cmd_ingest(cfg, scores, out_dir, start_flag);
    if (estimate->parsed()) return cmd_estimate(cfg, densities, out_dir);
    if (fc->parsed()) return cmd_forecast(cfg, densities, out_dir);
    if (cal->parsed()) return cmd_calibrate(cfg, densities, out_dir, betas, rs, u_lefts);
    if (sim->parsed()) return cmd_simulate(cfg, out_dir, start_flag);
    if (met->parsed()) return cmd_metrics(cfg, u_csv, m_csv, densities, out_path);
    if (plot->parsed()) return cmd_plot(cfg, m_csv, densities, metrics_path, out_dir);
  } catch (const mfgcast::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const mfgcast::numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const mfgcast::io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
