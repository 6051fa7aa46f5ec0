#include "mfgcast/calibrate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <tuple>

namespace mfgcast {

PeriodPreset period_preset(int index) {
  static const PeriodPreset table[] = {
      {1, 2.0, 0.25, 50.0},  {2, 1.0, 0.05, 80.0},  {3, 2.0, 0.5, 75.0},
      {4, 3.8, 0.3, 80.0},   {5, 3.7, 1.5, 100.0},  {6, 5.0, 3.0, 200.0},
      {7, 1.6, 2.75, 300.0}, {8, 2.6, 1.5, 125.0},  {9, 3.0, 0.75, 75.0},
      {10, 4.0, 2.5, 175.0},
  };
  if (index < 1 || index > 10)
    throw validation_error("period_preset: index must lie in 1..10");
  return table[index - 1];
}

std::int64_t period_start(int index) {
  if (index < 1 || index > 10)
    throw validation_error("period_start: index must lie in 1..10");
  constexpr std::int64_t first = 18323LL * 86400;  // 2020-03-02
  return first + static_cast<std::int64_t>(index - 1) * 77 * 86400;
}

namespace {

std::vector<double> recenter(std::vector<double> grid, double target) {
  if (grid.empty()) return grid;
  const double mid = grid[grid.size() / 2];
  for (auto& v : grid) v += target - mid;
  return grid;
}

}  // namespace

CalibrationReport sweep(const std::vector<DensitySlice>& data, const CalibrationSpec& spec,
                        const Grid& g, const MfgParams& base,
                        const ForecastOptions& fopts,
                        const std::optional<Triple>& previous) {
  if (spec.betas.empty() || spec.rs.empty() || spec.u_lefts.empty())
    throw validation_error("sweep: empty candidate grid");
  for (double b : spec.betas)
    if (!(b > 0.0)) throw validation_error("sweep: candidate beta must be positive");
  if (spec.scoring != "mean_error")
    throw validation_error("sweep: unknown scoring rule '" + spec.scoring + "'");

  std::vector<double> betas = spec.betas;
  std::vector<double> rs = spec.rs;
  std::vector<double> u_lefts = spec.u_lefts;
  if (spec.warm_start && previous) {
    betas = recenter(betas, previous->beta);
    rs = recenter(rs, previous->r);
    u_lefts = recenter(u_lefts, previous->u_left);
    for (double b : betas)
      if (!(b > 0.0))
        throw validation_error("sweep: warm start shifted a beta candidate below zero");
  }

  std::vector<Triple> triples;
  for (double b : betas)
    for (double r : rs)
      for (double ul : u_lefts) triples.push_back({b, r, ul});

  std::vector<CalibrationEntry> entries(triples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= triples.size()) return;
      CalibrationEntry& e = entries[k];
      e.triple = triples[k];
      MfgParams p = base;
      p.beta = e.triple.beta;
      p.r = e.triple.r;
      p.u_left = e.triple.u_left;
      try {
        ForecastOutcome out = forecast(data, p, g, fopts);
        e.score = out.metrics.summary.mean_error;
        e.metrics = std::move(out.metrics);
        e.iterations = out.solve.iterations;
        e.final_optimality = out.solve.final_optimality;
      } catch (const std::exception& ex) {
        e.failed = true;
        e.error = ex.what();
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, triples.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::size_t failures = 0;
  for (const auto& e : entries)
    if (e.failed) ++failures;
  if (failures == entries.size()) {
    std::string msg = "sweep: every candidate failed;";
    for (const auto& e : entries) msg += " [" + e.error + "]";
    throw numeric_error(msg);
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const CalibrationEntry& a, const CalibrationEntry& b) {
                     if (a.failed != b.failed) return b.failed;
                     return std::tie(a.score, a.triple.beta, a.triple.r, a.triple.u_left) <
                            std::tie(b.score, b.triple.beta, b.triple.r, b.triple.u_left);
                   });

  CalibrationReport rep;
  rep.best = entries.front().triple;
  rep.entries = std::move(entries);
  return rep;
}

}  // namespace mfgcast
