#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfgcast/forecast.hpp"

namespace mfgcast {

struct Triple {
  double beta = 0.0;
  double r = 0.0;
  double u_left = 0.0;
};

struct CalibrationSpec {
  std::vector<double> betas;
  std::vector<double> rs;
  std::vector<double> u_lefts;
  bool warm_start = false;
  std::string scoring = "mean_error";
};

struct CalibrationEntry {
  Triple triple;
  double score = 0.0;
  bool failed = false;
  std::string error;
  MetricsReport metrics;
  int iterations = 0;
  double final_optimality = 0.0;
};

struct CalibrationReport {
  std::vector<CalibrationEntry> entries;  // ranked, best first
  Triple best;
};

// Table of per-period calibrated values; index 1 through 10.
struct PeriodPreset {
  int index = 0;
  double u_left = 0.0;
  double beta = 0.0;
  double r = 0.0;
};

PeriodPreset period_preset(int index);

// Start of the preset period: eleven 7-day weeks per period, first
// period beginning 2020-03-02.  Returned as epoch seconds.
std::int64_t period_start(int index);

// Runs a forecast per candidate triple (concurrently), scores each, and
// ranks ascending with exact ties broken by (beta, r, u_left).  When
// warm_start is set and a previous optimum is given, the candidate
// grids are shifted so their middle entries sit on that optimum.
CalibrationReport sweep(const std::vector<DensitySlice>& data, const CalibrationSpec& spec,
                        const Grid& g, const MfgParams& base,
                        const ForecastOptions& fopts = {},
                        const std::optional<Triple>& previous = std::nullopt);

}  // namespace mfgcast
