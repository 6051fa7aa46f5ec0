#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfgcast/grid.hpp"

namespace mfgcast {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

// Parses an ISO-8601 instant: YYYY-MM-DD[THH:MM[:SS[.frac]]][Z|+hh:mm|-hh:mm].
// Seconds and zone default to 0 / UTC.  Throws validation_error.
Timestamp parse_iso8601(const std::string& text);

struct SentimentRecord {
  Timestamp when = 0;
  double score = 0.0;  // in [-1, 1]
};

struct SentimentSeries {
  std::vector<SentimentRecord> records;  // non-decreasing in time after load
};

// One week of density samples on the spatial nodes.
struct DensitySlice {
  Slice values;
  int week = 0;
};

// Reads `timestamp,score` CSV (header row required) and returns the
// series sorted by time.  Malformed rows, out-of-range scores, and empty
// files raise validation_error naming the offending line.
SentimentSeries load_scores(const std::string& path);

struct WeeklyBins {
  std::vector<std::vector<double>> bins;  // bin k: scores in week k
  std::vector<int> empty_weeks;           // indices of empty bins
};

// Half-open weekly bins: bin k holds start+7k days <= t < start+7(k+1) days.
WeeklyBins weekly_bins(const SentimentSeries& s, Timestamp start, int n_weeks);

constexpr double kAutoBandwidth = 0.0;

// Silverman's rule of thumb on the raw scores.
double silverman_bandwidth(const std::vector<double>& scores);

// Gaussian KDE evaluated at the grid nodes, truncated to [-1,1] and
// renormalized to unit trapezoid mass.  bandwidth <= 0 selects auto
// (Silverman).  Requires at least two scores.
DensitySlice kde_density(const std::vector<double>& scores, double bandwidth,
                         const Grid& g, int week = 0);

// Resamples through a natural cubic spline, blends the values near
// x = +-1 until the one-sided first derivative vanishes, clamps at zero
// and renormalizes to unit mass.  Idempotent; identity (up to
// renormalization) when the Neumann condition already holds.
// eps_adjust is the blend width in nodes (>= 2).
DensitySlice preprocess(const DensitySlice& d, const Grid& g, int eps_adjust = 2);

// Trapezoid mass of a slice.
double slice_mass(const DensitySlice& d, const Grid& g);

// True when nonnegative, unit mass within mass_tol, and one-sided edge
// derivatives within neumann_tol.
bool slice_valid(const DensitySlice& d, const Grid& g, double mass_tol = 1e-8,
                 double neumann_tol = 1e-10);

}  // namespace mfgcast
