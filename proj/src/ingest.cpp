#include "mfgcast/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mfgcast/tridiag.hpp"

namespace mfgcast {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return (m == 2 && leap(y)) ? 29 : d[m - 1];
}

}  // namespace

Timestamp parse_iso8601(const std::string& text) {
  const char* p = text.c_str();
  auto fail = [&](const char* why) {
    throw validation_error("bad timestamp '" + text + "': " + why);
  };
  auto digits = [&](int count, int& out) {
    out = 0;
    for (int k = 0; k < count; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(*p))) return false;
      out = out * 10 + (*p++ - '0');
    }
    return true;
  };

  int y, mo, d;
  if (!digits(4, y) || *p++ != '-' || !digits(2, mo) || *p++ != '-' || !digits(2, d))
    fail("expected YYYY-MM-DD");
  if (mo < 1 || mo > 12) fail("month out of range");
  if (d < 1 || d > days_in_month(y, mo)) fail("day out of range");

  int hh = 0, mi = 0, ss = 0;
  if (*p == 'T' || *p == 't' || *p == ' ') {
    ++p;
    if (!digits(2, hh) || *p++ != ':' || !digits(2, mi)) fail("expected HH:MM");
    if (*p == ':') {
      ++p;
      if (!digits(2, ss)) fail("expected seconds");
      if (*p == '.') {  // fractional seconds are parsed and truncated
        ++p;
        if (!std::isdigit(static_cast<unsigned char>(*p))) fail("expected fraction digits");
        while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
      }
    }
    if (hh > 23 || mi > 59 || ss > 60) fail("time out of range");
  }

  std::int64_t offset = 0;
  if (*p == 'Z' || *p == 'z') {
    ++p;
  } else if (*p == '+' || *p == '-') {
    const int sign = (*p == '+') ? 1 : -1;
    ++p;
    int oh, om;
    if (!digits(2, oh)) fail("expected zone hours");
    if (*p == ':') ++p;
    if (!digits(2, om)) fail("expected zone minutes");
    offset = sign * (oh * 3600 + om * 60);
  }
  if (*p != '\0') fail("trailing characters");

  return days_from_civil(y, mo, d) * 86400 + hh * 3600 + mi * 60 + ss - offset;
}

SentimentSeries load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scores file '" + path + "'");

  SentimentSeries series;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line.rfind("timestamp", 0) != 0)
        throw validation_error(path + ":1: expected header row 'timestamp,score'");
      saw_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw validation_error(path + ":" + std::to_string(lineno) + ": expected 'timestamp,score'");
    SentimentRecord rec;
    rec.when = parse_iso8601(line.substr(0, comma));
    const std::string score_text = line.substr(comma + 1);
    std::size_t used = 0;
    try {
      rec.score = std::stod(score_text, &used);
    } catch (const std::exception&) {
      throw validation_error(path + ":" + std::to_string(lineno) + ": bad score '" + score_text + "'");
    }
    while (used < score_text.size() && std::isspace(static_cast<unsigned char>(score_text[used]))) ++used;
    if (used != score_text.size())
      throw validation_error(path + ":" + std::to_string(lineno) + ": bad score '" + score_text + "'");
    if (rec.score < -1.0 || rec.score > 1.0)
      throw validation_error(path + ":" + std::to_string(lineno) + ": score " +
                             std::to_string(rec.score) + " outside [-1, 1]");
    series.records.push_back(rec);
  }
  if (!saw_header) throw validation_error(path + ": no records (empty file)");
  if (series.records.empty()) throw validation_error(path + ": no records");
  std::stable_sort(series.records.begin(), series.records.end(),
                   [](const SentimentRecord& a, const SentimentRecord& b) { return a.when < b.when; });
  return series;
}

WeeklyBins weekly_bins(const SentimentSeries& s, Timestamp start, int n_weeks) {
  if (n_weeks < 1) throw validation_error("weekly_bins: n_weeks must be >= 1");
  constexpr std::int64_t week_seconds = 7 * 86400;
  WeeklyBins out;
  out.bins.resize(n_weeks);
  for (const auto& rec : s.records) {
    if (rec.when < start) continue;
    const std::int64_t k = (rec.when - start) / week_seconds;
    if (k >= n_weeks) continue;
    out.bins[static_cast<std::size_t>(k)].push_back(rec.score);
  }
  for (int k = 0; k < n_weeks; ++k)
    if (out.bins[k].empty()) out.empty_weeks.push_back(k);
  return out;
}

double silverman_bandwidth(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  if (n < 2) throw validation_error("silverman_bandwidth: need >= 2 scores");
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double sigma = std::sqrt(ss / (n - 1));

  std::vector<double> sorted(scores);
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double pos = q * (n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - lo;
    return lo + 1 < n ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac : sorted[lo];
  };
  const double iqr = quantile(0.75) - quantile(0.25);

  const double spread = iqr > 0.0 ? std::min(sigma, iqr / 1.34) : sigma;
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

DensitySlice kde_density(const std::vector<double>& scores, double bandwidth,
                         const Grid& g, int week) {
  if (scores.size() < 2)
    throw validation_error("kde_density: need >= 2 scores, got " + std::to_string(scores.size()));
  double h = bandwidth;
  if (h <= 0.0) h = silverman_bandwidth(scores);
  if (!(h > 0.0))
    throw validation_error("kde_density: zero bandwidth (degenerate score set)");

  const double norm = 1.0 / (scores.size() * h * std::sqrt(2.0 * M_PI));
  DensitySlice d;
  d.week = week;
  d.values = Slice::Zero(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double xi = g.x(i);
    double acc = 0.0;
    for (double s : scores) {
      const double z = (xi - s) / h;
      acc += std::exp(-0.5 * z * z);
    }
    d.values[i] = norm * acc;
  }
  const double mass = integrate_x(d.values, g);
  d.values /= mass;  // truncation to [-1,1] renormalized away
  return d;
}

namespace {

// Hermite falloff: 1 at xi=0, 0 at xi=1, zero slope at both ends.
double hermite_step(double xi) { return 1.0 - 3.0 * xi * xi + 2.0 * xi * xi * xi; }

// Least-squares fit of a + b*i^2 over indices 0..width (a parabola with
// zero slope at the edge).  Smooth slices already sit on such a parabola
// to third order, so blending toward it barely moves them; rough slices
// get pulled to a flat-topped profile.
std::pair<double, double> edge_parabola(const double* v, int width) {
  double s0 = 0.0, s2 = 0.0, s4 = 0.0, sy = 0.0, sy2 = 0.0;
  for (int i = 0; i <= width; ++i) {
    const double q = static_cast<double>(i) * i;
    s0 += 1.0;
    s2 += q;
    s4 += q * q;
    sy += v[i];
    sy2 += v[i] * q;
  }
  const double det = s0 * s4 - s2 * s2;
  const double a = (s4 * sy - s2 * sy2) / det;
  const double b = (s0 * sy2 - s2 * sy) / det;
  return {a, b};
}

// Blends nodes within `width` of the edge toward the zero-slope parabola,
// then pins the edge value so the one-sided derivative vanishes exactly.
void enforce_left_edge(Slice& v, int width) {
  const auto [a, b] = edge_parabola(v.data(), width);
  for (int i = 0; i <= width; ++i) {
    const double s = hermite_step(static_cast<double>(i) / width);
    const double target = a + b * static_cast<double>(i) * i;
    v[i] = s * target + (1.0 - s) * v[i];
  }
  v[0] = (4.0 * v[1] - v[2]) / 3.0;
  if (v[0] < 0.0) {  // keep nonnegativity without losing the exact stencil zero
    v[0] = 0.0;
    v[1] = v[2] / 4.0;
  }
}

void enforce_right_edge(Slice& v, int width) {
  const int n = static_cast<int>(v.size());
  std::vector<double> rev(static_cast<std::size_t>(width) + 1);
  for (int i = 0; i <= width; ++i) rev[static_cast<std::size_t>(i)] = v[n - 1 - i];
  const auto [a, b] = edge_parabola(rev.data(), width);
  for (int i = 0; i <= width; ++i) {
    const double s = hermite_step(static_cast<double>(i) / width);
    const double target = a + b * static_cast<double>(i) * i;
    v[n - 1 - i] = s * target + (1.0 - s) * v[n - 1 - i];
  }
  v[n - 1] = (4.0 * v[n - 2] - v[n - 3]) / 3.0;
  if (v[n - 1] < 0.0) {
    v[n - 1] = 0.0;
    v[n - 2] = v[n - 3] / 4.0;
  }
}

}  // namespace

DensitySlice preprocess(const DensitySlice& d, const Grid& g, int eps_adjust) {
  if (d.values.size() != g.nx)
    throw validation_error("preprocess: slice length does not match grid");
  if (eps_adjust < 2 || eps_adjust > g.nx - 3)
    throw validation_error("preprocess: blend width must be in [2, nx-3]");

  Eigen::VectorXd xs(g.nx);
  for (int i = 0; i < g.nx; ++i) xs[i] = g.x(i);
  const CubicSpline spline(xs, d.values);
  DensitySlice out;
  out.week = d.week;
  out.values = Slice(g.nx);
  for (int i = 0; i < g.nx; ++i) out.values[i] = spline(xs[i]);

  out.values = out.values.cwiseMax(0.0);

  constexpr double tol = 1e-10;
  if (std::abs(edge_deriv_left(out.values, g)) > tol) enforce_left_edge(out.values, eps_adjust);
  if (std::abs(edge_deriv_right(out.values, g)) > tol) enforce_right_edge(out.values, eps_adjust);

  const double mass = integrate_x(out.values, g);
  if (!(mass > 0.0)) throw numeric_error("preprocess: slice has no mass");
  out.values /= mass;
  return out;
}

double slice_mass(const DensitySlice& d, const Grid& g) { return integrate_x(d.values, g); }

bool slice_valid(const DensitySlice& d, const Grid& g, double mass_tol, double neumann_tol) {
  if (d.values.size() != g.nx) return false;
  if ((d.values.array() < 0.0).any()) return false;
  if (std::abs(integrate_x(d.values, g) - 1.0) > mass_tol) return false;
  if (std::abs(edge_deriv_left(d.values, g)) > neumann_tol) return false;
  if (std::abs(edge_deriv_right(d.values, g)) > neumann_tol) return false;
  return true;
}

}  // namespace mfgcast
