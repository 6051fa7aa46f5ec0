#include "mfgcast/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mfgcast {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_iso8601(Timestamp ts) {
  std::int64_t days = ts / 86400;
  std::int64_t rem = ts % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // Civil date from day number (proleptic Gregorian).
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);

  char buf[32];
  std::snprintf(buf, sizeof buf, "%04" PRId64 "-%02u-%02uT%02u:%02u:%02uZ",
                y + (m <= 2), m, d, static_cast<unsigned>(rem / 3600),
                static_cast<unsigned>(rem / 60 % 60), static_cast<unsigned>(rem % 60));
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return in;
}

void check_node(double got, double want, const std::string& path, int lineno,
                const char* axis) {
  if (std::abs(got - want) > 1e-9 * std::max(1.0, std::abs(want)))
    throw validation_error(path + ":" + std::to_string(lineno) + ": " + axis +
                           " coordinate does not match the grid");
}

}  // namespace

void write_density_csv(const std::string& path, const Slice& m, const Grid& g) {
  if (m.size() != g.nx) throw validation_error("write_density_csv: slice length mismatch");
  auto out = open_out(path);
  out << "x,m\n";
  for (int i = 0; i < g.nx; ++i)
    out << format_number(g.x(i)) << ',' << format_number(m[i]) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

Slice read_density_csv(const std::string& path, const Grid& g) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,m", 0) != 0)
    throw validation_error(path + ":1: expected header 'x,m'");
  Slice m(g.nx);
  int i = 0, lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (i >= g.nx) throw validation_error(path + ": more rows than grid nodes");
    double x, v;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &v) != 2)
      throw validation_error(path + ":" + std::to_string(lineno) + ": expected 'x,m'");
    check_node(x, g.x(i), path, lineno, "x");
    m[i++] = v;
  }
  if (i != g.nx) throw validation_error(path + ": fewer rows than grid nodes");
  return m;
}

void write_field_csv(const std::string& path, const Field& f, const Grid& g) {
  if (f.rows() != g.nx || f.cols() != g.nt)
    throw validation_error("write_field_csv: field shape mismatch");
  auto out = open_out(path);
  out << "t,x,value\n";
  for (int j = 0; j < g.nt; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << format_number(g.t(j)) << ',' << format_number(g.x(i)) << ','
          << format_number(f(i, j)) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

Field read_field_csv(const std::string& path, const Grid& g) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,value", 0) != 0)
    throw validation_error(path + ":1: expected header 't,x,value'");
  Field f(g.nx, g.nt);
  int k = 0, lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (k >= g.nx * g.nt) throw validation_error(path + ": more rows than grid nodes");
    double t, x, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &v) != 3)
      throw validation_error(path + ":" + std::to_string(lineno) + ": expected 't,x,value'");
    const int j = k / g.nx, i = k % g.nx;
    check_node(t, g.t(j), path, lineno, "t");
    check_node(x, g.x(i), path, lineno, "x");
    f(i, j) = v;
    ++k;
  }
  if (k != g.nx * g.nt) throw validation_error(path + ": fewer rows than grid nodes");
  return f;
}

void write_scores_csv(const std::string& path, const std::vector<SentimentRecord>& recs) {
  auto out = open_out(path);
  out << "timestamp,score\n";
  for (const auto& rec : recs)
    out << format_iso8601(rec.when) << ',' << format_number(rec.score) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

std::string metrics_to_json(const MetricsReport& rep) {
  nlohmann::ordered_json j;
  j["true_cost"] = std::vector<double>(rep.true_cost_curve.begin(), rep.true_cost_curve.end());
  auto& em = j["error_matrix"] = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < rep.error_matrix.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(rep.error_matrix.cols()));
    for (Eigen::Index c = 0; c < rep.error_matrix.cols(); ++c)
      row[static_cast<std::size_t>(c)] = rep.error_matrix(i, c);
    em.push_back(row);
  }
  j["summary"] = {{"mean_error", rep.summary.mean_error},
                  {"fraction_below_quarter", rep.summary.fraction_below_quarter}};
  return j.dump(2) + "\n";
}

void write_metrics_json(const std::string& path, const MetricsReport& rep) {
  auto out = open_out(path);
  out << metrics_to_json(rep);
  if (!out) throw io_error("write failed for '" + path + "'");
}

MetricsReport read_metrics_json(const std::string& path) {
  auto in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
  MetricsReport rep;
  try {
    const auto tc = j.at("true_cost").get<std::vector<double>>();
    rep.true_cost_curve = Eigen::Map<const Slice>(tc.data(), static_cast<Eigen::Index>(tc.size()));
    const auto& em = j.at("error_matrix");
    rep.error_matrix = Field(em.size(), em.empty() ? 0 : em[0].size());
    for (std::size_t i = 0; i < em.size(); ++i) {
      const auto row = em[i].get<std::vector<double>>();
      if (row.size() != static_cast<std::size_t>(rep.error_matrix.cols()))
        throw validation_error(path + ": ragged error_matrix");
      for (std::size_t c = 0; c < row.size(); ++c)
        rep.error_matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[c];
    }
    rep.summary.mean_error = j.at("summary").at("mean_error").get<double>();
    rep.summary.fraction_below_quarter =
        j.at("summary").at("fraction_below_quarter").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
  return rep;
}

std::string report_to_json(const CalibrationReport& rep) {
  nlohmann::ordered_json j;
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : rep.entries) {
    nlohmann::ordered_json je;
    je["beta"] = e.triple.beta;
    je["r"] = e.triple.r;
    je["u_left"] = e.triple.u_left;
    je["failed"] = e.failed;
    if (e.failed) {
      je["error"] = e.error;
    } else {
      je["score"] = e.score;
      je["iterations"] = e.iterations;
      je["final_optimality"] = e.final_optimality;
      je["fraction_below_quarter"] = e.metrics.summary.fraction_below_quarter;
    }
    entries.push_back(std::move(je));
  }
  j["best"] = {{"beta", rep.best.beta}, {"r", rep.best.r}, {"u_left", rep.best.u_left}};
  return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const CalibrationReport& rep) {
  auto out = open_out(path);
  out << report_to_json(rep);
  if (!out) throw io_error("write failed for '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw io_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mfgcast
