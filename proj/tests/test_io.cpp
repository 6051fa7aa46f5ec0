#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>

#include "mfgcast/io.hpp"

using namespace mfgcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mfgcast_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("format_number round-trips doubles exactly") {
  for (double v : {1.0 / 3.0, M_PI, 1e-17, -2.5e300, 0.1, 54.598150033144236,
                   -0.0, 1.0, 123456789.123456789}) {
    const std::string s = format_number(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
  }
}

TEST_CASE("iso8601 formatting round-trips") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("2020-03-02") == 18323LL * 86400);
  for (const char* s : {"2020-03-02T00:00:00Z", "1999-12-31T23:59:59Z",
                        "2024-02-29T12:00:00Z"}) {
    const Timestamp t = parse_iso8601(s);
    CHECK(format_iso8601(t) == s);
  }
}

TEST_CASE("density csv round-trips bit-exactly") {
  TempDir tmp;
  const Grid g = make_grid(21, 11, 1.0);
  Slice m(g.nx);
  for (int i = 0; i < g.nx; ++i) m[i] = 0.5 + 0.3 * std::sin(1.7 * g.x(i) + 0.1);
  const std::string path = (tmp.path / "d.csv").string();
  write_density_csv(path, m, g);
  const Slice back = read_density_csv(path, g);
  for (int i = 0; i < g.nx; ++i) CHECK(back[i] == m[i]);

  const std::string text = read_text_file(path);
  CHECK(text.rfind("x,m\n", 0) == 0);
}

TEST_CASE("density csv validates the grid coordinates") {
  TempDir tmp;
  const Grid g = make_grid(21, 11, 1.0);
  const std::string path = (tmp.path / "d.csv").string();
  write_density_csv(path, Slice::Constant(g.nx, 0.5), g);
  const Grid other = make_grid(11, 11, 1.0);
  CHECK_THROWS_AS(read_density_csv(path, other), validation_error);
  CHECK_THROWS_AS(read_density_csv((tmp.path / "missing.csv").string(), g), io_error);
}

TEST_CASE("field csv round-trips bit-exactly") {
  TempDir tmp;
  const Grid g = make_grid(9, 5, 1.0);
  Field f(g.nx, g.nt);
  for (int j = 0; j < g.nt; ++j)
    for (int i = 0; i < g.nx; ++i) f(i, j) = std::cos(2.1 * g.x(i)) * std::exp(-0.7 * g.t(j));
  const std::string path = (tmp.path / "f.csv").string();
  write_field_csv(path, f, g);
  const Field back = read_field_csv(path, g);
  for (int j = 0; j < g.nt; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(back(i, j) == f(i, j));
  CHECK(read_text_file(path).rfind("t,x,value\n", 0) == 0);
}

TEST_CASE("scores csv round-trips through the loader") {
  TempDir tmp;
  std::vector<SentimentRecord> recs = {
      {parse_iso8601("2020-03-02T00:00:00Z"), 0.123456789012345},
      {parse_iso8601("2020-03-02T06:00:00Z"), -0.5},
      {parse_iso8601("2020-03-03T00:00:00Z"), 1.0},
  };
  const std::string path = (tmp.path / "s.csv").string();
  write_scores_csv(path, recs);
  const SentimentSeries s = load_scores(path);
  REQUIRE(s.records.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(s.records[i].when == recs[i].when);
    CHECK(s.records[i].score == recs[i].score);
  }
}

TEST_CASE("metrics json round-trips") {
  TempDir tmp;
  const Grid g = make_grid(5, 4, 1.0);
  MetricsReport rep;
  rep.true_cost_curve = Slice(g.nt);
  rep.true_cost_curve << 1e-3, 2.5e-4, 1.0 / 3.0, 4e-2;
  rep.error_matrix = Field(g.nx, g.nt);
  for (int j = 0; j < g.nt; ++j)
    for (int i = 0; i < g.nx; ++i) rep.error_matrix(i, j) = 0.01 * (i + 1) + 1e-5 * j;
  rep.summary.mean_error = 0.0123456789;
  rep.summary.fraction_below_quarter = 0.9375;

  const std::string path = (tmp.path / "metrics.json").string();
  write_metrics_json(path, rep);
  const MetricsReport back = read_metrics_json(path);
  CHECK(back.summary.mean_error == rep.summary.mean_error);
  CHECK(back.summary.fraction_below_quarter == rep.summary.fraction_below_quarter);
  REQUIRE(back.true_cost_curve.size() == rep.true_cost_curve.size());
  for (int j = 0; j < g.nt; ++j) CHECK(back.true_cost_curve[j] == rep.true_cost_curve[j]);
  REQUIRE(back.error_matrix.rows() == g.nx);
  REQUIRE(back.error_matrix.cols() == g.nt);
  for (int j = 0; j < g.nt; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(back.error_matrix(i, j) == rep.error_matrix(i, j));

  const std::string text = read_text_file(path);
  CHECK(text.find("\"true_cost\"") != std::string::npos);
  CHECK(text.find("\"error_matrix\"") != std::string::npos);
  CHECK(text.find("\"summary\"") != std::string::npos);
}

TEST_CASE("identical writes produce identical bytes") {
  TempDir tmp;
  const Grid g = make_grid(9, 5, 1.0);
  Slice m(g.nx);
  for (int i = 0; i < g.nx; ++i) m[i] = 0.5 + 0.1 * std::cos(M_PI * g.x(i));
  const std::string p1 = (tmp.path / "a.csv").string();
  const std::string p2 = (tmp.path / "b.csv").string();
  write_density_csv(p1, m, g);
  write_density_csv(p2, m, g);
  CHECK(read_text_file(p1) == read_text_file(p2));
}
