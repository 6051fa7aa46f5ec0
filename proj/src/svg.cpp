#include "mfgcast/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mfgcast {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 50;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
  }
  double py(double y) const {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  }
};

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f) {
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
      << fmt(f.x_lo) << "</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
      << fmt(f.x_hi) << "</text>\n";
  out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(f.y_lo) << "</text>\n";
  out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(f.y_hi) << "</text>\n";
}

void polyline(std::ostringstream& out, const Frame& f, const Slice& xs, const Slice& ys,
              const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    if (i) out << ' ';
    out << fmt(f.px(xs[i])) << ',' << fmt(f.py(ys[i]));
  }
  out << "\"/>\n";
}

}  // namespace

std::string svg_week_comparison(const Slice& m_sol, const Slice& m_data, const Grid& g,
                                const std::string& title) {
  if (m_sol.size() != g.nx || m_data.size() != g.nx)
    throw validation_error("svg_week_comparison: slice length mismatch");
  Slice xs(g.nx);
  for (int i = 0; i < g.nx; ++i) xs[i] = g.x(i);
  const double top = std::max({m_sol.maxCoeff(), m_data.maxCoeff(), 1e-12});
  const double bottom = std::min({m_sol.minCoeff(), m_data.minCoeff(), 0.0});
  Frame f{-1.0, 1.0, bottom, top * 1.05};

  std::ostringstream out;
  open_svg(out, title);
  axes(out, f);
  polyline(out, f, xs, m_data, "#cc0000");
  polyline(out, f, xs, m_sol, "#0000cc");
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
      << "fill=\"#0000cc\">solution</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
      << "fill=\"#cc0000\">data</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string svg_curve(const Slice& values, const Grid& g, const std::string& title) {
  if (values.size() != g.nt) throw validation_error("svg_curve: length mismatch");
  Slice ts(g.nt);
  for (int j = 0; j < g.nt; ++j) ts[j] = g.t(j);
  const double top = std::max(values.maxCoeff(), 1e-12);
  Frame f{0.0, g.T, std::min(0.0, values.minCoeff()), top * 1.05};

  std::ostringstream out;
  open_svg(out, title);
  axes(out, f);
  polyline(out, f, ts, values, "#0000cc");
  out << "</svg>\n";
  return out.str();
}

std::string svg_heatmap(const Field& values, const Grid& g, const std::string& title,
                        double cap) {
  if (values.rows() != g.nx || values.cols() != g.nt)
    throw validation_error("svg_heatmap: field shape mismatch");
  const double denom = cap > 0.0 ? cap : 1.0;
  const double tile_w = static_cast<double>(kWidth - 2 * kMargin) / g.nt;
  const double tile_h = static_cast<double>(kHeight - 2 * kMargin) / g.nx;

  std::ostringstream out;
  open_svg(out, title);
  for (int j = 0; j < g.nt; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double v = std::clamp(values(i, j) / denom, 0.0, 1.0);
      const int red = 255;
      const int other = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      out << "<rect x=\"" << fmt(kMargin + j * tile_w) << "\" y=\""
          << fmt(kHeight - kMargin - (i + 1) * tile_h) << "\" width=\"" << fmt(tile_w)
          << "\" height=\"" << fmt(tile_h) << "\" fill=\"rgb(" << red << ',' << other
          << ',' << other << ")\"/>\n";
    }
  }
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">t: 0 to " << fmt(g.T)
      << ", x: -1 to 1 bottom to top</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace mfgcast
