#pragma once

#include <string>
#include <vector>

#include "mfgcast/calibrate.hpp"
#include "mfgcast/ingest.hpp"
#include "mfgcast/metrics.hpp"

namespace mfgcast {

// 17 significant digits; round-trips any double exactly.
std::string format_number(double v);

std::string format_iso8601(Timestamp t);

// Density slices travel as two-column CSV `x,m`; full space-time fields
// as three-column CSV `t,x,value` in time-major order.
void write_density_csv(const std::string& path, const Slice& m, const Grid& g);
Slice read_density_csv(const std::string& path, const Grid& g);

void write_field_csv(const std::string& path, const Field& f, const Grid& g);
Field read_field_csv(const std::string& path, const Grid& g);

void write_scores_csv(const std::string& path, const std::vector<SentimentRecord>& recs);

std::string metrics_to_json(const MetricsReport& rep);
void write_metrics_json(const std::string& path, const MetricsReport& rep);
MetricsReport read_metrics_json(const std::string& path);

std::string report_to_json(const CalibrationReport& rep);
void write_report_json(const std::string& path, const CalibrationReport& rep);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace mfgcast
