#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otoc/experiments.hpp"

namespace otoc {

enum class OutputFormat { Csv, Json };

// Frozen CSV headers.
inline constexpr const char* kSeriesCsvHeader = "t,F_re,F_im,chi_re,chi_im";
inline constexpr const char* kScanCsvHeader = "g,F_bar";

// Shortest text for a double at 12 significant digits ("%.12g", C locale).
std::string format_number(double value);

// In-memory render; write_* compose these with a file sink. path "-" means stdout.
std::string series_to_csv(const TimeSeries& series);
std::string series_to_json(const TimeSeries& series);
std::string scan_to_csv(const ScanCurve& curve);
std::string scan_to_json(const ScanCurve& curve);
std::string sizes_to_csv(const SizeSweepResult& result);
std::string sizes_to_json(const SizeSweepResult& result);

void write_series(const TimeSeries& series, OutputFormat format, const std::string& path);
void write_scan(const ScanCurve& curve, OutputFormat format, const std::string& path);
void write_sizes(const SizeSweepResult& result, OutputFormat format, const std::string& path);

// Minimal readers for the two frozen schemas (format detected from content).
// They back the `plot` subcommand and the round-trip tests.
struct SeriesData {
    std::vector<double> t, f_re, f_im, chi_re, chi_im;
};
struct ScanData {
    std::vector<double> g, f_bar;
};
struct ReadBack {
    enum class Kind { Series, Scan } kind;
    SeriesData series;
    ScanData scan;
};
ReadBack read_emitted(const std::string& path);

// Deterministic line-plot SVG: one polyline per channel, linear axes with
// tick labels, legend from the channel names.
struct PlotChannel {
    std::string name;
    std::vector<std::pair<double, double>> points;
};
struct PlotData {
    std::string x_label;
    std::string y_label;
    std::vector<PlotChannel> channels;
};

std::string render_svg(const PlotData& data);
void render_svg(const PlotData& data, const std::string& path);

PlotData plot_data_from_series(const SeriesData& series);
PlotData plot_data_from_scan(const ScanData& scan);

}  // namespace otoc
