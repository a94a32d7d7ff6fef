#include "otoc/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "otoc/errors.hpp"

namespace otoc {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

std::string model_name(const IsingParams& p) { return p.delta == 0.0 ? "tfic" : "annni"; }

ordered_json spec_json(const QuenchSpec& spec) {
    ordered_json j;
    j["model"] = model_name(spec.params);
    j["n"] = spec.params.n_sites;
    j["j"] = spec.params.j_coupling;
    j["delta"] = spec.params.delta;
    j["g"] = spec.params.field;
    j["steps"] = spec.steps;
    j["tau"] = spec.tau;
    j["method"] = spec.method.kind == EvolutionMethod::Kind::Exact ? "exact" : "trotter";
    if (spec.method.kind == EvolutionMethod::Kind::Trotter)
        j["trotter_m"] = spec.method.trotter_m;
    j["initial"] = spec.initial.kind == InitialState::Kind::FullyPolarized
                       ? ordered_json("fully_polarized")
                       : ordered_json{{"ground_state_of", spec.initial.g0}};
    return j;
}

void sink(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        if (!std::cout) throw IoError("write to stdout failed");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

std::string series_to_csv(const TimeSeries& series) {
    std::string out = kSeriesCsvHeader;
    out += '\n';
    for (const auto& s : series.samples) {
        out += format_number(s.t);
        out += ',';
        out += format_number(s.f_value.real());
        out += ',';
        out += format_number(s.f_value.imag());
        out += ',';
        out += format_number(s.chi_value.real());
        out += ',';
        out += format_number(s.chi_value.imag());
        out += '\n';
    }
    return out;
}

std::string series_to_json(const TimeSeries& series) {
    ordered_json j;
    j["kind"] = "series";
    j["spec"] = spec_json(series.spec);
    auto& samples = j["samples"] = ordered_json::array();
    for (const auto& s : series.samples)
        samples.push_back(ordered_json{{"t", s.t},
                                       {"F_re", s.f_value.real()},
                                       {"F_im", s.f_value.imag()},
                                       {"chi_re", s.chi_value.real()},
                                       {"chi_im", s.chi_value.imag()}});
    return j.dump(2) + "\n";
}

std::string scan_to_csv(const ScanCurve& curve) {
    std::string out = kScanCsvHeader;
    out += '\n';
    for (std::size_t i = 0; i < curve.g_values.size(); ++i) {
        out += format_number(curve.g_values[i]);
        out += ',';
        out += format_number(curve.f_bar_values[i]);
        out += '\n';
    }
    return out;
}

std::string scan_to_json(const ScanCurve& curve) {
    ordered_json j;
    j["kind"] = "scan";
    j["spec"] = spec_json(curve.base);
    j["spec"]["avg"] = curve.average_mode == AverageMode::PointMean ? "pointmean" : "trapezoid";
    auto& points = j["points"] = ordered_json::array();
    for (std::size_t i = 0; i < curve.g_values.size(); ++i)
        points.push_back(ordered_json{{"g", curve.g_values[i]}, {"F_bar", curve.f_bar_values[i]}});
    return j.dump(2) + "\n";
}

std::string sizes_to_csv(const SizeSweepResult& result) {
    std::string out = "n,fluctuation\n";
    for (std::size_t i = 0; i < result.n_values.size(); ++i) {
        out += std::to_string(result.n_values[i]);
        out += ',';
        out += format_number(result.fluctuation[i]);
        out += '\n';
    }
    return out;
}

std::string sizes_to_json(const SizeSweepResult& result) {
    ordered_json j;
    j["kind"] = "sizes";
    j["spec"] = spec_json(result.series.empty() ? QuenchSpec{} : result.series.front().spec);
    j["window"] = {result.window.first, result.window.second};
    auto& points = j["points"] = ordered_json::array();
    for (std::size_t i = 0; i < result.n_values.size(); ++i)
        points.push_back(
            ordered_json{{"n", result.n_values[i]}, {"fluctuation", result.fluctuation[i]}});
    return j.dump(2) + "\n";
}

void write_series(const TimeSeries& series, OutputFormat format, const std::string& path) {
    sink(format == OutputFormat::Csv ? series_to_csv(series) : series_to_json(series), path);
}

void write_scan(const ScanCurve& curve, OutputFormat format, const std::string& path) {
    sink(format == OutputFormat::Csv ? scan_to_csv(curve) : scan_to_json(curve), path);
}

void write_sizes(const SizeSweepResult& result, OutputFormat format, const std::string& path) {
    sink(format == OutputFormat::Csv ? sizes_to_csv(result) : sizes_to_json(result), path);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw IoError("malformed number '" + text + "'");
    return v;
}

ReadBack read_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file");
    ReadBack out;
    const bool is_series = line == kSeriesCsvHeader;
    if (!is_series && line != kScanCsvHeader)
        throw IoError("unrecognized CSV header '" + line + "'");
    out.kind = is_series ? ReadBack::Kind::Series : ReadBack::Kind::Scan;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (is_series) {
            if (fields.size() != 5) throw IoError("series row needs 5 fields: '" + line + "'");
            out.series.t.push_back(parse_double(fields[0]));
            out.series.f_re.push_back(parse_double(fields[1]));
            out.series.f_im.push_back(parse_double(fields[2]));
            out.series.chi_re.push_back(parse_double(fields[3]));
            out.series.chi_im.push_back(parse_double(fields[4]));
        } else {
            if (fields.size() != 2) throw IoError("scan row needs 2 fields: '" + line + "'");
            out.scan.g.push_back(parse_double(fields[0]));
            out.scan.f_bar.push_back(parse_double(fields[1]));
        }
    }
    return out;
}

ReadBack read_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError("malformed JSON input");
    ReadBack out;
    const std::string kind = j.value("kind", "");
    if (kind == "series") {
        out.kind = ReadBack::Kind::Series;
        for (const auto& s : j.at("samples")) {
            out.series.t.push_back(s.at("t").get<double>());
            out.series.f_re.push_back(s.at("F_re").get<double>());
            out.series.f_im.push_back(s.at("F_im").get<double>());
            out.series.chi_re.push_back(s.at("chi_re").get<double>());
            out.series.chi_im.push_back(s.at("chi_im").get<double>());
        }
    } else if (kind == "scan") {
        out.kind = ReadBack::Kind::Scan;
        for (const auto& p : j.at("points")) {
            out.scan.g.push_back(p.at("g").get<double>());
            out.scan.f_bar.push_back(p.at("F_bar").get<double>());
        }
    } else {
        throw IoError("JSON input has unsupported kind '" + kind + "'");
    }
    return out;
}

}  // namespace

ReadBack read_emitted(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw IoError("'" + path + "' is empty");
    try {
        return text[first] == '{' ? read_json_text(text) : read_csv_text(text);
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace {

struct Ticks {
    std::vector<double> values;
};

// Round tick spacing to 1/2/5 x 10^k covering [lo, hi] with ~target steps.
Ticks nice_ticks(double lo, double hi, int target = 5) {
    const double span = hi - lo;
    const double raw = span / std::max(target - 1, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mult * mag >= raw) {
            step = mult * mag;
            break;
        }
    }
    Ticks ticks;
    double v = std::ceil(lo / step - 1e-9) * step;
    for (; v <= hi + 1e-9 * span; v += step) {
        if (std::abs(v) < 1e-12 * span) v = 0;  // avoid "-0" labels
        ticks.values.push_back(v);
    }
    return ticks;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

std::string render_svg(const PlotData& data) {
    bool any_points = false;
    for (const auto& ch : data.channels) any_points = any_points || !ch.points.empty();
    if (!any_points) throw std::domain_error("render_svg: no data points");

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& ch : data.channels)
        for (const auto& [x, y] : ch.points) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double width = 640, height = 400;
    const double left = 64, right = 16, top = 18, bottom = 46;
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const Ticks xticks = nice_ticks(xmin, xmax);
    const Ticks yticks = nice_ticks(ymin, ymax);
    svg << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (const double v : xticks.values)
        svg << "<line x1=\"" << fixed2(px(v)) << "\" y1=\"" << fixed2(top) << "\" x2=\""
            << fixed2(px(v)) << "\" y2=\"" << fixed2(top + ph) << "\"/>\n";
    for (const double v : yticks.values)
        svg << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(py(v)) << "\" x2=\""
            << fixed2(left + pw) << "\" y2=\"" << fixed2(py(v)) << "\"/>\n";
    svg << "</g>\n";

    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (const double v : xticks.values)
        svg << "<text x=\"" << fixed2(px(v)) << "\" y=\"" << fixed2(top + ph + 16)
            << "\" text-anchor=\"middle\">" << format_number(v) << "</text>\n";
    for (const double v : yticks.values)
        svg << "<text x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(py(v) + 4)
            << "\" text-anchor=\"end\">" << format_number(v) << "</text>\n";
    svg << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\"" << fixed2(height - 10)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << data.x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << fixed2(top + ph / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << fixed2(top + ph / 2) << ")\">" << data.y_label << "</text>\n";
    svg << "</g>\n";

    int color = 0;
    for (const auto& ch : data.channels) {
        if (ch.points.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 4]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ch.points.size(); ++i) {
            if (i) svg << ' ';
            svg << fixed2(px(ch.points[i].first)) << ',' << fixed2(py(ch.points[i].second));
        }
        svg << "\"/>\n";
        ++color;
    }

    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    color = 0;
    double ly = top + 14;
    for (const auto& ch : data.channels) {
        if (ch.points.empty()) continue;
        svg << "<line x1=\"" << fixed2(left + pw - 110) << "\" y1=\"" << fixed2(ly - 4)
            << "\" x2=\"" << fixed2(left + pw - 88) << "\" y2=\"" << fixed2(ly - 4)
            << "\" stroke=\"" << kPalette[color % 4] << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << fixed2(left + pw - 82) << "\" y=\"" << fixed2(ly) << "\">"
            << ch.name << "</text>\n";
        ly += 16;
        ++color;
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void render_svg(const PlotData& data, const std::string& path) { sink(render_svg(data), path); }

PlotData plot_data_from_series(const SeriesData& series) {
    PlotData data;
    data.x_label = "t";
    data.y_label = "correlator";
    PlotChannel f{"F_R", {}}, chi{"chi_R", {}};
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        f.points.emplace_back(series.t[i], series.f_re[i]);
        chi.points.emplace_back(series.t[i], series.chi_re[i]);
    }
    data.channels = {std::move(f), std::move(chi)};
    return data;
}

PlotData plot_data_from_scan(const ScanData& scan) {
    PlotData data;
    data.x_label = "g";
    data.y_label = "F_bar";
    PlotChannel ch{"F_bar", {}};
    for (std::size_t i = 0; i < scan.g.size(); ++i)
        ch.points.emplace_back(scan.g[i], scan.f_bar[i]);
    data.channels = {std::move(ch)};
    return data;
}

}  // namespace otoc
