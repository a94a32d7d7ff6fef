#include "otoc/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "otoc/errors.hpp"

namespace otoc {

using ordered_json = nlohmann::ordered_json;

IsingParams RunConfig::ising_params() const {
    IsingParams p;
    p.n_sites = n_sites;
    p.j_coupling = 1.0;
    p.delta = model == Model::Tfic ? 0.0 : delta;
    p.field = g;
    return p;
}

QuenchSpec RunConfig::quench_spec() const {
    QuenchSpec spec;
    spec.params = ising_params();
    spec.steps = steps;
    spec.tau = tau;
    spec.method = method;
    spec.initial = command == Command::Equilibrium ? InitialState::ground_state_of(g)
                                                   : InitialState::fully_polarized();
    return spec;
}

namespace {

const std::set<std::string> kConfigKeys = {
    "model", "n", "delta", "g", "g-min", "g-max", "g-step", "steps", "tau",
    "method", "trotter-m", "avg", "window", "ancilla", "out", "format", "svg",
    "in", "threads"};

struct RawOptions {
    std::string model = "tfic";
    std::string n_text;
    std::string delta_text;
    std::string g_text;
    std::string g_min_text, g_max_text, g_step_text;
    std::string steps_text, tau_text;
    std::string method = "exact";
    std::string trotter_m_text;
    std::string avg = "pointmean";
    std::string window_text;
    bool ancilla = false;
    std::string out = "-";
    std::string format = "csv";
    std::string svg;
    std::string in;
    std::string threads_text = "0";
};

double to_double(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        if (!std::isfinite(v)) throw std::invalid_argument("nonfinite");
        return v;
    } catch (const std::exception&) {
        throw UsageError("--" + flag + ": cannot parse number '" + text + "'");
    }
}

int to_int(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw UsageError("--" + flag + ": cannot parse integer '" + text + "'");
    }
}

void apply_config_json(const std::string& text, RawOptions& raw) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw UsageError("--config: malformed JSON");
    if (!j.is_object()) throw UsageError("--config: expected a flat JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kConfigKeys.count(key))
            throw UsageError("--config: unknown key '" + key + "'");
        std::string text_value;
        if (value.is_string())
            text_value = value.get<std::string>();
        else if (value.is_boolean())
            text_value = value.get<bool>() ? "true" : "false";
        else if (value.is_number())
            text_value = value.dump();
        else
            throw UsageError("--config: key '" + key + "' must be scalar");

        if (key == "model") raw.model = text_value;
        else if (key == "n") raw.n_text = text_value;
        else if (key == "delta") raw.delta_text = text_value;
        else if (key == "g") raw.g_text = text_value;
        else if (key == "g-min") raw.g_min_text = text_value;
        else if (key == "g-max") raw.g_max_text = text_value;
        else if (key == "g-step") raw.g_step_text = text_value;
        else if (key == "steps") raw.steps_text = text_value;
        else if (key == "tau") raw.tau_text = text_value;
        else if (key == "method") raw.method = text_value;
        else if (key == "trotter-m") raw.trotter_m_text = text_value;
        else if (key == "avg") raw.avg = text_value;
        else if (key == "window") raw.window_text = text_value;
        else if (key == "ancilla") raw.ancilla = text_value == "true" || text_value == "1";
        else if (key == "out") raw.out = text_value;
        else if (key == "format") raw.format = text_value;
        else if (key == "svg") raw.svg = text_value;
        else if (key == "in") raw.in = text_value;
        else if (key == "threads") raw.threads_text = text_value;
    }
}

void add_common_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--model", raw.model, "Ising variant: tfic | annni");
    cmd->add_option("--n", raw.n_text, "number of sites (comma list for `sizes`)");
    cmd->add_option("--delta", raw.delta_text, "next-nearest-neighbor coupling");
    cmd->add_option("--g", raw.g_text, "transverse field of the evolving Hamiltonian");
    cmd->add_option("--g-min", raw.g_min_text, "scan: lowest field");
    cmd->add_option("--g-max", raw.g_max_text, "scan: highest field");
    cmd->add_option("--g-step", raw.g_step_text, "scan: field increment");
    cmd->add_option("--steps", raw.steps_text, "number of grid points M (t = k*tau)");
    cmd->add_option("--tau", raw.tau_text, "time increment tau");
    cmd->add_option("--method", raw.method, "propagator: exact | trotter");
    cmd->add_option("--trotter-m", raw.trotter_m_text, "Trotter segments per step");
    cmd->add_option("--avg", raw.avg, "long-time average: trapezoid | pointmean");
    cmd->add_option("--window", raw.window_text, "fluctuation window t_lo:t_hi");
    cmd->add_flag("--ancilla", raw.ancilla, "equilibrium: also run the ancilla circuit");
    cmd->add_option("--out", raw.out, "output path ('-' = stdout)");
    cmd->add_option("--format", raw.format, "output format: csv | json");
    cmd->add_option("--svg", raw.svg, "also render an SVG plot to this path");
    cmd->add_option("--in", raw.in, "plot: previously emitted series/scan file");
    cmd->add_option("--threads", raw.threads_text, "grid workers (0 = reference single worker)");
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw UsageError("--window: expected t_lo:t_hi, got '" + text + "'");
    return {to_double(text.substr(0, colon), "window"),
            to_double(text.substr(colon + 1), "window")};
}

}  // namespace

std::string resolved_config_json(const RunConfig& c) {
    ordered_json j;
    switch (c.command) {
        case Command::Quench: j["command"] = "quench"; break;
        case Command::Scan: j["command"] = "scan"; break;
        case Command::Sizes: j["command"] = "sizes"; break;
        case Command::Equilibrium: j["command"] = "equilibrium"; break;
        case Command::Plot: j["command"] = "plot"; break;
    }
    if (c.command == Command::Plot) {
        j["in"] = c.in_path;
        j["svg"] = c.svg_path;
        return j.dump();
    }
    j["model"] = c.model == Model::Tfic ? "tfic" : "annni";
    if (c.command == Command::Sizes) {
        auto& arr = j["n"] = ordered_json::array();
        for (int n : c.n_list) arr.push_back(n);
    } else {
        j["n"] = c.n_sites;
    }
    j["delta"] = c.delta;
    if (c.command == Command::Scan) {
        j["g-min"] = c.g_min;
        j["g-max"] = c.g_max;
        j["g-step"] = c.g_step;
    } else {
        j["g"] = c.g;
    }
    j["steps"] = c.steps;
    j["tau"] = c.tau;
    j["method"] = c.method.kind == EvolutionMethod::Kind::Exact ? "exact" : "trotter";
    if (c.method.kind == EvolutionMethod::Kind::Trotter) j["trotter-m"] = c.method.trotter_m;
    j["avg"] = c.average_mode == AverageMode::PointMean ? "pointmean" : "trapezoid";
    if (c.command == Command::Sizes)
        j["window"] = format_number(c.window.first) + ":" + format_number(c.window.second);
    if (c.command == Command::Equilibrium) j["ancilla"] = c.ancilla;
    j["out"] = c.out;
    j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
    if (!c.svg_path.empty()) j["svg"] = c.svg_path;
    j["threads"] = c.threads;
    return j.dump();
}

RunConfig parse_config(const std::vector<std::string>& argv,
                       const std::optional<std::string>& config_text) {
    // Phase 1: locate --config and load its keys as pre-set values.
    RawOptions raw;
    std::string config_path;
    std::vector<std::string> args = argv;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config: missing path");
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_text) {
        apply_config_json(*config_text, raw);
    } else if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open config file '" + config_path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        apply_config_json(buffer.str(), raw);
    }

    // Phase 2: flags override the config values.
    CLI::App app{"OTOC quench-dynamics simulator for periodic Ising chains"};
    app.require_subcommand(1);
    auto* quench = app.add_subcommand("quench", "F(t), chi(t) from the fully polarized state");
    auto* scan = app.add_subcommand("scan", "long-time averaged OTOC F_bar over a field grid");
    auto* sizes = app.add_subcommand("sizes", "late-time F_R fluctuation across system sizes");
    auto* equilibrium =
        app.add_subcommand("equilibrium", "F(t), chi(t) from the exact ground state");
    auto* plot = app.add_subcommand("plot", "render an emitted series/scan file as SVG");
    for (auto* cmd : {quench, scan, sizes, equilibrium, plot}) add_common_options(cmd, raw);

    std::vector<const char*> cargv;
    cargv.push_back("otoc");
    for (const auto& a : args) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        throw;  // rethrown so cli_main can return 0
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig config;
    if (quench->parsed()) config.command = Command::Quench;
    else if (scan->parsed()) config.command = Command::Scan;
    else if (sizes->parsed()) config.command = Command::Sizes;
    else if (equilibrium->parsed()) config.command = Command::Equilibrium;
    else config.command = Command::Plot;

    // Model and model-dependent protocol defaults.
    if (raw.model == "tfic") config.model = Model::Tfic;
    else if (raw.model == "annni") config.model = Model::Annni;
    else throw UsageError("--model: expected tfic or annni, got '" + raw.model + "'");

    config.delta = raw.delta_text.empty() ? (config.model == Model::Tfic ? 0.0 : 0.5)
                                          : to_double(raw.delta_text, "delta");
    if (config.model == Model::Tfic && config.delta != 0.0)
        throw UsageError("--model tfic conflicts with nonzero --delta (use --model annni)");
    if (config.model == Model::Annni && config.delta == 0.0)
        throw UsageError("--model annni needs nonzero --delta (use --model tfic)");

    config.steps = raw.steps_text.empty() ? (config.model == Model::Tfic ? 12 : 15)
                                          : to_int(raw.steps_text, "steps");
    config.tau = raw.tau_text.empty() ? (config.model == Model::Tfic ? 0.5 : 0.2)
                                      : to_double(raw.tau_text, "tau");
    if (config.steps < 1) throw UsageError("--steps must be >= 1");
    if (!(config.tau > 0)) throw UsageError("--tau must be > 0");

    if (raw.method == "exact") {
        config.method = EvolutionMethod::exact();
        if (!raw.trotter_m_text.empty())
            throw UsageError("--trotter-m only applies to --method trotter");
    } else if (raw.method == "trotter") {
        const int m = raw.trotter_m_text.empty()
                          ? EvolutionMethod::default_segments(config.tau)
                          : to_int(raw.trotter_m_text, "trotter-m");
        if (m < 1) throw UsageError("--trotter-m must be >= 1");
        config.method = EvolutionMethod::trotter(m);
    } else {
        throw UsageError("--method: expected exact or trotter, got '" + raw.method + "'");
    }

    if (raw.avg == "pointmean") config.average_mode = AverageMode::PointMean;
    else if (raw.avg == "trapezoid") config.average_mode = AverageMode::Trapezoid;
    else throw UsageError("--avg: expected trapezoid or pointmean, got '" + raw.avg + "'");

    if (raw.format == "csv") config.format = OutputFormat::Csv;
    else if (raw.format == "json") config.format = OutputFormat::Json;
    else throw UsageError("--format: expected csv or json, got '" + raw.format + "'");

    config.threads = to_int(raw.threads_text, "threads");
    if (config.threads < 0) throw UsageError("--threads must be >= 0");
    config.ancilla = raw.ancilla;
    config.out = raw.out;
    config.svg_path = raw.svg;
    config.in_path = raw.in;

    // Per-command requirements.
    auto require = [&](const std::string& text, const char* flag) -> const std::string& {
        if (text.empty())
            throw UsageError(std::string("missing required --") + flag + " for this command");
        return text;
    };

    if (config.command == Command::Sizes) {
        for (const auto& part : [&] {
                 std::vector<std::string> parts;
                 std::istringstream in(require(raw.n_text, "n"));
                 std::string p;
                 while (std::getline(in, p, ',')) parts.push_back(p);
                 return parts;
             }())
            config.n_list.push_back(to_int(part, "n"));
        if (config.n_list.empty()) throw UsageError("--n: empty size list");
    } else if (config.command != Command::Plot) {
        config.n_sites = to_int(require(raw.n_text, "n"), "n");
    }

    if (config.command == Command::Scan) {
        config.g_min = to_double(require(raw.g_min_text, "g-min"), "g-min");
        config.g_max = to_double(require(raw.g_max_text, "g-max"), "g-max");
        config.g_step = to_double(require(raw.g_step_text, "g-step"), "g-step");
        if (!(config.g_step > 0)) throw UsageError("--g-step must be > 0");
        if (config.g_max < config.g_min) throw UsageError("--g-max must be >= --g-min");
    } else if (config.command == Command::Quench || config.command == Command::Sizes ||
               config.command == Command::Equilibrium) {
        config.g = to_double(require(raw.g_text, "g"), "g");
    }

    if (config.command == Command::Sizes) {
        config.window = raw.window_text.empty()
                            ? std::pair{2.0, (config.steps - 1) * config.tau}
                            : parse_window(raw.window_text);
        if (config.window.second < config.window.first)
            throw UsageError("--window: t_hi below t_lo");
    }

    if (config.command == Command::Plot) {
        require(raw.in, "in");
        require(raw.svg, "svg");
    }

    std::cerr << resolved_config_json(config) << "\n";
    return config;
}

void execute(const RunConfig& config) {
    switch (config.command) {
        case Command::Quench: {
            const TimeSeries series = run_quench(config.quench_spec());
            write_series(series, config.format, config.out);
            if (!config.svg_path.empty()) {
                SeriesData data;
                for (const auto& s : series.samples) {
                    data.t.push_back(s.t);
                    data.f_re.push_back(s.f_value.real());
                    data.f_im.push_back(s.f_value.imag());
                    data.chi_re.push_back(s.chi_value.real());
                    data.chi_im.push_back(s.chi_value.imag());
                }
                render_svg(plot_data_from_series(data), config.svg_path);
            }
            break;
        }
        case Command::Scan: {
            std::vector<double> grid;
            const int count = static_cast<int>(
                std::floor((config.g_max - config.g_min) / config.g_step + 1e-9)) + 1;
            for (int i = 0; i < count; ++i) grid.push_back(config.g_min + i * config.g_step);
            const ScanCurve curve =
                scan_field(config.quench_spec(), grid, config.average_mode, config.threads);
            write_scan(curve, config.format, config.out);
            const CriticalPointEstimate estimate = estimate_critical_point(curve);
            std::cerr << "estimated critical point: g_c = " << format_number(estimate.g)
                      << (estimate.crossed ? "" : " (threshold never crossed)") << "\n";
            if (!config.svg_path.empty()) {
                ScanData data{curve.g_values, curve.f_bar_values};
                render_svg(plot_data_from_scan(data), config.svg_path);
            }
            break;
        }
        case Command::Sizes: {
            const SizeSweepResult result = size_sweep(config.quench_spec(), config.n_list,
                                                      config.window, config.threads);
            write_sizes(result, config.format, config.out);
            if (!config.svg_path.empty()) {
                PlotData data;
                data.x_label = "N";
                data.y_label = "fluctuation";
                PlotChannel ch{"fluctuation", {}};
                for (std::size_t i = 0; i < result.n_values.size(); ++i)
                    ch.points.emplace_back(result.n_values[i], result.fluctuation[i]);
                data.channels = {std::move(ch)};
                render_svg(data, config.svg_path);
            }
            break;
        }
        case Command::Equilibrium: {
            const EquilibriumResult result =
                run_equilibrium(config.quench_spec(), config.ancilla);
            write_series(result.series, config.format, config.out);
            if (result.used_ancilla)
                std::cerr << "ancilla vs direct max discrepancy: "
                          << format_number(result.max_discrepancy) << "\n";
            if (!config.svg_path.empty()) {
                SeriesData data;
                for (const auto& s : result.series.samples) {
                    data.t.push_back(s.t);
                    data.f_re.push_back(s.f_value.real());
                    data.f_im.push_back(s.f_value.imag());
                    data.chi_re.push_back(s.chi_value.real());
                    data.chi_im.push_back(s.chi_value.imag());
                }
                render_svg(plot_data_from_series(data), config.svg_path);
            }
            break;
        }
        case Command::Plot: {
            const ReadBack data = read_emitted(config.in_path);
            render_svg(data.kind == ReadBack::Kind::Series ? plot_data_from_series(data.series)
                                                           : plot_data_from_scan(data.scan),
                       config.svg_path);
            break;
        }
    }
}

int cli_main(const std::vector<std::string>& argv) {
    try {
        execute(parse_config(argv));
        return 0;
    } catch (const CLI::CallForHelp&) {
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace otoc
