#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otoc/emit.hpp"

namespace otoc {

enum class Command { Quench, Scan, Sizes, Equilibrium, Plot };
enum class Model { Tfic, Annni };

// Fully resolved run configuration. All computation is seedless and
// deterministic for a fixed config.
struct RunConfig {
    Command command = Command::Quench;
    Model model = Model::Tfic;
    int n_sites = 4;
    std::vector<int> n_list;  // sizes
    double delta = 0.0;
    double g = 0.0;
    double g_min = 0.0, g_max = 0.0, g_step = 0.0;  // scan
    int steps = 12;
    double tau = 0.5;
    EvolutionMethod method = EvolutionMethod::exact();
    AverageMode average_mode = AverageMode::PointMean;
    std::pair<double, double> window{0, 0};
    bool ancilla = false;
    std::string out = "-";
    OutputFormat format = OutputFormat::Csv;
    std::string svg_path;  // empty: no SVG
    std::string in_path;   // plot input
    int threads = 0;       // 0 = reference single worker

    IsingParams ising_params() const;
    QuenchSpec quench_spec() const;
};

// Parses argv (without the program name). config_text, when provided,
// stands in for the --config file contents (flat JSON; flags override its
// keys; unknown keys are rejected). Throws UsageError on bad input and
// echoes the resolved config to stderr on success.
RunConfig parse_config(const std::vector<std::string>& argv,
                       const std::optional<std::string>& config_text = std::nullopt);

// Executes a resolved config; emits files per its output settings.
void execute(const RunConfig& config);

// parse + execute + exception-to-exit-code mapping (0 ok, 2 usage,
// 3 capacity, 4 I/O). Used by both main() and the in-process CLI tests.
int cli_main(const std::vector<std::string>& argv);

std::string resolved_config_json(const RunConfig& config);

}  // namespace otoc
