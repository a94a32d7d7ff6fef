#pragma once

#include <utility>
#include <vector>

#include "otoc/correlators.hpp"

namespace otoc {

struct InitialState {
    enum class Kind { FullyPolarized, GroundStateOf };

    Kind kind = Kind::FullyPolarized;
    double g0 = 0.0;  // field of the pre-quench Hamiltonian (GroundStateOf)

    static InitialState fully_polarized() { return {Kind::FullyPolarized, 0.0}; }
    static InitialState ground_state_of(double g0) { return {Kind::GroundStateOf, g0}; }
};

// One quench protocol: evolve under H(params) and sample F, chi on the grid
// t = k*tau, k = 0..steps-1.
struct QuenchSpec {
    IsingParams params;
    int steps = 12;
    double tau = 0.5;
    EvolutionMethod method = EvolutionMethod::exact();
    InitialState initial = InitialState::fully_polarized();
};

struct TimeSeries {
    QuenchSpec spec;
    std::vector<CorrelatorSample> samples;
};

struct ScanCurve {
    QuenchSpec base;
    AverageMode average_mode = AverageMode::PointMean;
    std::vector<double> g_values;      // ascending
    std::vector<double> f_bar_values;  // matching long-time averages
};

struct SizeSweepResult {
    std::vector<int> n_values;
    std::vector<TimeSeries> series;
    std::vector<double> fluctuation;  // std dev of Re F over the window, per N
    std::pair<double, double> window{0, 0};
};

struct CriticalPointEstimate {
    double g = 0;
    bool crossed = false;  // false: the curve never crossed the threshold
};

struct EquilibriumResult {
    TimeSeries series;
    bool used_ancilla = false;
    std::vector<double> ancilla_f;    // per sample, when used_ancilla
    std::vector<double> ancilla_chi;
    double max_discrepancy = 0.0;     // max |ancilla - Re(direct)| over both pairs
};

TimeSeries run_quench(const QuenchSpec& spec);

// Runs one quench per grid point (ascending g, duplicates collapsed) and
// long-time-averages Re F. threads = 0 or 1 runs the reference single
// worker; output is identical for any thread count.
ScanCurve scan_field(const QuenchSpec& base, std::vector<double> g_grid,
                     AverageMode mode = AverageMode::PointMean, int threads = 0);

// Per-size quench series plus late-window fluctuation (population standard
// deviation of Re F over samples with window.first <= t <= window.second).
SizeSweepResult size_sweep(const QuenchSpec& base, const std::vector<int>& n_values,
                           std::pair<double, double> window, int threads = 0);

// Smallest g where F_bar first falls to <= threshold, linearly interpolated
// between the bracketing grid points. Never throws on degenerate curves:
// entirely-below-threshold returns the first grid g, never-crossing returns
// the last grid g, both with crossed = false.
CriticalPointEstimate estimate_critical_point(const ScanCurve& curve,
                                              double threshold = 0.05);

// Equilibrium dynamics from the exact ground state (initial must be
// GroundStateOf; N <= kDenseSiteLimit). With use_ancilla the interferometer
// values are computed alongside and the worst disagreement recorded.
EquilibriumResult run_equilibrium(const QuenchSpec& spec, bool use_ancilla = false);

// (1/K) sum |a_i - b_i|
double mean_abs_deviation(std::span<const double> a, std::span<const double> b);

}  // namespace otoc
