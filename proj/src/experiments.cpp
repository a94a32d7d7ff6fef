#include "otoc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "otoc/errors.hpp"

namespace otoc {

namespace {

// Runs job(i) for i in [0, count). threads <= 1 is the reference single
// worker; otherwise a small pool pulls indices from a shared counter. Each
// job writes only its own slot, so output is scheduling-independent.
void for_each_index(std::size_t count, int threads,
                    const std::function<void(std::size_t)>& job) {
    const int workers = std::min<std::size_t>(std::max(threads, 1), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

StateVector initial_state(const QuenchSpec& spec) {
    if (spec.initial.kind == InitialState::Kind::FullyPolarized)
        return basis_state(spec.params.n_sites, 0);
    IsingParams pre = spec.params;
    pre.field = spec.initial.g0;
    return ground_state(eigendecompose(total_hamiltonian(build_terms(pre))));
}

void check_spec(const QuenchSpec& spec) {
    spec.params.validate();
    if (spec.steps < 1) throw std::domain_error("QuenchSpec: steps must be >= 1");
    if (!(spec.tau > 0)) throw std::domain_error("QuenchSpec: tau must be > 0");
    if (spec.method.kind == EvolutionMethod::Kind::Exact &&
        spec.params.n_sites > kDenseSiteLimit)
        throw CapacityError("run_quench: exact method is limited to " +
                            std::to_string(kDenseSiteLimit) + " sites, got " +
                            std::to_string(spec.params.n_sites) + "; use --method trotter");
}

}  // namespace

TimeSeries run_quench(const QuenchSpec& spec) {
    check_spec(spec);
    const StateVector psi0 = initial_state(spec);
    const Propagator prop(build_terms(spec.params), spec.method, spec.tau);

    const bool polarized_route = spec.initial.kind == InitialState::Kind::FullyPolarized;
    TimeSeries series;
    series.spec = spec;
    series.samples.reserve(spec.steps);
    for (int k = 0; k < spec.steps; ++k) {
        const double t = k * spec.tau;
        CorrelatorSample sample;
        sample.t = t;
        sample.f_value = polarized_route
                             ? otoc_quench(psi0, prop, t)
                             : otoc_general(psi0, {1, PauliAxis::Z}, {1, PauliAxis::Z}, prop, t);
        sample.chi_value = autocorrelation(psi0, prop, t);
        series.samples.push_back(sample);
    }
    return series;
}

ScanCurve scan_field(const QuenchSpec& base, std::vector<double> g_grid, AverageMode mode,
                     int threads) {
    if (g_grid.empty()) throw std::domain_error("scan_field: empty g grid");
    std::sort(g_grid.begin(), g_grid.end());
    g_grid.erase(std::unique(g_grid.begin(), g_grid.end()), g_grid.end());

    ScanCurve curve;
    curve.base = base;
    curve.average_mode = mode;
    curve.g_values = g_grid;
    curve.f_bar_values.resize(g_grid.size());
    for_each_index(g_grid.size(), threads, [&](std::size_t i) {
        QuenchSpec spec = base;
        spec.params.field = g_grid[i];
        const TimeSeries series = run_quench(spec);
        curve.f_bar_values[i] = long_time_average(series.samples, mode, Channel::F);
    });
    return curve;
}

SizeSweepResult size_sweep(const QuenchSpec& base, const std::vector<int>& n_values,
                           std::pair<double, double> window, int threads) {
    if (n_values.empty()) throw std::domain_error("size_sweep: empty size list");
    if (window.second < window.first)
        throw std::domain_error("size_sweep: window upper bound below lower bound");

    SizeSweepResult result;
    result.n_values = n_values;
    result.window = window;
    result.series.resize(n_values.size());
    result.fluctuation.resize(n_values.size());
    for_each_index(n_values.size(), threads, [&](std::size_t i) {
        QuenchSpec spec = base;
        spec.params.n_sites = n_values[i];
        result.series[i] = run_quench(spec);

        double sum = 0, sum_sq = 0;
        std::size_t count = 0;
        for (const auto& s : result.series[i].samples) {
            if (s.t < window.first - 1e-12 || s.t > window.second + 1e-12) continue;
            const double v = s.f_value.real();
            sum += v;
            sum_sq += v * v;
            ++count;
        }
        if (count == 0)
            throw std::domain_error("size_sweep: window [" + std::to_string(window.first) +
                                    ", " + std::to_string(window.second) +
                                    "] contains no samples");
        const double mean = sum / count;
        result.fluctuation[i] = std::sqrt(std::max(0.0, sum_sq / count - mean * mean));
    });
    return result;
}

CriticalPointEstimate estimate_critical_point(const ScanCurve& curve, double threshold) {
    if (curve.g_values.empty())
        throw std::domain_error("estimate_critical_point: empty curve");
    if (!(threshold > 0 && threshold < 1))
        throw std::domain_error("estimate_critical_point: threshold must be in (0, 1)");

    const auto& g = curve.g_values;
    const auto& f = curve.f_bar_values;
    if (f.front() <= threshold) return {g.front(), false};
    for (std::size_t i = 1; i < f.size(); ++i) {
        if (f[i] <= threshold) {
            const double frac = (f[i - 1] - threshold) / (f[i - 1] - f[i]);
            return {g[i - 1] + frac * (g[i] - g[i - 1]), true};
        }
    }
    return {g.back(), false};
}

EquilibriumResult run_equilibrium(const QuenchSpec& spec, bool use_ancilla) {
    if (spec.initial.kind != InitialState::Kind::GroundStateOf)
        throw std::domain_error("run_equilibrium: initial state must be GroundStateOf");
    check_spec(spec);
    if (spec.params.n_sites > kDenseSiteLimit)
        throw CapacityError("run_equilibrium: exact ground state needs n_sites <= " +
                            std::to_string(kDenseSiteLimit));

    const StateVector psi_g = initial_state(spec);
    const Propagator prop(build_terms(spec.params), spec.method, spec.tau);
    const OperatorSpec z1{1, PauliAxis::Z};

    EquilibriumResult result;
    result.series.spec = spec;
    result.used_ancilla = use_ancilla;
    for (int k = 0; k < spec.steps; ++k) {
        const double t = k * spec.tau;
        CorrelatorSample sample;
        sample.t = t;
        sample.f_value = otoc_general(psi_g, z1, z1, prop, t);
        sample.chi_value = autocorrelation(psi_g, prop, t);
        result.series.samples.push_back(sample);

        if (use_ancilla) {
            const double af = ancilla_real_part(psi_g, AncillaPair::Otoc, prop, t);
            const double ac = ancilla_real_part(psi_g, AncillaPair::Autocorrelation, prop, t);
            result.ancilla_f.push_back(af);
            result.ancilla_chi.push_back(ac);
            result.max_discrepancy = std::max(
                {result.max_discrepancy, std::abs(af - sample.f_value.real()),
                 std::abs(ac - sample.chi_value.real())});
        }
    }
    return result;
}

double mean_abs_deviation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::domain_error("mean_abs_deviation: length mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
    if (a.empty()) throw std::domain_error("mean_abs_deviation: empty input");
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc / static_cast<double>(a.size());
}

}  // namespace otoc
