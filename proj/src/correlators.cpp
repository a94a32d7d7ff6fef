#include "otoc/correlators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace otoc {

namespace {

bool is_plus_z1_eigenstate(const StateVector& psi, double tol = 1e-10) {
    const std::uint64_t mask = site_mask(psi.n_sites, 1);
    // sz_1 psi == psi iff every amplitude with the site-1 bit set vanishes.
    double worst = 0;
    for (std::uint64_t i = 0; i < psi.dim(); ++i)
        if (i & mask) worst = std::max(worst, std::abs(psi.amplitudes[i]));
    return worst <= tol;
}

void check_im(const complexd& value, double tol, const char* who) {
    if (std::abs(value.imag()) >= tol)
        throw std::logic_error(std::string(who) + ": imaginary part " +
                               std::to_string(value.imag()) + " exceeds " + std::to_string(tol));
}

}  // namespace

complexd otoc_quench(const StateVector& psi0, const Propagator& prop, double t) {
    if (!is_plus_z1_eigenstate(psi0))
        throw std::domain_error(
            "otoc_quench: psi0 is not a +1 eigenstate of sz_1; use otoc_general");
    const StateVector psi_t = prop.heisenberg_state(psi0, t);
    const complexd f = inner(psi_t, apply_site_pauli(psi_t, 1, PauliAxis::Z));
    check_im(f, 1e-9, "otoc_quench");
    return f;
}

complexd otoc_general(const StateVector& psi0, OperatorSpec w, OperatorSpec v,
                      const Propagator& prop, double t) {
    // psi2 = W(t) V |psi0>, psi1 = V W(t) |psi0>; O(t) = <psi1|psi2>.
    StateVector psi2 = apply_site_pauli(psi0, v.site, v.axis);
    psi2 = prop.heisenberg_pauli(psi2, t, w.site, w.axis);

    StateVector psi1 = prop.heisenberg_pauli(psi0, t, w.site, w.axis);
    apply_site_pauli_inplace(psi1, v.site, v.axis);

    return inner(psi1, psi2);
}

complexd autocorrelation(const StateVector& psi0, const Propagator& prop, double t) {
    if (is_plus_z1_eigenstate(psi0)) {
        // chi = <Psi(t)| sz_1 |Psi(t)>, Psi(t) = e^{-iHt} psi0.
        const StateVector evolved = prop.evolve(psi0, t, Direction::Forward);
        return inner(evolved, apply_site_pauli(evolved, 1, PauliAxis::Z));
    }
    StateVector x = apply_site_pauli(psi0, 1, PauliAxis::Z);
    x = prop.heisenberg_pauli(x, t, 1, PauliAxis::Z);
    return inner(psi0, x);
}

double long_time_average(std::span<const double> times, std::span<const double> values,
                         AverageMode mode) {
    if (times.size() != values.size())
        throw std::domain_error("long_time_average: times/values length mismatch");
    if (times.size() < 2)
        throw std::domain_error("long_time_average: need at least 2 samples, got " +
                                std::to_string(times.size()));
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::domain_error("long_time_average: times must be strictly increasing");

    if (mode == AverageMode::PointMean) {
        double acc = 0;
        for (const double v : values) acc += v;
        return acc / static_cast<double>(values.size());
    }
    double integral = 0;
    for (std::size_t i = 1; i < times.size(); ++i)
        integral += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
    return integral / (times.back() - times.front());
}

double long_time_average(std::span<const CorrelatorSample> samples, AverageMode mode,
                         Channel channel) {
    std::vector<double> times(samples.size()), values(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        times[i] = samples[i].t;
        values[i] = channel == Channel::F ? samples[i].f_value.real()
                                          : samples[i].chi_value.real();
    }
    return long_time_average(times, values, mode);
}

double ancilla_real_part(const StateVector& psi_init, AncillaPair pair,
                         const Propagator& prop, double t) {
    const int n = psi_init.n_sites;
    const std::uint64_t sub_dim = psi_init.dim();

    // Register layout: ancilla at site 1 (MSB) of N+1 sites, so the two
    // ancilla blocks are contiguous halves of the amplitude array.
    StateVector reg;
    reg.n_sites = n + 1;
    reg.amplitudes.assign(2 * sub_dim, complexd{0, 0});
    for (std::uint64_t i = 0; i < sub_dim; ++i) reg.amplitudes[i] = psi_init.amplitudes[i];

    // Hadamard on the ancilla.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::uint64_t i = 0; i < sub_dim; ++i) {
        const complexd a = reg.amplitudes[i];
        const complexd b = reg.amplitudes[i + sub_dim];
        reg.amplitudes[i] = inv_sqrt2 * (a + b);
        reg.amplitudes[i + sub_dim] = inv_sqrt2 * (a - b);
    }

    // The controlled payloads are block-diagonal in the ancilla, so each acts
    // on one half of the register, which is itself an N-site state.
    auto block = [&](std::uint64_t offset) {
        StateVector s;
        s.n_sites = n;
        s.amplitudes.assign(reg.amplitudes.begin() + offset,
                            reg.amplitudes.begin() + offset + sub_dim);
        return s;
    };
    auto store = [&](std::uint64_t offset, const StateVector& s) {
        for (std::uint64_t i = 0; i < sub_dim; ++i) reg.amplitudes[offset + i] = s.amplitudes[i];
    };
    auto z1 = [&](StateVector s) {
        apply_site_pauli_inplace(s, 1, PauliAxis::Z);
        return s;
    };
    auto z1_t = [&](const StateVector& s) { return prop.heisenberg_pauli(s, t, 1, PauliAxis::Z); };

    if (pair == AncillaPair::Otoc) {
        // U1 = |1><1| (x) sz_1 sz_1(t) ; U2 = |0><0| (x) sz_1(t) sz_1.
        store(sub_dim, z1(z1_t(block(sub_dim))));
        store(0, z1_t(z1(block(0))));
    } else {
        // U1 = |1><1| (x) sz_1(t) ; U2 = |0><0| (x) sz_1.
        store(sub_dim, z1_t(block(sub_dim)));
        store(0, z1(block(0)));
    }

    return expect_site_pauli(reg, 1, PauliAxis::X);
}

}  // namespace otoc
