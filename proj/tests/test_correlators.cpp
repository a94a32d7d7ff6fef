#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "otoc/correlators.hpp"

using namespace otoc;

namespace {

StateVector scrambled_state(int n_sites, std::uint64_t seed = 31415) {
    StateVector s;
    s.n_sites = n_sites;
    s.amplitudes.resize(std::size_t{1} << n_sites);
    std::uint64_t x = seed;
    auto next = [&x] {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(x >> 11) / 9007199254740992.0 - 0.5;
    };
    for (auto& a : s.amplitudes) a = complexd{next(), next()};
    const double n = s.norm();
    for (auto& a : s.amplitudes) a /= n;
    return s;
}

StateVector exact_ground_state(const IsingParams& p) {
    return ground_state(eigendecompose(total_hamiltonian(build_terms(p))));
}

oracle::Mat oracle_h(const IsingParams& p) {
    return oracle::ising_hamiltonian(p.n_sites, p.j_coupling, p.delta, p.field);
}

}  // namespace

TEST_CASE("otoc_quench closed forms") {
    const IsingParams tfic{4, 1.0, 0.0, 1.5};
    const Propagator prop(build_terms(tfic), EvolutionMethod::exact(), 0.5);
    const StateVector psi0 = basis_state(4, 0);
    CHECK(std::abs(otoc_quench(psi0, prop, 0.0) - complexd(1, 0)) < 1e-14);

    const Propagator frozen(build_terms({4, 1.0, 0.0, 0.0}), EvolutionMethod::exact(), 0.5);
    for (const double t : {0.5, 2.0, 5.5})
        CHECK(std::abs(otoc_quench(psi0, frozen, t) - complexd(1, 0)) < 1e-12);

    const double g = 0.5;
    const Propagator single(build_terms({1, 0.0, 0.0, g}), EvolutionMethod::exact(), 0.5);
    const StateVector up = basis_state(1, 0);
    for (const double t : {0.3, 1.1})
        CHECK(otoc_quench(up, single, t).real() == doctest::Approx(std::cos(4 * g * t)));
    CHECK(std::abs(otoc_quench(up, single, std::numbers::pi / 4)) < 1e-12);
}

TEST_CASE("otoc_quench demands a +1 sz_1 eigenstate") {
    const Propagator prop(build_terms({2, 1.0, 0.0, 1.0}), EvolutionMethod::exact(), 0.5);
    CHECK_THROWS_AS(otoc_quench(basis_state(2, 2), prop, 1.0), std::domain_error);  // |down up>
    CHECK_THROWS_AS(otoc_quench(scrambled_state(2), prop, 1.0), std::domain_error);
}

TEST_CASE("otoc_general reduces to otoc_quench on eigenstates") {
    const IsingParams p{4, 1.0, 0.5, 2.0};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.2);
    const StateVector psi0 = basis_state(4, 0);
    const OperatorSpec z1{1, PauliAxis::Z};
    for (int k = 0; k < 8; ++k) {
        const double t = k * 0.2;
        CHECK(std::abs(otoc_general(psi0, z1, z1, prop, t) - otoc_quench(psi0, prop, t)) < 1e-10);
    }
}

TEST_CASE("otoc_general at t=0 is 1 for any state when W=V") {
    const Propagator prop(build_terms({3, 1.0, 0.0, 0.7}), EvolutionMethod::exact(), 0.5);
    const OperatorSpec z1{1, PauliAxis::Z};
    CHECK(std::abs(otoc_general(scrambled_state(3), z1, z1, prop, 0.0) - complexd(1, 0)) < 1e-12);
}

TEST_CASE("otoc_general against the dense oracle on a ground state") {
    const IsingParams p{3, 1.0, 0.0, 0.5};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.5);
    const StateVector gs = exact_ground_state(p);
    const OperatorSpec z1{1, PauliAxis::Z};

    const oracle::Vec psi(gs.amplitudes.begin(), gs.amplitudes.end());
    for (const double t : {1.0, 0.4, 2.7}) {
        const complexd ours = otoc_general(gs, z1, z1, prop, t);
        const oracle::cd ref = oracle::otoc(oracle_h(p), 3, 1, 'z', 1, 'z', psi, t);
        CHECK(std::abs(ours - ref) < 1e-9);
    }
}

TEST_CASE("quench otoc matches the literal dense conjugation for N <= 4") {
    for (const auto& p : {IsingParams{2, 1.0, 0.0, 1.3}, IsingParams{3, 1.0, 0.0, 0.8},
                          IsingParams{4, 1.0, 0.5, 2.0}}) {
        const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.5);
        const StateVector psi0 = basis_state(p.n_sites, 0);
        const oracle::Vec psi(psi0.amplitudes.begin(), psi0.amplitudes.end());
        for (const double t : {0.5, 1.5, 3.5}) {
            const complexd ours = otoc_quench(psi0, prop, t);
            const oracle::cd ref = oracle::otoc(oracle_h(p), p.n_sites, 1, 'z', 1, 'z', psi, t);
            CHECK(std::abs(ours - ref) < 1e-9);
        }
    }
}

TEST_CASE("site covariance on the translation-invariant chain") {
    const IsingParams p{4, 1.0, 0.0, 1.5};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.5);
    const StateVector psi0 = basis_state(4, 0);
    for (const double t : {0.5, 1.0, 2.5}) {
        const complexd f1 = otoc_general(psi0, {1, PauliAxis::Z}, {1, PauliAxis::Z}, prop, t);
        const complexd f2 = otoc_general(psi0, {2, PauliAxis::Z}, {2, PauliAxis::Z}, prop, t);
        CHECK(std::abs(f1 - f2) < 1e-9);
    }
}

TEST_CASE("autocorrelation") {
    const IsingParams p{4, 1.0, 0.0, 1.5};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.5);
    const StateVector psi0 = basis_state(4, 0);
    CHECK(std::abs(autocorrelation(psi0, prop, 0.0) - complexd(1, 0)) < 1e-14);

    const Propagator frozen(build_terms({4, 1.0, 0.0, 0.0}), EvolutionMethod::exact(), 0.5);
    for (const double t : {0.5, 3.0})
        CHECK(std::abs(autocorrelation(psi0, frozen, t) - complexd(1, 0)) < 1e-12);

    const double g = 1.3;
    const Propagator single(build_terms({1, 0.0, 0.0, g}), EvolutionMethod::exact(), 0.5);
    for (const double t : {0.2, 0.9})
        CHECK(autocorrelation(basis_state(1, 0), single, t).real() ==
              doctest::Approx(std::cos(2 * g * t)));
}

TEST_CASE("autocorrelation general route against the oracle") {
    const IsingParams p{3, 1.0, 0.0, 1.2};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.5);
    const StateVector gs = exact_ground_state(p);  // not an sz_1 eigenstate
    const oracle::Vec psi(gs.amplitudes.begin(), gs.amplitudes.end());
    for (const double t : {0.6, 1.8}) {
        const complexd ours = autocorrelation(gs, prop, t);
        CHECK(std::abs(ours - oracle::autocorrelation(oracle_h(p), 3, psi, t)) < 1e-9);
    }
}

TEST_CASE("correlators stay inside the unit disk and quench F stays real") {
    const IsingParams p{4, 1.0, 0.5, 2.0};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.2);
    const StateVector psi0 = basis_state(4, 0);
    for (int k = 0; k < 15; ++k) {
        const double t = k * 0.2;
        const complexd f = otoc_quench(psi0, prop, t);
        const complexd chi = autocorrelation(psi0, prop, t);
        CHECK(std::abs(f) <= 1 + 1e-9);
        CHECK(std::abs(chi) <= 1 + 1e-9);
        CHECK(std::abs(f.imag()) < 1e-9);
    }
}

TEST_CASE("exact and trotter correlator outputs converge") {
    // Second-order shrink of the exact/Trotter gap; 1e-6 agreement holds
    // from dt = 2.5e-4 on (measured 8.4e-4 at dt = 0.01, 8.3e-6 at 1e-3).
    const IsingParams p{4, 1.0, 0.0, 1.5};
    const HamiltonianTerms terms = build_terms(p);
    const Propagator exact(terms, EvolutionMethod::exact(), 0.5);
    const Propagator fine(terms, EvolutionMethod::trotter(2000), 0.5);    // dt = 2.5e-4
    const Propagator coarse(terms, EvolutionMethod::trotter(50), 0.5);    // dt = 0.01
    const StateVector psi0 = basis_state(4, 0);
    for (const double t : {0.5, 2.5, 5.5}) {
        CHECK(std::abs(otoc_quench(psi0, exact, t) - otoc_quench(psi0, fine, t)) < 1e-6);
        CHECK(std::abs(autocorrelation(psi0, exact, t) - autocorrelation(psi0, fine, t)) < 1e-6);
        CHECK(std::abs(otoc_quench(psi0, exact, t) - otoc_quench(psi0, coarse, t)) < 2e-3);
    }
}

TEST_CASE("long_time_average") {
    std::vector<CorrelatorSample> constant;
    for (int k = 0; k < 5; ++k) constant.push_back({k * 0.5, {1, 0}, {1, 0}});
    CHECK(long_time_average(constant, AverageMode::PointMean) == doctest::Approx(1.0));
    CHECK(long_time_average(constant, AverageMode::Trapezoid) == doctest::Approx(1.0));

    const std::vector<double> times{0.0, 1.0};
    const std::vector<double> values{1.0, -1.0};
    CHECK(long_time_average(times, values, AverageMode::Trapezoid) == doctest::Approx(0.0));
    CHECK(long_time_average(times, values, AverageMode::PointMean) == doctest::Approx(0.0));

    CHECK_THROWS_AS(long_time_average(std::vector<double>{0.0}, std::vector<double>{1.0},
                                      AverageMode::PointMean),
                    std::domain_error);
    CHECK_THROWS_AS(long_time_average(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0},
                                      AverageMode::PointMean),
                    std::domain_error);
}

TEST_CASE("paramagnetic quench average is small") {
    const IsingParams p{4, 1.0, 0.0, 1.5};
    const Propagator prop(build_terms(p), EvolutionMethod::exact(), 0.5);
    const StateVector psi0 = basis_state(4, 0);
    std::vector<CorrelatorSample> samples;
    for (int k = 0; k < 12; ++k) {
        const double t = k * 0.5;
        samples.push_back({t, otoc_quench(psi0, prop, t), {0, 0}});
    }
    CHECK(std::abs(long_time_average(samples, AverageMode::PointMean)) < 0.15);
}

TEST_CASE("ancilla interferometer equals the direct path") {
    // t = 0, OTOC pair: both payloads collapse to sz sz = identity
    const IsingParams p3{3, 1.0, 0.0, 0.5};
    const Propagator prop(build_terms(p3), EvolutionMethod::exact(), 0.5);
    CHECK(ancilla_real_part(scrambled_state(3), AncillaPair::Otoc, prop, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const StateVector gs = exact_ground_state(p3);
    const OperatorSpec z1{1, PauliAxis::Z};
    for (const double t : {0.5, 1.0, 2.0}) {
        const double via_circuit = ancilla_real_part(gs, AncillaPair::Otoc, prop, t);
        CHECK(std::abs(via_circuit - otoc_general(gs, z1, z1, prop, t).real()) < 1e-10);
    }

    // autocorrelation pair on an arbitrary 3-spin state at t = 0.6
    const IsingParams pauto{3, 1.0, 0.0, 0.8};
    const Propagator prop_auto(build_terms(pauto), EvolutionMethod::exact(), 0.3);
    const StateVector psi = exact_ground_state(pauto);
    const double via_circuit = ancilla_real_part(psi, AncillaPair::Autocorrelation, prop_auto, 0.6);
    CHECK(std::abs(via_circuit - autocorrelation(psi, prop_auto, 0.6).real()) < 1e-10);
}

TEST_CASE("ancilla works through the trotter path as well") {
    const IsingParams p{3, 1.0, 0.0, 1.5};
    const Propagator prop(build_terms(p), EvolutionMethod::trotter(10), 0.5);
    const StateVector gs = exact_ground_state(p);
    const OperatorSpec z1{1, PauliAxis::Z};
    const double t = 1.5;
    CHECK(std::abs(ancilla_real_part(gs, AncillaPair::Otoc, prop, t) -
                   otoc_general(gs, z1, z1, prop, t).real()) < 1e-10);
}
