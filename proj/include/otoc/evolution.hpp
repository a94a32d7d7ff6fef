#pragma once

#include <optional>

#include "otoc/ising.hpp"
#include "otoc/state_vector.hpp"

namespace otoc {

enum class Direction { Forward, Backward };  // Forward = e^{-iHt}

struct EvolutionMethod {
    enum class Kind { Exact, Trotter };

    Kind kind = Kind::Exact;
    int trotter_m = 1;  // segments per protocol step tau (Trotter only)

    static EvolutionMethod exact() { return {Kind::Exact, 1}; }
    static EvolutionMethod trotter(int m) { return {Kind::Trotter, m}; }
    // Smallest m with tau/m <= dt_max.
    static int default_segments(double tau, double dt_max = 0.05);
};

// e^{-+iHt}|state> through the spectral decomposition.
StateVector exact_evolve(const EigenSystem& eig, const StateVector& state, double t,
                         Direction direction);

// Symmetric splitting [e^{-iHx dt/2} e^{-iHzz dt} e^{-iHx dt/2}]^m with
// dt = tau/m. The half layers are closed-form single-site x rotations, the
// zz layer a diagonal phase multiply; no dense matrix is ever formed.
// Backward applies the exact inverses of the same factors in reverse order.
StateVector trotter_evolve(const HamiltonianTerms& terms, const StateVector& state,
                           double tau, int m, Direction direction);

// Bundles a Hamiltonian with an evolution method. For Exact the spectrum is
// computed once up front (dense ceiling applies); for Trotter only the
// factored layers are kept, so N up to kMaxSites works.
class Propagator {
public:
    // step_tau is the protocol time increment; Trotter segment counts scale
    // with it so that dt = step_tau/trotter_m stays fixed across the grid.
    Propagator(HamiltonianTerms terms, EvolutionMethod method, double step_tau);

    StateVector evolve(const StateVector& state, double t, Direction direction) const;

    // e^{iHt} sigma^axis_site e^{-iHt} |state>
    StateVector heisenberg_pauli(const StateVector& state, double t, int site,
                                 PauliAxis axis) const;

    // |psi(t)> = e^{iHt} sigma^z_1 e^{-iHt} |psi0>
    StateVector heisenberg_state(const StateVector& psi0, double t) const;

    const HamiltonianTerms& terms() const { return terms_; }
    const EvolutionMethod& method() const { return method_; }
    int n_sites() const { return terms_.params.n_sites; }

private:
    int segments_for(double t) const;

    HamiltonianTerms terms_;
    EvolutionMethod method_;
    double step_tau_;
    std::optional<EigenSystem> eig_;
};

}  // namespace otoc
