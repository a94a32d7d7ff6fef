#include "otoc/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace otoc {

int EvolutionMethod::default_segments(double tau, double dt_max) {
    return std::max(1, static_cast<int>(std::ceil(std::abs(tau) / dt_max - 1e-9)));
}

StateVector exact_evolve(const EigenSystem& eig, const StateVector& state, double t,
                         Direction direction) {
    if (eig.eigenvectors.rows() != static_cast<Eigen::Index>(state.dim()))
        throw std::domain_error("exact_evolve: dimension mismatch");
    if (t == 0.0) return state;

    const double sign = direction == Direction::Forward ? -1.0 : 1.0;
    Eigen::Map<const Eigen::VectorXcd> in(state.amplitudes.data(), state.dim());
    Eigen::VectorXcd modal = eig.eigenvectors.adjoint() * in;
    for (Eigen::Index i = 0; i < modal.size(); ++i)
        modal(i) *= std::polar(1.0, sign * eig.eigenvalues(i) * t);

    StateVector out;
    out.n_sites = state.n_sites;
    out.amplitudes.resize(state.dim());
    Eigen::Map<Eigen::VectorXcd>(out.amplitudes.data(), out.amplitudes.size()) =
        eig.eigenvectors * modal;
    return out;
}

namespace {

// One x-rotation layer: e^{i theta sx} on every site.
void rotate_x_all_sites(std::vector<complexd>& amp, int n_sites, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const complexd is{0, s};
    const std::uint64_t dim = amp.size();
    for (int site = 1; site <= n_sites; ++site) {
        const std::uint64_t mask = site_mask(n_sites, site);
        for (std::uint64_t block = 0; block < dim; block += 2 * mask) {
            for (std::uint64_t i = block; i < block + mask; ++i) {
                const complexd a = amp[i];
                const complexd b = amp[i | mask];
                amp[i] = c * a + is * b;
                amp[i | mask] = is * a + c * b;
            }
        }
    }
}

void phase_zz(std::vector<complexd>& amp, const std::vector<double>& zz_diagonal, double dt) {
    for (std::uint64_t i = 0; i < amp.size(); ++i)
        amp[i] *= std::polar(1.0, -zz_diagonal[i] * dt);
}

}  // namespace

StateVector trotter_evolve(const HamiltonianTerms& terms, const StateVector& state,
                           double tau, int m, Direction direction) {
    if (m < 1) throw std::domain_error("trotter_evolve: m must be >= 1, got " + std::to_string(m));
    if (terms.zz_diagonal.size() != state.dim())
        throw std::domain_error("trotter_evolve: dimension mismatch");
    if (tau == 0.0) return state;

    // Backward = inverse factors in reverse order; the symmetric product makes
    // that identical to flipping the sign of the segment length.
    const double dt = (direction == Direction::Forward ? tau : -tau) / m;
    const double theta = terms.params.field * dt / 2;  // e^{-iHx dt/2} = prod e^{+i g dt/2 sx}

    StateVector out = state;
    for (int seg = 0; seg < m; ++seg) {
        rotate_x_all_sites(out.amplitudes, out.n_sites, theta);
        phase_zz(out.amplitudes, terms.zz_diagonal, dt);
        rotate_x_all_sites(out.amplitudes, out.n_sites, theta);
    }
    return out;
}

Propagator::Propagator(HamiltonianTerms terms, EvolutionMethod method, double step_tau)
    : terms_(std::move(terms)), method_(method), step_tau_(step_tau) {
    if (method_.kind == EvolutionMethod::Kind::Trotter) {
        if (method_.trotter_m < 1)
            throw std::domain_error("Propagator: trotter_m must be >= 1");
        if (step_tau_ <= 0)
            throw std::domain_error("Propagator: Trotter needs a positive step tau");
    } else {
        eig_ = eigendecompose(total_hamiltonian(terms_));
    }
}

int Propagator::segments_for(double t) const {
    const double steps = std::abs(t) / step_tau_;
    return std::max(1, static_cast<int>(std::ceil(steps * method_.trotter_m - 1e-9)));
}

StateVector Propagator::evolve(const StateVector& state, double t, Direction direction) const {
    if (t == 0.0) return state;
    if (method_.kind == EvolutionMethod::Kind::Exact)
        return exact_evolve(*eig_, state, t, direction);
    return trotter_evolve(terms_, state, t, segments_for(t), direction);
}

StateVector Propagator::heisenberg_pauli(const StateVector& state, double t, int site,
                                         PauliAxis axis) const {
    if (t == 0.0) return apply_site_pauli(state, site, axis);
    StateVector out = evolve(state, t, Direction::Forward);
    apply_site_pauli_inplace(out, site, axis);
    return evolve(out, t, Direction::Backward);
}

StateVector Propagator::heisenberg_state(const StateVector& psi0, double t) const {
    return heisenberg_pauli(psi0, t, 1, PauliAxis::Z);
}

}  // namespace otoc
