#pragma once

#include <vector>

#include "otoc/state_vector.hpp"

namespace otoc {

// Dense 2^N x 2^N matrices are only built up to this many sites; larger
// systems must go through the factored (Trotter) path.
inline constexpr int kDenseSiteLimit = 12;

// Factored layers are supported up to this many sites (2^20 amplitudes).
inline constexpr int kMaxSites = 20;

// Periodic Ising chain H = -sum_n [ J sz_n sz_{n+1} + delta sz_n sz_{n+2} + g sx_n ].
// delta = 0 selects the integrable chain (TFIC), delta != 0 the ANNNI model.
struct IsingParams {
    int n_sites = 2;
    double j_coupling = 1.0;
    double delta = 0.0;
    double field = 0.0;

    // Throws std::domain_error when the parameter set is unsupported:
    // J < 0, n_sites out of range, or delta != 0 with n_sites < 4.
    void validate() const;
};

// The H = H_x + H_zz split. H_zz is diagonal in the computational basis and
// stored as its 2^N diagonal; H_x = -field * sum_n sx_n is implied by params.
struct HamiltonianTerms {
    IsingParams params;
    std::vector<double> zz_diagonal;
};

// Evaluates the literal periodic sums over n = 1..N (wrap-around duplicates
// included, e.g. the doubled N=2 NN bond and the doubled N=4 NNN pairs).
HamiltonianTerms build_terms(const IsingParams& params);

// Dense H = diag(zz) - g * sum_n sx_n. Throws CapacityError above dense_site_limit.
DenseOperator total_hamiltonian(const HamiltonianTerms& terms,
                                int dense_site_limit = kDenseSiteLimit);

struct EigenSystem {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // orthonormal columns, matching order
};

// Spectral decomposition of a Hermitian operator (throws std::domain_error
// if the input is not Hermitian within 1e-12).
EigenSystem eigendecompose(const DenseOperator& h);

// Lowest-eigenvalue eigenvector. Within the (near-)degenerate ground
// subspace the combination maximizing <sum_n sz_n> is selected, and the
// global phase is fixed by making the largest-magnitude amplitude real
// positive. Reproduces the symmetry-broken |up...up> at g = 0.
StateVector ground_state(const EigenSystem& eig);

}  // namespace otoc
