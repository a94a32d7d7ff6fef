#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace otoc {

using complexd = std::complex<double>;

enum class PauliAxis { X, Y, Z };

// Pure state of an N-site spin-1/2 chain: 2^N complex amplitudes.
//
// Bit convention: site 1 is the most significant bit of the basis index;
// bit value 0 is |up> (sigma^z eigenvalue +1). The fully polarized state
// |up up ... up> is therefore basis index 0.
struct StateVector {
    int n_sites = 0;
    std::vector<complexd> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

// Bit mask selecting `site` (1-based) in a basis index.
inline std::uint64_t site_mask(int n_sites, int site) {
    return std::uint64_t{1} << (n_sites - site);
}

// Computational basis state |bit_pattern> on n_sites spins.
StateVector basis_state(int n_sites, std::uint64_t bit_pattern);

// sigma^axis_site |state>
StateVector apply_site_pauli(const StateVector& state, int site, PauliAxis axis);
void apply_site_pauli_inplace(StateVector& state, int site, PauliAxis axis);

// <a|b>
complexd inner(const StateVector& a, const StateVector& b);

// Re <state| sigma^axis_site |state>; the raw imaginary part must vanish.
double expect_site_pauli(const StateVector& state, int site, PauliAxis axis);

// Explicit 2^N x 2^N complex matrix.
struct DenseOperator {
    Eigen::MatrixXcd entries;

    DenseOperator() = default;
    explicit DenseOperator(Eigen::MatrixXcd m);
    Eigen::Index dim() const { return entries.rows(); }
};

// op |state>
StateVector apply_dense(const DenseOperator& op, const StateVector& state);

}  // namespace otoc
