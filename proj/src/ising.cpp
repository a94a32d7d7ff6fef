#include "otoc/ising.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

#include "otoc/errors.hpp"

namespace otoc {

void IsingParams::validate() const {
    if (j_coupling < 0)
        throw std::domain_error("IsingParams: antiferromagnetic J < 0 is unsupported");
    if (n_sites > kMaxSites)
        throw std::domain_error("IsingParams: n_sites " + std::to_string(n_sites) +
                                " exceeds the supported maximum " + std::to_string(kMaxSites));
    if (delta != 0.0) {
        if (n_sites < 4)
            throw std::domain_error(
                "IsingParams: next-nearest-neighbor coupling needs n_sites >= 4 (periodic "
                "n+2 wraps onto n or its neighbor below that)");
    } else if (j_coupling != 0.0) {
        if (n_sites < 2) throw std::domain_error("IsingParams: coupled chain needs n_sites >= 2");
    } else if (n_sites < 1) {
        throw std::domain_error("IsingParams: n_sites must be >= 1");
    }
}

HamiltonianTerms build_terms(const IsingParams& params) {
    params.validate();
    const int n = params.n_sites;
    const std::uint64_t dim = std::uint64_t{1} << n;

    HamiltonianTerms terms;
    terms.params = params;
    terms.zz_diagonal.resize(dim);

    // z_s = +1 for bit 0 (up), -1 for bit 1; literal sums over n = 1..N.
    std::vector<int> z(n);
    for (std::uint64_t b = 0; b < dim; ++b) {
        for (int s = 0; s < n; ++s) z[s] = (b >> (n - 1 - s)) & 1 ? -1 : 1;
        double acc = 0;
        for (int s = 0; s < n; ++s) {
            acc += params.j_coupling * z[s] * z[(s + 1) % n];
            acc += params.delta * z[s] * z[(s + 2) % n];
        }
        terms.zz_diagonal[b] = -acc;
    }
    return terms;
}

DenseOperator total_hamiltonian(const HamiltonianTerms& terms, int dense_site_limit) {
    const int n = terms.params.n_sites;
    if (n > dense_site_limit)
        throw CapacityError("total_hamiltonian: dense matrices are limited to " +
                            std::to_string(dense_site_limit) +
                            " sites; use the factored (Trotter) path for n_sites = " +
                            std::to_string(n));
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t b = 0; b < dim; ++b) h(b, b) = terms.zz_diagonal[b];
    const double g = terms.params.field;
    if (g != 0.0) {
        for (std::uint64_t b = 0; b < dim; ++b)
            for (int s = 1; s <= n; ++s) h(b ^ site_mask(n, s), b) += -g;
    }
    return DenseOperator(std::move(h));
}

EigenSystem eigendecompose(const DenseOperator& h) {
    const double herm_defect = (h.entries - h.entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-12)
        throw std::domain_error("eigendecompose: operator is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed to converge");
    EigenSystem out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

StateVector ground_state(const EigenSystem& eig) {
    const Eigen::Index dim = eig.eigenvectors.rows();
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(dim))));

    // Collect the (near-)degenerate ground subspace.
    const double e0 = eig.eigenvalues(0);
    Eigen::Index k = 1;
    while (k < dim && eig.eigenvalues(k) - e0 <= 1e-9) ++k;

    Eigen::VectorXcd vec;
    if (k == 1) {
        vec = eig.eigenvectors.col(0);
    } else {
        // Diagonalize sum_n sz_n restricted to the subspace and take the
        // combination with the largest magnetization.
        Eigen::VectorXd sz_total(dim);
        for (Eigen::Index b = 0; b < dim; ++b) {
            int pop = 0;
            for (int s = 0; s < n; ++s) pop += (b >> s) & 1;
            sz_total(b) = n - 2 * pop;
        }
        Eigen::MatrixXcd sub = eig.eigenvectors.leftCols(k).adjoint() *
                               sz_total.asDiagonal() * eig.eigenvectors.leftCols(k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub);
        vec = eig.eigenvectors.leftCols(k) * solver.eigenvectors().col(k - 1);
    }

    // Phase convention: largest-magnitude amplitude real positive.
    Eigen::Index imax = 0;
    vec.cwiseAbs().maxCoeff(&imax);
    const complexd a = vec(imax);
    if (std::abs(a) > 0) vec *= std::conj(a) / std::abs(a);
    vec.normalize();

    StateVector out;
    out.n_sites = n;
    out.amplitudes.assign(vec.data(), vec.data() + dim);
    return out;
}

}  // namespace otoc
