#include "otoc/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace otoc {

double StateVector::norm() const {
    double acc = 0;
    for (const auto& a : amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
}

StateVector basis_state(int n_sites, std::uint64_t bit_pattern) {
    if (n_sites < 1) throw std::domain_error("basis_state: n_sites must be >= 1");
    if (n_sites > 30)
        throw std::domain_error("basis_state: n_sites " + std::to_string(n_sites) +
                                " exceeds the addressable maximum 30");
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    if (bit_pattern >= dim)
        throw std::domain_error("basis_state: bit_pattern " + std::to_string(bit_pattern) +
                                " out of range [0, " + std::to_string(dim) + ")");
    StateVector s;
    s.n_sites = n_sites;
    s.amplitudes.assign(dim, complexd{0, 0});
    s.amplitudes[bit_pattern] = complexd{1, 0};
    return s;
}

namespace {

void check_site(const StateVector& state, int site, const char* who) {
    if (site < 1 || site > state.n_sites)
        throw std::domain_error(std::string(who) + ": site " + std::to_string(site) +
                                " out of range [1, " + std::to_string(state.n_sites) + "]");
}

}  // namespace

void apply_site_pauli_inplace(StateVector& state, int site, PauliAxis axis) {
    check_site(state, site, "apply_site_pauli");
    const std::uint64_t mask = site_mask(state.n_sites, site);
    auto& amp = state.amplitudes;
    const std::uint64_t dim = amp.size();
    switch (axis) {
        case PauliAxis::X:
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & mask) == 0) std::swap(amp[i], amp[i | mask]);
            break;
        case PauliAxis::Y:
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & mask) == 0) {
                    const std::uint64_t j = i | mask;
                    const complexd a = amp[i], b = amp[j];
                    amp[i] = complexd{0, -1} * b;  // sy|1> = -i|0>
                    amp[j] = complexd{0, 1} * a;   // sy|0> = +i|1>
                }
            break;
        case PauliAxis::Z:
            for (std::uint64_t i = 0; i < dim; ++i)
                if (i & mask) amp[i] = -amp[i];
            break;
    }
}

StateVector apply_site_pauli(const StateVector& state, int site, PauliAxis axis) {
    StateVector out = state;
    apply_site_pauli_inplace(out, site, axis);
    return out;
}

complexd inner(const StateVector& a, const StateVector& b) {
    if (a.n_sites != b.n_sites || a.dim() != b.dim())
        throw std::domain_error("inner: dimension mismatch (" + std::to_string(a.n_sites) +
                                " vs " + std::to_string(b.n_sites) + " sites)");
    complexd acc{0, 0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return acc;
}

double expect_site_pauli(const StateVector& state, int site, PauliAxis axis) {
    check_site(state, site, "expect_site_pauli");
    const complexd raw = inner(state, apply_site_pauli(state, site, axis));
    if (std::abs(raw.imag()) >= 1e-10)
        throw std::logic_error("expect_site_pauli: non-real expectation value, Im = " +
                               std::to_string(raw.imag()));
    return raw.real();
}

DenseOperator::DenseOperator(Eigen::MatrixXcd m) : entries(std::move(m)) {
    if (entries.rows() != entries.cols())
        throw std::domain_error("DenseOperator: matrix must be square");
    const Eigen::Index d = entries.rows();
    if (d < 1 || (d & (d - 1)) != 0)
        throw std::domain_error("DenseOperator: dimension must be a power of two, got " +
                                std::to_string(d));
}

StateVector apply_dense(const DenseOperator& op, const StateVector& state) {
    if (op.dim() != static_cast<Eigen::Index>(state.dim()))
        throw std::domain_error("apply_dense: dimension mismatch (" + std::to_string(op.dim()) +
                                " vs " + std::to_string(state.dim()) + ")");
    StateVector out;
    out.n_sites = state.n_sites;
    out.amplitudes.resize(state.dim());
    Eigen::Map<const Eigen::VectorXcd> in(state.amplitudes.data(), state.dim());
    Eigen::Map<Eigen::VectorXcd> result(out.amplitudes.data(), out.amplitudes.size());
    result = op.entries * in;
    return out;
}

}  // namespace otoc
