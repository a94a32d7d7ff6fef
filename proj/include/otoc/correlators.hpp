#pragma once

#include <span>

#include "otoc/evolution.hpp"

namespace otoc {

// Single-site Hermitian operator choice for W / V.
struct OperatorSpec {
    int site = 1;
    PauliAxis axis = PauliAxis::Z;
};

struct CorrelatorSample {
    double t = 0;
    complexd f_value{1, 0};
    complexd chi_value{1, 0};
};

// F(t) = <psi(t)| sz_1 |psi(t)>, psi(t) = e^{iHt} sz_1 e^{-iHt} psi0.
// Requires psi0 to be a +1 eigenstate of sz_1 (this is what makes the
// single-state route equal to the four-point function); otherwise throws
// std::domain_error pointing at otoc_general.
complexd otoc_quench(const StateVector& psi0, const Propagator& prop, double t);

// O(t) = <W(t) V W(t) V> over psi0, via the two-branch state overlap
// <V W(t) psi0 | W(t) V psi0>. Works for arbitrary normalized psi0.
complexd otoc_general(const StateVector& psi0, OperatorSpec w, OperatorSpec v,
                      const Propagator& prop, double t);

// chi(t) = <sz_1(t) sz_1> over psi0. For a +1 sz_1 eigenstate this reduces
// to <Psi(t)| sz_1 |Psi(t)> with Psi(t) = e^{-iHt} psi0.
complexd autocorrelation(const StateVector& psi0, const Propagator& prop, double t);

enum class AverageMode { Trapezoid, PointMean };
enum class Channel { F, Chi };

// Long-time average of the real part of the selected channel.
// Trapezoid: trapezoidal (1/T) integral over the sampled window;
// PointMean: arithmetic mean of the sampled points (the discrete
// experimental grid). Needs >= 2 samples at strictly increasing t.
double long_time_average(std::span<const CorrelatorSample> samples, AverageMode mode,
                         Channel channel = Channel::F);
double long_time_average(std::span<const double> times, std::span<const double> values,
                         AverageMode mode);

enum class AncillaPair { Otoc, Autocorrelation };

// Ancilla interferometer: prepare |0> (x) psi_init on N+1 sites, Hadamard
// the ancilla, apply the controlled pair
//   U1 = |1><1| (x) sz_1 sz_1(t),  U2 = |0><0| (x) sz_1(t) sz_1    (Otoc)
//   U1 = |1><1| (x) sz_1(t),       U2 = |0><0| (x) sz_1            (Autocorrelation)
// and return <sx> of the ancilla, which equals Re F(t) / Re chi(t).
double ancilla_real_part(const StateVector& psi_init, AncillaPair pair,
                         const Propagator& prop, double t);

}  // namespace otoc
