#include "cren/qudit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cren {

QuditDim::QuditDim(int dim) : d(dim) {
    if (dim < 2) throw std::invalid_argument("QuditDim: dimension must be >= 2");
}

Complex omega_power(QuditDim d, long long exponent) {
    long long e = exponent % d.d;
    if (e < 0) e += d.d;
    const double angle = 2.0 * std::numbers::pi / d.d;
    const Complex root(std::cos(angle), std::sin(angle));
    Complex w(1.0, 0.0);
    for (long long i = 0; i < e; ++i) w *= root;
    return w;
}

PauliLabel::PauliLabel(int k, int l, QuditDim d) : shift(k), phase(l), dim(d) {
    if (k < 0 || k >= d.d || l < 0 || l >= d.d)
        throw std::invalid_argument("PauliLabel: exponents must lie in [0, d-1]");
}

ComplexMatrix pauli(const PauliLabel& label) {
    const int d = label.dim.d;
    // X^k Z^l |j> = omega^{jl} |j+k mod d>
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j)
        p((j + label.shift) % d, j) = omega_power(label.dim, static_cast<long long>(j) * label.phase);
    return p;
}

StateVector max_entangled_state(QuditDim d) {
    return bell_state(PauliLabel(0, 0, d));
}

StateVector bell_state(const PauliLabel& label) {
    const int d = label.dim.d;
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        const int m = (j + label.shift) % d;
        psi(static_cast<Eigen::Index>(j) * d + m) =
            amp * omega_power(label.dim, static_cast<long long>(j) * label.phase);
    }
    return psi;
}

IsotropicParams::IsotropicParams(QuditDim dim, double F) : d(dim), fidelity(F) {
    if (!(F >= 0.0 && F <= 1.0))
        throw std::invalid_argument("IsotropicParams: fidelity must lie in [0, 1]");
}

ComplexMatrix isotropic_state(const IsotropicParams& p) {
    const Eigen::Index dim2 = static_cast<Eigen::Index>(p.d.d) * p.d.d;
    const StateVector phi = max_entangled_state(p.d);
    const ComplexMatrix proj = phi * phi.adjoint();
    const double rest = (1.0 - p.fidelity) / (dim2 - 1.0);
    return p.fidelity * proj + rest * (ComplexMatrix::Identity(dim2, dim2) - proj);
}

}  // namespace cren
