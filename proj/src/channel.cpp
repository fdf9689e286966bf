#include "cren/channel.hpp"

#include <stdexcept>

namespace cren {

DepolarizingChannel::DepolarizingChannel(QuditDim d, double fidelity)
    : d_(d), fidelity_(fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
        throw std::invalid_argument("DepolarizingChannel: fidelity must lie in [0, 1]");
}

ComplexMatrix DepolarizingChannel::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != d_.d || rho.cols() != d_.d)
        throw std::invalid_argument("DepolarizingChannel::apply: dimension mismatch");

    const double w = (1.0 - fidelity_) / (static_cast<double>(d_.d) * d_.d - 1.0);
    ComplexMatrix out = fidelity_ * rho;
    for (int j = 0; j < d_.d; ++j)
        for (int k = 0; k < d_.d; ++k) {
            if (j == 0 && k == 0) continue;
            const ComplexMatrix p = pauli(PauliLabel(j, k, d_));
            out.noalias() += w * (p * rho * p.adjoint());
        }
    return out;
}

ComplexMatrix DepolarizingChannel::apply_one_sided(Side side, const ComplexMatrix& rho,
                                                   const SubsystemShape& shape) const {
    if (shape.factor_count() != 2)
        throw std::invalid_argument("apply_one_sided: shape must be bipartite");
    const Eigen::Index acted = shape.dims[side == Side::left ? 0 : 1];
    const Eigen::Index other = shape.dims[side == Side::left ? 1 : 0];
    if (acted != d_.d)
        throw std::invalid_argument("apply_one_sided: acted factor dimension mismatch");
    if (rho.rows() != shape.total_dim() || rho.cols() != shape.total_dim())
        throw std::invalid_argument("apply_one_sided: shape/state mismatch");

    const ComplexMatrix id = ComplexMatrix::Identity(other, other);
    const double w = (1.0 - fidelity_) / (static_cast<double>(d_.d) * d_.d - 1.0);
    ComplexMatrix out = fidelity_ * rho;
    for (int j = 0; j < d_.d; ++j)
        for (int k = 0; k < d_.d; ++k) {
            if (j == 0 && k == 0) continue;
            const ComplexMatrix p = pauli(PauliLabel(j, k, d_));
            const ComplexMatrix kraus = (side == Side::left) ? kron(p, id) : kron(id, p);
            out.noalias() += w * (kraus * rho * kraus.adjoint());
        }
    return out;
}

ComplexMatrix DepolarizingChannel::choi_state() const {
    const StateVector phi = max_entangled_state(d_);
    const ComplexMatrix proj = phi * phi.adjoint();
    return apply_one_sided(Side::right, proj, SubsystemShape{d_.d, d_.d});
}

double check_pauli_covariance(const DepolarizingChannel& ch, const ComplexMatrix& rho,
                              const PauliLabel& label) {
    if (rho.rows() != ch.dim() || rho.cols() != ch.dim())
        throw std::invalid_argument("check_pauli_covariance: dimension mismatch");
    const ComplexMatrix p = pauli(label);
    const ComplexMatrix lhs = ch.apply((p * rho * p.adjoint()).eval());
    const ComplexMatrix rhs = p * ch.apply(rho) * p.adjoint();
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace cren
