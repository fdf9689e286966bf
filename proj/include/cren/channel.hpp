#pragma once

#include "cren/qudit.hpp"
#include "cren/tensor.hpp"

namespace cren {

enum class Side { left, right };

/// Generalized depolarizing channel with fidelity F:
///   rho |-> F rho + (1-F)/(d^2-1) sum_{(j,k) != (0,0)} X^j Z^k rho (X^j Z^k)^dagger.
class DepolarizingChannel {
public:
    DepolarizingChannel(QuditDim d, double fidelity);

    int dim() const { return d_.d; }
    double fidelity() const { return fidelity_; }

    /// Apply to a d x d state by explicit Kraus summation over all d^2 Paulis.
    ComplexMatrix apply(const ComplexMatrix& rho) const;

    /// Apply to one factor of a bipartite state: Side::left is $_F (x) I,
    /// Side::right is I (x) $_F. The acted factor must have dimension d.
    ComplexMatrix apply_one_sided(Side side, const ComplexMatrix& rho,
                                  const SubsystemShape& shape) const;

    /// Choi state (I (x) $_F)(|Phi+><Phi+|); equals the isotropic state rho_F.
    ComplexMatrix choi_state() const;

private:
    QuditDim d_;
    double fidelity_;
};

/// Entrywise deviation max |$_F(P rho P^dag) - P $_F(rho) P^dag| for the
/// Pauli-covariance identity; zero up to round-off for every input.
double check_pauli_covariance(const DepolarizingChannel& ch, const ComplexMatrix& rho,
                              const PauliLabel& label);

}  // namespace cren
