#pragma once

#include "cren/tensor.hpp"

namespace cren {

/// Dimension of one qudit.
struct QuditDim {
    int d;
    explicit QuditDim(int dim);
};

/// omega^e with omega = exp(2*pi*i/d); the exponent is reduced mod d before
/// the power is formed by repeated multiplication of the principal root.
Complex omega_power(QuditDim d, long long exponent);

/// Label (k, l) of the generalized Pauli X^k Z^l: k shifts |j> -> |j+k mod d>,
/// l applies the clock phase omega^{jl}. Also labels the Bell state it
/// generates from |Phi+>.
struct PauliLabel {
    int shift;  // k
    int phase;  // l
    QuditDim dim;
    PauliLabel(int k, int l, QuditDim d);
};

/// The d x d unitary X^k Z^l, X = sum_j |j+1 mod d><j|, Z = sum_j omega^j |j><j|.
ComplexMatrix pauli(const PauliLabel& label);

/// |Phi+> = (1/sqrt d) sum_j |jj>.
StateVector max_entangled_state(QuditDim d);

/// Generalized Bell state |Psi_{k,l}> = (1/sqrt d) sum_j omega^{jl} |j, j+k mod d>,
/// equal to (I (x) X^k Z^l)|Phi+>.
StateVector bell_state(const PauliLabel& label);

struct IsotropicParams {
    QuditDim d;
    double fidelity;  // F = <Phi+| rho_F |Phi+>
    IsotropicParams(QuditDim dim, double F);
};

/// rho_F = F |Phi+><Phi+| + (1-F)/(d^2-1) (I (x) I - |Phi+><Phi+|).
ComplexMatrix isotropic_state(const IsotropicParams& p);

}  // namespace cren
