#pragma once

#include <optional>
#include <vector>

#include "cren/channel.hpp"
#include "cren/measures.hpp"
#include "cren/qudit.hpp"
#include "cren/tensor.hpp"

namespace cren {

/// Outcomes with probability below this carry no conditional state.
inline constexpr double kOutcomeProbabilityFloor = 1e-14;

/// One branch of the generalized Bell measurement on the middle pair:
/// labels (k, l), outcome probability, and the conditional state on the
/// outer pair (subsystems 1 and 4).
struct REDOutcome {
    int shift;           // k
    int phase;           // l
    double probability;  // Q_{k,l}
    ComplexMatrix state; // sigma_{k,l}, d^2 x d^2; empty when !has_state
    bool has_state;
};

/// Measure subsystems 2,3 of rho12 (x) rho34 in the generalized Bell basis.
/// Returns all d^2 outcomes in (k, l) row order.
std::vector<REDOutcome> bell_measure_23(const ComplexMatrix& rho12, const ComplexMatrix& rho34,
                                        QuditDim d);

/// Fidelity of the post-measurement state when both inputs are isotropic:
/// F' = (d^2 F0 F1 - F0 - F1 + 1)/(d^2 - 1).
double swapped_fidelity(double F0, double F1, QuditDim d);

/// Worst entrywise deviation between the simulated measurement branches and
/// the isotropic state rho_{F'}: sigma_{0,0} directly, every other sigma_{k,l}
/// after undoing its local Pauli rotation I (x) X^k Z^{-l}.
double swap_isotropy_deviation(double F0, double F1, QuditDim d);

/// Two sides of the distribution bound for one parameter point.
struct BoundReport {
    int d;
    double F0;
    double F1;
    double Fprime;
    double lhs;  // sum_kl Q_{k,l} N_c(sigma_{k,l})
    double rhs;  // N_c(rho_F0) N_c(rho_F1)
    double gap;  // rhs - lhs, >= 0 up to round-off
    bool saturated;
};

/// Distribution bound via the measurement picture. With dense_check the
/// analytic lhs is recomputed from a full 4-qudit simulation; disagreement
/// beyond 1e-9 throws.
BoundReport distribution_bound_report(double F0, double F1, QuditDim d, bool dense_check = false);

/// Dense-simulation route for the bound's left-hand side: simulate the Bell
/// measurement on isotropic inputs and sum Q_{k,l} * negativity(sigma_{k,l})
/// (each outcome is locally-unitarily isotropic, where negativity equals
/// CREN). Passing roof options scores the outcomes with the convex-roof
/// optimizer instead, as a slower cross-check of that shortcut.
double distribution_bound_lhs_dense(double F0, double F1, QuditDim d,
                                    const std::optional<ConvexRoofOptions>& roof = std::nullopt);

/// Same bound via the channel picture: lhs from the negativity of
/// (I (x) $_{F1})(rho_{F0}), rhs through the Choi state of $_{F1}.
/// Agrees field-by-field with distribution_bound_report.
BoundReport dynamics_bound_report(double F0, double F1, QuditDim d);

struct SaturationPoint {
    double F0;
    double F1;
    double gap;
};

/// Evaluate the bound gap over an inclusive uniform grid (plus the off-grid
/// probe F = 1/d on each axis). Resolution must be at least 11.
std::vector<SaturationPoint> saturation_boundary_scan(QuditDim d, int grid_resolution);

}  // namespace cren
