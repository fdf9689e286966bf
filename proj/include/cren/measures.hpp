#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cren/qudit.hpp"
#include "cren/tensor.hpp"

namespace cren {

/// Bipartition of a composite space, factor A first in tensor order.
/// The normalization dimension of the entanglement measures is min(dA, dB).
struct BipartiteCut {
    int dim_a;
    int dim_b;

    BipartiteCut(int a, int b);

    int min_dim() const { return dim_a < dim_b ? dim_a : dim_b; }
    Eigen::Index total_dim() const { return static_cast<Eigen::Index>(dim_a) * dim_b; }
    SubsystemShape shape() const { return SubsystemShape{dim_a, dim_b}; }
};

/// Pure-state CREN ((tr sqrt(rho_1))^2 - 1)/(d - 1), rho_1 the marginal on the
/// smaller factor, d = min(dA, dB). Equals the negativity of |phi><phi|.
double cren_pure(const StateVector& phi, const BipartiteCut& cut);

/// (||rho^{T_B}||_1 - 1)/(d - 1), clipped to 0 against round-off.
double negativity(const ComplexMatrix& rho, const BipartiteCut& cut);

/// Closed-form CREN of the isotropic state: max{(dF - 1)/(d - 1), 0}.
double cren_isotropic(const IsotropicParams& p);

/// Ensemble {p_k, |phi_k>} realizing a mixed state, together with the isometry
/// that produced it from the state's eigen-ensemble.
struct EnsembleDecomposition {
    Eigen::VectorXd weights;
    std::vector<StateVector> states;
    ComplexMatrix isometry;  // m x r, columns orthonormal
};

/// Eigenvalues below this are treated as zero when ranking a density matrix.
inline constexpr double kRankCutoff = 1e-10;

/// Schrodinger-HJW realization: sqrt(p_k)|phi_k> = sum_j V[k][j] sqrt(lambda_j)|e_j>.
/// The isometry must have exactly rank(rho) columns (eigenvalues above cutoff).
EnsembleDecomposition realize_ensemble(const HermitianEigensystem& eig,
                                       const ComplexMatrix& isometry);

struct ConvexRoofOptions {
    int ensemble_size = 0;     // members m; 0 selects the default m = rank^2
    int restarts = 20;
    int max_iterations = 600;  // per-restart budget
    std::uint64_t seed = 0;
};

struct ConvexRoofResult {
    double value;  // best ensemble average found; an upper bound on CREN
    EnsembleDecomposition best;
    int best_restart = 0;
    bool converged = false;  // false: iteration budget exhausted on the best restart
};

/// Convex-roof upper bound min_V sum_k p_k N(phi_k) over ensembles generated by
/// isometries V = exp(A)[:, :r], A anti-Hermitian, via multi-start local search.
/// Deterministic for a fixed seed (one counter-based stream per restart).
ConvexRoofResult convex_roof_upper_bound(const ComplexMatrix& rho, const BipartiteCut& cut,
                                         const ConvexRoofOptions& opts = {});

namespace detail {
/// Search objective sum_k p_k N(phi_k) and its analytic gradient at the given
/// exp(A) parameters (m^2 reals). Exposed so tests can cross-check the
/// gradient against finite differences.
std::pair<double, Eigen::VectorXd> roof_objective(const ComplexMatrix& rho,
                                                  const BipartiteCut& cut, int members,
                                                  const Eigen::VectorXd& params);
}  // namespace detail

}  // namespace cren
