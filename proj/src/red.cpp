#include "cren/red.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>
#include <stdexcept>

namespace cren {

namespace {

void require_pair_state(const ComplexMatrix& rho, QuditDim d, const char* name) {
    const Eigen::Index dim2 = static_cast<Eigen::Index>(d.d) * d.d;
    if (rho.rows() != dim2 || rho.cols() != dim2)
        throw std::invalid_argument(std::string("bell_measure_23: ") + name +
                                    " must be a d^2 x d^2 density matrix");
}

void require_fidelity(double f, const char* name) {
    if (!(f >= 0.0 && f <= 1.0))
        throw std::invalid_argument(std::string(name) + ": fidelities must lie in [0, 1]");
}

}  // namespace

std::vector<REDOutcome> bell_measure_23(const ComplexMatrix& rho12, const ComplexMatrix& rho34,
                                        QuditDim d) {
    require_pair_state(rho12, d, "rho12");
    require_pair_state(rho34, d, "rho34");

    const Eigen::Index dd = d.d;
    const Eigen::Index dim2 = dd * dd;

    // Assemble on subsystems (1,2,3,4), then reorder to (1,4,2,3) so the
    // measured pair sits in the two least significant factors.
    const ComplexMatrix joint = kron(rho12, rho34);
    const SubsystemShape four{dd, dd, dd, dd};
    const ComplexMatrix reordered = permute_subsystems(joint, four, {0, 3, 1, 2});

    std::vector<REDOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(dim2));
    for (int k = 0; k < d.d; ++k)
        for (int l = 0; l < d.d; ++l) {
            const StateVector psi = bell_state(PauliLabel(k, l, d));

            // Partial inner product <Psi|_{23} rho |Psi>_{23}: the unnormalized
            // conditional state, equal to tr_23[(I (x) |Psi><Psi|) rho].
            ComplexMatrix unnorm(dim2, dim2);
            for (Eigen::Index r = 0; r < dim2; ++r)
                for (Eigen::Index c = 0; c < dim2; ++c)
                    unnorm(r, c) =
                        (psi.adjoint() * reordered.block(r * dim2, c * dim2, dim2, dim2) * psi)
                            .value();

            REDOutcome outcome;
            outcome.shift = k;
            outcome.phase = l;
            outcome.probability = unnorm.trace().real();
            outcome.has_state = outcome.probability >= kOutcomeProbabilityFloor;
            if (outcome.has_state) outcome.state = unnorm / outcome.probability;
            outcomes.push_back(std::move(outcome));
        }
    return outcomes;
}

double swapped_fidelity(double F0, double F1, QuditDim d) {
    require_fidelity(F0, "swapped_fidelity");
    require_fidelity(F1, "swapped_fidelity");
    const double d2 = static_cast<double>(d.d) * d.d;
    return (d2 * F0 * F1 - F0 - F1 + 1.0) / (d2 - 1.0);
}

double swap_isotropy_deviation(double F0, double F1, QuditDim d) {
    const ComplexMatrix rho12 = isotropic_state(IsotropicParams(d, F0));
    const ComplexMatrix rho34 = isotropic_state(IsotropicParams(d, F1));
    const ComplexMatrix expected = isotropic_state(IsotropicParams(d, swapped_fidelity(F0, F1, d)));
    const Eigen::Index dim2 = static_cast<Eigen::Index>(d.d) * d.d;
    const ComplexMatrix id = ComplexMatrix::Identity(d.d, d.d);

    double worst = 0.0;
    for (const REDOutcome& outcome : bell_measure_23(rho12, rho34, d)) {
        if (!outcome.has_state) continue;
        // sigma_{k,l} = (I (x) X^k Z^{-l}) sigma_{0,0} (I (x) X^k Z^{-l})^dag: the
        // partial inner product <Psi_{k,l}| carries the conjugate clock phase,
        // so the outcome label (k, l) pairs with the Bell state Psi_{k,-l}.
        const ComplexMatrix rot = kron(
            id, pauli(PauliLabel(outcome.shift, (d.d - outcome.phase) % d.d, d)));
        const ComplexMatrix unrotated = rot.adjoint() * outcome.state * rot;
        worst = std::max(worst, (unrotated - expected).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(outcome.probability - 1.0 / static_cast<double>(dim2)));
    }
    return worst;
}

BoundReport distribution_bound_report(double F0, double F1, QuditDim d, bool dense_check) {
    require_fidelity(F0, "distribution_bound_report");
    require_fidelity(F1, "distribution_bound_report");

    BoundReport report;
    report.d = d.d;
    report.F0 = F0;
    report.F1 = F1;
    report.Fprime = swapped_fidelity(F0, F1, d);
    // Every outcome is locally-unitarily the isotropic state rho_{F'}, so the
    // outcome-averaged CREN collapses to the closed form.
    report.lhs = cren_isotropic(IsotropicParams(d, report.Fprime));
    report.rhs = cren_isotropic(IsotropicParams(d, F0)) * cren_isotropic(IsotropicParams(d, F1));

    if (dense_check && std::abs(distribution_bound_lhs_dense(F0, F1, d) - report.lhs) > 1e-9)
        throw std::runtime_error("distribution_bound_report: analytic and dense routes disagree");

    report.gap = report.rhs - report.lhs;
    report.saturated = report.gap <= 1e-9;
    return report;
}

double distribution_bound_lhs_dense(double F0, double F1, QuditDim d,
                                    const std::optional<ConvexRoofOptions>& roof) {
    const ComplexMatrix rho12 = isotropic_state(IsotropicParams(d, F0));
    const ComplexMatrix rho34 = isotropic_state(IsotropicParams(d, F1));
    const BipartiteCut cut(d.d, d.d);
    double lhs = 0.0;
    int skipped = 0;
    for (const REDOutcome& outcome : bell_measure_23(rho12, rho34, d)) {
        if (!outcome.has_state) {
            ++skipped;
            continue;
        }
        lhs += outcome.probability *
               (roof ? convex_roof_upper_bound(outcome.state, cut, *roof).value
                     : negativity(outcome.state, cut));
    }
    if (skipped > 0)
        std::clog << "distribution_bound_lhs_dense: skipped " << skipped << " zero-probability outcomes\n";
    return lhs;
}

BoundReport dynamics_bound_report(double F0, double F1, QuditDim d) {
    require_fidelity(F0, "dynamics_bound_report");
    require_fidelity(F1, "dynamics_bound_report");

    const DepolarizingChannel channel(d, F1);
    const SubsystemShape pair{d.d, d.d};
    const BipartiteCut cut(d.d, d.d);
    const ComplexMatrix rho0 = isotropic_state(IsotropicParams(d, F0));
    const ComplexMatrix evolved = channel.apply_one_sided(Side::right, rho0, pair);

    const StateVector phi = max_entangled_state(d);

    BoundReport report;
    report.d = d.d;
    report.F0 = F0;
    report.F1 = F1;
    report.Fprime = (phi.adjoint() * evolved * phi).value().real();
    report.lhs = negativity(evolved, cut);  // evolved state is isotropic: negativity = CREN
    report.rhs = negativity(channel.choi_state(), cut) * cren_isotropic(IsotropicParams(d, F0));
    report.gap = report.rhs - report.lhs;
    report.saturated = report.gap <= 1e-9;
    return report;
}

std::vector<SaturationPoint> saturation_boundary_scan(QuditDim d, int grid_resolution) {
    if (grid_resolution < 11)
        throw std::invalid_argument("saturation_boundary_scan: grid resolution must be >= 11");

    std::set<double> values;
    for (int i = 0; i < grid_resolution; ++i)
        values.insert(static_cast<double>(i) / (grid_resolution - 1));
    values.insert(1.0 / d.d);  // PPT boundary probe

    std::vector<SaturationPoint> points;
    points.reserve(values.size() * values.size());
    for (double f0 : values)
        for (double f1 : values) {
            const BoundReport report = distribution_bound_report(f0, f1, d);
            points.push_back({f0, f1, report.gap});
        }
    return points;
}

}  // namespace cren
