#include "cren/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "cren/channel.hpp"
#include "cren/measures.hpp"
#include "cren/qudit.hpp"
#include "cren/red.hpp"
#include "cren/tensor.hpp"

namespace cren {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_g(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

std::vector<double> fidelity_grid(int points, int d) {
    std::set<double> values;
    for (int i = 0; i < points; ++i) values.insert(static_cast<double>(i) / (points - 1));
    values.insert(1.0 / d);
    return {values.begin(), values.end()};
}

ComplexMatrix random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

CheckResult check_pauli_algebra(QuditDim d) {
    const ComplexMatrix id = ComplexMatrix::Identity(d.d, d.d);
    const ComplexMatrix x = pauli(PauliLabel(1, 0, d));
    const ComplexMatrix z = pauli(PauliLabel(0, 1, d));
    double worst = ((z * x) - omega_power(d, 1) * (x * z)).cwiseAbs().maxCoeff();
    for (int k = 0; k < d.d; ++k)
        for (int l = 0; l < d.d; ++l) {
            const ComplexMatrix p = pauli(PauliLabel(k, l, d));
            worst = std::max(worst, (p.adjoint() * p - id).cwiseAbs().maxCoeff());
        }
    return {"pauli-algebra d=" + std::to_string(d.d), worst, "unitarity and ZX = wXZ"};
}

CheckResult check_bell_basis(QuditDim d) {
    const Eigen::Index dim2 = static_cast<Eigen::Index>(d.d) * d.d;
    ComplexMatrix gram(dim2, dim2);
    ComplexMatrix completeness = ComplexMatrix::Zero(dim2, dim2);
    std::vector<StateVector> basis;
    basis.reserve(dim2);
    for (int k = 0; k < d.d; ++k)
        for (int l = 0; l < d.d; ++l) basis.push_back(bell_state(PauliLabel(k, l, d)));
    for (Eigen::Index i = 0; i < dim2; ++i) {
        for (Eigen::Index j = 0; j < dim2; ++j) gram(i, j) = basis[i].dot(basis[j]);
        completeness += basis[i] * basis[i].adjoint();
    }
    const ComplexMatrix id = ComplexMatrix::Identity(dim2, dim2);
    const double worst = std::max((gram - id).cwiseAbs().maxCoeff(),
                                  (completeness - id).cwiseAbs().maxCoeff());
    return {"bell-basis d=" + std::to_string(d.d), worst, "orthonormality and completeness"};
}

CheckResult check_choi_identity(QuditDim d, int grid) {
    const SubsystemShape pair{d.d, d.d};
    const StateVector phi = max_entangled_state(d);
    const ComplexMatrix proj = phi * phi.adjoint();
    double worst = 0.0;
    for (double f : fidelity_grid(grid, d.d)) {
        const DepolarizingChannel ch(d, f);
        const ComplexMatrix left = ch.apply_one_sided(Side::left, proj, pair);
        const ComplexMatrix right = ch.apply_one_sided(Side::right, proj, pair);
        const ComplexMatrix iso = isotropic_state(IsotropicParams(d, f));
        worst = std::max({worst, (left - iso).cwiseAbs().maxCoeff(),
                          (right - iso).cwiseAbs().maxCoeff(),
                          (left - right).cwiseAbs().maxCoeff()});
    }
    return {"choi-identity d=" + std::to_string(d.d), worst,
            "($_F x I)(Phi+) = (I x $_F)(Phi+) = rho_F"};
}

CheckResult check_pauli_covariance_random(QuditDim d, std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(d.d) * 0x9e3779b97f4a7c15ULL));
    std::uniform_int_distribution<int> label(0, d.d - 1);
    std::uniform_real_distribution<double> fid(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const DepolarizingChannel ch(d, fid(rng));
        const ComplexMatrix rho = random_density(d.d, rng);
        worst = std::max(worst,
                         check_pauli_covariance(ch, rho, PauliLabel(label(rng), label(rng), d)));
    }
    return {"pauli-covariance d=" + std::to_string(d.d), worst,
            std::to_string(trials) + " random (rho, P) trials"};
}

CheckResult check_isotropic_cren(QuditDim d) {
    double worst = 0.0;
    for (double f : fidelity_grid(21, d.d)) {
        const IsotropicParams p(d, f);
        worst = std::max(worst,
                         std::abs(negativity(isotropic_state(p), BipartiteCut(d.d, d.d)) -
                                  cren_isotropic(p)));
    }
    return {"isotropic-cren d=" + std::to_string(d.d), worst,
            "negativity vs closed form, 21-point grid + 1/d"};
}

CheckResult check_swap_isotropy_dense(QuditDim d) {
    double worst = 0.0;
    const StateVector phi = max_entangled_state(d);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double f0 = i / 4.0;
            const double f1 = j / 4.0;
            worst = std::max(worst, swap_isotropy_deviation(f0, f1, d));
            // independent fidelity probe on the (0,0) branch
            const auto outcomes =
                bell_measure_23(isotropic_state(IsotropicParams(d, f0)),
                                isotropic_state(IsotropicParams(d, f1)), d);
            double total = 0.0;
            for (const auto& o : outcomes) total += o.probability;
            worst = std::max(worst, std::abs(total - 1.0));
            if (outcomes.front().has_state) {
                const double measured =
                    (phi.adjoint() * outcomes.front().state * phi).value().real();
                worst = std::max(worst, std::abs(measured - swapped_fidelity(f0, f1, d)));
            }
        }
    return {"swap-isotropy d=" + std::to_string(d.d), worst,
            "4-qudit simulation vs F' map, 5x5 grid"};
}

struct DistributionBoundScan {
    double inequality = 0.0;   // max(0, -gap)
    double boundary = 0.0;     // max gap where saturation is expected
    double min_interior = kInf;
};

DistributionBoundScan scan_distribution_bound(QuditDim d, int grid) {
    DistributionBoundScan scan;
    const double inv_d = 1.0 / d.d;
    for (const SaturationPoint& pt : saturation_boundary_scan(d, grid)) {
        scan.inequality = std::max(scan.inequality, -pt.gap);
        const bool boundary = pt.F0 >= 1.0 - 1e-12 || pt.F1 >= 1.0 - 1e-12 ||
                              pt.F0 <= inv_d + 1e-12 || pt.F1 <= inv_d + 1e-12;
        if (boundary)
            scan.boundary = std::max(scan.boundary, pt.gap);
        else
            scan.min_interior = std::min(scan.min_interior, pt.gap);
    }
    return scan;
}

CheckResult check_distribution_route_agreement(QuditDim d, int grid) {
    double worst = 0.0;
    for (double f0 : fidelity_grid(grid, d.d))
        for (double f1 : fidelity_grid(grid, d.d))
            worst = std::max(worst, std::abs(distribution_bound_lhs_dense(f0, f1, d) -
                                             distribution_bound_report(f0, f1, d).lhs));
    return {"distribution-route-agreement d=" + std::to_string(d.d), worst,
            "dense vs analytic lhs"};
}

CheckResult check_dynamics_equivalence(QuditDim d, int grid) {
    double worst = 0.0;
    for (double f0 : fidelity_grid(grid, d.d))
        for (double f1 : fidelity_grid(grid, d.d)) {
            const BoundReport thm = distribution_bound_report(f0, f1, d);
            const BoundReport cor = dynamics_bound_report(f0, f1, d);
            worst = std::max({worst, std::abs(thm.Fprime - cor.Fprime),
                              std::abs(thm.lhs - cor.lhs), std::abs(thm.rhs - cor.rhs),
                              std::abs(thm.gap - cor.gap)});
        }
    return {"dynamics-equivalence d=" + std::to_string(d.d), worst,
            "measurement vs channel route, field-by-field"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
    std::vector<CheckResult> results;
    for (int dim : config.dims) {
        const QuditDim d(dim);
        results.push_back(check_pauli_algebra(d));
        results.push_back(check_bell_basis(d));
        results.push_back(check_choi_identity(d, config.grid));
        results.push_back(check_pauli_covariance_random(d, config.seed, 100));
        results.push_back(check_isotropic_cren(d));

        const DistributionBoundScan scan = scan_distribution_bound(d, std::max(config.grid, 11));
        results.push_back({"distribution-inequality d=" + std::to_string(dim), scan.inequality,
                           "max(0, lhs - rhs) over the grid"});
        results.push_back({"distribution-saturation d=" + std::to_string(dim), scan.boundary,
                           "gap on the F=1 edges and F <= 1/d region"});
        results.push_back({"distribution-interior d=" + std::to_string(dim),
                           scan.min_interior > 1e-9 ? 0.0 : kInf,
                           "min interior gap " + format_g(scan.min_interior)});

        results.push_back(check_dynamics_equivalence(d, config.grid));

        const bool dense_allowed = dim <= 4 || config.slow;
        if (dense_allowed) {
            results.push_back(check_swap_isotropy_dense(d));
            results.push_back(check_distribution_route_agreement(d, config.grid));
        }
    }
    return results;
}

}  // namespace cren
