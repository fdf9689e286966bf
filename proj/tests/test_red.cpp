#include <doctest.h>

#include <cmath>

#include "cren/channel.hpp"
#include "cren/measures.hpp"
#include "cren/qudit.hpp"
#include "cren/red.hpp"
#include "cren/tensor.hpp"
#include "test_support.hpp"

using namespace cren;
using namespace cren::test;

namespace {

struct NaiveOutcome {
    double probability;
    ComplexMatrix state;
};

// Direct-construction oracle: build the 4-qudit state in order (1,2,3,4),
// apply I (x) |Psi><Psi|_{23} (x) I as a full d^4 projector, trace out 2,3.
NaiveOutcome naive_branch(const ComplexMatrix& rho12, const ComplexMatrix& rho34, QuditDim d,
                          int k, int l) {
    const ComplexMatrix joint = kron(rho12, rho34);
    const StateVector psi = bell_state(PauliLabel(k, l, d));
    const ComplexMatrix id = ComplexMatrix::Identity(d.d, d.d);
    const ComplexMatrix proj = kron(id, kron(psi * psi.adjoint(), id));
    const ComplexMatrix projected = proj * joint * proj;
    const SubsystemShape four{d.d, d.d, d.d, d.d};
    NaiveOutcome out;
    out.probability = (proj * joint).trace().real();
    out.state = partial_trace(projected, four, {0, 3}) / out.probability;
    return out;
}

}  // namespace

TEST_CASE("bell_measure_23: perfect swapping on maximally entangled inputs") {
    const QuditDim d(2);
    const ComplexMatrix pure = isotropic_state(IsotropicParams(d, 1.0));
    const auto outcomes = bell_measure_23(pure, pure, d);
    REQUIRE(outcomes.size() == 4);
    for (const auto& o : outcomes) {
        CHECK(o.probability == doctest::Approx(0.25).epsilon(1e-12));
        REQUIRE(o.has_state);
        const StateVector psi = bell_state(PauliLabel(o.shift, o.phase, d));
        CHECK(max_abs_diff(o.state, psi * psi.adjoint()) < 1e-12);
    }
}

TEST_CASE("bell_measure_23: uniform outcome probabilities on isotropic inputs") {
    for (int dim : {2, 3}) {
        const QuditDim d(dim);
        for (double f0 : {0.2, 0.7})
            for (double f1 : {0.5, 1.0}) {
                const auto outcomes =
                    bell_measure_23(isotropic_state(IsotropicParams(d, f0)),
                                    isotropic_state(IsotropicParams(d, f1)), d);
                for (const auto& o : outcomes)
                    CHECK(std::abs(o.probability - 1.0 / (dim * dim)) < 1e-12);
            }
    }
    // one spot check at d=5
    const QuditDim d5(5);
    const auto outcomes = bell_measure_23(isotropic_state(IsotropicParams(d5, 0.6)),
                                          isotropic_state(IsotropicParams(d5, 0.8)), d5);
    for (const auto& o : outcomes) CHECK(std::abs(o.probability - 0.04) < 1e-12);
}

TEST_CASE("bell_measure_23: matches the naive full-projector oracle on generic inputs") {
    const QuditDim d(2);
    auto gen = rng(301);
    const ComplexMatrix rho12 = random_density_matrix(4, gen);
    const ComplexMatrix rho34 = random_density_matrix(4, gen);
    const auto outcomes = bell_measure_23(rho12, rho34, d);

    double total = 0.0;
    for (const auto& o : outcomes) {
        const NaiveOutcome ref = naive_branch(rho12, rho34, d, o.shift, o.phase);
        CHECK(std::abs(o.probability - ref.probability) < 1e-12);
        if (o.has_state) CHECK(max_abs_diff(o.state, ref.state) < 1e-11);
        total += o.probability;
    }
    CHECK(std::abs(total - 1.0) < 1e-10);  // completeness on non-isotropic inputs

    for (const auto& o : outcomes) {
        REQUIRE(o.has_state);
        CHECK(is_hermitian(o.state));
        CHECK(std::abs(o.state.trace().real() - 1.0) < 1e-10);
        CHECK(hermitian_eigenvalues(o.state).minCoeff() > -1e-10);
    }
}

TEST_CASE("bell_measure_23: outcomes are local Pauli rotations of the (0,0) branch") {
    // Outcome (k, l) carries the rotation X^k Z^{-l}: the projection onto
    // <Psi_{k,l}| conjugates the clock phase.
    for (int dim : {2, 3, 4}) {
        const QuditDim d(dim);
        const auto outcomes = bell_measure_23(isotropic_state(IsotropicParams(d, 0.85)),
                                              isotropic_state(IsotropicParams(d, 0.6)), d);
        const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
        const ComplexMatrix& base = outcomes.front().state;
        for (const auto& o : outcomes) {
            const ComplexMatrix rot =
                kron(id, pauli(PauliLabel(o.shift, (dim - o.phase) % dim, d)));
            CHECK(max_abs_diff(o.state, rot * base * rot.adjoint()) < 1e-10);
        }
    }
}

TEST_CASE("bell_measure_23: ideal inputs swap onto the conjugate-phase Bell state") {
    const QuditDim d(3);
    const ComplexMatrix pure = isotropic_state(IsotropicParams(d, 1.0));
    for (const auto& o : bell_measure_23(pure, pure, d)) {
        const StateVector psi = bell_state(PauliLabel(o.shift, (3 - o.phase) % 3, d));
        CHECK(max_abs_diff(o.state, psi * psi.adjoint()) < 1e-12);
    }
}

TEST_CASE("bell_measure_23: rejects wrong-sized inputs") {
    const ComplexMatrix small = ComplexMatrix::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS(bell_measure_23(small, small, QuditDim(3)), std::invalid_argument);
}

TEST_CASE("swapped_fidelity: endpoints, fixed point, and the 0.9/0.9 value") {
    const QuditDim d2(2);
    CHECK(swapped_fidelity(1.0, 1.0, d2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(swapped_fidelity(0.25, 0.6, d2) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(swapped_fidelity(1.0 / 9.0, 0.3, QuditDim(3)) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(swapped_fidelity(0.9, 0.9, d2) == doctest::Approx(2.44 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(swapped_fidelity(1.2, 0.5, d2), std::invalid_argument);
}

TEST_CASE("swapped_fidelity: dense simulation confirms the map off the grid") {
    // fixed point F0 = 1/d^2 and the 0.9/0.9 point, measured as <Phi+|sigma00|Phi+>
    struct Probe {
        int d;
        double f0, f1;
    };
    for (const Probe& p : {Probe{3, 1.0 / 9.0, 0.3}, Probe{2, 0.9, 0.9}}) {
        const QuditDim d(p.d);
        const StateVector phi = max_entangled_state(d);
        const auto outcomes = bell_measure_23(isotropic_state(IsotropicParams(d, p.f0)),
                                              isotropic_state(IsotropicParams(d, p.f1)), d);
        const double measured = (phi.adjoint() * outcomes.front().state * phi).value().real();
        CHECK(std::abs(measured - swapped_fidelity(p.f0, p.f1, d)) < 1e-12);
    }
    CHECK(std::abs(swapped_fidelity(0.9, 0.9, QuditDim(2)) - 2.44 / 3.0) < 1e-14);
}

TEST_CASE("swapped_fidelity: composition is associative (repeater chains)") {
    const QuditDim d(3);
    for (double a : {0.3, 0.9})
        for (double b : {0.5, 1.0})
            for (double c : {0.2, 0.8}) {
                const double left = swapped_fidelity(swapped_fidelity(a, b, d), c, d);
                const double right = swapped_fidelity(a, swapped_fidelity(b, c, d), d);
                CHECK(std::abs(left - right) < 1e-12);
            }
}

TEST_CASE("depolarizing channels compose according to the fidelity map") {
    auto gen = rng(311);
    const QuditDim d(3);
    const ComplexMatrix rho = random_density_matrix(3, gen);
    const double f0 = 0.75, f1 = 0.4;
    const ComplexMatrix chained =
        DepolarizingChannel(d, f1).apply(DepolarizingChannel(d, f0).apply(rho));
    const ComplexMatrix direct =
        DepolarizingChannel(d, swapped_fidelity(f0, f1, d)).apply(rho);
    CHECK(max_abs_diff(chained, direct) < 1e-13);
}

TEST_CASE("swap_isotropy_deviation: exact swapping at F0 = F1 = 1") {
    CHECK(swap_isotropy_deviation(1.0, 1.0, QuditDim(2)) < 1e-12);
}

TEST_CASE("swap_isotropy_deviation: dense simulation reproduces the isotropic family") {
    CHECK(swap_isotropy_deviation(0.8, 0.6, QuditDim(3)) < 1e-10);
    for (int dim : {2, 3}) {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                worst = std::max(worst, swap_isotropy_deviation(i / 4.0, j / 4.0, QuditDim(dim)));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("distribution_bound_report: saturation at F1 = 1 and below the PPT boundary") {
    const QuditDim d(3);
    const BoundReport at_one = distribution_bound_report(0.62, 1.0, d);
    CHECK(at_one.saturated);
    CHECK(std::abs(at_one.gap) < 1e-12);

    const BoundReport below = distribution_bound_report(0.3, 0.9, d);  // 0.3 < 1/3
    CHECK(below.lhs == 0.0);
    CHECK(below.rhs == 0.0);
    CHECK(below.saturated);
}

TEST_CASE("distribution_bound_report: frozen spot values at d=2, F0=F1=0.9") {
    const BoundReport r = distribution_bound_report(0.9, 0.9, QuditDim(2));
    CHECK(std::abs(r.Fprime - 2.44 / 3.0) < 1e-12);
    CHECK(std::abs(r.lhs - 1.88 / 3.0) < 1e-12);
    CHECK(std::abs(r.rhs - 0.64) < 1e-12);
    CHECK(std::abs(r.gap - (0.64 - 1.88 / 3.0)) < 1e-12);
    CHECK_FALSE(r.saturated);
}

TEST_CASE("distribution_bound_report: dense route agrees with the analytic route") {
    for (int dim : {2, 3}) {
        const QuditDim d(dim);
        for (double f0 : {0.4, 0.9})
            for (double f1 : {0.65, 1.0}) {
                CHECK(std::abs(distribution_bound_lhs_dense(f0, f1, d) -
                               distribution_bound_report(f0, f1, d).lhs) < 1e-9);
                CHECK_NOTHROW(distribution_bound_report(f0, f1, d, true));
            }
    }
}

TEST_CASE("distribution_bound_lhs_dense: convex-roof scoring agrees with the negativity shortcut") {
    const QuditDim d(2);
    ConvexRoofOptions roof;
    roof.restarts = 4;
    roof.seed = 9;
    const double via_roof = distribution_bound_lhs_dense(0.85, 0.7, d, roof);
    const double via_negativity = distribution_bound_lhs_dense(0.85, 0.7, d);
    CHECK(std::abs(via_roof - via_negativity) < 1e-4);
}

TEST_CASE("dynamics_bound_report: channel route, Choi CREN, and saturation at F1=1") {
    const QuditDim d(3);
    const BoundReport r = dynamics_bound_report(0.7, 1.0, d);
    CHECK(r.saturated);

    // CREN of the Choi state equals the closed form for the channel fidelity.
    const DepolarizingChannel ch(d, 0.55);
    CHECK(std::abs(negativity(ch.choi_state(), BipartiteCut(3, 3)) -
                   cren_isotropic(IsotropicParams(d, 0.55))) < 1e-10);
}

TEST_CASE("dynamics_bound_report: equivalent to distribution_bound_report field-by-field") {
    for (int dim : {2, 3, 4}) {
        const QuditDim d(dim);
        for (double f0 : {0.0, 0.35, 0.9, 1.0})
            for (double f1 : {0.15, 0.75, 1.0}) {
                const BoundReport thm = distribution_bound_report(f0, f1, d);
                const BoundReport cor = dynamics_bound_report(f0, f1, d);
                CHECK(std::abs(thm.Fprime - cor.Fprime) < 1e-9);
                CHECK(std::abs(thm.lhs - cor.lhs) < 1e-9);
                CHECK(std::abs(thm.rhs - cor.rhs) < 1e-9);
                CHECK(std::abs(thm.gap - cor.gap) < 1e-9);
                CHECK(thm.saturated == cor.saturated);
            }
    }
    const BoundReport thm = distribution_bound_report(0.9, 0.9, QuditDim(3));
    const BoundReport cor = dynamics_bound_report(0.9, 0.9, QuditDim(3));
    CHECK(std::abs(thm.gap - cor.gap) < 1e-9);
}

TEST_CASE("saturation_boundary_scan: boundary zeros, positive interior, gap >= 0") {
    const QuditDim d(2);
    double min_interior = 1.0;
    for (const SaturationPoint& pt : saturation_boundary_scan(d, 21)) {
        CHECK(pt.gap >= -1e-9);
        const bool boundary =
            pt.F0 >= 1.0 - 1e-12 || pt.F1 >= 1.0 - 1e-12 || pt.F0 <= 0.5 + 1e-12 ||
            pt.F1 <= 0.5 + 1e-12;
        if (boundary)
            CHECK(pt.gap <= 1e-9);
        else
            min_interior = std::min(min_interior, pt.gap);
    }
    CHECK(min_interior > 1e-9);
    CHECK_THROWS_AS(saturation_boundary_scan(d, 5), std::invalid_argument);
}

TEST_CASE("REDOutcome invariants: probabilities and conditional states") {
    const QuditDim d(3);
    const auto outcomes = bell_measure_23(isotropic_state(IsotropicParams(d, 0.45)),
                                          isotropic_state(IsotropicParams(d, 0.95)), d);
    double total = 0.0;
    for (const auto& o : outcomes) {
        total += o.probability;
        REQUIRE(o.has_state);
        CHECK(is_hermitian(o.state));
        CHECK(std::abs(o.state.trace().real() - 1.0) < 1e-10);
        CHECK(hermitian_eigenvalues(o.state).minCoeff() > -1e-10);
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
}
