#pragma once

#include <complex>
#include <random>

#include "cren/tensor.hpp"

namespace cren::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Complex random_gaussian(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(gen), n(gen)};
}

inline StateVector random_pure_state(Eigen::Index dim, std::mt19937_64& gen) {
    StateVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = random_gaussian(gen);
    return v / v.norm();
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = random_gaussian(gen);
    return g;
}

// Ginibre construction; rank defaults to full.
inline ComplexMatrix random_density_matrix(Eigen::Index dim, std::mt19937_64& gen,
                                           Eigen::Index rank = 0) {
    if (rank <= 0) rank = dim;
    const ComplexMatrix g = random_matrix(dim, rank, gen);
    ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& gen) {
    const ComplexMatrix g = random_matrix(dim, dim, gen);
    return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& gen) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(dim, dim, gen));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace cren::test
