#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace cren {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Ordered local dimensions of a multipartite space.
///
/// Indexing is big-endian: subsystem 0 is the most significant digit of the
/// composite index, so a flat index decomposes as
///   i = i_0 * (d_1*...*d_{n-1}) + i_1 * (d_2*...*d_{n-1}) + ... + i_{n-1}.
struct SubsystemShape {
    std::vector<Eigen::Index> dims;

    SubsystemShape(std::initializer_list<Eigen::Index> d) : dims(d) { validate(); }
    explicit SubsystemShape(std::vector<Eigen::Index> d) : dims(std::move(d)) { validate(); }

    Eigen::Index total_dim() const;
    int factor_count() const { return static_cast<int>(dims.size()); }

private:
    void validate() const;  // every factor >= 2
};

/// max |A(i,j) - conj(A(j,i))| <= 1e-12 * max(1, max-abs-entry)
bool is_hermitian(const ComplexMatrix& a);

/// Kronecker product A ⊗ B.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out every factor not listed in `keep`; the result carries the kept
/// factors in the order given by `keep` (which may therefore also reorder).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemShape& shape,
                            const std::vector<int>& keep);

/// Transpose the indices of one factor of a bipartite state.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SubsystemShape& shape,
                                int subsystem);

/// Reorder tensor factors: output factor i is input factor perm[i].
ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const SubsystemShape& shape,
                                 const std::vector<int>& perm);

/// Eigenvalues of a Hermitian matrix, descending. Throws if the input fails
/// the Hermiticity tolerance of is_hermitian().
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h);

struct HermitianEigensystem {
    Eigen::VectorXd values;   // descending
    ComplexMatrix vectors;    // column i pairs with values[i]
};

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h);

/// tr sqrt(rho) = sum_i sqrt(max(lambda_i, 0)) for PSD rho.
/// Eigenvalues in [-1e-8, 0) are clipped to 0; anything below -1e-8 throws.
double trace_sqrt(const ComplexMatrix& rho);

/// Trace norm sum_i |lambda_i| (Hermitian input).
double trace_norm(const ComplexMatrix& a);

}  // namespace cren
