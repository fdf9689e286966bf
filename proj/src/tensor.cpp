#include "cren/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cren {

namespace {

// Flat offsets of every multi-index over the listed subsystems, where the
// listed order fixes digit significance (subs[0] most significant) and the
// offsets use the parent shape's strides. An empty list yields {0}.
std::vector<Eigen::Index> subsystem_offsets(const SubsystemShape& shape,
                                            const std::vector<int>& subs) {
    const int n = shape.factor_count();
    std::vector<Eigen::Index> stride(n, 1);
    for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * shape.dims[k + 1];

    Eigen::Index count = 1;
    for (int s : subs) count *= shape.dims[s];

    std::vector<Eigen::Index> offsets(count, 0);
    Eigen::Index repeat = count;
    for (int s : subs) {
        const Eigen::Index d = shape.dims[s];
        repeat /= d;
        for (Eigen::Index i = 0; i < count; ++i)
            offsets[i] += ((i / repeat) % d) * stride[s];
    }
    return offsets;
}

void require_square_matching(const ComplexMatrix& rho, const SubsystemShape& shape,
                             const char* op) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument(std::string(op) + ": matrix must be square");
    if (rho.rows() != shape.total_dim())
        throw std::invalid_argument(std::string(op) + ": shape/dimension mismatch");
}

}  // namespace

Eigen::Index SubsystemShape::total_dim() const {
    Eigen::Index d = 1;
    for (Eigen::Index f : dims) d *= f;
    return d;
}

void SubsystemShape::validate() const {
    if (dims.empty()) throw std::invalid_argument("SubsystemShape: no factors");
    for (Eigen::Index f : dims)
        if (f < 2) throw std::invalid_argument("SubsystemShape: factor dimension < 2");
}

bool is_hermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemShape& shape,
                            const std::vector<int>& keep) {
    require_square_matching(rho, shape, "partial_trace");

    const int n = shape.factor_count();
    std::vector<bool> kept(n, false);
    for (int s : keep) {
        if (s < 0 || s >= n)
            throw std::invalid_argument("partial_trace: subsystem index out of range");
        if (kept[s])
            throw std::invalid_argument("partial_trace: duplicate subsystem index");
        kept[s] = true;
    }
    std::vector<int> traced;
    for (int s = 0; s < n; ++s)
        if (!kept[s]) traced.push_back(s);

    const auto keep_off = subsystem_offsets(shape, keep);
    const auto trace_off = subsystem_offsets(shape, traced);
    const Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());

    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a)
        for (Eigen::Index b = 0; b < dk; ++b) {
            Complex sum = 0.0;
            for (Eigen::Index t : trace_off) sum += rho(keep_off[a] + t, keep_off[b] + t);
            out(a, b) = sum;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SubsystemShape& shape,
                                int subsystem) {
    require_square_matching(rho, shape, "partial_transpose");
    if (shape.factor_count() != 2)
        throw std::invalid_argument("partial_transpose: shape not bipartite");
    if (subsystem != 0 && subsystem != 1)
        throw std::invalid_argument("partial_transpose: subsystem index out of range");

    const Eigen::Index da = shape.dims[0];
    const Eigen::Index db = shape.dims[1];
    ComplexMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index ia = 0; ia < da; ++ia)
        for (Eigen::Index ib = 0; ib < db; ++ib)
            for (Eigen::Index ja = 0; ja < da; ++ja)
                for (Eigen::Index jb = 0; jb < db; ++jb) {
                    const Eigen::Index r = ia * db + ib;
                    const Eigen::Index c = ja * db + jb;
                    out(r, c) = (subsystem == 0) ? rho(ja * db + ib, ia * db + jb)
                                                 : rho(ia * db + jb, ja * db + ib);
                }
    return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const SubsystemShape& shape,
                                 const std::vector<int>& perm) {
    require_square_matching(rho, shape, "permute_subsystems");

    const int n = shape.factor_count();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute_subsystems: invalid permutation");
    std::vector<bool> seen(n, false);
    for (int s : perm) {
        if (s < 0 || s >= n || seen[s])
            throw std::invalid_argument("permute_subsystems: invalid permutation");
        seen[s] = true;
    }

    // subsystem_offsets with the permuted subsystem list enumerates the new
    // composite index while accumulating old-layout strides
    const auto old_index = subsystem_offsets(shape, perm);
    const Eigen::Index dim = rho.rows();
    ComplexMatrix out(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) out(i, j) = rho(old_index[i], old_index[j]);
    return out;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h) {
    if (!is_hermitian(h))
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(((h + h.adjoint()) / 2.0).eval());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigensystem: eigensolver failed");

    // Eigen returns ascending order; flip to descending.
    const Eigen::Index n = h.rows();
    HermitianEigensystem out;
    out.values = solver.eigenvalues().reverse();
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h) {
    if (!is_hermitian(h))
        throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(((h + h.adjoint()) / 2.0).eval(),
                                                        Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
    return solver.eigenvalues().reverse();
}

double trace_sqrt(const ComplexMatrix& rho) {
    const Eigen::VectorXd lambda = hermitian_eigenvalues(rho);
    if (lambda.size() > 0 && lambda.minCoeff() < -1e-8)
        throw std::runtime_error("trace_sqrt: input is not positive semidefinite (eigenvalue " +
                                 std::to_string(lambda.minCoeff()) + ")");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        sum += std::sqrt(std::max(lambda[i], 0.0));
    return sum;
}

double trace_norm(const ComplexMatrix& a) {
    return hermitian_eigenvalues(a).cwiseAbs().sum();
}

}  // namespace cren
