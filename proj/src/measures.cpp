#include "cren/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cren {

BipartiteCut::BipartiteCut(int a, int b) : dim_a(a), dim_b(b) {
    if (a < 2 || b < 2) throw std::invalid_argument("BipartiteCut: factor dimensions must be >= 2");
}

namespace {

// Reshape |phi> into the dA x dB coefficient matrix M(a,b) = phi(a*dB + b).
Eigen::MatrixXcd coefficient_matrix(const StateVector& phi, const BipartiteCut& cut) {
    Eigen::MatrixXcd m(cut.dim_a, cut.dim_b);
    for (int a = 0; a < cut.dim_a; ++a)
        for (int b = 0; b < cut.dim_b; ++b)
            m(a, b) = phi(static_cast<Eigen::Index>(a) * cut.dim_b + b);
    return m;
}

void require_cut_matches(Eigen::Index dim, const BipartiteCut& cut, const char* op) {
    if (dim != cut.total_dim())
        throw std::invalid_argument(std::string(op) + ": cut does not match state dimension");
}

}  // namespace

double cren_pure(const StateVector& phi, const BipartiteCut& cut) {
    require_cut_matches(phi.size(), cut, "cren_pure");
    if (std::abs(phi.squaredNorm() - 1.0) > 1e-8)
        throw std::invalid_argument("cren_pure: state is not normalized");

    const Eigen::MatrixXcd m = coefficient_matrix(phi, cut);
    // Gram matrix of the smaller factor carries the Schmidt spectrum.
    const ComplexMatrix gram =
        (cut.dim_a <= cut.dim_b) ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
    const double ts = trace_sqrt(gram);
    const double value = (ts * ts - 1.0) / (cut.min_dim() - 1.0);
    return std::clamp(value, 0.0, 1.0);
}

double negativity(const ComplexMatrix& rho, const BipartiteCut& cut) {
    require_cut_matches(rho.rows(), cut, "negativity");
    if (rho.rows() != rho.cols()) throw std::invalid_argument("negativity: matrix must be square");
    if (!is_hermitian(rho)) throw std::invalid_argument("negativity: state is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8)
        throw std::invalid_argument("negativity: state must have unit trace");

    const ComplexMatrix pt = partial_transpose(rho, cut.shape(), 1);
    const double value = (trace_norm(pt) - 1.0) / (cut.min_dim() - 1.0);
    return std::max(value, 0.0);
}

double cren_isotropic(const IsotropicParams& p) {
    return std::max((p.d.d * p.fidelity - 1.0) / (p.d.d - 1.0), 0.0);
}

namespace {

int rank_above_cutoff(const Eigen::VectorXd& values) {
    int r = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values[i] > kRankCutoff) ++r;
    return r;
}

// Columns sqrt(lambda_j) |e_j> of the eigen-ensemble, j < rank.
Eigen::MatrixXcd scaled_eigvectors(const HermitianEigensystem& eig, int rank) {
    Eigen::MatrixXcd b = eig.vectors.leftCols(rank);
    for (int j = 0; j < rank; ++j) b.col(j) *= std::sqrt(std::max(eig.values[j], 0.0));
    return b;
}

EnsembleDecomposition ensemble_from_members(const Eigen::MatrixXcd& members,
                                            const ComplexMatrix& isometry) {
    const Eigen::Index m = members.cols();
    EnsembleDecomposition out;
    out.weights.resize(m);
    out.states.reserve(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double p = members.col(k).squaredNorm();
        out.weights[k] = p;
        if (p > 1e-14) {
            out.states.push_back(members.col(k) / std::sqrt(p));
        } else {
            StateVector unit = StateVector::Zero(members.rows());
            unit(0) = 1.0;
            out.states.push_back(std::move(unit));
        }
    }
    out.isometry = isometry;
    return out;
}

}  // namespace

EnsembleDecomposition realize_ensemble(const HermitianEigensystem& eig,
                                       const ComplexMatrix& isometry) {
    const Eigen::Index m = isometry.rows();
    const Eigen::Index r = isometry.cols();
    if (m < r) throw std::invalid_argument("realize_ensemble: isometry needs rows >= cols");
    const ComplexMatrix gram = isometry.adjoint() * isometry;
    if ((gram - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("realize_ensemble: matrix is not an isometry");
    if (rank_above_cutoff(eig.values) != r)
        throw std::invalid_argument("realize_ensemble: isometry columns must equal the rank");

    const Eigen::MatrixXcd members = scaled_eigvectors(eig, static_cast<int>(r)) * isometry.transpose();
    return ensemble_from_members(members, isometry);
}

// ---------------------------------------------------------------------------
// Convex-roof optimizer.
//
// V = exp(A)[:, :r] with A anti-Hermitian (m^2 real parameters). Minimizing
//   f(V) = sum_k p_k N(phi_k) = (sum_k ||M_k||_*^2 - 1)/(d - 1)
// over the exp(A) parameters, where M_k is the dA x dB reshape of the
// unnormalized member sqrt(p_k)|phi_k> and ||.||_* the nuclear norm.
// Gradients are analytic: nuclear-norm subgradient U V^dag from the member
// SVDs pulled back through exp(A) with the Daleckii-Krein divided differences.
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Parameter layout: m diagonal entries t_i (A_ii = i t_i), then for each pair
// i<j in row order the real pair (x, y) with A_ij = x + iy, A_ji = -x + iy.
Eigen::MatrixXcd build_antihermitian(const Eigen::VectorXd& params, int m) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) a(i, i) = Complex(0.0, params[i]);
    int idx = m;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double x = params[idx++];
            const double y = params[idx++];
            a(i, j) = Complex(x, y);
            a(j, i) = Complex(-x, y);
        }
    return a;
}

struct ExpEig {
    Eigen::MatrixXcd basis;      // eigenvectors U of -iA
    Eigen::VectorXd angles;      // eigenvalues theta, so exp(A) = U diag(e^{i theta}) U^dag
    Eigen::MatrixXcd exponential;
};

ExpEig exp_antihermitian(const Eigen::MatrixXcd& a) {
    const Eigen::MatrixXcd h = Complex(0.0, -1.0) * a;  // Hermitian
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((h + h.adjoint()) / 2.0);
    ExpEig out;
    out.basis = solver.eigenvectors();
    out.angles = solver.eigenvalues();
    Eigen::VectorXcd phases(out.angles.size());
    for (Eigen::Index i = 0; i < out.angles.size(); ++i)
        phases[i] = std::polar(1.0, out.angles[i]);
    out.exponential = out.basis * phases.asDiagonal() * out.basis.adjoint();
    return out;
}

struct RoofProblem {
    Eigen::MatrixXcd scaled_vecs;  // E diag(sqrt(lambda)), D x r
    int rank = 0;
    int members = 0;
    BipartiteCut cut;
    HermitianEigensystem eig;
};

struct Evaluation {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

Evaluation evaluate(const RoofProblem& prob, const Eigen::VectorXd& params, bool want_grad) {
    const int m = prob.members;
    const int r = prob.rank;
    const int da = prob.cut.dim_a;
    const int db = prob.cut.dim_b;
    const double denom = prob.cut.min_dim() - 1.0;

    const ExpEig ee = exp_antihermitian(build_antihermitian(params, m));
    const Eigen::MatrixXcd v = ee.exponential.leftCols(r);
    const Eigen::MatrixXcd members = prob.scaled_vecs * v.transpose();  // D x m

    Evaluation out;
    Eigen::MatrixXcd grad_v;  // df = Re tr(grad_v^dag dV)
    if (want_grad) grad_v.setZero(m, r);

    for (int k = 0; k < m; ++k) {
        Eigen::MatrixXcd mat(da, db);
        for (int a = 0; a < da; ++a)
            for (int b = 0; b < db; ++b) mat(a, b) = members(static_cast<Eigen::Index>(a) * db + b, k);

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
            mat, want_grad ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0);
        const Eigen::VectorXd sv = svd.singularValues();
        const double nuclear = sv.sum();
        const double weight = sv.squaredNorm();
        out.value += nuclear * nuclear - weight;

        if (want_grad) {
            const Eigen::MatrixXcd w =
                2.0 * nuclear * (svd.matrixU() * svd.matrixV().adjoint()) - 2.0 * mat;
            Eigen::VectorXcd wvec(static_cast<Eigen::Index>(da) * db);
            for (int a = 0; a < da; ++a)
                for (int b = 0; b < db; ++b) wvec(static_cast<Eigen::Index>(a) * db + b) = w(a, b);
            grad_v.row(k) = ((prob.scaled_vecs.adjoint() * wvec) / denom).transpose();
        }
    }
    out.value /= denom;

    if (!want_grad) return out;

    // Pull grad_v back through V = exp(A)[:, :r].
    Eigen::MatrixXcd grad_full = Eigen::MatrixXcd::Zero(m, m);
    grad_full.leftCols(r) = grad_v;
    const Eigen::MatrixXcd ghat = ee.basis.adjoint() * grad_full * ee.basis;

    Eigen::MatrixXcd kernel(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const double mid = 0.5 * (ee.angles[p] + ee.angles[q]);
            const double half = 0.5 * (ee.angles[p] - ee.angles[q]);
            const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
            const Complex gamma = std::polar(sinc, mid);
            kernel(p, q) = ghat(p, q) * std::conj(gamma);
        }
    const Eigen::MatrixXcd grad_a = ee.basis * kernel * ee.basis.adjoint();

    out.gradient.resize(params.size());
    for (int i = 0; i < m; ++i) out.gradient[i] = grad_a(i, i).imag();
    int idx = m;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            out.gradient[idx++] = grad_a(i, j).real() - grad_a(j, i).real();
            out.gradient[idx++] = grad_a(i, j).imag() + grad_a(j, i).imag();
        }
    return out;
}

struct RestartOutcome {
    double value = 0.0;
    Eigen::VectorXd params;
    bool converged = false;
};

// L-BFGS with Armijo backtracking; plain descent step when curvature is unusable.
RestartOutcome minimize(const RoofProblem& prob, Eigen::VectorXd params, int max_iterations) {
    constexpr int kHistory = 8;
    constexpr double kArmijo = 1e-4;
    constexpr double kGradTol = 1e-10;

    std::vector<Eigen::VectorXd> s_hist, y_hist;
    std::vector<double> rho_hist;

    Evaluation cur = evaluate(prob, params, true);
    double step_seed = 1.0;
    int plateau = 0;
    bool converged = false;

    for (int iter = 0; iter < max_iterations; ++iter) {
        if (cur.gradient.lpNorm<Eigen::Infinity>() <= kGradTol) {
            converged = true;
            break;
        }

        // two-loop recursion
        Eigen::VectorXd dir = -cur.gradient;
        std::vector<double> alpha(s_hist.size());
        for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(dir);
            dir -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) {
            const double gamma =
                s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
            dir *= gamma;
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(dir);
            dir += (alpha[i] - beta) * s_hist[i];
        }
        double slope = dir.dot(cur.gradient);
        if (!(slope < 0.0)) {
            dir = -cur.gradient;
            slope = -cur.gradient.squaredNorm();
        }

        double step = step_seed;
        bool accepted = false;
        Eigen::VectorXd trial;
        Evaluation next;
        for (int bt = 0; bt < 40; ++bt) {
            trial = params + step * dir;
            next = evaluate(prob, trial, false);
            if (next.value <= cur.value + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no usable descent left at this scale

        next = evaluate(prob, trial, true);
        const Eigen::VectorXd s = trial - params;
        const Eigen::VectorXd y = next.gradient - cur.gradient;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > kHistory) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
        }

        const double drop = cur.value - next.value;
        params = trial;
        cur = next;
        step_seed = std::min(1.0, step * 2.0);

        if (drop <= 1e-15 * std::max(1.0, std::abs(cur.value))) {
            if (++plateau >= 3) {
                converged = true;
                break;
            }
        } else {
            plateau = 0;
        }
    }

    return {cur.value, std::move(params), converged};
}

}  // namespace

namespace detail {

std::pair<double, Eigen::VectorXd> roof_objective(const ComplexMatrix& rho,
                                                  const BipartiteCut& cut, int members,
                                                  const Eigen::VectorXd& params) {
    RoofProblem prob{Eigen::MatrixXcd(), 0, members, cut, hermitian_eigensystem(rho)};
    prob.rank = rank_above_cutoff(prob.eig.values);
    if (members < prob.rank)
        throw std::invalid_argument("roof_objective: ensemble size below rank");
    prob.scaled_vecs = scaled_eigvectors(prob.eig, prob.rank);
    Evaluation eval = evaluate(prob, params, true);
    return {eval.value, std::move(eval.gradient)};
}

}  // namespace detail

ConvexRoofResult convex_roof_upper_bound(const ComplexMatrix& rho, const BipartiteCut& cut,
                                         const ConvexRoofOptions& opts) {
    require_cut_matches(rho.rows(), cut, "convex_roof_upper_bound");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8)
        throw std::invalid_argument("convex_roof_upper_bound: state must have unit trace");

    RoofProblem prob{Eigen::MatrixXcd(), 0, 0, cut, hermitian_eigensystem(rho)};
    if (prob.eig.values.minCoeff() < -1e-8)
        throw std::invalid_argument("convex_roof_upper_bound: state is not positive semidefinite");

    prob.rank = rank_above_cutoff(prob.eig.values);
    prob.members = opts.ensemble_size > 0 ? opts.ensemble_size : prob.rank * prob.rank;
    if (prob.members < prob.rank)
        throw std::invalid_argument("convex_roof_upper_bound: ensemble size below rank");
    prob.scaled_vecs = scaled_eigvectors(prob.eig, prob.rank);

    const int restarts = std::max(opts.restarts, 1);
    const Eigen::Index nparams = static_cast<Eigen::Index>(prob.members) * prob.members;

    RestartOutcome best;
    int best_restart = -1;
    for (int restart = 0; restart < restarts; ++restart) {
        Eigen::VectorXd start = Eigen::VectorXd::Zero(nparams);
        if (restart > 0) {
            std::mt19937_64 rng(splitmix64(opts.seed * 0x51f3c6b7a1d04e9dULL + restart));
            std::normal_distribution<double> gauss(0.0, 0.7);
            for (Eigen::Index i = 0; i < nparams; ++i) start[i] = gauss(rng);
        }
        RestartOutcome run = minimize(prob, std::move(start), opts.max_iterations);
        if (best_restart < 0 || run.value < best.value) {
            best = std::move(run);
            best_restart = restart;
        }
    }

    const Eigen::MatrixXcd v =
        exp_antihermitian(build_antihermitian(best.params, prob.members)).exponential.leftCols(prob.rank);

    ConvexRoofResult result;
    result.value = std::max(best.value, 0.0);
    result.best = realize_ensemble(prob.eig, v);
    result.best_restart = best_restart;
    result.converged = best.converged;
    return result;
}

}  // namespace cren
