#include "cren/statefile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cren {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
    throw StateFileError(path + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_field(const std::string& path, int line, int field,
                             const std::string& what) {
    throw StateFileError(path + ":" + std::to_string(line) + ": field " + std::to_string(field) +
                         ": " + what);
}

double parse_real(const std::string& token, const std::string& path, int line, int field) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        fail_field(path, line, field, "expected a number, got '" + token + "'");
    }
    if (used != token.size())
        fail_field(path, line, field, "trailing characters in number '" + token + "'");
    if (!std::isfinite(value)) fail_field(path, line, field, "non-finite value rejected");
    return value;
}

}  // namespace

StateFile read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StateFileError(path + ": cannot open file");

    std::string line;
    if (!std::getline(in, line)) fail(path, 1, "missing 'dims' header");
    std::istringstream header(line);
    std::string tag;
    long long da = 0, db = 0;
    if (!(header >> tag) || tag != "dims") fail(path, 1, "first line must start with 'dims'");
    if (!(header >> da >> db)) fail(path, 1, "expected 'dims <dA> <dB>'");
    std::string extra;
    if (header >> extra) fail(path, 1, "unexpected token '" + extra + "' after dims");
    if (da < 2 || db < 2) fail(path, 1, "subsystem dimensions must be >= 2");

    const BipartiteCut cut(static_cast<int>(da), static_cast<int>(db));
    const Eigen::Index dim = cut.total_dim();
    ComplexMatrix matrix(dim, dim);

    for (Eigen::Index r = 0; r < dim; ++r) {
        const int lineno = static_cast<int>(r) + 2;
        if (!std::getline(in, line))
            fail(path, lineno, "missing matrix row " + std::to_string(r));
        std::istringstream row(line);
        std::string token;
        for (Eigen::Index c = 0; c < dim; ++c) {
            const int field = static_cast<int>(c) + 1;
            if (!(row >> token))
                fail_field(path, lineno, field, "missing entry (row needs " +
                                                    std::to_string(dim) + " re,im pairs)");
            const std::size_t comma = token.find(',');
            if (comma == std::string::npos)
                fail_field(path, lineno, field, "expected re,im pair, got '" + token + "'");
            const double re = parse_real(token.substr(0, comma), path, lineno, field);
            const double im = parse_real(token.substr(comma + 1), path, lineno, field);
            matrix(r, c) = Complex(re, im);
        }
        if (row >> token)
            fail_field(path, lineno, static_cast<int>(dim) + 1,
                       "unexpected extra entry '" + token + "'");
    }

    std::string rest;
    while (std::getline(in, rest)) {
        if (rest.find_first_not_of(" \t\r") != std::string::npos)
            fail(path, static_cast<int>(dim) + 2, "unexpected content after matrix");
    }
    return StateFile{cut, std::move(matrix)};
}

void write_state_file(const std::string& path, const ComplexMatrix& matrix,
                      const BipartiteCut& cut) {
    if (matrix.rows() != matrix.cols() || matrix.rows() != cut.total_dim())
        throw StateFileError(path + ": matrix does not match dims " +
                             std::to_string(cut.dim_a) + " x " + std::to_string(cut.dim_b));
    std::ofstream out(path);
    if (!out) throw StateFileError(path + ": cannot open file for writing");
    out << "dims " << cut.dim_a << " " << cut.dim_b << "\n";
    char buf[64];
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", matrix(r, c).real(),
                          matrix(r, c).imag());
            out << (c ? " " : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw StateFileError(path + ": write failed");
}

void require_density_matrix(const StateFile& file) {
    if (!is_hermitian(file.matrix))
        throw StateFileError("state is not Hermitian within tolerance");
    const Complex tr = file.matrix.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-8)
        throw StateFileError("state trace is not 1 within 1e-8");
    const Eigen::VectorXd lambda = hermitian_eigenvalues(file.matrix);
    if (lambda.minCoeff() < -1e-8)
        throw StateFileError("state is not positive semidefinite (eigenvalue " +
                             std::to_string(lambda.minCoeff()) + ")");
}

}  // namespace cren
