#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "cren/qudit.hpp"
#include "cren/statefile.hpp"
#include "test_support.hpp"

using namespace cren;
using namespace cren::test;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cren_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    void fill(const std::string& contents) const {
        std::ofstream out(path);
        out << contents;
    }
};

}  // namespace

TEST_CASE("statefile: round trip preserves the matrix exactly") {
    auto gen = rng(401);
    const BipartiteCut cut(2, 3);
    const ComplexMatrix rho = random_density_matrix(6, gen);
    const TempFile tmp("roundtrip.txt");
    write_state_file(tmp.path, rho, cut);
    const StateFile back = read_state_file(tmp.path);
    CHECK(back.cut.dim_a == 2);
    CHECK(back.cut.dim_b == 3);
    CHECK(max_abs_diff(back.matrix, rho) == 0.0);
    CHECK_NOTHROW(require_density_matrix(back));
}

TEST_CASE("statefile: hand-written qubit example parses") {
    const TempFile tmp("handwritten.txt");
    tmp.fill(
        "dims 2 2\n"
        "0.5,0 0,0 0,0 0.5,0\n"
        "0,0 0,0 0,0 0,0\n"
        "0,0 0,0 0,0 0,0\n"
        "0.5,0 0,0 0,0 0.5,0\n");
    const StateFile file = read_state_file(tmp.path);
    const StateVector phi = max_entangled_state(QuditDim(2));
    CHECK(max_abs_diff(file.matrix, phi * phi.adjoint()) < 1e-15);
}

TEST_CASE("statefile: diagnostics carry line and field positions") {
    const TempFile tmp("bad.txt");

    tmp.fill("dims 2\n");
    CHECK_THROWS_WITH_AS(read_state_file(tmp.path), doctest::Contains(":1:"), StateFileError);

    tmp.fill("dims 2 2\n1,0 0,0 0,0 0,0\n0,0 nope 0,0 0,0\n");
    CHECK_THROWS_WITH_AS(read_state_file(tmp.path), doctest::Contains(":3: field 2"),
                         StateFileError);

    tmp.fill("dims 2 2\n1,0 0,0 0,0\n");
    CHECK_THROWS_WITH_AS(read_state_file(tmp.path), doctest::Contains("field 4"), StateFileError);
}

TEST_CASE("statefile: NaN and Inf entries are rejected") {
    const TempFile tmp("nonfinite.txt");
    tmp.fill("dims 2 2\nnan,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 1,0\n");
    CHECK_THROWS_WITH_AS(read_state_file(tmp.path), doctest::Contains("non-finite"),
                         StateFileError);

    tmp.fill("dims 2 2\ninf,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 1,0\n");
    CHECK_THROWS_AS(read_state_file(tmp.path), StateFileError);
}

TEST_CASE("statefile: density validation rejects bad states") {
    const TempFile tmp("invalid_density.txt");

    // trace 2
    tmp.fill("dims 2 2\n1,0 0,0 0,0 0,0\n0,0 1,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n");
    CHECK_THROWS_WITH_AS(require_density_matrix(read_state_file(tmp.path)),
                         doctest::Contains("trace"), StateFileError);

    // non-Hermitian
    tmp.fill("dims 2 2\n0.5,0 1,0 0,0 0,0\n0,0 0.5,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n");
    CHECK_THROWS_WITH_AS(require_density_matrix(read_state_file(tmp.path)),
                         doctest::Contains("Hermitian"), StateFileError);

    // Hermitian, unit trace, but an eigenvalue is -0.25
    tmp.fill("dims 2 2\n"
             "1.25,0 0,0 0,0 0,0\n"
             "0,0 -0.25,0 0,0 0,0\n"
             "0,0 0,0 0,0 0,0\n"
             "0,0 0,0 0,0 0,0\n");
    CHECK_THROWS_WITH_AS(require_density_matrix(read_state_file(tmp.path)),
                         doctest::Contains("positive semidefinite"), StateFileError);
}

TEST_CASE("statefile: rejects trailing content and bad dims") {
    const TempFile tmp("trailing.txt");
    tmp.fill("dims 2 2\n1,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\nextra\n");
    CHECK_THROWS_WITH_AS(read_state_file(tmp.path), doctest::Contains("after matrix"),
                         StateFileError);

    tmp.fill("dims 1 4\n");
    CHECK_THROWS_AS(read_state_file(tmp.path), StateFileError);

    CHECK_THROWS_AS(read_state_file("does_not_exist_anywhere.txt"), StateFileError);
}
