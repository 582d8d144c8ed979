#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include "mlz/linalg.hpp"

using namespace mlz;

namespace {

Matrix random_matrix(std::mt19937& rng, int rows, int cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = dist(rng);
    return m;
}

Matrix random_symmetric(std::mt19937& rng, int n) {
    Matrix m = random_matrix(rng, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) m(c, r) = m(r, c);
    return m;
}

} // namespace

TEST_CASE("commutator basics") {
    const Matrix x = Matrix::diagonal({1.0, 2.0});
    const Matrix y = Matrix::diagonal({3.0, 4.0});
    CHECK(frobenius_norm(commutator(x, y)) == 0.0);

    Matrix sx(2, 2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    const Matrix sz = Matrix::diagonal({1.0, -1.0});
    const Matrix c = commutator(sx, sz);
    CHECK(c(0, 0) == 0.0);
    CHECK(c(0, 1) == doctest::Approx(-2.0));
    CHECK(c(1, 0) == doctest::Approx(2.0));
    CHECK(c(1, 1) == 0.0);

    CHECK_THROWS_AS(commutator(Matrix(2, 2), Matrix(3, 3)), std::invalid_argument);
}

TEST_CASE("commutator antisymmetry on random pairs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix x = random_matrix(rng, 5, 5);
        const Matrix y = random_matrix(rng, 5, 5);
        const Matrix lhs = commutator(x, y);
        const Matrix rhs = -1.0 * commutator(y, x);
        CHECK(frobenius_norm(lhs - rhs) < 1e-14);
    }
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(Matrix(3, 3)) == 0.0);
    CHECK(frobenius_norm(Matrix::identity(4)) == doctest::Approx(2.0));
    Matrix m(2, 2);
    m(0, 0) = 3.0;
    m(0, 1) = 4.0;
    CHECK(frobenius_norm(m) == doctest::Approx(5.0));
}

TEST_CASE("sym_eigen small cases") {
    const EigenDecomposition d = sym_eigen(Matrix::diagonal({3.0, 1.0, 2.0}));
    CHECK(d.values[0] == doctest::Approx(1.0));
    CHECK(d.values[1] == doctest::Approx(2.0));
    CHECK(d.values[2] == doctest::Approx(3.0));

    const double g = 0.3;
    Matrix two(2, 2);
    two(0, 1) = g;
    two(1, 0) = g;
    const EigenDecomposition d2 = sym_eigen(two);
    CHECK(d2.values[0] == doctest::Approx(-g));
    CHECK(d2.values[1] == doctest::Approx(g));

    Matrix bad(2, 2);
    bad(0, 1) = 1.0;
    bad(1, 0) = -1.0;
    CHECK_THROWS_AS(sym_eigen(bad), std::invalid_argument);
}

TEST_CASE("sym_eigen reconstruction, orthonormality and sign convention") {
    std::mt19937 rng(42);
    for (int n : {2, 6, 17, 64}) {
        const Matrix s = random_symmetric(rng, n);
        const EigenDecomposition d = sym_eigen(s);
        const double scale = frobenius_norm(s);

        Matrix recon = d.vectors * Matrix::diagonal(d.values) * d.vectors.transpose();
        CHECK(frobenius_norm(recon - s) < 1e-11 * scale);

        Matrix gram = d.vectors.transpose() * d.vectors - Matrix::identity(n);
        CHECK(frobenius_norm(gram) < 1e-12 * n);

        for (int j = 0; j + 1 < n; ++j) CHECK(d.values[j] <= d.values[j + 1]);
        for (int j = 0; j < n; ++j) {
            int imax = 0;
            double amax = -1.0;
            for (int i = 0; i < n; ++i)
                if (std::abs(d.vectors(i, j)) > amax) {
                    amax = std::abs(d.vectors(i, j));
                    imax = i;
                }
            CHECK(d.vectors(imax, j) > 0.0);
        }
    }
}

TEST_CASE("eigenvalue residual invariant") {
    std::mt19937 rng(7);
    const int n = 12;
    const Matrix s = random_symmetric(rng, n);
    const EigenDecomposition d = sym_eigen(s);
    for (int j = 0; j < n; ++j) {
        std::vector<double> res(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) res[i] += s(i, k) * d.vectors(k, j);
            res[i] -= d.values[j] * d.vectors(i, j);
        }
        CHECK(norm2(res) < 1e-12 * std::max(1.0, frobenius_norm(s)));
    }
}

TEST_CASE("solve_linear examples") {
    {
        const LinearSolveResult r = solve_linear(Matrix::identity(2), {1.0, 2.0}, 1e-10);
        CHECK(r.particular[0] == doctest::Approx(1.0));
        CHECK(r.particular[1] == doctest::Approx(2.0));
        CHECK(r.nullspace.empty());
        CHECK(r.residual < 1e-14);
    }
    {
        Matrix m(2, 2);
        m(0, 0) = 1.0;
        const LinearSolveResult r = solve_linear(m, {1.0, 0.0}, 1e-10);
        CHECK(r.particular[0] == doctest::Approx(1.0));
        CHECK(r.particular[1] == doctest::Approx(0.0));
        REQUIRE(r.nullspace.size() == 1);
        CHECK(std::abs(r.nullspace[0][1]) == doctest::Approx(1.0));
        CHECK(r.residual < 1e-14);
    }
    {
        Matrix m(2, 1);
        m(0, 0) = 1.0;
        const LinearSolveResult r = solve_linear(m, {0.0, 1.0}, 1e-10);
        CHECK(r.residual == doctest::Approx(1.0));
    }
}

TEST_CASE("solve_linear determinism") {
    std::mt19937 rng(3);
    const Matrix m = random_matrix(rng, 9, 6);
    std::vector<double> b(9);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : b) x = dist(rng);

    const LinearSolveResult r1 = solve_linear(m, b, 1e-10);
    const LinearSolveResult r2 = solve_linear(m, b, 1e-10);
    CHECK(std::memcmp(r1.particular.data(), r2.particular.data(),
                      r1.particular.size() * sizeof(double)) == 0);
    CHECK(r1.residual == r2.residual);
}

TEST_CASE("solve_linear nullspace soundness and completeness") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        const int m_rows = 8 + trial % 3;
        const int n_cols = 6 + trial % 2;
        const int rank = 1 + trial % 4;
        const Matrix a = random_matrix(rng, m_rows, rank);
        const Matrix b = random_matrix(rng, rank, n_cols);
        const Matrix m = a * b;

        const LinearSolveResult r = solve_linear(m, std::vector<double>(m_rows, 0.0), 1e-10);
        CHECK(static_cast<int>(r.nullspace.size()) == n_cols - rank);
        for (const auto& v : r.nullspace) {
            std::vector<double> mv(m_rows, 0.0);
            for (int i = 0; i < m_rows; ++i)
                for (int j = 0; j < n_cols; ++j) mv[i] += m(i, j) * v[j];
            CHECK(norm2(mv) < 1e-9 * frobenius_norm(m));
        }
    }
}

TEST_CASE("least-squares stationarity invariant") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = random_matrix(rng, 10, 4);
        std::vector<double> b(10);
        for (double& x : b) x = dist(rng);
        const LinearSolveResult r = solve_linear(m, b, 1e-10);

        std::vector<double> resid(10, 0.0);
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 4; ++j) resid[i] += m(i, j) * r.particular[j];
            resid[i] -= b[i];
        }
        std::vector<double> mt_res(4, 0.0);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 10; ++i) mt_res[j] += m(i, j) * resid[i];
        CHECK(norm2(mt_res) < 1e-10 * frobenius_norm(m) * norm2(b));
    }
}

TEST_CASE("unitarity defect") {
    CHECK(unitarity_defect(ComplexMatrix::identity(3)) < 1e-15);
    ComplexMatrix u(2, 2);
    u(0, 0) = Complex(0.0, 1.0);
    u(1, 1) = Complex(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    CHECK(unitarity_defect(u) < 1e-15);
    u(0, 1) = 0.5;
    CHECK(unitarity_defect(u) > 0.1);
}
