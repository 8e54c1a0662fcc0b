#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "arcmusic/errors.hpp"
#include "arcmusic/linalg.hpp"

using namespace arcmusic;

namespace {

CMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx{g(rng), g(rng)};
    return m;
}

}  // namespace

TEST_CASE("LU solves a random complex system to machine accuracy") {
    std::mt19937_64 rng(7);
    const int n = 40;
    const CMatrix a = random_matrix(n, rng);
    std::vector<cplx> x_true(n);
    for (int i = 0; i < n; ++i) x_true[i] = cplx{std::sin(1.0 + i), std::cos(2.0 * i)};
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i] += a(i, j) * x_true[j];

    const LuFactor lu(a);
    const std::vector<cplx> x = lu.solve(b);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - x_true[i]));
    CHECK(err <= 1e-11);
    CHECK(lu.cond_estimate() >= 1.0);
}

TEST_CASE("LU rejects an exactly singular matrix") {
    CMatrix a(3, 3);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;  // rows 0,1 dependent, column 2 empty
    CHECK_THROWS_AS(LuFactor{a}, SolverError);
}

TEST_CASE("SVD of the identity") {
    const SvdResult s = svd_jacobi(CMatrix::identity(4));
    for (double sv : s.singular_values) CHECK(sv == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(SvdResult::orthonormality_defect(s.left) <= 1e-12);
    CHECK(SvdResult::orthonormality_defect(s.right) <= 1e-12);
}

TEST_CASE("SVD of a rank-1 outer product") {
    const int n = 12;
    std::vector<cplx> a(n), b(n);
    double na = 0.0, nb = 0.0;
    for (int i = 0; i < n; ++i) {
        a[i] = cplx{std::cos(0.3 * i), std::sin(1.1 * i)};
        b[i] = cplx{std::sin(0.7 * i + 0.2), std::cos(0.9 * i)};
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
    }
    CMatrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = a[i] * std::conj(b[j]);
    const SvdResult s = svd_jacobi(k);
    CHECK(s.singular_values[0] == doctest::Approx(std::sqrt(na * nb)).epsilon(1e-13));
    for (int m = 1; m < n; ++m) CHECK(s.singular_values[m] <= 1e-12 * s.singular_values[0]);
    CHECK(s.reconstruction_error(k) <= 1e-12);
}

TEST_CASE("SVD invariants on random complex matrices") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 31);
        const CMatrix k = random_matrix(n, rng);
        const SvdResult s = svd_jacobi(k);
        CHECK(s.reconstruction_error(k) <= 1e-12);
        CHECK(SvdResult::orthonormality_defect(s.left) <= 1e-12);
        CHECK(SvdResult::orthonormality_defect(s.right) <= 1e-12);
        for (std::size_t m = 1; m < s.singular_values.size(); ++m) {
            CHECK(s.singular_values[m] <= s.singular_values[m - 1]);
            CHECK(s.singular_values[m] >= 0.0);
        }
    }
}

TEST_CASE("SVD phase convention and determinism") {
    std::mt19937_64 rng(99);
    const CMatrix k = random_matrix(24, rng);
    const SvdResult s1 = svd_jacobi(k);
    const SvdResult s2 = svd_jacobi(k);
    CHECK(s1.left == s2.left);
    CHECK(s1.right == s2.right);
    CHECK(s1.singular_values == s2.singular_values);
    for (int m = 0; m < 24; ++m) {
        int first = 0;
        while (first < 24 && std::abs(s1.left(first, m)) <= 1e-9) ++first;
        REQUIRE(first < 24);
        CHECK(s1.left(first, m).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(s1.left(first, m).real() > 0.0);
    }
}

TEST_CASE("SVD of the zero matrix completes an orthonormal basis") {
    const SvdResult s = svd_jacobi(CMatrix(5, 5));
    for (double sv : s.singular_values) CHECK(sv == 0.0);
    CHECK(SvdResult::orthonormality_defect(s.left) <= 1e-12);
}
