#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhz/matrix.hpp"
#include "support/testgen.hpp"

using namespace qhz;
using testgen::Q;
using M = QMatrix<Rational>;

namespace {
const Q qi = Q::unit_i();
const Q qj = Q::unit_j();
const Q qk = Q::unit_k();

M from_rows(std::size_t rows, std::size_t cols, std::vector<Q> vals) {
    M m(rows, cols);
    std::size_t t = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = vals[t++];
    return m;
}

M random_matrix(testgen::Rng& rng, std::size_t rows, std::size_t cols) {
    M m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = testgen::random_quat(rng);
    return m;
}

M random_invertible(testgen::Rng& rng, std::size_t n) {
    for (;;) {
        M m = random_matrix(rng, n, n);
        if (rank(m) == n) return m;
    }
}
}  // namespace

TEST_CASE("rank over the division ring") {
    CHECK(rank(from_rows(2, 2, {Q::one(), qi, Q::one(), -qi})) == 2);
    // Three equivalent nodes in one class: the classical singular case.
    CHECK(rank(from_rows(3, 2, {Q::one(), qi, Q::one(), qj, Q::one(), qk})) == 2);
    CHECK(rank(M(3, 4)) == 0);
}

TEST_CASE("solve") {
    testgen::Rng rng(11);
    const M b = random_matrix(rng, 3, 2);
    CHECK(solve(M::identity(3), b) == b);

    CHECK(solve(from_rows(1, 1, {qi}), from_rows(1, 1, {Q::one()})) ==
          from_rows(1, 1, {-qi}));

    // The Lagrange system for f = z at nodes i, j.
    const M a = from_rows(2, 2, {Q::one(), qi, Q::one(), qj});
    const M rhs = from_rows(2, 1, {qi, qj});
    CHECK(solve(a, rhs) == from_rows(2, 1, {Q::zero(), Q::one()}));

    const M singular = from_rows(2, 2, {Q::one(), qi, Q::one(), qi});
    CHECK_THROWS_AS(solve(singular, rhs), SingularMatrix);
}

TEST_CASE("conj transpose") {
    CHECK(from_rows(1, 1, {qi}).conj_transpose() == from_rows(1, 1, {-qi}));
    const M real = from_rows(2, 2, {Q::from_int(1), Q::from_int(2), Q::from_int(3), Q::from_int(4)});
    CHECK(real.conj_transpose() == real.transpose());
    testgen::Rng rng(12);
    for (int t = 0; t < 25; ++t) {
        const M a = random_matrix(rng, 3, 3);
        const M b = random_matrix(rng, 3, 3);
        CHECK((a * b).conj_transpose() == b.conj_transpose() * a.conj_transpose());
    }
}

TEST_CASE("structural matrices") {
    const M j = M::jordan({qi, qj});
    CHECK(j == from_rows(2, 2, {qi, Q::zero(), Q::one(), qj}));
    CHECK(M::unit_column(3) == from_rows(3, 1, {Q::one(), Q::zero(), Q::zero()}));
    const M f = M::nilpotent_shift(4);
    CHECK(matrix_power(f, 4).is_zero());
    CHECK_FALSE(matrix_power(f, 3).is_zero());
    CHECK(matrix_power(f.transpose(), 4).is_zero());
}

TEST_CASE("rank equals rank of the adjoint") {
    testgen::Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        const M a = random_matrix(rng, 3, 4);
        CHECK(rank(a) == rank(a.conj_transpose()));
    }
}

TEST_CASE("solve round trips") {
    testgen::Rng rng(14);
    for (int t = 0; t < 25; ++t) {
        const M a = random_invertible(rng, 3);
        const M b = random_matrix(rng, 3, 2);
        CHECK(a * solve(a, b) == b);
    }
}

TEST_CASE("solve_general and nullspace") {
    // Rank-1 consistent system.
    const M a = from_rows(2, 2, {Q::one(), qi, Q::one(), qi});
    const M b = from_rows(2, 1, {qj, qj});
    const auto sol = solve_general(a, b);
    CHECK(sol.consistent);
    CHECK(sol.rank_a == 1);
    CHECK(a * sol.x == b);

    const M b_bad = from_rows(2, 1, {qj, qk});
    const auto bad = solve_general(a, b_bad);
    CHECK_FALSE(bad.consistent);
    CHECK(bad.rank_augmented == 2);

    const auto basis = nullspace(a);
    REQUIRE(basis.size() == 1);
    CHECK((a * basis[0]).is_zero());

    testgen::Rng rng(15);
    for (int t = 0; t < 25; ++t) {
        const M m = random_matrix(rng, 3, 5);
        const auto kernel = nullspace(m);
        CHECK(kernel.size() == m.cols() - rank(m));
        for (const auto& v : kernel) CHECK((m * v).is_zero());
    }
}

TEST_CASE("float backend elimination") {
    using MD = QMatrix<double>;
    using QD = Quaternion<double>;
    MD a(2, 2);
    a(0, 0) = QD(1, 0, 0, 0);
    a(0, 1) = QD(0, 1, 0, 0);
    a(1, 0) = QD(1, 0, 0, 0);
    a(1, 1) = QD(0, 0, 1, 0);
    MD b(2, 1);
    b(0, 0) = QD(0, 1, 0, 0);
    b(1, 0) = QD(0, 0, 1, 0);
    const MD x = solve(a, b);
    CHECK(near(x(0, 0), QD(0, 0, 0, 0)));
    CHECK(near(x(1, 0), QD(1, 0, 0, 0)));

    // A tiny perturbation below the rank threshold must not raise the rank.
    MD s(2, 2);
    s(0, 0) = QD(1, 0, 0, 0);
    s(0, 1) = QD(0, 1, 0, 0);
    s(1, 0) = QD(1, 0, 0, 0);
    s(1, 1) = QD(1e-13, 1, 0, 0);
    CHECK(rank(s) == 1);
}

TEST_CASE("solve_real_linear") {
    std::vector<std::vector<Rational>> m{{Rational(2), Rational(1)},
                                         {Rational(1), Rational(3)}};
    const auto x = detail::solve_real_linear(m, std::vector<Rational>{Rational(5), Rational(10)});
    CHECK(x[0] == Rational(1));
    CHECK(x[1] == Rational(3));
}
