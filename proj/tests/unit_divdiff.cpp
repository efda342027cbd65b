#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhz/divided_differences.hpp"
#include "support/testgen.hpp"

using namespace qhz;
using testgen::Chain;
using testgen::Poly;
using testgen::Q;

namespace {
const Q qi = Q::unit_i();
const Q qj = Q::unit_j();
const Q qk = Q::unit_k();

Poly zpow(std::size_t p) { return Poly::monomial(p, Q::one()); }

Rational factorial(std::size_t n) {
    Rational f(1);
    for (std::size_t t = 2; t <= n; ++t) f *= Rational(static_cast<long long>(t));
    return f;
}
}  // namespace

TEST_CASE("worked delta columns on (i, j)") {
    const std::vector<Q> nodes{qi, qj};
    const auto d2 = divided_difference_left(nodes, zpow(2));
    REQUIRE(d2.size() == 2);
    CHECK(d2[0] == -Q::one());
    CHECK(d2[1] == qi + qj);

    const auto d3 = divided_difference_left(nodes, zpow(3));
    CHECK(d3[0] == -qi);
    CHECK(d3[1] == Q(Rational(-2), Rational(0), Rational(0), Rational(-1)));  // -2 - k
}

TEST_CASE("repeated nodes collapse to scaled derivatives") {
    testgen::Rng rng(201);
    for (int t = 0; t < 40; ++t) {
        const Q a = testgen::random_nonreal_quat(rng);
        const Poly f = testgen::random_poly(rng, 5);
        for (std::size_t k = 1; k <= 3; ++k) {
            const std::vector<Q> nodes(k + 1, a);
            const auto dd = divided_difference_left(nodes, f);
            CHECK(dd[k] == derivative(f, k).eval_left(a) * Q::real(Rational(1) / factorial(k)));
        }
    }
}

TEST_CASE("prefix of repeated nodes keeps derivative values") {
    // Chain (a, a, b): the first two entries agree with the pure-multiplicity
    // formulas regardless of the later nodes.
    testgen::Rng rng(202);
    for (int t = 0; t < 25; ++t) {
        const Q a = testgen::random_nonreal_quat(rng);
        Q b = testgen::random_equivalent(rng, a);
        while (near(b, a.conj())) b = testgen::random_equivalent(rng, a);
        const Poly f = testgen::random_poly(rng, 5);
        const auto dd = divided_difference_left(std::vector<Q>{a, a, b}, f);
        CHECK(dd[0] == f.eval_left(a));
        CHECK(dd[1] == derivative(f).eval_left(a));
    }
}

TEST_CASE("right divided differences mirror under conjugation") {
    testgen::Rng rng(203);
    for (int t = 0; t < 40; ++t) {
        const Chain c = testgen::random_chain(rng);
        const Poly f = testgen::random_poly(rng, 5);
        const auto left = divided_difference_left(c, f);
        std::vector<Q> conj_nodes;
        for (const auto& n : c.nodes()) conj_nodes.push_back(n.conj());
        const auto right = divided_difference_right(conj_nodes, conj_sharp(f));
        REQUIRE(left.size() == right.size());
        for (std::size_t s = 0; s < left.size(); ++s) CHECK(left[s].conj() == right[s]);
    }
}

TEST_CASE("newton reconstruction") {
    const auto single = newton_reconstruct(std::vector<Q>{qi}, std::vector<Q>{qk});
    CHECK(single == Poly(qk));

    CHECK(newton_reconstruct(std::vector<Q>{qi, qj}, std::vector<Q>{Q::zero(), Q::zero()})
              .is_zero());

    // Reconstruction of z^2 data on (i, j) agrees with z^2 modulo P_(i,j).
    const Chain c = Chain::validate({qi, qj});
    const auto delta = divided_difference_left(c, zpow(2));
    const Poly g = newton_reconstruct(c, delta);
    CHECK(divide_left(g - zpow(2), chain_to_poly(c)).remainder.is_zero());
    const auto redo = divided_difference_left(c, g);
    CHECK(redo == delta);

    testgen::Rng rng(204);
    for (int t = 0; t < 40; ++t) {
        const Chain chain = testgen::random_chain(rng);
        std::vector<Q> delta_rand;
        for (std::size_t s = 0; s < chain.length(); ++s)
            delta_rand.push_back(testgen::random_quat(rng));
        const Poly rec = newton_reconstruct(chain, delta_rand);
        CHECK(divided_difference_left(chain, rec) == delta_rand);
        if (!rec.is_zero()) CHECK(*rec.degree() < chain.length());
    }
}

TEST_CASE("closed form for non-equivalent nodes") {
    const Q a1 = qi;
    const Q a2 = qj + qj;  // 2j, different norm
    testgen::Rng rng(205);
    for (int t = 0; t < 25; ++t) {
        const Poly f = testgen::random_poly(rng, 5);
        const auto direct = divided_difference_left(std::vector<Q>{a1, a2}, f);
        CHECK(closed_form_nonequivalent(a1, a2, f) == direct[1]);
    }

    // Real pair: the plain difference quotient.
    CHECK(closed_form_nonequivalent(Q::zero(), Q::one(), zpow(2)) == Q::one());

    // Commuting complex-like pair: the transform fixes a2.
    const Q c1(Rational(1), Rational(2), Rational(0), Rational(0));
    const Q c2(Rational(3), Rational(-1), Rational(0), Rational(0));
    const Poly f = zpow(3);
    CHECK(closed_form_nonequivalent(c1, c2, f) ==
          (c2 - c1).inverse() * (f.eval_left(c2) - f.eval_left(c1)));

    CHECK_THROWS_AS(closed_form_nonequivalent(qi, qj, zpow(2)), std::domain_error);
}

TEST_CASE("closed form for equivalent nodes") {
    CHECK(closed_form_equivalent(qi, qj, zpow(2)) == qi + qj);
    testgen::Rng rng(206);
    for (int t = 0; t < 25; ++t) {
        const Q a = testgen::random_nonreal_quat(rng);
        CHECK(closed_form_equivalent(a, a, zpow(1)) == Q::one());
    }
    for (int t = 0; t < 200; ++t) {
        const Q a1 = testgen::random_nonreal_quat(rng);
        const Q a2 = testgen::random_equivalent(rng, a1);
        const Poly f = testgen::random_poly(rng, 5);
        const auto direct = divided_difference_left(std::vector<Q>{a1, a2}, f);
        CHECK(closed_form_equivalent(a1, a2, f) == direct[1]);
    }
    CHECK_THROWS_AS(closed_form_equivalent(qi, qj + qj, zpow(2)), std::domain_error);
    CHECK_THROWS_AS(
        closed_form_equivalent(Q::from_int(2), Q::from_int(2), zpow(2)), std::domain_error);
}

TEST_CASE("shift recursion lemma") {
    // x = 0 on monomials is the column recursion of the Vandermonde entries.
    const std::vector<Q> nodes{qi, qj, qk};
    for (std::size_t p = 1; p <= 5; ++p)
        CHECK(lemma_shift_recursion_check(nodes, Q::zero(), zpow(p)));

    testgen::Rng rng(207);
    for (int t = 0; t < 60; ++t) {
        std::uniform_int_distribution<int> xv(-3, 3);
        const Q x = Q::real(Rational(xv(rng), 2));
        const Poly h = testgen::random_poly(rng, 6);
        std::uniform_int_distribution<std::size_t> klen(1, 4);
        std::vector<Q> tuple;
        for (std::size_t s = klen(rng); s-- > 0;) tuple.push_back(testgen::random_quat(rng));
        CHECK(lemma_shift_recursion_check(tuple, x, h));
    }
    CHECK_THROWS_AS(lemma_shift_recursion_check(nodes, qi, zpow(2)), std::invalid_argument);
}

TEST_CASE("single-node representation formulas") {
    // Values at two equivalent points determine the value anywhere in the
    // class, on both sides.
    testgen::Rng rng(208);
    for (int t = 0; t < 60; ++t) {
        const Q a1 = testgen::random_nonreal_quat(rng);
        Q a2 = testgen::random_equivalent(rng, a1);
        while (near(a2, a1)) a2 = testgen::random_equivalent(rng, a1);
        Q a3 = testgen::random_equivalent(rng, a1);
        while (near(a3, a1) || near(a3, a2)) a3 = testgen::random_equivalent(rng, a1);
        const Poly f = testgen::random_poly(rng, 5);

        const Q d12 = (a1 - a2).inverse();
        CHECK(f.eval_left(a3) ==
              (a3 - a2) * d12 * f.eval_left(a1) + (a1 - a3) * d12 * f.eval_left(a2));
        CHECK(f.eval_right(a3) ==
              f.eval_right(a1) * d12 * (a3 - a2) + f.eval_right(a2) * d12 * (a1 - a3));
    }
}
