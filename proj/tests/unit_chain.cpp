#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhz/chain.hpp"
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

Chain chain_of(std::vector<Q> nodes) { return Chain::validate(std::move(nodes)); }

// Same-class pair sharing exactly `prefix` leftmost nodes.
std::pair<Chain, Chain> prefixed_pair(testgen::Rng& rng, std::size_t prefix, std::size_t k1,
                                      std::size_t k2) {
    for (;;) {
        const Q seed = testgen::random_nonreal_quat(rng);
        const Chain a = testgen::random_chain_in_class(rng, seed, k1);
        std::vector<Q> nodes(a.nodes().begin(), a.nodes().begin() + prefix);
        bool ok = true;
        while (nodes.size() < k2) {
            const Q next = testgen::random_equivalent(rng, seed);
            if (!nodes.empty() && !nodes.back().is_real() && near(next, nodes.back().conj()))
                continue;
            if (nodes.size() == prefix && prefix < a.length() && near(next, a[prefix])) continue;
            if (nodes.empty() && prefix == 0 && near(next, a[0])) continue;
            nodes.push_back(next);
        }
        if (!ok) continue;
        const Chain b = chain_of(nodes);
        if (shared_prefix_length(a, b) == prefix) return {a, b};
    }
}
}  // namespace

TEST_CASE("validation") {
    CHECK(Chain::check({qi, qj, qk}).ok);
    const auto conj_adj = Chain::check({qi, -qi});
    CHECK_FALSE(conj_adj.ok);
    CHECK(conj_adj.defect == ChainDefect::ConjugateAdjacency);
    CHECK(conj_adj.index == 1);
    CHECK(conj_adj.message() == "ConjugateAdjacency(1)");

    const auto broken = Chain::check({qi, qi + qi});
    CHECK_FALSE(broken.ok);
    CHECK(broken.defect == ChainDefect::EquivalenceBroken);
    CHECK(broken.message() == "EquivalenceBroken(1)");

    CHECK_FALSE(Chain::check({}).ok);
    CHECK_THROWS_AS(Chain::validate({qi, -qi}), ChainError);

    // Real nodes repeat freely: multiplicity chains.
    CHECK(Chain::check({Q::from_int(2), Q::from_int(2), Q::from_int(2)}).ok);
    // Nonreal repetition is fine too; only the conjugate is barred.
    CHECK(Chain::check({qi, qi}).ok);
}

TEST_CASE("chain polynomial") {
    CHECK(chain_to_poly(chain_of({qi})) == Poly::rho(qi));
    CHECK(chain_to_poly(chain_of({qi, qj})) ==
          Poly(std::vector<Q>{qk, -(qi + qj), Q::one()}));
    const Q two = Q::from_int(2);
    CHECK(chain_to_poly(chain_of({two, two})) == Poly::rho(two) * Poly::rho(two));

    // Distinct chains give distinct polynomials.
    testgen::Rng rng(101);
    for (int t = 0; t < 50; ++t) {
        const Chain a = testgen::random_chain(rng);
        const Chain b = testgen::random_chain(rng);
        if (a.nodes() != b.nodes()) CHECK(chain_to_poly(a) != chain_to_poly(b));
    }
}

TEST_CASE("characteristic polynomial of a class") {
    const Poly xs = characteristic_polynomial(class_of(qi));
    CHECK(xs == Poly(std::vector<Q>{Q::one(), Q::zero(), Q::one()}));  // z^2 + 1
    // Vanishes on the whole class, from either side.
    CHECK(xs.eval_left(qj) == Q::zero());
    CHECK(xs.eval_right(-qk) == Q::zero());
}

TEST_CASE("glcd worked cases") {
    const Poly pij = chain_to_poly(chain_of({qi, qj}));
    const Poly pik = chain_to_poly(chain_of({qi, qk}));
    CHECK(glcd(pij, pik) == Poly::rho(qi));
    CHECK(glcd(Poly::rho(qi), Poly::rho(qj)) == Poly::one());
    testgen::Rng rng(102);
    const Poly f = testgen::random_nonzero_poly(rng, 4);
    CHECK(glcd(f, f) == monic(f));
    CHECK_THROWS_AS(glcd(Poly(), Poly()), std::domain_error);
}

TEST_CASE("glcd equals the shared prefix for same-class chains") {
    testgen::Rng rng(103);
    for (int t = 0; t < 60; ++t) {
        std::uniform_int_distribution<std::size_t> len(1, 3);
        const std::size_t k1 = len(rng), k2 = len(rng);
        std::uniform_int_distribution<std::size_t> pre(0, std::min(k1, k2));
        std::size_t prefix = pre(rng);
        if (prefix == std::min(k1, k2) && k1 == k2) prefix = prefix ? prefix - 1 : 0;
        const auto [a, b] = prefixed_pair(rng, prefix, k1, k2);
        Poly expect = Poly::one();
        for (std::size_t s = 0; s < prefix; ++s) expect = expect * Poly::rho(a[s]);
        CHECK(glcd(chain_to_poly(a), chain_to_poly(b)) == expect);
    }
}

TEST_CASE("lrcm worked cases") {
    const Poly z2p1 = Poly(std::vector<Q>{Q::one(), Q::zero(), Q::one()});
    CHECK(lrcm(Poly::rho(qi), Poly::rho(qj)) == z2p1);
    testgen::Rng rng(104);
    const Poly f = testgen::random_nonzero_poly(rng, 4);
    CHECK(lrcm(f, f) == monic(f));
    const Q two = Q::from_int(2);
    CHECK(lrcm(Poly::rho(qi), Poly::rho(two)) == Poly::rho(qi) * Poly::rho(two));
}

TEST_CASE("lrcm is the minimal common right multiple") {
    testgen::Rng rng(105);
    for (int t = 0; t < 40; ++t) {
        const Poly f = monic(testgen::random_nonzero_poly(rng, 3));
        const Poly g = monic(testgen::random_nonzero_poly(rng, 3));
        const Poly h = lrcm(f, g);
        CHECK(h.is_monic());
        CHECK(divide_left(h, f).remainder.is_zero());
        CHECK(divide_left(h, g).remainder.is_zero());
        CHECK(*h.degree() + *glcd(f, g).degree() == *f.degree() + *g.degree());
    }
}

TEST_CASE("lrcm matches the spherical-chain closed form") {
    testgen::Rng rng(106);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<std::size_t> len(1, 3);
        const std::size_t k1 = len(rng);
        std::uniform_int_distribution<std::size_t> len2(1, k1);
        const std::size_t k2 = len2(rng);
        std::uniform_int_distribution<std::size_t> pre(0, k2 == k1 ? k1 - 1 : k2);
        const auto [a, b] = prefixed_pair(rng, pre(rng), k1, k2);
        const Poly via_system = lrcm(chain_to_poly(a), chain_to_poly(b));
        const Poly via_formula = closed_form_lrcm(std::vector<Chain>{a, b});
        CHECK(via_system == via_formula);
    }
}

TEST_CASE("lrcm_family") {
    CHECK(lrcm_family(std::vector<Poly>{Poly::rho(qi)}) == Poly::rho(qi));
    const Poly z2p1 = Poly(std::vector<Q>{Q::one(), Q::zero(), Q::one()});
    CHECK(lrcm_family(std::vector<Poly>{Poly::rho(qi), Poly::rho(qj), Poly::rho(qk)}) == z2p1);
    const Poly pij = chain_to_poly(chain_of({qi, qj}));
    const Poly pik = chain_to_poly(chain_of({qi, qk}));
    CHECK(*lrcm_family(std::vector<Poly>{pij, pik}).degree() == 3);
    CHECK_THROWS_AS(lrcm_family(std::vector<Poly>{}), std::domain_error);

    testgen::Rng rng(107);
    for (int t = 0; t < 20; ++t) {
        const auto fam = testgen::random_family(rng);
        auto ps = family_polynomials(fam);
        const Poly forward = lrcm_family(ps);
        std::reverse(ps.begin(), ps.end());
        CHECK(lrcm_family(ps) == forward);
    }
}

TEST_CASE("right-ideal membership via vanishing divided differences") {
    testgen::Rng rng(108);
    for (int t = 0; t < 40; ++t) {
        const Chain c = testgen::random_chain(rng);
        const Poly p = chain_to_poly(c);
        const Poly f = p * testgen::random_poly(rng, 2);
        for (const auto& v : divided_difference_left(c, f)) CHECK(v == Q::zero());

        const Poly g = testgen::random_nonzero_poly(rng, 4);
        const auto dd = divided_difference_left(c, g);
        bool all_zero = true;
        for (const auto& v : dd) all_zero = all_zero && v == Q::zero();
        CHECK(all_zero == divide_left(g, p).remainder.is_zero());
    }
}

TEST_CASE("mu of a class") {
    CHECK(mu_of_class(std::vector<Chain>{chain_of({qi, qj})}) == 2);
    CHECK(mu_of_class(std::vector<Chain>{chain_of({qi}), chain_of({qj}), chain_of({qk})}) == 2);
    CHECK(mu_of_class(std::vector<Chain>{chain_of({qi, qj}), chain_of({qi, qk})}) == 3);
    CHECK_THROWS_AS(
        mu_of_class(std::vector<Chain>{chain_of({qi}), chain_of({Q::from_int(2)})}),
        std::invalid_argument);

    testgen::Rng rng(109);
    for (int t = 0; t < 30; ++t) {
        const Q seed = testgen::random_nonreal_quat(rng);
        std::vector<Chain> chains;
        std::uniform_int_distribution<std::size_t> n(1, 4), len(1, 3);
        const std::size_t count = n(rng);
        for (std::size_t s = 0; s < count; ++s)
            chains.push_back(testgen::random_chain_in_class(rng, seed, len(rng)));
        const std::size_t base = mu_of_class(chains);
        std::shuffle(chains.begin(), chains.end(), rng);
        CHECK(mu_of_class(chains) == base);
    }
}

TEST_CASE("kappa") {
    CHECK(kappa(ChainFamily<Rational>{chain_of({qi}), chain_of({Q::from_int(2)})}) == 2);
    CHECK(kappa(ChainFamily<Rational>{chain_of({qi}), chain_of({qj}), chain_of({qk})}) == 2);
    CHECK(kappa(ChainFamily<Rational>{chain_of({qi, qj}), chain_of({qi, qk}),
                                      chain_of({Q::from_int(3)})}) == 4);
    // kappa() itself cross-asserts against deg lrcm on every call; hammer it.
    testgen::Rng rng(110);
    for (int t = 0; t < 30; ++t) CHECK_NOTHROW(kappa(testgen::random_family(rng)));
}
