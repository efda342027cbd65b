#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qhz/chain.hpp"
#include "qhz/divided_differences.hpp"
#include "qhz/matrix.hpp"
#include "qhz/polynomial.hpp"
#include "qhz/vandermonde.hpp"

namespace qhz {

/// Lagrange-Hermite data: for each chain a_i the prescribed divided
/// differences c_{i,1}, ..., c_{i,k_i}.
template <class S>
struct InterpolationProblem {
    ChainFamily<S> family;
    std::vector<std::vector<Quaternion<S>>> targets;

    std::size_t total_conditions() const {
        std::size_t n = 0;
        for (const auto& c : family) n += c.length();
        return n;
    }

    void check_shape() const {
        if (family.empty()) throw std::invalid_argument("interpolation: empty family");
        if (family.size() != targets.size())
            throw std::invalid_argument("interpolation: family/target count mismatch");
        for (std::size_t i = 0; i < family.size(); ++i)
            if (family[i].length() != targets[i].size())
                throw std::invalid_argument("interpolation: target length mismatch");
    }
};

/// solvable == false is a data outcome, not an error; the rank pair is the
/// certificate. When solvable, every solution is particular + modulus * h
/// (left problem) or particular + h * modulus (right problem), and particular
/// is the unique solution of degree < rank_v.
template <class S>
struct InterpolationSolution {
    bool solvable = false;
    QPolynomial<S> particular;
    QPolynomial<S> modulus;
    std::size_t rank_v = 0;
    std::size_t rank_augmented = 0;
    Side side = Side::Left;
};

/// Congruence condition f = h (mod_r P_a) reduced to the equivalent
/// divided-difference targets [a_1..a_j; h] for j = 1..k.
template <class S>
std::vector<Quaternion<S>> reduce_congruence(const SphericalChain<S>& chain,
                                             const QPolynomial<S>& h) {
    if (!h.is_zero() && *h.degree() >= chain.length())
        throw std::domain_error("reduce_congruence: deg h must be below the chain length");
    return divided_difference_left(chain, h);
}

namespace detail {

template <class S>
QMatrix<S> stacked_targets(const InterpolationProblem<S>& prob) {
    QMatrix<S> c(prob.total_conditions(), 1);
    std::size_t r = 0;
    for (const auto& t : prob.targets)
        for (const auto& v : t) c(r++, 0) = v;
    return c;
}

template <class S>
QPolynomial<S> poly_from_column(const QMatrix<S>& x) {
    std::vector<Quaternion<S>> coeffs(x.rows());
    for (std::size_t j = 0; j < x.rows(); ++j) coeffs[j] = x(j, 0);
    return QPolynomial<S>(std::move(coeffs));
}

}  // namespace detail

/// Solve the left Lagrange-Hermite problem. With pairwise-distinct leftmost
/// nodes and no three in one class the square system is invertible and the
/// unique degree < N solution comes from one exact solve. Otherwise
/// solvability is decided by the rank test on the first kappa columns and a
/// consistent problem still has a unique solution of degree < kappa.
template <class S>
InterpolationSolution<S> solve(const InterpolationProblem<S>& prob) {
    prob.check_shape();
    const std::size_t n = prob.total_conditions();
    const QMatrix<S> c = detail::stacked_targets(prob);
    const QPolynomial<S> g = lrcm_family(family_polynomials(prob.family));

    InterpolationSolution<S> out;
    out.modulus = g;
    if (invertibility_check(prob.family)) {
        const QMatrix<S> v = build_left(prob.family, n).matrix;
        out.particular = detail::poly_from_column(solve(v, c));
        out.solvable = true;
        out.rank_v = out.rank_augmented = n;
        return out;
    }
    const std::size_t kap = kappa(prob.family);
    const QMatrix<S> vk = build_left(prob.family, kap).matrix;
    const GeneralSolution<S> sol = solve_general(vk, c);
    if (sol.rank_a != kap)
        throw std::logic_error("solve: kappa leading columns unexpectedly dependent");
    out.rank_v = sol.rank_a;
    out.rank_augmented = sol.rank_augmented;
    out.solvable = sol.consistent;
    if (out.solvable) out.particular = detail::poly_from_column(sol.x);
    return out;
}

/// Right-sided problem [f; a_{i,1}..a_{i,j}]_r = c_{i,j}, solved by
/// conjugation: conj-sharp maps it onto the left problem on the conjugated
/// chains with conjugated targets. The modulus then multiplies on the left.
template <class S>
InterpolationSolution<S> solve_right(const InterpolationProblem<S>& prob) {
    prob.check_shape();
    InterpolationProblem<S> mirrored;
    mirrored.family = conjugated(prob.family);
    mirrored.targets.reserve(prob.targets.size());
    for (const auto& t : prob.targets) {
        std::vector<Quaternion<S>> row;
        row.reserve(t.size());
        for (const auto& v : t) row.push_back(v.conj());
        mirrored.targets.push_back(std::move(row));
    }
    InterpolationSolution<S> left = solve(mirrored);
    InterpolationSolution<S> out;
    out.solvable = left.solvable;
    out.particular = conj_sharp(left.particular);
    out.modulus = conj_sharp(left.modulus);
    out.rank_v = left.rank_v;
    out.rank_augmented = left.rank_augmented;
    out.side = Side::Right;
    return out;
}

struct ConditionReport {
    std::size_t chain = 0;  // 0-based chain index
    std::size_t order = 0;  // 1-based prefix length j
    bool match = false;
    double deviation = 0.0;
};

template <class S>
struct VerificationReport {
    bool all_match = false;
    double max_deviation = 0.0;
    std::vector<ConditionReport> conditions;
    std::vector<Quaternion<S>> residuals;
};

/// Recompute every divided difference of f and compare against the targets.
template <class S>
VerificationReport<S> verify(const InterpolationProblem<S>& prob, const QPolynomial<S>& f,
                             Side side = Side::Left) {
    prob.check_shape();
    VerificationReport<S> rep;
    rep.all_match = true;
    for (std::size_t i = 0; i < prob.family.size(); ++i) {
        const auto actual = side == Side::Left
                                ? divided_difference_left(prob.family[i], f)
                                : divided_difference_right(prob.family[i], f);
        for (std::size_t j = 0; j < actual.size(); ++j) {
            const Quaternion<S> diff = actual[j] - prob.targets[i][j];
            ConditionReport c;
            c.chain = i;
            c.order = j + 1;
            c.match = near(actual[j], prob.targets[i][j]);
            c.deviation = std::sqrt(scalar_traits<S>::to_double(diff.norm_sq()));
            rep.all_match = rep.all_match && c.match;
            rep.max_deviation = std::max(rep.max_deviation, c.deviation);
            rep.conditions.push_back(c);
            rep.residuals.push_back(diff);
        }
    }
    return rep;
}

template <class S>
struct KernelBasis {
    QPolynomial<S> modulus;  // G = lrcm of the chain polynomials
    std::size_t nullity = 0;
    std::vector<QPolynomial<S>> basis;  // G z^t, t = 0..nullity-1
};

/// Null space of V^l_m as the coefficient vectors of {G q : deg q < m - deg G},
/// cross-checked against the elimination nullity.
template <class S>
KernelBasis<S> kernel_basis(const ChainFamily<S>& fam, std::size_t m) {
    if (m == 0) throw std::invalid_argument("kernel_basis: m must be at least 1");
    KernelBasis<S> out;
    out.modulus = lrcm_family(family_polynomials(fam));
    const std::size_t kap = *out.modulus.degree();
    out.nullity = m > kap ? m - kap : 0;
    for (std::size_t t = 0; t < out.nullity; ++t)
        out.basis.push_back(out.modulus * QPolynomial<S>::monomial(t, Quaternion<S>::one()));

    const QMatrix<S> v = build_left(fam, m).matrix;
    const auto elim = nullspace(v);
    if (elim.size() != out.nullity)
        throw std::logic_error("kernel_basis: elimination nullity disagrees with m - kappa");
    for (const auto& p : out.basis) {
        QMatrix<S> col(m, 1);
        for (std::size_t j = 0; j < m; ++j) col(j, 0) = p.coeff(j);
        if (!(v * col).is_zero())
            throw std::logic_error("kernel_basis: modulus multiple not annihilated");
    }
    if constexpr (scalar_traits<S>::is_exact) {
        for (const auto& vec : elim) {
            const QPolynomial<S> p = detail::poly_from_column(vec);
            if (!divide_left(p, out.modulus).remainder.is_zero())
                throw std::logic_error("kernel_basis: elimination vector escapes <G>_r");
        }
    }
    return out;
}

}  // namespace qhz
