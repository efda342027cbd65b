#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qhz/chain.hpp"
#include "qhz/divided_differences.hpp"
#include "qhz/matrix.hpp"

namespace qhz {

enum class Side { Left, Right };

/// Confluent Vandermonde matrix of a chain family: for each chain, the k x m
/// block of divided differences of the monomials along chain prefixes (left),
/// or its m x k right counterpart. Blocks stack vertically on the left side
/// and concatenate horizontally on the right side.
template <class S>
struct ConfluentVandermonde {
    ChainFamily<S> family;
    std::size_t m = 0;
    Side side = Side::Left;
    QMatrix<S> matrix;
};

namespace detail {

// Generator-power construction: columns E_k, J E_k, ..., J^{m-1} E_k.
template <class S>
QMatrix<S> left_block_by_powers(const std::vector<Quaternion<S>>& nodes, std::size_t m) {
    const std::size_t k = nodes.size();
    const QMatrix<S> gen = QMatrix<S>::jordan(nodes);
    QMatrix<S> block(k, m);
    QMatrix<S> col = QMatrix<S>::unit_column(k);
    for (std::size_t j = 0; j < m; ++j) {
        block.set_block(0, j, col);
        if (j + 1 < m) col = gen * col;
    }
    return block;
}

// Divided-difference construction: entry (i, j) = [a_1..a_{i+1}; z^j].
template <class S>
QMatrix<S> left_block_by_definition(const std::vector<Quaternion<S>>& nodes, std::size_t m) {
    const std::size_t k = nodes.size();
    QMatrix<S> block(k, m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto col = divided_difference_left(
            nodes, QPolynomial<S>::monomial(j, Quaternion<S>::one()));
        for (std::size_t i = 0; i < k; ++i) block(i, j) = col[i];
    }
    return block;
}

// Rows E_k^T, E_k^T J^T, ..., E_k^T (J^T)^{m-1}.
template <class S>
QMatrix<S> right_block_by_powers(const std::vector<Quaternion<S>>& nodes, std::size_t m) {
    const std::size_t k = nodes.size();
    const QMatrix<S> gen_t = QMatrix<S>::jordan(nodes).transpose();
    QMatrix<S> block(m, k);
    QMatrix<S> row = QMatrix<S>::unit_column(k).transpose();
    for (std::size_t j = 0; j < m; ++j) {
        block.set_block(j, 0, row);
        if (j + 1 < m) row = row * gen_t;
    }
    return block;
}

// Entry (i, j) = [z^i; a_1..a_{j+1}]_r.
template <class S>
QMatrix<S> right_block_by_definition(const std::vector<Quaternion<S>>& nodes, std::size_t m) {
    const std::size_t k = nodes.size();
    QMatrix<S> block(m, k);
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = divided_difference_right(
            nodes, QPolynomial<S>::monomial(i, Quaternion<S>::one()));
        for (std::size_t j = 0; j < k; ++j) block(i, j) = row[j];
    }
    return block;
}

}  // namespace detail

/// Left confluent Vandermonde matrix, built both from the divided-difference
/// definition and from generator powers; the two constructions must agree.
template <class S>
ConfluentVandermonde<S> build_left(const ChainFamily<S>& fam, std::size_t m) {
    if (m == 0) throw std::invalid_argument("build_left: m must be at least 1");
    std::size_t total = 0;
    for (const auto& c : fam) total += c.length();
    QMatrix<S> v(total, m);
    std::size_t r = 0;
    for (const auto& c : fam) {
        const QMatrix<S> block = detail::left_block_by_powers(c.nodes(), m);
        if (!near(block, detail::left_block_by_definition(c.nodes(), m)))
            throw std::logic_error("build_left: construction mismatch");
        v.set_block(r, 0, block);
        r += c.length();
    }
    return {fam, m, Side::Left, std::move(v)};
}

template <class S>
ConfluentVandermonde<S> build_right(const ChainFamily<S>& fam, std::size_t m) {
    if (m == 0) throw std::invalid_argument("build_right: m must be at least 1");
    std::size_t total = 0;
    for (const auto& c : fam) total += c.length();
    QMatrix<S> v(m, total);
    std::size_t col = 0;
    for (const auto& c : fam) {
        const QMatrix<S> block = detail::right_block_by_powers(c.nodes(), m);
        if (!near(block, detail::right_block_by_definition(c.nodes(), m)))
            throw std::logic_error("build_right: construction mismatch");
        v.set_block(0, col, block);
        col += c.length();
    }
    return {fam, m, Side::Right, std::move(v)};
}

/// Residual of the Stein equation characterizing single-chain matrices:
/// left:  V - J V F_m^T - E_k E_m^T,
/// right: V - F_m V J^T - E_m E_k^T.
/// Exactly zero for a genuinely built matrix; any single-entry perturbation
/// breaks it (the solutions are unique).
template <class S>
QMatrix<S> stein_residual(const ConfluentVandermonde<S>& v) {
    if (v.family.size() != 1)
        throw std::invalid_argument("stein_residual: single-chain matrices only");
    const std::size_t k = v.family.front().length();
    const QMatrix<S> gen = QMatrix<S>::jordan(v.family.front().nodes());
    const QMatrix<S> f = QMatrix<S>::nilpotent_shift(v.m);
    const QMatrix<S> ek = QMatrix<S>::unit_column(k);
    const QMatrix<S> em = QMatrix<S>::unit_column(v.m);
    if (v.side == Side::Left)
        return v.matrix - gen * v.matrix * f.transpose() - ek * em.transpose();
    return v.matrix - f * v.matrix * gen.transpose() - em * ek.transpose();
}

/// Lemma-level duality: V^l_m(a_1, ..., a_n) = (V^r_m(conj a_1, ..., conj a_n))*.
template <class S>
bool adjoint_duality_check(const ChainFamily<S>& fam, std::size_t m) {
    const ConfluentVandermonde<S> left = build_left(fam, m);
    const ConfluentVandermonde<S> right = build_right(conjugated(fam), m);
    return near(left.matrix, right.matrix.conj_transpose());
}

/// rank V_m = min(m, kappa), cross-checked against the elimination rank of
/// both built matrices.
template <class S>
std::size_t rank_via_formula(const ChainFamily<S>& fam, std::size_t m) {
    const std::size_t predicted = std::min(m, kappa(fam));
    const std::size_t left = rank(build_left(fam, m).matrix);
    const std::size_t right = rank(build_right(fam, m).matrix);
    if (left != predicted || right != predicted)
        throw std::logic_error("rank_via_formula: elimination rank disagrees with min(m, kappa)");
    return predicted;
}

/// Invertibility of the square matrix (m = sum of chain lengths): the
/// leftmost nodes must be pairwise distinct with no three in one class.
template <class S>
bool invertibility_check(const ChainFamily<S>& fam) {
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (near(fam[i].leftmost(), fam[j].leftmost())) return false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        std::size_t in_class = 1;
        for (std::size_t j = 0; j < fam.size(); ++j)
            if (j != i && fam[j].cls() == fam[i].cls()) ++in_class;
        if (in_class >= 3) return false;
    }
    return true;
}

}  // namespace qhz
