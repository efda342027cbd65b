#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qhz/chain.hpp"
#include "qhz/polynomial.hpp"
#include "qhz/quaternion.hpp"

namespace qhz {

/// Column of left divided differences [a_1, ..., a_j; f] for j = 1..k:
/// iterated left backward shifts evaluated at successive nodes. The
/// definition is meaningful for any node tuple, not only spherical chains.
template <class S>
std::vector<Quaternion<S>> divided_difference_left(const std::vector<Quaternion<S>>& nodes,
                                                   const QPolynomial<S>& f) {
    std::vector<Quaternion<S>> values;
    values.reserve(nodes.size());
    QPolynomial<S> g = f;
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (t > 0) g = lshift(nodes[t - 1], g);
        values.push_back(g.eval_left(nodes[t]));
    }
    return values;
}

template <class S>
std::vector<Quaternion<S>> divided_difference_left(const SphericalChain<S>& chain,
                                                   const QPolynomial<S>& f) {
    return divided_difference_left(chain.nodes(), f);
}

/// Right counterpart: [f; a_1, ..., a_j] via right shifts and right
/// evaluation.
template <class S>
std::vector<Quaternion<S>> divided_difference_right(const std::vector<Quaternion<S>>& nodes,
                                                    const QPolynomial<S>& f) {
    std::vector<Quaternion<S>> values;
    values.reserve(nodes.size());
    QPolynomial<S> g = f;
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (t > 0) g = rshift(nodes[t - 1], g);
        values.push_back(g.eval_right(nodes[t]));
    }
    return values;
}

template <class S>
std::vector<Quaternion<S>> divided_difference_right(const SphericalChain<S>& chain,
                                                    const QPolynomial<S>& f) {
    return divided_difference_right(chain.nodes(), f);
}

/// Newton form sum_j rho_{a_1} ... rho_{a_{j-1}} delta_j: the unique
/// polynomial of degree < k whose divided-difference column on the nodes
/// reproduces delta.
template <class S>
QPolynomial<S> newton_reconstruct(const std::vector<Quaternion<S>>& nodes,
                                  const std::vector<Quaternion<S>>& delta) {
    if (nodes.size() != delta.size())
        throw std::invalid_argument("newton_reconstruct: length mismatch");
    QPolynomial<S> result;
    QPolynomial<S> prefix = QPolynomial<S>::one();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        result += prefix * delta[j];
        prefix = prefix * QPolynomial<S>::rho(nodes[j]);
    }
    return result;
}

template <class S>
QPolynomial<S> newton_reconstruct(const SphericalChain<S>& chain,
                                  const std::vector<Quaternion<S>>& delta) {
    return newton_reconstruct(chain.nodes(), delta);
}

/// [a_1, a_2; f] for non-equivalent nodes: the classical difference quotient
/// with a_2 replaced by its similarity transform
/// t = (a_2 - conj(a_1))^{-1} a_2 (a_2 - conj(a_1)).
template <class S>
Quaternion<S> closed_form_nonequivalent(const Quaternion<S>& a1, const Quaternion<S>& a2,
                                        const QPolynomial<S>& f) {
    if (equivalent(a1, a2))
        throw std::domain_error(
            "closed_form_nonequivalent: nodes are equivalent, use closed_form_equivalent");
    const Quaternion<S> s = a2 - a1.conj();
    const Quaternion<S> t = s.inverse() * a2 * s;
    return (t - a1).inverse() * (f.eval_left(t) - f.eval_left(a1));
}

/// [a_1, a_2; f] for equivalent nodes a_1 ~ a_2 with a_2 nonreal: mixes the
/// values of f with the value of f' at a_1,
/// (a_2 - conj(a_2))^{-1} (f(a_2) - f(a_1) + (a_2 - conj(a_1)) f'(a_1)).
template <class S>
Quaternion<S> closed_form_equivalent(const Quaternion<S>& a1, const Quaternion<S>& a2,
                                     const QPolynomial<S>& f) {
    if (!equivalent(a1, a2))
        throw std::domain_error("closed_form_equivalent: nodes are not equivalent");
    const Quaternion<S> denom = a2 - a2.conj();
    if (denom.is_zero())
        throw std::domain_error("closed_form_equivalent: a2 is real");
    const QPolynomial<S> fp = derivative(f);
    return denom.inverse() *
           (f.eval_left(a2) - f.eval_left(a1) + (a2 - a1.conj()) * fp.eval_left(a1));
}

/// Recursion [a_1..a_k; h] = (a_k - x)[a_1..a_k; L_x h] + [a_1..a_{k-1}; L_x h]
/// for real x, checked as stated. For k = 1 the trailing term degenerates to
/// h(x) and the identity is the plain remainder identity at x.
template <class S>
bool lemma_shift_recursion_check(const std::vector<Quaternion<S>>& nodes,
                                 const Quaternion<S>& x, const QPolynomial<S>& h) {
    if (!x.is_real())
        throw std::invalid_argument("lemma_shift_recursion_check: x must be real");
    if (nodes.empty()) return true;
    const QPolynomial<S> shifted = lshift(x, h);
    const std::vector<Quaternion<S>> lhs = divided_difference_left(nodes, h);
    const std::vector<Quaternion<S>> dds = divided_difference_left(nodes, shifted);
    const std::size_t k = nodes.size();
    Quaternion<S> rhs = (nodes[k - 1] - x) * dds[k - 1];
    rhs += (k >= 2) ? dds[k - 2] : h.eval_left(x);
    return near(lhs[k - 1], rhs);
}

}  // namespace qhz
