#pragma once

#include <cstddef>
#include <stdexcept>

#include "qhz/chain.hpp"
#include "qhz/matrix.hpp"
#include "qhz/vandermonde.hpp"

namespace qhz {

/// Coefficient matrices of the representation identity
/// Delta(a_3; f) = A Delta(a_1; f) + B Delta(a_2; f) for every polynomial f.
template <class S>
struct RepMatrices {
    QMatrix<S> A;  // k_3 x k_1
    QMatrix<S> B;  // k_3 x k_2
};

/// General construction: pick M = k_1 + k_2 - nu_2, form the row selection
/// [I_{k_1} 0 0; 0 0 I_{k_2-nu_2}] of V_M(a_1, a_2) into the square matrix K
/// (invertible under the stated conditions) and read A, B off
/// V_M(a_3) K^{-1} applied to the respective column selections.
///
/// Requires: all chains in one class, k_2 <= k_1, k_3 <= k_1 and
/// k_3 - nu_3 <= k_2 - nu_2, where nu_t counts leftmost nodes shared with a_1.
template <class S>
RepMatrices<S> rep_matrices(const SphericalChain<S>& a1, const SphericalChain<S>& a2,
                            const SphericalChain<S>& a3) {
    if (!(a1.cls() == a2.cls()) || !(a1.cls() == a3.cls()))
        throw std::invalid_argument("rep_matrices: chains in different conjugacy classes");
    const std::size_t k1 = a1.length(), k2 = a2.length(), k3 = a3.length();
    if (k2 > k1) throw std::invalid_argument("rep_matrices: requires k2 <= k1");
    const std::size_t nu2 = shared_prefix_length(a1, a2);
    const std::size_t nu3 = shared_prefix_length(a1, a3);
    if (k3 > k1) throw std::invalid_argument("rep_matrices: requires k3 <= k1");
    if (k3 - nu3 > k2 - nu2)
        throw std::invalid_argument("rep_matrices: requires k3 - nu3 <= k2 - nu2");

    const std::size_t m = k1 + k2 - nu2;
    const QMatrix<S> v12 = build_left(ChainFamily<S>{a1, a2}, m).matrix;
    QMatrix<S> k(m, m);
    k.set_block(0, 0, v12.block(0, 0, k1, m));
    k.set_block(k1, 0, v12.block(k1 + nu2, 0, k2 - nu2, m));

    QMatrix<S> rhs(m, k1 + k2);
    for (std::size_t t = 0; t < k1; ++t) rhs(t, t) = Quaternion<S>::one();
    for (std::size_t t = 0; t < k2 - nu2; ++t)
        rhs(k1 + t, k1 + nu2 + t) = Quaternion<S>::one();

    QMatrix<S> x;
    try {
        x = solve(k, rhs);
    } catch (const SingularMatrix&) {
        throw std::logic_error("rep_matrices: selection matrix unexpectedly singular");
    }
    const QMatrix<S> v3 = build_left(ChainFamily<S>{a3}, m).matrix;
    const QMatrix<S> full = v3 * x;
    return {full.block(0, 0, k3, k1), full.block(0, k1, k3, k2)};
}

/// Closed form for three equal-length chains in one class with distinct
/// leftmost nodes, via V_a = V^l_k(a) and T_a = V_a^{-1} J_a^k V_a:
///   A = V_3 (T_3 - T_2)(T_1 - T_2)^{-1} V_1^{-1},
///   B = V_3 (T_3 - T_1)(T_2 - T_1)^{-1} V_2^{-1}.
/// Both A and B come out lower triangular. Coincides with rep_matrices().
template <class S>
RepMatrices<S> rep_matrices_equal_length(const SphericalChain<S>& a1,
                                         const SphericalChain<S>& a2,
                                         const SphericalChain<S>& a3) {
    if (!(a1.cls() == a2.cls()) || !(a1.cls() == a3.cls()))
        throw std::invalid_argument("rep_matrices_equal_length: different conjugacy classes");
    const std::size_t k = a1.length();
    if (a2.length() != k || a3.length() != k)
        throw std::invalid_argument("rep_matrices_equal_length: chains must have equal length");
    if (near(a1.leftmost(), a2.leftmost()))
        throw std::invalid_argument("rep_matrices_equal_length: leftmost nodes must differ");

    const auto companion = [&](const SphericalChain<S>& c, QMatrix<S>& v, QMatrix<S>& t) {
        v = build_left(ChainFamily<S>{c}, k).matrix;
        const QMatrix<S> genk = matrix_power(QMatrix<S>::jordan(c.nodes()), k);
        t = solve(v, genk * v);
    };
    QMatrix<S> v1, t1, v2, t2, v3, t3;
    companion(a1, v1, t1);
    companion(a2, v2, t2);
    companion(a3, v3, t3);

    const QMatrix<S> id = QMatrix<S>::identity(k);
    QMatrix<S> a, b;
    try {
        a = v3 * (t3 - t2) * solve(t1 - t2, solve(v1, id));
        b = v3 * (t3 - t1) * solve(t2 - t1, solve(v2, id));
    } catch (const SingularMatrix&) {
        throw std::domain_error(
            "rep_matrices_equal_length: singular T-difference; preconditions violated");
    }
    return {std::move(a), std::move(b)};
}

}  // namespace qhz
