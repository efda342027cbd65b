#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qhz/chain.hpp"
#include "qhz/interpolation.hpp"
#include "qhz/matrix.hpp"
#include "qhz/polynomial.hpp"
#include "qhz/vandermonde.hpp"

namespace qhz {

/// Power series truncated at a declared order N, together with a bound on
/// the discarded mass sum_{s >= N} |f_s|^2. Results computed from truncations
/// are stated as "within bound"; a series of unknown decay carries the
/// infinite marker (tail_finite = false) instead of a number.
template <class S>
struct TruncatedSeries {
    std::vector<Quaternion<S>> coeffs;
    S tail_sq{};
    bool tail_finite = true;

    std::size_t order() const { return coeffs.size(); }

    Quaternion<S> coeff(std::size_t s) const {
        return s < coeffs.size() ? coeffs[s] : Quaternion<S>::zero();
    }

    /// Tail mass bound measured from an earlier cutoff M <= order: the bound
    /// from order plus the stored coefficients in [M, order).
    S tail_sq_from(std::size_t m) const {
        S t = tail_sq;
        for (std::size_t s = m; s < coeffs.size(); ++s) t += coeffs[s].norm_sq();
        return t;
    }

    /// Coefficientwise conjugation f -> f#; the tail bound is unchanged.
    TruncatedSeries sharp() const {
        TruncatedSeries out = *this;
        for (auto& c : out.coeffs) c = c.conj();
        return out;
    }
};

/// Partial sum of |f_s|^2 below the truncation order.
template <class S>
S norm_sq_truncated(const TruncatedSeries<S>& f) {
    S acc{};
    for (const auto& c : f.coeffs) acc += c.norm_sq();
    return acc;
}

template <class S>
TruncatedSeries<S> from_polynomial(const QPolynomial<S>& f, std::size_t order) {
    TruncatedSeries<S> out;
    out.coeffs.resize(order);
    for (std::size_t s = 0; s < order; ++s) out.coeffs[s] = f.coeff(s);
    for (std::size_t s = order; s < f.coeffs().size(); ++s)
        out.tail_sq += f.coeff(s).norm_sq();
    return out;
}

/// k_a(z) = sum a^s z^s; geometric tail |a|^{2N} / (1 - |a|^2) inside the
/// unit ball, infinite marker otherwise.
template <class S>
TruncatedSeries<S> kernel_series(const Quaternion<S>& a, std::size_t order) {
    if (order == 0) throw std::invalid_argument("kernel_series: order must be at least 1");
    TruncatedSeries<S> out;
    out.coeffs.resize(order);
    Quaternion<S> pw = Quaternion<S>::one();
    for (std::size_t s = 0; s < order; ++s) {
        out.coeffs[s] = pw;
        pw = pw * a;
    }
    const S q = a.norm_sq();
    if (q < S(1)) {
        S qn(1);
        for (std::size_t s = 0; s < order; ++s) qn *= q;
        out.tail_sq = qn / (S(1) - q);
    } else {
        out.tail_finite = false;
    }
    return out;
}

namespace detail {

template <class S>
S binomial(std::size_t n, std::size_t k) {
    if (k > n) return S{};
    S acc(1);
    for (std::size_t t = 1; t <= k; ++t) {
        acc *= scalar_traits<S>::from_int(static_cast<long long>(n - k + t));
        acc /= scalar_traits<S>::from_int(static_cast<long long>(t));
    }
    return acc;
}

/// Tail bound for the prefix-j chain series at truncation N. Coefficient s
/// is a sum of C(s, j-1) node monomials of absolute value q^{(s-j+1)/2}
/// (q = |class norm|), so t_s = C(s,j-1)^2 q^{s-j+1} dominates |f_s|^2 and
/// the tail is summed by the decreasing-ratio geometric estimate.
template <class S>
std::pair<S, bool> chain_series_tail_sq(const SphericalChain<S>& chain, std::size_t j,
                                        std::size_t order) {
    const S q = chain.cls().norm;
    if (!(q < S(1))) return {S{}, false};
    if (order < j) return {S{}, false};
    const S c = binomial<S>(order, j - 1);
    S t = c * c;
    S qpow(1);
    for (std::size_t s = 0; s < order - j + 1; ++s) qpow *= q;
    t *= qpow;
    const S num = scalar_traits<S>::from_int(static_cast<long long>(order + 1));
    const S den = scalar_traits<S>::from_int(static_cast<long long>(order + 2 - j));
    const S ratio = (num / den) * (num / den) * q;
    if (!(ratio < S(1))) return {S{}, false};
    return {t / (S(1) - ratio), true};
}

}  // namespace detail

/// f_j(z) = z^{j-1} k_{a_j}(z) ... k_{a_1}(z) for the prefix of length j:
/// its coefficient at z^s equals the divided difference [a_1..a_j; z^s].
/// Both routes are computed and must agree.
template <class S>
TruncatedSeries<S> chain_series(const SphericalChain<S>& chain, std::size_t j,
                                std::size_t order) {
    if (j == 0 || j > chain.length())
        throw std::invalid_argument("chain_series: prefix out of range");
    if (order == 0) throw std::invalid_argument("chain_series: order must be at least 1");

    // Product route: convolve the kernels, then shift by j-1.
    std::vector<Quaternion<S>> prod(order);
    prod[0] = Quaternion<S>::one();
    for (std::size_t t = j; t-- > 0;) {
        const TruncatedSeries<S> k = kernel_series(chain[t], order);
        std::vector<Quaternion<S>> next(order);
        for (std::size_t s = 0; s < order; ++s) {
            if (prod[s].is_zero()) continue;
            for (std::size_t u = 0; s + u < order; ++u) next[s + u] += prod[s] * k.coeffs[u];
        }
        prod = std::move(next);
    }
    TruncatedSeries<S> out;
    out.coeffs.assign(order, Quaternion<S>::zero());
    for (std::size_t s = 0; s + j - 1 < order; ++s) out.coeffs[s + j - 1] = prod[s];

    // Divided-difference route via the generator recursion.
    const QMatrix<S> gen = QMatrix<S>::jordan(
        std::vector<Quaternion<S>>(chain.nodes().begin(), chain.nodes().begin() + j));
    QMatrix<S> col = QMatrix<S>::unit_column(j);
    for (std::size_t s = 0; s < order; ++s) {
        if (!near(out.coeffs[s], col(j - 1, 0)))
            throw std::logic_error("chain_series: construction mismatch");
        col = gen * col;
    }

    const auto [tail, finite] = detail::chain_series_tail_sq(chain, j, order);
    out.tail_sq = tail;
    out.tail_finite = finite;
    return out;
}

template <class S>
struct InnerProduct {
    Quaternion<S> value;
    S error_sq{};  // bound on the squared modulus of the discarded tail
    bool error_finite = true;
};

/// Left H^2 inner product <h, g> = sum conj(g_s) h_s, evaluated over the
/// common truncation with a Cauchy-Schwarz bound on the discarded tail.
template <class S>
InnerProduct<S> inner_left(const TruncatedSeries<S>& h, const TruncatedSeries<S>& g) {
    const std::size_t m = std::min(h.order(), g.order());
    InnerProduct<S> out;
    for (std::size_t s = 0; s < m; ++s) out.value += g.coeffs[s].conj() * h.coeffs[s];
    out.error_finite = h.tail_finite && g.tail_finite;
    if (out.error_finite) out.error_sq = h.tail_sq_from(m) * g.tail_sq_from(m);
    return out;
}

/// Product theta * h for polynomial h with deg h < order(theta); the tail
/// bound is propagated term by term.
template <class S>
TruncatedSeries<S> mul_by_polynomial(const TruncatedSeries<S>& theta, const QPolynomial<S>& h) {
    const std::size_t n = theta.order();
    const std::size_t d = h.is_zero() ? 0 : *h.degree();
    if (!h.is_zero() && d >= n)
        throw std::invalid_argument("mul_by_polynomial: polynomial degree exceeds truncation");
    TruncatedSeries<S> out;
    out.coeffs.assign(n, Quaternion<S>::zero());
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t <= std::min<std::size_t>(s, d); ++t)
            out.coeffs[s] += theta.coeff(s - t) * h.coeff(t);
    out.tail_finite = theta.tail_finite;
    if (out.tail_finite && !h.is_zero()) {
        // sum_{s>=N} |sum_t theta_{s-t} h_t|^2 <= (d+1) sum_t |h_t|^2 tail(theta, N-t)
        S acc{};
        for (std::size_t t = 0; t <= d; ++t)
            acc += h.coeff(t).norm_sq() * theta.tail_sq_from(n - t);
        out.tail_sq = scalar_traits<S>::from_int(static_cast<long long>(d + 1)) * acc;
    }
    return out;
}

enum class GramMode { ExactStein, Truncated };

/// Gram matrix of the conjugate chain series f#_{i,j}: conjugate-symmetric,
/// positive semidefinite, rank kappa. Exact mode solves the finite Stein
/// system blockwise; truncated mode sums to the given order.
template <class S>
struct GramMatrix {
    ChainFamily<S> family;
    QMatrix<S> matrix;
    GramMode mode = GramMode::ExactStein;
    std::size_t order = 0;  // truncation order (Truncated mode only)
};

namespace detail {

template <class S>
void require_inside_unit_ball(const ChainFamily<S>& fam) {
    for (const auto& c : fam)
        for (const auto& node : c.nodes())
            if (!(node.norm_sq() < S(1)))
                throw std::domain_error("gram: node on or outside the unit sphere");
}

template <class S>
const S& quat_component(const Quaternion<S>& q, std::size_t u) {
    switch (u) {
        case 0: return q.x0;
        case 1: return q.x1;
        case 2: return q.x2;
        default: return q.x3;
    }
}

template <class S>
Quaternion<S> quat_unit(std::size_t u) {
    switch (u) {
        case 0: return Quaternion<S>::one();
        case 1: return Quaternion<S>::unit_i();
        case 2: return Quaternion<S>::unit_j();
        default: return Quaternion<S>::unit_k();
    }
}

/// Unique solution of P - Ji P Jj* = E Ej^T, via the real linearization of
/// the left/right multiplication operator (4 k_i k_j real unknowns).
template <class S>
QMatrix<S> stein_gram_block(const SphericalChain<S>& ci, const SphericalChain<S>& cj) {
    const std::size_t ki = ci.length(), kj = cj.length();
    const QMatrix<S> ji = QMatrix<S>::jordan(ci.nodes());
    const QMatrix<S> jjs = QMatrix<S>::jordan(cj.nodes()).conj_transpose();
    const std::size_t n = 4 * ki * kj;
    const auto flat = [&](std::size_t r, std::size_t c, std::size_t u) {
        return (r * kj + c) * 4 + u;
    };
    std::vector<std::vector<S>> m(n, std::vector<S>(n));
    std::vector<S> rhs(n);
    rhs[flat(0, 0, 0)] = S(1);
    for (std::size_t r = 0; r < ki; ++r)
        for (std::size_t c = 0; c < kj; ++c)
            for (std::size_t u = 0; u < 4; ++u) {
                QMatrix<S> x(ki, kj);
                x(r, c) = quat_unit<S>(u);
                const QMatrix<S> y = x - ji * x * jjs;
                const std::size_t col = flat(r, c, u);
                for (std::size_t r2 = 0; r2 < ki; ++r2)
                    for (std::size_t c2 = 0; c2 < kj; ++c2)
                        for (std::size_t u2 = 0; u2 < 4; ++u2)
                            m[flat(r2, c2, u2)][col] = quat_component(y(r2, c2), u2);
            }
    const std::vector<S> sol = solve_real_linear(std::move(m), std::move(rhs));
    QMatrix<S> p(ki, kj);
    for (std::size_t r = 0; r < ki; ++r)
        for (std::size_t c = 0; c < kj; ++c)
            p(r, c) = Quaternion<S>(sol[flat(r, c, 0)], sol[flat(r, c, 1)],
                                    sol[flat(r, c, 2)], sol[flat(r, c, 3)]);
    return p;
}

}  // namespace detail

template <class S>
GramMatrix<S> gram_matrix(const ChainFamily<S>& fam, GramMode mode, std::size_t order = 0) {
    detail::require_inside_unit_ball(fam);
    std::size_t total = 0;
    for (const auto& c : fam) total += c.length();

    if (mode == GramMode::Truncated) {
        if (order == 0) throw std::invalid_argument("gram_matrix: truncated mode needs an order");
        const QMatrix<S> v = build_left(fam, order).matrix;
        return {fam, v * v.conj_transpose(), mode, order};
    }

    QMatrix<S> p(total, total);
    std::vector<std::size_t> offs(fam.size() + 1, 0);
    for (std::size_t i = 0; i < fam.size(); ++i) offs[i + 1] = offs[i] + fam[i].length();
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i; j < fam.size(); ++j) {
            const QMatrix<S> block = detail::stein_gram_block(fam[i], fam[j]);
            p.set_block(offs[i], offs[j], block);
            if (j != i) p.set_block(offs[j], offs[i], block.conj_transpose());
        }
    return {fam, std::move(p), mode, 0};
}

/// Blockwise Stein residual of a Gram matrix; exactly zero in exact mode.
template <class S>
QMatrix<S> gram_stein_residual(const GramMatrix<S>& g) {
    std::size_t total = g.matrix.rows();
    QMatrix<S> res(total, total);
    std::vector<std::size_t> offs(g.family.size() + 1, 0);
    for (std::size_t i = 0; i < g.family.size(); ++i)
        offs[i + 1] = offs[i] + g.family[i].length();
    for (std::size_t i = 0; i < g.family.size(); ++i)
        for (std::size_t j = 0; j < g.family.size(); ++j) {
            const std::size_t ki = g.family[i].length(), kj = g.family[j].length();
            const QMatrix<S> block = g.matrix.block(offs[i], offs[j], ki, kj);
            QMatrix<S> rhs(ki, kj);
            rhs(0, 0) = Quaternion<S>::one();
            const QMatrix<S> r = block -
                                 QMatrix<S>::jordan(g.family[i].nodes()) * block *
                                     QMatrix<S>::jordan(g.family[j].nodes()).conj_transpose() -
                                 rhs;
            res.set_block(offs[i], offs[j], r);
        }
    return res;
}

/// Entrywise tail bounds |P_exact - P_truncated|^2 <= tail_i tail_j from the
/// chain-series tails at the truncation order.
template <class S>
std::pair<QMatrix<S>, bool> gram_truncation_bound_sq(const ChainFamily<S>& fam,
                                                     std::size_t order) {
    std::vector<S> tails;
    bool finite = true;
    for (const auto& c : fam)
        for (std::size_t j = 1; j <= c.length(); ++j) {
            const auto [t, ok] = detail::chain_series_tail_sq(c, j, order);
            tails.push_back(t);
            finite = finite && ok;
        }
    QMatrix<S> b(tails.size(), tails.size());
    for (std::size_t r = 0; r < tails.size(); ++r)
        for (std::size_t c = 0; c < tails.size(); ++c)
            b(r, c) = Quaternion<S>::real(tails[r] * tails[c]);
    return {std::move(b), finite};
}

struct ResidualReport {
    bool within_bound = false;
    double max_residual = 0.0;
    double max_bound = 0.0;
};

/// Check the factorization P = V_m V_m* at finite order: the residual of
/// every entry must sit inside its geometric tail bound.
template <class S>
ResidualReport gram_factorization_check(const ChainFamily<S>& fam, std::size_t order) {
    const GramMatrix<S> exact = gram_matrix(fam, GramMode::ExactStein);
    const GramMatrix<S> trunc = gram_matrix(fam, GramMode::Truncated, order);
    const auto [bound, finite] = gram_truncation_bound_sq(fam, order);
    ResidualReport rep;
    rep.within_bound = finite;
    for (std::size_t r = 0; r < exact.matrix.rows(); ++r)
        for (std::size_t c = 0; c < exact.matrix.cols(); ++c) {
            const S resid_sq = (exact.matrix(r, c) - trunc.matrix(r, c)).norm_sq();
            const S& bnd_sq = bound(r, c).x0;
            if (!(resid_sq <= bnd_sq)) rep.within_bound = false;
            rep.max_residual = std::max(rep.max_residual,
                                        std::sqrt(scalar_traits<S>::to_double(resid_sq)));
            rep.max_bound =
                std::max(rep.max_bound, std::sqrt(scalar_traits<S>::to_double(bnd_sq)));
        }
    return rep;
}

template <class S>
struct MinimalNormSolution {
    TruncatedSeries<S> f_min;
    S norm_sq{};                        // C* P^{-1} C, exact in exact mode
    std::vector<Quaternion<S>> d;       // kernel-expansion coefficients
    S f_min_tail_sq{};                  // bound on the discarded mass of f_min
    bool tail_finite = true;
};

/// Minimal-norm interpolant: expand in the conjugate chain series with
/// coefficients solving P d = C from the exact Stein-mode Gram matrix.
/// The squared norm is C* P^{-1} C (a real scalar since P is Hermitian).
template <class S>
MinimalNormSolution<S> minimal_norm_solve(const InterpolationProblem<S>& prob,
                                          std::size_t order) {
    prob.check_shape();
    detail::require_inside_unit_ball(prob.family);
    const GramMatrix<S> gram = gram_matrix(prob.family, GramMode::ExactStein);
    QMatrix<S> c(prob.total_conditions(), 1);
    std::size_t r = 0;
    for (const auto& t : prob.targets)
        for (const auto& v : t) c(r++, 0) = v;

    QMatrix<S> d;
    try {
        d = solve(gram.matrix, c);
    } catch (const SingularMatrix&) {
        throw std::domain_error("minimal_norm_solve: singular Gram matrix");
    }

    MinimalNormSolution<S> out;
    out.f_min.coeffs.assign(order, Quaternion<S>::zero());
    Quaternion<S> norm_acc;
    std::size_t t = 0;
    S tail_acc{};
    for (std::size_t i = 0; i < prob.family.size(); ++i)
        for (std::size_t j = 1; j <= prob.family[i].length(); ++j, ++t) {
            const TruncatedSeries<S> basis = chain_series(prob.family[i], j, order).sharp();
            const Quaternion<S> dt = d(t, 0);
            out.d.push_back(dt);
            for (std::size_t s = 0; s < order; ++s)
                out.f_min.coeffs[s] += basis.coeffs[s] * dt;
            norm_acc += c(t, 0).conj() * dt;
            out.tail_finite = out.tail_finite && basis.tail_finite;
            tail_acc += dt.norm_sq() * basis.tail_sq;
        }
    // |sum of T tails|^2 <= T * sum of squared tails, Cauchy-Schwarz.
    out.f_min_tail_sq = scalar_traits<S>::from_int(static_cast<long long>(t)) * tail_acc;
    out.f_min.tail_sq = out.f_min_tail_sq;
    out.f_min.tail_finite = out.tail_finite;
    if constexpr (scalar_traits<S>::is_exact) {
        if (!norm_acc.is_real())
            throw std::logic_error("minimal_norm_solve: norm C* P^{-1} C not real");
    }
    out.norm_sq = norm_acc.re();
    return out;
}

/// Interpolation-condition residuals of a series candidate, via the
/// reproducing property of the conjugate chain series.
template <class S>
struct SeriesConditionReport {
    bool all_within_bound = true;
    double max_residual = 0.0;
    double max_bound = 0.0;
};

template <class S>
SeriesConditionReport<S> verify_series(const InterpolationProblem<S>& prob,
                                       const TruncatedSeries<S>& f) {
    SeriesConditionReport<S> rep;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < prob.family.size(); ++i)
        for (std::size_t j = 1; j <= prob.family[i].length(); ++j, ++idx) {
            const TruncatedSeries<S> basis = chain_series(prob.family[i], j, f.order()).sharp();
            const InnerProduct<S> ip = inner_left(f, basis);
            const S resid_sq = (ip.value - prob.targets[i][j - 1]).norm_sq();
            if (!ip.error_finite || !(resid_sq <= ip.error_sq)) rep.all_within_bound = false;
            rep.max_residual = std::max(rep.max_residual,
                                        std::sqrt(scalar_traits<S>::to_double(resid_sq)));
            if (ip.error_finite)
                rep.max_bound = std::max(rep.max_bound,
                                         std::sqrt(scalar_traits<S>::to_double(ip.error_sq)));
        }
    return rep;
}

struct IsometryReport {
    bool all_within_bound = true;
    double max_deviation = 0.0;
    double max_bound = 0.0;
};

/// Compare ||theta h||^2 against ||h||^2 at truncation for the supplied
/// polynomial samples; an isometric theta keeps the gap inside the product
/// tail bound.
template <class S>
IsometryReport isometry_check(const TruncatedSeries<S>& theta,
                              const std::vector<QPolynomial<S>>& samples) {
    IsometryReport rep;
    for (const auto& h : samples) {
        const TruncatedSeries<S> prod = mul_by_polynomial(theta, h);
        S href{};
        for (const auto& cf : h.coeffs()) href += cf.norm_sq();
        const S partial = norm_sq_truncated(prod);
        const S gap = href >= partial ? href - partial : partial - href;
        if (!prod.tail_finite || !(gap <= prod.tail_sq)) rep.all_within_bound = false;
        rep.max_deviation =
            std::max(rep.max_deviation, scalar_traits<S>::to_double(gap));
        if (prod.tail_finite)
            rep.max_bound = std::max(rep.max_bound, scalar_traits<S>::to_double(prod.tail_sq));
    }
    return rep;
}

}  // namespace qhz
