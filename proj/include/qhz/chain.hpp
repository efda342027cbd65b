#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qhz/matrix.hpp"
#include "qhz/polynomial.hpp"
#include "qhz/quaternion.hpp"

namespace qhz {

enum class ChainDefect { Empty, EquivalenceBroken, ConjugateAdjacency };

/// Outcome of chain validation. `index` is the 1-based position of the first
/// violating adjacent pair.
struct ChainValidation {
    bool ok = true;
    ChainDefect defect = ChainDefect::Empty;
    std::size_t index = 0;

    std::string message() const {
        if (ok) return "valid";
        switch (defect) {
            case ChainDefect::Empty: return "Empty";
            case ChainDefect::EquivalenceBroken:
                return "EquivalenceBroken(" + std::to_string(index) + ")";
            case ChainDefect::ConjugateAdjacency:
                return "ConjugateAdjacency(" + std::to_string(index) + ")";
        }
        return "unknown";
    }
};

struct ChainError : std::domain_error {
    ChainValidation diagnostic;
    explicit ChainError(ChainValidation v) : std::domain_error(v.message()), diagnostic(v) {}
};

/// Ordered tuple (a_1, ..., a_k) with consecutive nodes equivalent and no
/// node equal to the conjugate of its predecessor. Construction goes through
/// validate(), so a held value is always a genuine spherical chain.
template <class S>
class SphericalChain {
  public:
    static ChainValidation check(const std::vector<Quaternion<S>>& nodes) {
        if (nodes.empty()) return {false, ChainDefect::Empty, 0};
        for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
            if (!equivalent(nodes[j], nodes[j + 1]))
                return {false, ChainDefect::EquivalenceBroken, j + 1};
            // A real node equals its own conjugate; repeating it is the
            // legitimate multiplicity chain, not a conjugate adjacency.
            if (!nodes[j].is_real() && near(nodes[j + 1], nodes[j].conj()))
                return {false, ChainDefect::ConjugateAdjacency, j + 1};
        }
        return {};
    }

    static SphericalChain validate(std::vector<Quaternion<S>> nodes) {
        ChainValidation v = check(nodes);
        if (!v.ok) throw ChainError(v);
        return SphericalChain(std::move(nodes));
    }

    std::size_t length() const { return nodes_.size(); }
    const std::vector<Quaternion<S>>& nodes() const { return nodes_; }
    const Quaternion<S>& operator[](std::size_t t) const { return nodes_[t]; }
    const Quaternion<S>& leftmost() const { return nodes_.front(); }

    ConjugacyClass<S> cls() const { return class_of(nodes_.front()); }

    SphericalChain prefix(std::size_t len) const {
        return SphericalChain(std::vector<Quaternion<S>>(nodes_.begin(), nodes_.begin() + len));
    }

    /// Conjugating every node preserves the chain conditions.
    SphericalChain conjugated() const {
        std::vector<Quaternion<S>> c(nodes_.size());
        for (std::size_t t = 0; t < nodes_.size(); ++t) c[t] = nodes_[t].conj();
        return SphericalChain(std::move(c));
    }

    friend bool operator==(const SphericalChain& a, const SphericalChain& b) {
        return a.nodes_ == b.nodes_;
    }

  private:
    explicit SphericalChain(std::vector<Quaternion<S>> nodes) : nodes_(std::move(nodes)) {}

    std::vector<Quaternion<S>> nodes_;
};

template <class S>
using ChainFamily = std::vector<SphericalChain<S>>;

template <class S>
ChainFamily<S> conjugated(const ChainFamily<S>& fam) {
    ChainFamily<S> out;
    out.reserve(fam.size());
    for (const auto& c : fam) out.push_back(c.conjugated());
    return out;
}

/// P_a = rho_{a_1} ... rho_{a_k}: the monic indecomposable polynomial of the
/// chain; a_1 is its unique left zero.
template <class S>
QPolynomial<S> chain_to_poly(const SphericalChain<S>& chain) {
    QPolynomial<S> p = QPolynomial<S>::one();
    for (const auto& node : chain.nodes()) p = p * QPolynomial<S>::rho(node);
    return p;
}

template <class S>
std::vector<QPolynomial<S>> family_polynomials(const ChainFamily<S>& fam) {
    std::vector<QPolynomial<S>> out;
    out.reserve(fam.size());
    for (const auto& c : fam) out.push_back(chain_to_poly(c));
    return out;
}

/// X_S(z) = z^2 - z (a + conj(a)) + |a|^2, the real quadratic vanishing
/// exactly on the class S.
template <class S>
QPolynomial<S> characteristic_polynomial(const ConjugacyClass<S>& cls) {
    return QPolynomial<S>(std::vector<Quaternion<S>>{
        Quaternion<S>::real(cls.norm), -Quaternion<S>::real(cls.trace), Quaternion<S>::one()});
}

/// Number of shared leftmost nodes, compared by node equality (not mere
/// equivalence).
template <class S>
std::size_t shared_prefix_length(const SphericalChain<S>& a, const SphericalChain<S>& b) {
    const std::size_t n = std::min(a.length(), b.length());
    std::size_t t = 0;
    while (t < n && near(a[t], b[t])) ++t;
    return t;
}

/// Monic generator of the right-ideal sum <f>_r + <g>_r, by Euclidean
/// iteration on left-factor remainders (f = g q + r keeps fH + gH = gH + rH).
template <class S>
QPolynomial<S> glcd(const QPolynomial<S>& f, const QPolynomial<S>& g) {
    if (f.is_zero() && g.is_zero())
        throw std::domain_error("glcd: both arguments are zero");
    QPolynomial<S> a = f, b = g;
    if (a.is_zero()) std::swap(a, b);
    while (!b.is_zero()) {
        QPolynomial<S> r = divide_left(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Monic generator h of <f>_r ∩ <g>_r, found from the cofactor identity
/// h = f a = g b with deg a = deg g - deg glcd(f, g). The cofactor
/// coefficients solve a left-multiplication convolution system; the solution
/// is unique once the leading coefficient of a is pinned to make h monic.
template <class S>
QPolynomial<S> lrcm(const QPolynomial<S>& f, const QPolynomial<S>& g) {
    if (f.is_zero() || g.is_zero()) throw std::domain_error("lrcm: zero argument");
    const QPolynomial<S> d = glcd(f, g);
    const std::size_t df = *f.degree(), dg = *g.degree(), dd = *d.degree();
    const std::size_t dh = df + dg - dd;
    const std::size_t na = dg - dd + 1;  // deg a = dg - dd, top coefficient pinned
    const std::size_t nb = df - dd + 1;
    const Quaternion<S> a_top = f.leading().inverse();

    QMatrix<S> m(dh + 1, na - 1 + nb);
    QMatrix<S> rhs(dh + 1, 1);
    for (std::size_t n = 0; n <= dh; ++n) {
        for (std::size_t q = 0; q + 1 < na; ++q)
            if (n >= q && n - q <= df) m(n, q) = f.coeff(n - q);
        for (std::size_t s = 0; s < nb; ++s)
            if (n >= s && n - s <= dg) m(n, na - 1 + s) = -g.coeff(n - s);
        if (n >= na - 1 && n - (na - 1) <= df)
            rhs(n, 0) = -(f.coeff(n - (na - 1)) * a_top);
    }
    GeneralSolution<S> sol = solve_general(m, rhs);
    if (!sol.consistent || sol.rank_a != m.cols())
        throw std::logic_error("lrcm: cofactor system degenerate");

    std::vector<Quaternion<S>> ac(na);
    for (std::size_t q = 0; q + 1 < na; ++q) ac[q] = sol.x(q, 0);
    ac[na - 1] = a_top;
    return f * QPolynomial<S>(std::move(ac));
}

template <class S>
QPolynomial<S> lrcm_family(const std::vector<QPolynomial<S>>& ps) {
    if (ps.empty()) throw std::domain_error("lrcm_family: empty input");
    QPolynomial<S> acc = monic(ps.front());
    for (std::size_t t = 1; t < ps.size(); ++t) acc = lrcm(acc, ps[t]);
    return acc;
}

/// Closed form for the lrcm of indecomposable polynomials in one conjugacy
/// class: X_S^m when m = k_1, else X_S^m rho_{a_{1,1}} ... rho_{a_{1,k_1-m}},
/// with m the largest cofactor degree against the longest chain.
template <class S>
QPolynomial<S> closed_form_lrcm(const std::vector<SphericalChain<S>>& chains) {
    if (chains.empty()) throw std::domain_error("closed_form_lrcm: empty input");
    const ConjugacyClass<S> cls = chains.front().cls();
    for (const auto& c : chains)
        if (!(c.cls() == cls))
            throw std::invalid_argument("closed_form_lrcm: chains in different classes");
    std::vector<std::size_t> order(chains.size());
    for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return chains[a].length() > chains[b].length();
    });
    const SphericalChain<S>& longest = chains[order[0]];
    if (chains.size() == 1) return chain_to_poly(longest);

    std::size_t m = 0;
    for (std::size_t t = 1; t < order.size(); ++t) {
        const SphericalChain<S>& c = chains[order[t]];
        m = std::max(m, c.length() - shared_prefix_length(longest, c));
    }
    const std::size_t k1 = longest.length();
    QPolynomial<S> result = QPolynomial<S>::one();
    const QPolynomial<S> xs = characteristic_polynomial(cls);
    for (std::size_t t = 0; t < m; ++t) result = result * xs;
    for (std::size_t t = 0; t + m < k1; ++t)
        result = result * QPolynomial<S>::rho(longest[t]);
    return result;
}

/// mu(S) for the chains lying in one class: the length of the sole chain, or
/// k_i + max_{j != i}(k_j - nu_j) against a longest chain a_i. Independent of
/// which longest chain is picked; ties break to the lowest index.
template <class S>
std::size_t mu_of_class(const std::vector<SphericalChain<S>>& chains) {
    if (chains.empty()) throw std::invalid_argument("mu_of_class: empty input");
    const ConjugacyClass<S> cls = chains.front().cls();
    for (const auto& c : chains)
        if (!(c.cls() == cls))
            throw std::invalid_argument("mu_of_class: chains in different classes");
    if (chains.size() == 1) return chains.front().length();

    std::size_t i = 0;
    for (std::size_t t = 1; t < chains.size(); ++t)
        if (chains[t].length() > chains[i].length()) i = t;

    std::size_t worst = 0;
    for (std::size_t j = 0; j < chains.size(); ++j) {
        if (j == i) continue;
        const std::size_t nu = shared_prefix_length(chains[i], chains[j]);
        worst = std::max(worst, chains[j].length() - nu);
    }
    return chains[i].length() + worst;
}

/// kappa = sum of mu(S_j) over the represented classes. Equals the degree of
/// lrcm(P_{a_1}, ..., P_{a_n}); the exact backend verifies the two routes
/// against each other on every call.
template <class S>
std::size_t kappa(const ChainFamily<S>& fam) {
    if (fam.empty()) return 0;
    std::vector<std::vector<SphericalChain<S>>> groups;
    for (const auto& c : fam) {
        bool placed = false;
        for (auto& g : groups)
            if (g.front().cls() == c.cls()) {
                g.push_back(c);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({c});
    }
    std::size_t total = 0;
    for (const auto& g : groups) total += mu_of_class(g);
    if constexpr (scalar_traits<S>::is_exact) {
        const QPolynomial<S> l = lrcm_family(family_polynomials(fam));
        if (*l.degree() != total)
            throw std::logic_error("kappa: class count disagrees with lrcm degree");
    }
    return total;
}

}  // namespace qhz
