#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qhz/quaternion.hpp"

namespace qhz {

/// Polynomial f(z) = sum_j z^j f_j in H[z]. The variable commutes with the
/// coefficients; the coefficients do not commute with each other, so left and
/// right evaluation differ and so do the two division algorithms.
///
/// Storage is normalized: the highest kept coefficient is nonzero, the zero
/// polynomial stores nothing and its degree is a distinguished empty value
/// rather than an integer.
template <class S>
class QPolynomial {
  public:
    QPolynomial() = default;

    explicit QPolynomial(std::vector<Quaternion<S>> coeffs) : c_(std::move(coeffs)) {
        normalize();
    }
    explicit QPolynomial(Quaternion<S> constant) {
        c_.push_back(std::move(constant));
        normalize();
    }

    static QPolynomial zero() { return QPolynomial(); }
    static QPolynomial one() { return QPolynomial(Quaternion<S>::one()); }
    static QPolynomial monomial(std::size_t power, Quaternion<S> coeff) {
        std::vector<Quaternion<S>> c(power + 1);
        c[power] = std::move(coeff);
        return QPolynomial(std::move(c));
    }
    /// z - a
    static QPolynomial rho(const Quaternion<S>& a) {
        return QPolynomial(std::vector<Quaternion<S>>{-a, Quaternion<S>::one()});
    }

    bool is_zero() const { return c_.empty(); }

    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }

    const std::vector<Quaternion<S>>& coeffs() const { return c_; }

    Quaternion<S> coeff(std::size_t j) const {
        return j < c_.size() ? c_[j] : Quaternion<S>::zero();
    }

    Quaternion<S> leading() const {
        if (c_.empty()) throw std::domain_error("QPolynomial::leading: zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == Quaternion<S>::one(); }

    Quaternion<S> eval_left(const Quaternion<S>& a) const {
        // sum a^j f_j, accumulated as powers of a on the left.
        Quaternion<S> acc = Quaternion<S>::zero();
        Quaternion<S> pw = Quaternion<S>::one();
        for (std::size_t j = 0; j < c_.size(); ++j) {
            acc += pw * c_[j];
            pw = pw * a;
        }
        return acc;
    }

    Quaternion<S> eval_right(const Quaternion<S>& a) const {
        Quaternion<S> acc = Quaternion<S>::zero();
        Quaternion<S> pw = Quaternion<S>::one();
        for (std::size_t j = 0; j < c_.size(); ++j) {
            acc += c_[j] * pw;
            pw = pw * a;
        }
        return acc;
    }

    QPolynomial& operator+=(const QPolynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
        normalize();
        return *this;
    }
    QPolynomial& operator-=(const QPolynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
        normalize();
        return *this;
    }

    friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }

    QPolynomial operator-() const {
        std::vector<Quaternion<S>> c(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) c[j] = -c_[j];
        return QPolynomial(std::move(c));
    }

    // (fg)_n = sum_{p+q=n} f_p g_q; the order of the factors matters.
    friend QPolynomial operator*(const QPolynomial& f, const QPolynomial& g) {
        if (f.is_zero() || g.is_zero()) return QPolynomial();
        std::vector<Quaternion<S>> c(f.c_.size() + g.c_.size() - 1);
        for (std::size_t p = 0; p < f.c_.size(); ++p)
            for (std::size_t q = 0; q < g.c_.size(); ++q) c[p + q] += f.c_[p] * g.c_[q];
        return QPolynomial(std::move(c));
    }

    // Constant factors on either side.
    friend QPolynomial operator*(const Quaternion<S>& a, const QPolynomial& f) {
        std::vector<Quaternion<S>> c(f.c_.size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = a * f.c_[j];
        return QPolynomial(std::move(c));
    }
    friend QPolynomial operator*(const QPolynomial& f, const Quaternion<S>& a) {
        std::vector<Quaternion<S>> c(f.c_.size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = f.c_[j] * a;
        return QPolynomial(std::move(c));
    }

    friend bool operator==(const QPolynomial& a, const QPolynomial& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }

  private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Quaternion<S>> c_;
};

template <class S>
bool near(const QPolynomial<S>& a, const QPolynomial<S>& b) {
    const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    for (std::size_t j = 0; j < n; ++j)
        if (!near(a.coeff(j), b.coeff(j))) return false;
    return true;
}

/// Left backward shift: (L_a f)_k = sum_j a^j f_{k+j+1}. Satisfies
/// f = f^{e_l}(a) + (z - a) (L_a f).
template <class S>
QPolynomial<S> lshift(const Quaternion<S>& a, const QPolynomial<S>& f) {
    if (f.is_zero() || *f.degree() == 0) return QPolynomial<S>();
    const std::size_t m = *f.degree();
    std::vector<Quaternion<S>> c(m);
    for (std::size_t k = 0; k < m; ++k) {
        Quaternion<S> acc = Quaternion<S>::zero();
        Quaternion<S> pw = Quaternion<S>::one();
        for (std::size_t j = 0; k + j + 1 <= m; ++j) {
            acc += pw * f.coeff(k + j + 1);
            pw = pw * a;
        }
        c[k] = acc;
    }
    return QPolynomial<S>(std::move(c));
}

/// Right backward shift: (R_a f)_k = sum_j f_{k+j+1} a^j. Satisfies
/// f = f^{e_r}(a) + (R_a f) (z - a).
template <class S>
QPolynomial<S> rshift(const Quaternion<S>& a, const QPolynomial<S>& f) {
    if (f.is_zero() || *f.degree() == 0) return QPolynomial<S>();
    const std::size_t m = *f.degree();
    std::vector<Quaternion<S>> c(m);
    for (std::size_t k = 0; k < m; ++k) {
        Quaternion<S> acc = Quaternion<S>::zero();
        Quaternion<S> pw = Quaternion<S>::one();
        for (std::size_t j = 0; k + j + 1 <= m; ++j) {
            acc += f.coeff(k + j + 1) * pw;
            pw = pw * a;
        }
        c[k] = acc;
    }
    return QPolynomial<S>(std::move(c));
}

template <class S>
struct DivisionResult {
    QPolynomial<S> quotient;
    QPolynomial<S> remainder;
};

/// f = q g + r with deg r < deg g (the divisor acts as the right factor of
/// the quotient term).
template <class S>
DivisionResult<S> divide_right(const QPolynomial<S>& f, const QPolynomial<S>& g) {
    if (g.is_zero()) throw std::domain_error("divide_right: division by zero polynomial");
    QPolynomial<S> r = f;
    QPolynomial<S> q;
    const std::size_t dg = *g.degree();
    const Quaternion<S> glead_inv = g.leading().inverse();
    while (!r.is_zero() && *r.degree() >= dg) {
        const std::size_t d = *r.degree();
        const Quaternion<S> coef = r.leading() * glead_inv;
        const QPolynomial<S> mono = QPolynomial<S>::monomial(d - dg, coef);
        q += mono;
        r -= mono * g;
        if (!r.is_zero() && *r.degree() == d) {
            // Float-backend cancellation can leave a tiny leading residue.
            std::vector<Quaternion<S>> c(r.coeffs().begin(), r.coeffs().end() - 1);
            r = QPolynomial<S>(std::move(c));
        }
    }
    return {std::move(q), std::move(r)};
}

/// f = g q + r with deg r < deg g (the divisor acts as the left factor).
/// r = 0 if and only if f lies in the right ideal generated by g.
template <class S>
DivisionResult<S> divide_left(const QPolynomial<S>& f, const QPolynomial<S>& g) {
    if (g.is_zero()) throw std::domain_error("divide_left: division by zero polynomial");
    QPolynomial<S> r = f;
    QPolynomial<S> q;
    const std::size_t dg = *g.degree();
    const Quaternion<S> glead_inv = g.leading().inverse();
    while (!r.is_zero() && *r.degree() >= dg) {
        const std::size_t d = *r.degree();
        const Quaternion<S> coef = glead_inv * r.leading();
        const QPolynomial<S> mono = QPolynomial<S>::monomial(d - dg, coef);
        q += mono;
        r -= g * mono;
        if (!r.is_zero() && *r.degree() == d) {
            std::vector<Quaternion<S>> c(r.coeffs().begin(), r.coeffs().end() - 1);
            r = QPolynomial<S>(std::move(c));
        }
    }
    return {std::move(q), std::move(r)};
}

/// k-th formal derivative, coefficientwise.
template <class S>
QPolynomial<S> derivative(const QPolynomial<S>& f, std::size_t order = 1) {
    QPolynomial<S> g = f;
    for (std::size_t t = 0; t < order; ++t) {
        if (g.is_zero() || *g.degree() == 0) return QPolynomial<S>();
        std::vector<Quaternion<S>> c(*g.degree());
        for (std::size_t j = 0; j < c.size(); ++j)
            c[j] = Quaternion<S>::from_int(static_cast<long long>(j + 1)) * g.coeff(j + 1);
        g = QPolynomial<S>(std::move(c));
    }
    return g;
}

/// Conjugate polynomial f^#: coefficients conjugated in place. Involution;
/// (fg)^# = g^# f^#.
template <class S>
QPolynomial<S> conj_sharp(const QPolynomial<S>& f) {
    std::vector<Quaternion<S>> c(f.coeffs().size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = f.coeff(j).conj();
    return QPolynomial<S>(std::move(c));
}

/// Monic normal form f c^{-1} (right multiplication by the inverse of the
/// leading coefficient, so right ideals are preserved).
template <class S>
QPolynomial<S> monic(const QPolynomial<S>& f) {
    if (f.is_zero()) throw std::domain_error("monic: zero polynomial");
    return f * f.leading().inverse();
}

}  // namespace qhz
