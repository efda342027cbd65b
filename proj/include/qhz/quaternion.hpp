#pragma once

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qhz/scalar.hpp"

namespace qhz {

/// Quaternion x0 + x1 i + x2 j + x3 k over a real scalar backend S,
/// with i^2 = j^2 = k^2 = ijk = -1.
template <class S>
struct Quaternion {
    S x0{}, x1{}, x2{}, x3{};

    Quaternion() = default;
    Quaternion(S a, S b, S c, S d)
        : x0(std::move(a)), x1(std::move(b)), x2(std::move(c)), x3(std::move(d)) {}

    static Quaternion real(S v) { return Quaternion(std::move(v), S{}, S{}, S{}); }
    static Quaternion from_int(long long v) {
        return real(scalar_traits<S>::from_int(v));
    }
    static Quaternion zero() { return Quaternion(); }
    static Quaternion one() { return from_int(1); }
    static Quaternion unit_i() { return Quaternion(S{}, scalar_traits<S>::from_int(1), S{}, S{}); }
    static Quaternion unit_j() { return Quaternion(S{}, S{}, scalar_traits<S>::from_int(1), S{}); }
    static Quaternion unit_k() { return Quaternion(S{}, S{}, S{}, scalar_traits<S>::from_int(1)); }

    const S& re() const { return x0; }

    bool is_zero() const {
        return scalar_traits<S>::is_zero(x0) && scalar_traits<S>::is_zero(x1) &&
               scalar_traits<S>::is_zero(x2) && scalar_traits<S>::is_zero(x3);
    }
    bool is_real() const {
        return scalar_traits<S>::is_zero(x1) && scalar_traits<S>::is_zero(x2) &&
               scalar_traits<S>::is_zero(x3);
    }

    Quaternion conj() const { return Quaternion(x0, -x1, -x2, -x3); }

    S norm_sq() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }

    Quaternion inverse() const {
        if (is_zero()) throw std::domain_error("Quaternion::inverse: zero input");
        const S n = norm_sq();
        return Quaternion(x0 / n, -x1 / n, -x2 / n, -x3 / n);
    }

    Quaternion operator-() const { return Quaternion(-x0, -x1, -x2, -x3); }

    Quaternion& operator+=(const Quaternion& o) {
        x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
        return *this;
    }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

    // Hamilton product.
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return Quaternion(
            a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
            a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
            a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
            a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0);
    }
    Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3;
    }
    friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

/// Componentwise comparison under the backend policy (exact equality for the
/// rational backend, tolerance comparison for the floating one).
template <class S>
bool near(const Quaternion<S>& a, const Quaternion<S>& b) {
    using T = scalar_traits<S>;
    return T::near(a.x0, b.x0) && T::near(a.x1, b.x1) && T::near(a.x2, b.x2) &&
           T::near(a.x3, b.x3);
}

/// a ~ b iff Re(a) = Re(b) and |a| = |b| (compared through |.|^2 so the exact
/// backend stays exact).
template <class S>
bool equivalent(const Quaternion<S>& a, const Quaternion<S>& b) {
    using T = scalar_traits<S>;
    return T::near(a.re(), b.re()) && T::near(a.norm_sq(), b.norm_sq());
}

/// A conjugacy class [a], identified by trace = 2 Re(a) and norm = |a|^2.
/// The class of 0 is (0, 0).
template <class S>
struct ConjugacyClass {
    S trace{};
    S norm{};

    bool contains(const Quaternion<S>& q) const {
        using T = scalar_traits<S>;
        const S two = scalar_traits<S>::from_int(2);
        return T::near(two * q.re(), trace) && T::near(q.norm_sq(), norm);
    }
    bool is_real_point() const {
        using T = scalar_traits<S>;
        const S four = scalar_traits<S>::from_int(4);
        return T::near(four * norm, trace * trace);
    }
    friend bool operator==(const ConjugacyClass& a, const ConjugacyClass& b) {
        using T = scalar_traits<S>;
        return T::near(a.trace, b.trace) && T::near(a.norm, b.norm);
    }
};

template <class S>
ConjugacyClass<S> class_of(const Quaternion<S>& a) {
    return ConjugacyClass<S>{scalar_traits<S>::from_int(2) * a.re(), a.norm_sq()};
}

template <class S>
std::string to_string(const S& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/// Text form "x0 + x1 i + x2 j + x3 k".
template <class S>
std::string to_text(const Quaternion<S>& q) {
    return to_string(q.x0) + " + " + to_string(q.x1) + " i + " + to_string(q.x2) +
           " j + " + to_string(q.x3) + " k";
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Quaternion<S>& q) {
    return os << to_text(q);
}

}  // namespace qhz
