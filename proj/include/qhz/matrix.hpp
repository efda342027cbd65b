#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qhz/quaternion.hpp"

namespace qhz {

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("singular matrix") {}
};

/// Dense quaternion matrix. Rank is the dimension of the left linear span of
/// the rows (equivalently the right span of the columns); elimination
/// therefore uses left row operations with quaternion pivot inversion.
template <class S>
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion<S>::one();
        return m;
    }

    /// First unit column E_k.
    static QMatrix unit_column(std::size_t k) {
        QMatrix m(k, 1);
        m(0, 0) = Quaternion<S>::one();
        return m;
    }

    /// F_m = [delta_{i-1,j}]: ones on the subdiagonal, F_m^m = 0.
    static QMatrix nilpotent_shift(std::size_t m) {
        QMatrix f(m, m);
        for (std::size_t i = 1; i < m; ++i) f(i, i - 1) = Quaternion<S>::one();
        return f;
    }

    /// Lower bidiagonal generator with the given nodes on the diagonal and
    /// ones on the subdiagonal.
    static QMatrix jordan(const std::vector<Quaternion<S>>& nodes) {
        const std::size_t k = nodes.size();
        QMatrix j(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            j(i, i) = nodes[i];
            if (i + 1 < k) j(i + 1, i) = Quaternion<S>::one();
        }
        return j;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Quaternion<S>& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Quaternion<S>& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    QMatrix& operator+=(const QMatrix& o) {
        check_same_shape(o);
        for (std::size_t t = 0; t < a_.size(); ++t) a_[t] += o.a_[t];
        return *this;
    }
    QMatrix& operator-=(const QMatrix& o) {
        check_same_shape(o);
        for (std::size_t t = 0; t < a_.size(); ++t) a_[t] -= o.a_[t];
        return *this;
    }
    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("QMatrix: shape mismatch in product");
        QMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (a(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < b.cols_; ++k) c(i, k) += a(i, j) * b(j, k);
            }
        return c;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

    /// (A*)_{ij} = conj(A_{ji}); satisfies (AB)* = B* A*.
    QMatrix conj_transpose() const {
        QMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
        return m;
    }

    QMatrix transpose() const {
        QMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        QMatrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

    void set_block(std::size_t r0, std::size_t c0, const QMatrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
    }

  private:
    void check_same_shape(const QMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("QMatrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Quaternion<S>> a_;
};

template <class S>
bool near(const QMatrix<S>& a, const QMatrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!near(a(i, j), b(i, j))) return false;
    return true;
}

template <class S>
QMatrix<S> matrix_power(const QMatrix<S>& a, std::size_t p) {
    QMatrix<S> r = QMatrix<S>::identity(a.rows());
    for (std::size_t t = 0; t < p; ++t) r = r * a;
    return r;
}

template <class S>
QMatrix<S> hstack(const QMatrix<S>& a, const QMatrix<S>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    QMatrix<S> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class S>
QMatrix<S> vstack(const QMatrix<S>& a, const QMatrix<S>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    QMatrix<S> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

namespace detail {

/// Squared elimination threshold. Exact backend: zero (exact zero tests);
/// float backend: (rel_tol * max row norm)^2, per the rank policy.
template <class S>
S elimination_threshold_sq(const QMatrix<S>& a) {
    if constexpr (scalar_traits<S>::is_exact) {
        return S{};
    } else {
        S worst{};
        for (std::size_t i = 0; i < a.rows(); ++i) {
            S row{};
            for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j).norm_sq();
            worst = std::max(worst, row);
        }
        const S rel = scalar_traits<S>::tolerance.rel;
        return rel * rel * worst;
    }
}

template <class S>
bool negligible(const Quaternion<S>& v, const S& thr_sq) {
    if constexpr (scalar_traits<S>::is_exact) {
        (void)thr_sq;
        return v.is_zero();
    } else {
        return v.norm_sq() <= thr_sq;
    }
}

}  // namespace detail

template <class S>
struct Echelon {
    QMatrix<S> mat;                       // reduced over the leading columns
    std::vector<std::size_t> pivot_cols;  // within the leading columns
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Row-reduce with left row operations over the first `lead_cols` columns;
/// trailing columns (e.g. an augmented right-hand side) are carried along.
/// Exact backend picks the first nonzero pivot, float backend the entry of
/// largest norm above the rank threshold.
template <class S>
Echelon<S> reduced_row_echelon(QMatrix<S> a, std::size_t lead_cols) {
    const S thr_sq = detail::elimination_threshold_sq(a);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < lead_cols && r < a.rows(); ++c) {
        std::size_t p = a.rows();
        if constexpr (scalar_traits<S>::is_exact) {
            for (std::size_t i = r; i < a.rows(); ++i)
                if (!a(i, c).is_zero()) { p = i; break; }
        } else {
            S best = thr_sq;
            for (std::size_t i = r; i < a.rows(); ++i) {
                const S mag = a(i, c).norm_sq();
                if (mag > best) { best = mag; p = i; }
            }
        }
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Quaternion<S> inv = a(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = inv * a(r, j);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || detail::negligible(a(i, c), thr_sq)) continue;
            const Quaternion<S> factor = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon<S>{std::move(a), std::move(pivots)};
}

template <class S>
std::size_t rank(const QMatrix<S>& a) {
    return reduced_row_echelon(a, a.cols()).rank();
}

/// Solve A X = B for square invertible A, exactly on the exact backend.
template <class S>
QMatrix<S> solve(const QMatrix<S>& a, const QMatrix<S>& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix not square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = a.rows();
    Echelon<S> e = reduced_row_echelon(hstack(a, b), n);
    if (e.rank() != n) throw SingularMatrix();
    return e.mat.block(0, n, n, b.cols());
}

template <class S>
struct GeneralSolution {
    bool consistent = false;
    QMatrix<S> x;  // a particular solution (free unknowns set to zero)
    std::size_t rank_a = 0;
    std::size_t rank_augmented = 0;
};

/// Solve A X = B allowing rectangular or rank-deficient A.
template <class S>
GeneralSolution<S> solve_general(const QMatrix<S>& a, const QMatrix<S>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_general: shape mismatch");
    Echelon<S> e = reduced_row_echelon(hstack(a, b), a.cols());
    GeneralSolution<S> out;
    out.rank_a = e.rank();
    // Rows below rank_a are zero in the A-part; any residue in the B-part
    // witnesses inconsistency and contributes to rank [A|B].
    const QMatrix<S> residue =
        e.mat.block(out.rank_a, a.cols(), a.rows() - out.rank_a, b.cols());
    out.rank_augmented = out.rank_a + rank(residue);
    out.consistent = (out.rank_augmented == out.rank_a);
    out.x = QMatrix<S>(a.cols(), b.cols());
    if (out.consistent) {
        for (std::size_t t = 0; t < e.pivot_cols.size(); ++t)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.x(e.pivot_cols[t], j) = e.mat(t, a.cols() + j);
    }
    return out;
}

/// Basis of the right-module kernel {x : A x = 0}; one vector per free
/// column. The general kernel element is a right combination of these.
template <class S>
std::vector<QMatrix<S>> nullspace(const QMatrix<S>& a) {
    Echelon<S> e = reduced_row_echelon(a, a.cols());
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<QMatrix<S>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        QMatrix<S> v(a.cols(), 1);
        v(f, 0) = Quaternion<S>::one();
        for (std::size_t t = 0; t < e.pivot_cols.size(); ++t)
            v(e.pivot_cols[t], 0) = -e.mat(t, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace detail {

/// Dense Gaussian solve over the real scalar backend (used for the
/// real-linearized Stein systems).
template <class S>
std::vector<S> solve_real_linear(std::vector<std::vector<S>> m, std::vector<S> rhs) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        if constexpr (scalar_traits<S>::is_exact) {
            for (std::size_t i = c; i < n; ++i)
                if (!scalar_traits<S>::is_zero(m[i][c])) { p = i; break; }
        } else {
            S best{};
            for (std::size_t i = c; i < n; ++i) {
                const S mag = m[i][c] < 0 ? -m[i][c] : m[i][c];
                if (mag > best) { best = mag; p = i; }
            }
            if (scalar_traits<S>::is_zero(best)) p = n;
        }
        if (p == n) throw SingularMatrix();
        std::swap(m[p], m[c]);
        std::swap(rhs[p], rhs[c]);
        const S inv_pivot = S(1) / m[c][c];
        for (std::size_t j = c; j < n; ++j) m[c][j] *= inv_pivot;
        rhs[c] *= inv_pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || scalar_traits<S>::is_zero(m[i][c])) continue;
            const S f = m[i][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
            rhs[i] -= f * rhs[c];
        }
    }
    return rhs;
}

}  // namespace detail

}  // namespace qhz
