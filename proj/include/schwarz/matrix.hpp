#pragma once

#include <vector>

#include "schwarz/errors.hpp"

namespace schwarz {

// Minimal dense matrix over an exact ring; the exact linear algebra in this
// project is all small and ring-generic, so nothing heavier is warranted.
template <class T>
class Mat {
  public:
    Mat() : r_(0), c_(0) {}
    Mat(int rows, int cols, T fill = T()) : r_(rows), c_(cols), d_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

    Mat drop_row_col(int ri, int cj) const {
        Mat m(r_ - 1, c_ - 1);
        for (int i = 0, ii = 0; i < r_; ++i) {
            if (i == ri) continue;
            for (int j = 0, jj = 0; j < c_; ++j) {
                if (j == cj) continue;
                m(ii, jj) = (*this)(i, j);
                ++jj;
            }
            ++ii;
        }
        return m;
    }

    Mat drop_col(int cj) const {
        Mat m(r_, c_ - 1);
        for (int i = 0; i < r_; ++i)
            for (int j = 0, jj = 0; j < c_; ++j) {
                if (j == cj) continue;
                m(i, jj++) = (*this)(i, j);
            }
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw Error("matrix product shape mismatch");
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < b.c_; ++j) {
                T s = a(i, 0) * b(0, j);
                for (int k = 1; k < a.c_; ++k) s = s + a(i, k) * b(k, j);
                m(i, j) = std::move(s);
            }
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }

  private:
    int r_, c_;
    std::vector<T> d_;
};

namespace detail {
template <class T>
T ring_div(const T& a, const T& b) {
    if constexpr (requires(T x, T y) { x / y; }) {
        return a / b;
    } else {
        return exact_div(a, b);  // e.g. MPoly
    }
}
}  // namespace detail

template <class T>
T det_cofactor(const Mat<T>& m) {
    const int n = m.rows();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    T acc = T();
    bool have = false;
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        T term = m(0, j) * det_cofactor(m.drop_row_col(0, j));
        if (j % 2) term = -term;
        acc = have ? acc + term : std::move(term);
        have = true;
    }
    return have ? acc : T();
}

// Fraction-free Bareiss elimination; all divisions are exact in an integral
// domain, so this works over polynomial rings as well as fields.
template <class T>
T det_bareiss(Mat<T> m) {
    const int n = m.rows();
    T prev = T();  // value of previous pivot; sentinel "1" handled below
    bool first = true;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m(i, k).is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) return T();  // zero column => zero determinant
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                T num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = first ? std::move(num) : detail::ring_div(num, prev);
            }
        prev = m(k, k);
        first = false;
    }
    T d = m(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

// Exact determinant: cofactor expansion for small matrices, Bareiss above.
template <class T>
T det(const Mat<T>& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    if (m.rows() == 0) throw Error("determinant of empty matrix");
    if (m.rows() <= 4) return det_cofactor(m);
    return det_bareiss(m);
}

// multiplicative identity "shaped like" x (polynomial types carry their
// variable count in the value)
template <class T>
    requires requires { T::one(); }
T one_like(const T&) {
    return T::one();
}

// adj(M) with M * adj(M) = det(M) * I
template <class T>
Mat<T> adjugate(const Mat<T>& m) {
    const int n = m.rows();
    Mat<T> a(n, n);
    if (n == 1) {
        a(0, 0) = one_like(m(0, 0));
        return a;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T c = det(m.drop_row_col(i, j));
            if ((i + j) % 2) c = -c;
            a(j, i) = std::move(c);  // transpose of cofactors
        }
    return a;
}

// Null vector of an n x (n+1) matrix of generic rank n, by signed maximal
// minors: C_i = (-1)^i det(M with column i removed).  M * C = 0 always holds;
// an all-zero result signals rank deficiency.
template <class T>
std::vector<T> nullspace_cofactor(const Mat<T>& m) {
    const int n = m.rows();
    if (m.cols() != n + 1) throw Error("nullspace_cofactor wants an n x (n+1) matrix");
    std::vector<T> c;
    c.reserve(n + 1);
    bool all_zero = true;
    for (int i = 0; i <= n; ++i) {
        T mi = det(m.drop_col(i));
        if (i % 2) mi = -mi;
        if (!mi.is_zero()) all_zero = false;
        c.push_back(std::move(mi));
    }
    if (all_zero)
        throw DegenerateError("degenerate dependence: coefficient matrix has rank below " +
                              std::to_string(n));
    return c;
}

}  // namespace schwarz
