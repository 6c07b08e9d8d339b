#pragma once

#include "isolab/semiring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isolab {

/// Dense matrix over an exact semiring (Rat or Boolean). Indices 0-based.
template <class T>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, semiring_zero<T>()) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = semiring_one<T>();
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw Error("matrix product: dimension mismatch");
        Matrix z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i) {
            for (int l = 0; l < x.cols; ++l) {
                const T& xv = x(i, l);
                if (is_zero(xv)) continue;
                for (int j = 0; j < y.cols; ++j) {
                    if (is_zero(y(l, j))) continue;
                    z(i, j) += xv * y(l, j);
                }
            }
        }
        return z;
    }

    /// x^e by repeated squaring, e >= 1.
    Matrix pow(long e) const {
        if (!square()) throw Error("matrix power: non-square input");
        if (e < 1) throw Error("matrix power: exponent must be >= 1");
        Matrix base = *this;
        Matrix acc = identity(rows);
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return acc;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    bool is_symmetric() const {
        if (!square()) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = i + 1; j < cols; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_nonnegative() const {
        for (const T& v : a)
            if (is_negative(v)) return false;
        return true;
    }

    bool has_strictly_positive_diagonal() const {
        if (!square()) return false;
        for (int i = 0; i < rows; ++i)
            if (is_zero((*this)(i, i))) return false;
        return true;
    }

    bool has_null_row(int i) const {
        for (int j = 0; j < cols; ++j)
            if (!is_zero((*this)(i, j))) return false;
        return true;
    }

    bool has_null_column(int j) const {
        for (int i = 0; i < rows; ++i)
            if (!is_zero((*this)(i, j))) return false;
        return true;
    }

    bool has_null_line() const {
        for (int i = 0; i < rows; ++i)
            if (has_null_row(i)) return true;
        for (int j = 0; j < cols; ++j)
            if (has_null_column(j)) return true;
        return false;
    }

    /// Row-major debug grid, entries as p/q (or 0/1 in boolean mode).
    std::string render() const {
        std::string out;
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                if (j) out += ' ';
                out += isolab::to_string((*this)(i, j));
            }
            out += '\n';
        }
        return out;
    }
};

using RatMatrix = Matrix<Rat>;
using BoolMatrix = Matrix<Boolean>;

template <class T>
std::vector<T> mat_vec(const Matrix<T>& m, const std::vector<T>& v) {
    if (static_cast<int>(v.size()) != m.cols) throw Error("mat_vec: dimension mismatch");
    std::vector<T> out(m.rows, semiring_zero<T>());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!is_zero(m(i, j)) && !is_zero(v[j])) out[i] += m(i, j) * v[j];
    return out;
}

inline bool is_doubly_stochastic(const RatMatrix& x) {
    if (!x.square() || !x.is_nonnegative()) return false;
    for (int i = 0; i < x.rows; ++i) {
        Rat r(0), c(0);
        for (int j = 0; j < x.cols; ++j) {
            r += x(i, j);
            c += x(j, i);
        }
        if (r != 1 || c != 1) return false;
    }
    return true;
}

} // namespace isolab
