#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphforms/error.hpp"
#include "graphforms/scalar.hpp"

namespace graphforms {

using Scalar = GaussianRational;
using Vec = std::vector<Scalar>;

/// Dense row-major matrix over Q(i). Dimensions at desk scale stay in the
/// hundreds, so dense storage with zero-skipping in the hot loops is enough.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    ExactMatrix conj_transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c).conj();
        return t;
    }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Vec col(std::size_t c) const {
        Vec v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }

    void set_col(std::size_t c, const Vec& v) {
        for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

    ExactMatrix& operator+=(const ExactMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ExactMatrix& operator-=(const ExactMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }

    friend ExactMatrix operator*(const Scalar& s, ExactMatrix m) {
        for (auto& x : m.a_) x *= s;
        return m;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) raise("ShapeMismatch", "matrix product shape mismatch");
        ExactMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend Vec operator*(const ExactMatrix& a, const Vec& v) {
        if (a.cols_ != v.size()) raise("ShapeMismatch", "matrix-vector shape mismatch");
        Vec out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero() || v[k].is_zero()) continue;
                out[i] += aik * v[k];
            }
        return out;
    }

private:
    void require_same_shape(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) raise("ShapeMismatch", "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

inline Vec zero_vec(std::size_t n) { return Vec(n); }

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec operator+(Vec a, const Vec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

inline Vec operator*(const Scalar& s, Vec v) {
    for (auto& x : v) x *= s;
    return v;
}

inline Vec conj(Vec v) {
    for (auto& x : v) x = x.conj();
    return v;
}

struct RrefResult {
    ExactMatrix matrix;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

/// Reduced row-echelon form by Gauss-Jordan elimination; pivot choice is the
/// first nonzero entry in column order, so the result is deterministic.
inline RrefResult rref(ExactMatrix m) {
    RrefResult out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
        Scalar inv = Scalar(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Scalar factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (m.at(row, c).is_zero()) continue;
                m.at(r, c) -= factor * m.at(row, c);
            }
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    out.rank = out.pivot_columns.size();
    out.matrix = std::move(m);
    return out;
}

inline std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

/// Basis of the right kernel {v : M v = 0}, one vector per free column of the
/// echelon form. Vectors are exact and linearly independent;
/// count = cols - rank.
inline std::vector<Vec> kernel_basis(const ExactMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivot_columns) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = Scalar(1);
        for (std::size_t k = 0; k < r.pivot_columns.size(); ++k)
            v[r.pivot_columns[k]] = -r.matrix.at(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One exact solution of A x = b, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const ExactMatrix& a, const Vec& b) {
    if (a.rows() != b.size()) raise("ShapeMismatch", "solve shape mismatch");
    ExactMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    RrefResult rr = rref(std::move(aug));
    for (std::size_t p : rr.pivot_columns)
        if (p == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (std::size_t k = 0; k < rr.pivot_columns.size(); ++k)
        x[rr.pivot_columns[k]] = rr.matrix.at(k, a.cols());
    return x;
}

}  // namespace graphforms
