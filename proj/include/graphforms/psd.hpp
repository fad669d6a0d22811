#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "graphforms/matrix.hpp"

namespace graphforms {

/// Outcome of exact Hermitian / positive-semidefinite certification.
/// When is_psd is false a witness vector v with v* M v < 0 is attached and
/// the certifying value is re-evaluated exactly before the report is
/// returned. When the matrix is not even Hermitian, the offending entry
/// pair is recorded instead.
struct PsdReport {
    bool is_hermitian = false;
    bool is_psd = false;
    std::optional<Vec> witness;
    std::optional<Scalar> witness_value;  // v* M v, negative real
    std::optional<std::pair<std::size_t, std::size_t>> non_hermitian_entry;
};

namespace detail {

inline Scalar quadratic_form(const ExactMatrix& m, const Vec& v) {
    Scalar acc;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero() || v[i].is_zero() || v[j].is_zero()) continue;
            acc += v[i].conj() * m.at(i, j) * v[j];
        }
    return acc;
}

// Exact symmetric pivoting on the active principal submatrix.
//   - a negative real diagonal entry refutes PSD (witness e_i);
//   - a zero diagonal entry with a nonzero row entry refutes PSD
//     (witness t e_i + e_j with t chosen so the form evaluates to -1);
//   - otherwise eliminate a positive pivot and recurse on the Schur
//     complement, lifting any witness found there back through the pivot.
// Works on a copy indexed by the original positions; `active` lists the
// rows/cols still in play.
inline std::optional<Vec> psd_search(ExactMatrix m, std::vector<std::size_t> active,
                                     std::size_t dim) {
    if (active.empty()) return std::nullopt;
    for (std::size_t i : active) {
        if (m.at(i, i).re().sign() < 0) {
            Vec v(dim);
            v[i] = Scalar(1);
            return v;
        }
    }
    for (std::size_t i : active) {
        if (!m.at(i, i).is_zero()) continue;
        for (std::size_t j : active) {
            if (j == i || m.at(i, j).is_zero()) continue;
            // v = t e_i + e_j with t = -lambda * M_ij,
            // lambda = (M_jj + 1) / (2 |M_ij|^2) makes v* M v = -1.
            Rational lambda =
                (m.at(j, j).re() + Rational(1)) / (Rational(2) * m.at(i, j).norm2());
            Vec v(dim);
            v[i] = -Scalar(lambda) * m.at(i, j);
            v[j] = Scalar(1);
            return v;
        }
    }
    // Now every active diagonal is >= 0 and each zero-diagonal active has a
    // fully zero active row, so those indices contribute nothing and drop out.
    std::size_t pivot = dim;
    for (std::size_t i : active)
        if (m.at(i, i).re().sign() > 0) {
            pivot = i;
            break;
        }
    if (pivot == dim) return std::nullopt;  // only zero rows remain
    std::vector<std::size_t> next;
    for (std::size_t i : active)
        if (i != pivot && !m.at(i, i).is_zero()) next.push_back(i);
    // Schur complement on the surviving block; the pivot row itself is kept
    // intact for the witness lift below.
    Scalar d = m.at(pivot, pivot);
    for (std::size_t i : next)
        for (std::size_t j : next) m.at(i, j) -= m.at(i, pivot) * m.at(pivot, j) / d;
    auto w = psd_search(m, next, dim);
    if (!w) return std::nullopt;
    // Lift: v_pivot = -(sum_j M_pivot,j w_j) / d gives v* M v = w* S w.
    Scalar s;
    for (std::size_t j : next)
        if (!(*w)[j].is_zero()) s += m.at(pivot, j) * (*w)[j];
    (*w)[pivot] = -(s / d);
    return w;
}

}  // namespace detail

/// Exact PSD certification by pivoted elimination; no floating point, no
/// principal-minor enumeration.
inline PsdReport hermitian_psd(const ExactMatrix& m) {
    if (m.rows() != m.cols()) raise("NonSquare", "hermitian_psd requires a square matrix");
    PsdReport report;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != m.at(j, i).conj()) {
                report.non_hermitian_entry = {i, j};
                return report;
            }
    report.is_hermitian = true;

    std::vector<std::size_t> active(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) active[i] = i;
    // Note: psd_search mutates a copy; witnesses are in original coordinates.
    ExactMatrix work = m;
    auto witness = detail::psd_search(std::move(work), std::move(active), m.rows());
    if (!witness) {
        report.is_psd = true;
        return report;
    }
    Scalar value = detail::quadratic_form(m, *witness);
    if (!(value.is_real() && value.re().sign() < 0))
        raise("InternalError", "psd witness failed exact confirmation");
    report.is_psd = false;
    report.witness = std::move(*witness);
    report.witness_value = std::move(value);
    return report;
}

}  // namespace graphforms
