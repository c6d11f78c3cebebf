#pragma once

#include <cstdint>
#include <cstdlib>
#include <utility>

#include <Eigen/Core>

#include "saito/error.hpp"

namespace saito {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// P * M * Q == D with P, Q unimodular and D diagonal, d1 | d2 | ..., all
/// diagonal entries nonnegative. Pinv is the inverse of P, tracked alongside
/// so that callers can read off a basis of the column lattice of M.
struct SmithDecomposition {
    IntMatrix D;
    IntMatrix P;
    IntMatrix Q;
    IntMatrix Pinv;

    /// Diagonal entries d_1 | d_2 | ... (length min(rows, cols), zeros last).
    std::vector<std::int64_t> diagonal() const {
        std::vector<std::int64_t> d;
        for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::InternalInconsistency, "integer overflow in exact linear algebra");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Error(ErrorKind::InternalInconsistency, "integer overflow in exact linear algebra");
    return r;
}

} // namespace detail

inline SmithDecomposition smith_decomposition(const IntMatrix& M) {
    using detail::checked_mul;
    using detail::checked_sub;
    const Eigen::Index m = M.rows(), n = M.cols();
    SmithDecomposition s{M, IntMatrix::Identity(m, m), IntMatrix::Identity(n, n), IntMatrix::Identity(m, m)};
    IntMatrix& D = s.D;

    // row_i -= q * row_t  (P likewise; Pinv: col_t += q * col_i)
    auto row_axpy = [&](Eigen::Index i, Eigen::Index t, std::int64_t q) {
        for (Eigen::Index j = 0; j < n; ++j) D(i, j) = checked_sub(D(i, j), checked_mul(q, D(t, j)));
        for (Eigen::Index j = 0; j < m; ++j) s.P(i, j) = checked_sub(s.P(i, j), checked_mul(q, s.P(t, j)));
        for (Eigen::Index j = 0; j < m; ++j) s.Pinv(j, t) = checked_sub(s.Pinv(j, t), checked_mul(-q, s.Pinv(j, i)));
    };
    // col_j -= q * col_t
    auto col_axpy = [&](Eigen::Index j, Eigen::Index t, std::int64_t q) {
        for (Eigen::Index i = 0; i < m; ++i) D(i, j) = checked_sub(D(i, j), checked_mul(q, D(i, t)));
        for (Eigen::Index i = 0; i < n; ++i) s.Q(i, j) = checked_sub(s.Q(i, j), checked_mul(q, s.Q(i, t)));
    };
    auto swap_rows = [&](Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        D.row(a).swap(D.row(b));
        s.P.row(a).swap(s.P.row(b));
        s.Pinv.col(a).swap(s.Pinv.col(b));
    };
    auto swap_cols = [&](Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        D.col(a).swap(D.col(b));
        s.Q.col(a).swap(s.Q.col(b));
    };

    const Eigen::Index r = std::min(m, n);
    for (Eigen::Index t = 0; t < r; ++t) {
        for (;;) {
            Eigen::Index pi = -1, pj = -1;
            std::int64_t best = 0;
            for (Eigen::Index i = t; i < m; ++i)
                for (Eigen::Index j = t; j < n; ++j)
                    if (D(i, j) != 0 && (best == 0 || std::llabs(D(i, j)) < best)) {
                        best = std::llabs(D(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return s; // remaining block is zero
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (Eigen::Index i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                row_axpy(i, t, D(i, t) / D(t, t));
                if (D(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                col_axpy(j, t, D(t, j) / D(t, t));
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the whole remaining block.
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) { bad = i; break; }
            if (bad < 0) break;
            row_axpy(t, bad, -1); // row_t += row_bad
        }
        if (D(t, t) < 0) {
            D.row(t) *= -1;
            s.P.row(t) *= -1;
            s.Pinv.col(t) *= -1;
        }
    }
    return s;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline std::int64_t determinant(const IntMatrix& M) {
    if (M.rows() != M.cols()) throw Error(ErrorKind::NotSquare, "determinant of a non-square matrix");
    const Eigen::Index n = M.rows();
    if (n == 0) return 1;
    IntMatrix A = M;
    std::int64_t sign = 1, prev = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (A(k, k) == 0) {
            Eigen::Index swap = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (A(i, k) != 0) { swap = i; break; }
            if (swap < 0) return 0;
            A.row(k).swap(A.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                A(i, j) = detail::checked_sub(detail::checked_mul(A(i, j), A(k, k)),
                                              detail::checked_mul(A(i, k), A(k, j))) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

/// Adjugate, so that M * adj(M) == det(M) * I.
inline IntMatrix adjugate(const IntMatrix& M) {
    const Eigen::Index n = M.rows();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (Eigen::Index a = 0, r = 0; a < n; ++a) {
                if (a == j) continue;
                for (Eigen::Index b = 0, c = 0; b < n; ++b) {
                    if (b == i) continue;
                    minor(r, c++) = M(a, b);
                }
                ++r;
            }
            const std::int64_t d = determinant(minor);
            adj(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

} // namespace saito
