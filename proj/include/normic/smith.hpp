#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <utility>

#include <Eigen/Core>

#include "normic/errors.hpp"

namespace normic {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<std::int64_t>;
using IntVector = VectorX<std::int64_t>;

namespace detail {

template <typename Scalar>
Scalar checked_mul(Scalar a, Scalar b) {
    if constexpr (std::numeric_limits<Scalar>::is_integer && std::numeric_limits<Scalar>::is_bounded) {
        Scalar out{};
        if (__builtin_mul_overflow(a, b, &out)) throw InternalError("smith: integer overflow");
        return out;
    } else {
        return a * b;
    }
}

template <typename Scalar>
Scalar checked_sub(Scalar a, Scalar b) {
    if constexpr (std::numeric_limits<Scalar>::is_integer && std::numeric_limits<Scalar>::is_bounded) {
        Scalar out{};
        if (__builtin_sub_overflow(a, b, &out)) throw InternalError("smith: integer overflow");
        return out;
    } else {
        return a - b;
    }
}

template <typename Scalar>
Scalar abs_value(Scalar a) {
    return a < Scalar(0) ? -a : a;
}

/// row_i <- row_i - q * row_j, for a matrix of integers.
template <typename Derived>
void row_axpy(Eigen::MatrixBase<Derived>& m, Eigen::Index i, Eigen::Index j,
              typename Derived::Scalar q) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        m(i, c) = checked_sub(m(i, c), checked_mul(q, m(j, c)));
}

template <typename Derived>
void col_axpy(Eigen::MatrixBase<Derived>& m, Eigen::Index i, Eigen::Index j,
              typename Derived::Scalar q) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        m(r, i) = checked_sub(m(r, i), checked_mul(q, m(r, j)));
}

}  // namespace detail

/// U * A * V = S, with U, V unimodular and S diagonal with s_0 | s_1 | ... .
/// U_inv is tracked alongside U so that change-of-basis witnesses come for free.
template <typename Scalar>
struct SmithDecomposition {
    MatrixX<Scalar> U;
    MatrixX<Scalar> U_inv;
    MatrixX<Scalar> S;
    MatrixX<Scalar> V;
    Eigen::Index rank = 0;

    Scalar diagonal(Eigen::Index i) const { return i < std::min(S.rows(), S.cols()) ? S(i, i) : Scalar(0); }
};

template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& A) {
    using Scalar = typename Derived::Scalar;
    using detail::abs_value;
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();

    SmithDecomposition<Scalar> out;
    out.S = A;
    out.U = MatrixX<Scalar>::Identity(m, m);
    out.U_inv = MatrixX<Scalar>::Identity(m, m);
    out.V = MatrixX<Scalar>::Identity(n, n);
    auto& S = out.S;
    auto& U = out.U;
    auto& Ui = out.U_inv;
    auto& V = out.V;

    auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        S.row(i).swap(S.row(j));
        U.row(i).swap(U.row(j));
        Ui.col(i).swap(Ui.col(j));
    };
    auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        S.col(i).swap(S.col(j));
        V.col(i).swap(V.col(j));
    };
    // row_i -= q * row_j  (inverse: col_j of U_inv += q * col_i)
    auto row_op = [&](Eigen::Index i, Eigen::Index j, Scalar q) {
        if (q == Scalar(0)) return;
        detail::row_axpy(S, i, j, q);
        detail::row_axpy(U, i, j, q);
        detail::col_axpy(Ui, j, i, -q);
    };
    auto col_op = [&](Eigen::Index i, Eigen::Index j, Scalar q) {
        if (q == Scalar(0)) return;
        detail::col_axpy(S, i, j, q);
        detail::col_axpy(V, i, j, q);
    };

    const Eigen::Index diag = std::min(m, n);
    for (Eigen::Index t = 0; t < diag; ++t) {
        while (true) {
            Eigen::Index pr = -1, pc = -1;
            for (Eigen::Index i = t; i < m; ++i)
                for (Eigen::Index j = t; j < n; ++j)
                    if (S(i, j) != Scalar(0) && (pr < 0 || abs_value(S(i, j)) < abs_value(S(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) {
                out.rank = t;
                return out;
            }
            swap_rows(t, pr);
            swap_cols(t, pc);
            const Scalar pivot = S(t, t);
            bool clean = true;
            for (Eigen::Index i = t + 1; i < m; ++i) {
                row_op(i, t, S(i, t) / pivot);
                if (S(i, t) != Scalar(0)) clean = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                col_op(j, t, S(t, j) / pivot);
                if (S(t, j) != Scalar(0)) clean = false;
            }
            if (!clean) continue;
            Eigen::Index bad_row = -1;
            for (Eigen::Index i = t + 1; i < m && bad_row < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (S(i, j) % pivot != Scalar(0)) {
                        bad_row = i;
                        break;
                    }
            if (bad_row < 0) break;
            row_op(t, bad_row, Scalar(-1));
        }
        if (S(t, t) < Scalar(0)) {
            S.row(t) = -S.row(t);
            U.row(t) = -U.row(t);
            Ui.col(t) = -Ui.col(t);
        }
    }
    out.rank = diag;
    for (Eigen::Index t = 0; t < diag; ++t)
        if (S(t, t) == Scalar(0)) {
            out.rank = t;
            break;
        }
    return out;
}

/// Columns spanning {x : A x = 0} over the integers.
template <typename Derived>
MatrixX<typename Derived::Scalar> integer_kernel(const Eigen::MatrixBase<Derived>& A) {
    const auto snf = smith_normal_form(A);
    const Eigen::Index n = A.cols();
    return snf.V.rightCols(n - snf.rank);
}

}  // namespace normic
