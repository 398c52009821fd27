#pragma once

#include "frobfix/integer.hpp"

#include <optional>
#include <utility>

namespace frobfix {

/// Result of a Smith normal form computation: U * A * V = D with U, V
/// unimodular. The inverses are tracked alongside so that callers can move
/// between the original and the diagonal coordinates without a second solve.
template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U, D, V;
  Matrix<Scalar> U_inverse, V_inverse;
  Eigen::Index rank = 0;

  /// Diagonal entries d_1 | d_2 | ... | d_rank, all positive.
  Vector<Scalar> invariants() const { return D.diagonal().head(rank); }
};

namespace detail {

template <typename Scalar>
Scalar magnitude(const Scalar& a) {
  return a < 0 ? Scalar(-a) : a;
}

// Elementary operations applied simultaneously to D and to the transforms.
template <typename Scalar>
struct SmithState {
  Matrix<Scalar> D, U, Uinv, V, Vinv;

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    D.row(i).swap(D.row(j));
    U.row(i).swap(U.row(j));
    Uinv.col(i).swap(Uinv.col(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    D.col(i).swap(D.col(j));
    V.col(i).swap(V.col(j));
    Vinv.row(i).swap(Vinv.row(j));
  }
  // row_i -= q * row_t
  void sub_row(Eigen::Index i, Eigen::Index t, const Scalar& q) {
    if (q == 0) return;
    D.row(i) -= q * D.row(t);
    U.row(i) -= q * U.row(t);
    Uinv.col(t) += q * Uinv.col(i);
  }
  // col_j -= q * col_t
  void sub_col(Eigen::Index j, Eigen::Index t, const Scalar& q) {
    if (q == 0) return;
    D.col(j) -= q * D.col(t);
    V.col(j) -= q * V.col(t);
    Vinv.row(t) += q * Vinv.row(j);
  }
  void negate_row(Eigen::Index i) {
    D.row(i) = -D.row(i);
    U.row(i) = -U.row(i);
    Uinv.col(i) = -Uinv.col(i);
  }
};

}  // namespace detail

/// Smith normal form over the integers.
///
/// Pivoting: at each stage the entry of smallest magnitude in the trailing
/// submatrix is moved to the pivot position and its row and column are
/// cleared by Euclidean division, re-pivoting on any smaller remainder. A
/// non-divisible entry in the trailing block is folded into the pivot row.
/// Choosing the smallest pivot keeps quotients and hence the growth of U and
/// V bounded by the Euclidean remainder sequence.
template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using detail::magnitude;
  const Eigen::Index m = A.rows(), n = A.cols();

  detail::SmithState<Scalar> s;
  s.D = A;
  s.U = Matrix<Scalar>::Identity(m, m);
  s.Uinv = Matrix<Scalar>::Identity(m, m);
  s.V = Matrix<Scalar>::Identity(n, n);
  s.Vinv = Matrix<Scalar>::Identity(n, n);

  Eigen::Index t = 0;
  for (; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block
    Eigen::Index pi = -1, pj = -1;
    Scalar best = 0;
    for (Eigen::Index j = t; j < n; ++j)
      for (Eigen::Index i = t; i < m; ++i)
        if (s.D(i, j) != 0 && (pi < 0 || magnitude(s.D(i, j)) < best)) {
          best = magnitude(s.D(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (s.D(i, t) == 0) continue;
        s.sub_row(i, t, Scalar(s.D(i, t) / s.D(t, t)));
        if (s.D(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (s.D(t, j) == 0) continue;
        s.sub_col(j, t, Scalar(s.D(t, j) / s.D(t, t)));
        if (s.D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived: re-pivot on it
        Eigen::Index bi = t, bj = t;
        Scalar small = magnitude(s.D(t, t));
        for (Eigen::Index i = t + 1; i < m; ++i)
          if (s.D(i, t) != 0 && magnitude(s.D(i, t)) < small) {
            small = magnitude(s.D(i, t));
            bi = i;
            bj = t;
          }
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (s.D(t, j) != 0 && magnitude(s.D(t, j)) < small) {
            small = magnitude(s.D(t, j));
            bi = t;
            bj = j;
          }
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (s.D(i, j) % s.D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      // row_t += row_bad, expressed as a subtraction with q = -1
      s.sub_row(t, bad, Scalar(-1));
    }
    if (s.D(t, t) < 0) s.negate_row(t);
  }

  SmithDecomposition<Scalar> out;
  out.rank = t;
  out.D = std::move(s.D);
  out.U = std::move(s.U);
  out.V = std::move(s.V);
  out.U_inverse = std::move(s.Uinv);
  out.V_inverse = std::move(s.Vinv);
  return out;
}

/// Basis (as columns) of the integer lattice {x : A x = 0}.
template <typename Derived>
Matrix<typename Derived::Scalar> integer_kernel(const Eigen::MatrixBase<Derived>& A) {
  auto snf = smith_normal_form(A);
  const Eigen::Index n = A.cols();
  return snf.V.rightCols(n - snf.rank);
}

/// An integer solution of A x = b, if one exists.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_integer(
    const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  auto snf = smith_normal_form(A);
  Vector<Scalar> c = snf.U * b;
  Vector<Scalar> y = Vector<Scalar>::Zero(A.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i < snf.rank) {
      if (c(i) % snf.D(i, i) != 0) return std::nullopt;
      y(i) = c(i) / snf.D(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return Vector<Scalar>(snf.V * y);
}

}  // namespace frobfix
