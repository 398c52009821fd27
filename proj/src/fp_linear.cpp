#include "frobfix/fp_linear.hpp"

#include <stdexcept>

namespace frobfix::fp {

namespace {

std::int64_t inv(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

Mat reduce(const Mat& a, std::int64_t p) {
  return a.unaryExpr([p](std::int64_t x) { return ((x % p) + p) % p; });
}

Mat multiply(const Mat& a, const Mat& b, std::int64_t p) {
  Mat out = Mat::Zero(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const std::int64_t bk = b(k, j);
      if (bk == 0) continue;
      for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = (out(i, j) + a(i, k) * bk) % p;
    }
  return out;
}

Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }

Mat power(const Mat& a, std::uint64_t e, std::int64_t p) {
  Mat result = identity(a.rows()), base = reduce(a, p);
  while (e) {
    if (e & 1) result = multiply(result, base, p);
    e >>= 1;
    if (e) base = multiply(base, base, p);
  }
  return result;
}

Echelon row_reduce(const Mat& a, std::int64_t p) {
  Echelon e{reduce(a, p), {}};
  Mat& m = e.rref;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.row(piv).swap(m.row(row));
    const std::int64_t s = inv(m(row, col), p);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * s % p;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const std::int64_t f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = ((m(i, j) - f * m(row, j)) % p + p) % p;
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

Eigen::Index rank(const Mat& a, std::int64_t p) { return static_cast<Eigen::Index>(row_reduce(a, p).pivots.size()); }

Mat nullspace(const Mat& a, std::int64_t p) {
  Echelon e = row_reduce(a, p);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Mat basis = Mat::Zero(a.cols(), a.cols() - static_cast<Eigen::Index>(e.pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], k) = (p - e.rref(static_cast<Eigen::Index>(r), free)) % p;
    ++k;
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b, std::int64_t p) {
  Mat aug(a.rows(), a.cols() + 1);
  aug << a, b;
  Echelon e = row_reduce(aug, p);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec x = Vec::Zero(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x(e.pivots[r]) = e.rref(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

Mat solve_columns(const Mat& a, const Mat& b, std::int64_t p) {
  Mat x(a.cols(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    auto c = solve(a, b.col(j), p);
    if (!c) throw std::invalid_argument("solve_columns: column outside the span");
    x.col(j) = *c;
  }
  return x;
}

std::vector<Eigen::Index> complement_coordinates(const Mat& a, std::int64_t p) {
  // The pivots of the transposed echelon form span the column space together
  // with the standard vectors at the remaining coordinates.
  Echelon e = row_reduce(a.transpose(), p);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.rows()), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (!is_pivot[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

Mat block_diagonal(const Mat& a, Eigen::Index copies) {
  Mat out = Mat::Zero(a.rows() * copies, a.cols() * copies);
  for (Eigen::Index c = 0; c < copies; ++c) out.block(c * a.rows(), c * a.cols(), a.rows(), a.cols()) = a;
  return out;
}

}  // namespace frobfix::fp
