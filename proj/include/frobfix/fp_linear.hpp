#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

namespace frobfix::fp {

using Mat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Entries reduced into [0, p).
Mat reduce(const Mat& a, std::int64_t p);
Mat multiply(const Mat& a, const Mat& b, std::int64_t p);
Mat power(const Mat& a, std::uint64_t e, std::int64_t p);
Mat identity(Eigen::Index n);

/// Row echelon form with its pivot columns.
struct Echelon {
  Mat rref;
  std::vector<Eigen::Index> pivots;
};

Echelon row_reduce(const Mat& a, std::int64_t p);
Eigen::Index rank(const Mat& a, std::int64_t p);

/// Columns form a basis of {x : a x = 0}.
Mat nullspace(const Mat& a, std::int64_t p);

/// Some x with a x = b.
std::optional<Vec> solve(const Mat& a, const Vec& b, std::int64_t p);
/// X with a X = b; a must have full column rank and b must lie in its span.
Mat solve_columns(const Mat& a, const Mat& b, std::int64_t p);

/// Standard basis vectors completing the column space of a to F_p^rows.
std::vector<Eigen::Index> complement_coordinates(const Mat& a, std::int64_t p);

/// Block diagonal with `copies` copies of a.
Mat block_diagonal(const Mat& a, Eigen::Index copies);

}  // namespace frobfix::fp
