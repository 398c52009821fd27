#pragma once
// Independent brute-force routes used to check the exact algebra.

#include "frobfix/abgroup.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace frobfix::oracle {

/// Fraction-free Gaussian elimination (Bareiss); exact determinant.
inline Integer determinant(IntMatrix a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.row(k).swap(a.row(r));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline std::string key(const IntVector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i).str() + ",";
  return s;
}

/// |{x : f(x) = 0}| by enumerating the source.
inline Integer kernel_order(const GroupHom& f, const Integer& bound = 100000) {
  Integer count = 0;
  const IntMatrix F = f.normal_matrix();
  for (const auto& x : enumerate_elements(f.source().group(), bound))
    if (f.target().group().is_zero(F * x)) ++count;
  return count;
}

/// |target| / |image| by enumerating the image.
inline Integer cokernel_order(const GroupHom& f, const Integer& bound = 100000) {
  std::set<std::string> image;
  const IntMatrix F = f.normal_matrix();
  for (const auto& x : enumerate_elements(f.source().group(), bound))
    image.insert(key(f.target().group().reduce(F * x)));
  return f.target().group().order() / Integer(image.size());
}

/// Fixed set {x : x = phi(x)} of an endomorphism of a finite group.
inline Integer fixed_set_order(const GroupHom& phi, const Integer& bound = 100000) {
  Integer count = 0;
  const IntMatrix F = phi.normal_matrix();
  const FgAbGroup& g = phi.source().group();
  for (const auto& x : enumerate_elements(g, bound))
    if (g.is_zero(F * x - x)) ++count;
  return count;
}

/// Number of orbits of x -> x + (1 - phi)(y), i.e. |G / (1 - phi)G|.
inline Integer coinvariant_order(const GroupHom& phi, const Integer& bound = 100000) {
  const FgAbGroup& g = phi.source().group();
  const IntMatrix F = phi.normal_matrix();
  std::set<std::string> image;
  for (const auto& y : enumerate_elements(g, bound)) image.insert(key(g.reduce(y - F * y)));
  return g.order() / Integer(image.size());
}

/// A random finite group of order at most max_order.
inline FgAbGroup random_finite_group(std::mt19937_64& rng, long max_order) {
  std::vector<Integer> factors;
  long order = 1;
  std::uniform_int_distribution<int> count(0, 3);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<long> d(2, 30);
    long e = d(rng);
    if (order * e > max_order) break;
    order *= e;
    factors.push_back(e);
  }
  IntMatrix rel = IntMatrix::Zero(static_cast<Eigen::Index>(factors.size()), static_cast<Eigen::Index>(factors.size()));
  for (std::size_t i = 0; i < factors.size(); ++i)
    rel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = factors[i];
  return Presentation(static_cast<Eigen::Index>(factors.size()), rel).group();
}

/// A random well-defined hom between canonical presentations.
inline GroupHom random_hom(std::mt19937_64& rng, const FgAbGroup& src, const FgAbGroup& tgt) {
  IntMatrix m(tgt.generator_count(), src.generator_count());
  std::uniform_int_distribution<int> c(-6, 6);
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      Integer step = 1;
      if (i < src.torsion_count()) {
        const Integer& d = src.invariant_factors()[static_cast<std::size_t>(i)];
        if (j < tgt.torsion_count()) {
          const Integer& e = tgt.invariant_factors()[static_cast<std::size_t>(j)];
          step = e / gcd(e, d);
        } else {
          step = 0;  // torsion cannot map to a free coordinate
        }
      }
      m(j, i) = step * c(rng);
    }
  return GroupHom(src.presentation(), tgt.presentation(), m);
}

}  // namespace frobfix::oracle
