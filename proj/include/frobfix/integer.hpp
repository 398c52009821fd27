#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace frobfix {

/// Arbitrary precision integer used for every group-theoretic computation.
/// Expression templates are disabled so the type behaves as a plain value
/// inside Eigen expressions.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += boost::multiprecision::abs(n);
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

/// Modular inverse of a modulo n; requires gcd(a, n) = 1.
Integer inverse_mod(const Integer& a, const Integer& n);

/// Deterministic for the sizes used here (trial division below 2^20, then
/// Miller-Rabin with 25 rounds).
bool is_prime(const Integer& n);

/// Prime factors of n (n != 0), ascending, without multiplicity. Uses trial
/// division; n must not have two prime factors above 10^7.
std::vector<Integer> prime_factors(Integer n);

/// The exponent of p in n (n != 0).
unsigned valuation(Integer n, const Integer& p);

inline std::string to_string(const Integer& a) { return a.str(); }

inline IntMatrix identity_matrix(Eigen::Index n) {
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

/// Factorial as a plain machine integer; valid up to 20!.
std::uint64_t factorial(unsigned m);

}  // namespace frobfix
