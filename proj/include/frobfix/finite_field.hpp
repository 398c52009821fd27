#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace frobfix {

inline constexpr std::uint64_t kDefaultFieldCeiling = 100000;

/// F_q for q = p^m as polynomials over F_p modulo a primitive polynomial.
/// Elements are encoded as integers in [0, q) whose base-p digits are the
/// coefficients, so 0 and 1 are the usual constants and the prime field is
/// [0, p). Multiplication goes through log/exp tables.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// Shared instance per (p, m); throws ResourceError when p^m exceeds the
  /// ceiling.
  static std::shared_ptr<const FiniteField> get(std::uint32_t p, unsigned m,
                                                std::uint64_t ceiling = kDefaultFieldCeiling);

  FiniteField(std::uint32_t p, unsigned m, std::uint64_t ceiling = kDefaultFieldCeiling);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  /// Coefficients of the monic modulus, constant term first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// The class of x, a generator of the multiplicative group.
  Elem generator() const { return exp_[1 % (q_ - 1)]; }

  Elem from_int(std::int64_t k) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Discrete log base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a]; }
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  /// x -> x^{p^k}.
  Elem frobenius(Elem a, unsigned k = 1) const;
  bool in_prime_field(Elem a) const { return a < p_; }

  bool is_square(Elem a) const;
  /// Some square root when one exists.
  Elem sqrt(Elem a) const;
  /// Trace to F_p.
  Elem trace(Elem a) const;

  /// Digits of a, constant term first.
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

 private:
  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// The embedding F_{p^m} -> F_{p^n} for m | n sending x to a chosen root of
/// the small modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(std::shared_ptr<const FiniteField> small, std::shared_ptr<const FiniteField> large);

  FiniteField::Elem operator()(FiniteField::Elem a) const { return table_[a]; }
  const FiniteField& small() const { return *small_; }
  const FiniteField& large() const { return *large_; }

 private:
  std::shared_ptr<const FiniteField> small_, large_;
  std::vector<FiniteField::Elem> table_;
};

}  // namespace frobfix
