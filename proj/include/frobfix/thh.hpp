#pragma once

#include "frobfix/errors.hpp"
#include "frobfix/fp_linear.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace frobfix {

std::uint64_t binomial(unsigned n, unsigned k);

/// Omega^j of F_p[x_1..x_d] truncated to coefficients of total degree <= D.
struct TruncatedOmega {
  unsigned d = 0, j = 0, D = 0;

  std::uint64_t monomial_count() const { return binomial(D + d, d); }
  std::uint64_t dimension() const { return j > d ? 0 : binomial(d, j) * monomial_count(); }
  /// Dimension of the part whose coefficients have degree exactly e.
  std::uint64_t dimension_in_degree(unsigned e) const;
};

TruncatedOmega omega(unsigned d, unsigned j, unsigned D);

struct HkrSummand {
  unsigned i = 0;  // Omega^{n-2i}
  TruncatedOmega omega;
};

struct HkrThh {
  unsigned d = 0, n = 0, D = 0;
  std::vector<HkrSummand> summands;

  std::uint64_t dimension() const;
};

/// THH_n = sum over i >= 0 of Omega^{n-2i}, with every summand listed.
HkrThh hkr_thh(unsigned d, unsigned n, unsigned D);

/// F_{p^M} as F_p[x]/(f). Elements are coefficient vectors of length M.
class AmbientField {
 public:
  using Elem = std::vector<std::int64_t>;

  /// Cached. The modulus is found by a seeded random search and checked
  /// irreducible by distinct-degree gcds.
  static std::shared_ptr<const AmbientField> get(std::int64_t p, unsigned degree);

  std::int64_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  const Elem& modulus() const { return f_; }  // monic, length M+1

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(const Elem& a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

  /// Matrix of a -> a^p on the power basis.
  const fp::Mat& frobenius_matrix() const { return frob_; }
  /// Columns: an F_p-basis of the subfield F_{p^k}; k must divide M.
  fp::Mat subfield_basis(unsigned k) const;

  static fp::Vec to_vec(const Elem& a);
  Elem from_vec(const fp::Vec& v) const;

  AmbientField(std::int64_t p, unsigned degree, Elem modulus);

 private:
  std::int64_t p_;
  unsigned m_;
  Elem f_;
  fp::Mat frob_;
};

/// Irreducibility over F_p of a monic polynomial (coefficients low to high).
bool is_irreducible(const std::vector<std::int64_t>& f, std::int64_t p);

/// Levels F_{p^{m!}} of the factorial tower inside one ambient field.
class FieldTower {
 public:
  static constexpr unsigned kMaxAmbientDegree = 720;

  /// Throws ResourceError when top! exceeds kMaxAmbientDegree.
  FieldTower(std::int64_t p, unsigned top);

  std::int64_t characteristic() const { return ambient_->characteristic(); }
  unsigned top() const { return top_; }
  const AmbientField& ambient() const { return *ambient_; }

  unsigned degree(unsigned level) const;
  /// Ambient coordinates of the level basis (M x m!).
  const fp::Mat& basis(unsigned level) const;
  /// Frobenius on the level basis (m! x m!).
  const fp::Mat& frobenius(unsigned level) const;
  /// Inclusion F_{p^{m!}} -> F_{p^{n!}} in level bases, m <= n.
  fp::Mat inclusion(unsigned m, unsigned n) const;

 private:
  void check(unsigned level) const;
  std::shared_ptr<const AmbientField> ambient_;
  unsigned top_;
  std::vector<fp::Mat> basis_, frob_;
};

/// Smallest level whose field contains a root of x^p - x = a for every a in
/// the level-c field.
unsigned witness_level(std::int64_t p, unsigned c);

/// Kernel and cokernel of 1 - sigma on F_q^N viewed over F_p, where sigma is
/// the p-th power on coefficients.
struct ArtinSchreierResult {
  unsigned level = 0;
  unsigned field_degree = 0;
  std::uint64_t module_dim = 0;  // over F_q
  fp::Mat op;                    // 1 - sigma, over F_p
  fp::Mat kernel;                // basis columns
  Eigen::Index ker_dim = 0, coker_dim = 0;
};

ArtinSchreierResult artin_schreier_fixed(std::uint64_t module_dim, const FieldTower& tower, unsigned level);

struct ThhClassCertificate {
  unsigned level = 0;
  Eigen::Index generator = 0;  // coordinate of the module over F_p
  std::optional<unsigned> dies_at;
  bool verified = false;  // y - y^p = a checked by field arithmetic
};

struct ThhReport {
  std::int64_t p = 0;
  unsigned d = 0, n = 0, D = 0;
  std::vector<unsigned> levels;
  std::uint64_t expected_dim = 0;
  std::vector<Eigen::Index> ker_dims, coker_dims;
  /// Every transition between consecutive listed levels maps kernels isomorphically.
  bool transitions_iso = false;
  std::vector<ThhClassCertificate> certificates;

  bool dims_match() const;
  bool coker_certified() const;
  bool passed() const { return dims_match() && transitions_iso && coker_certified(); }
};

ThhReport frobenius_thh_rigidity(std::int64_t p, unsigned d, unsigned n, unsigned D, std::vector<unsigned> levels,
                                 unsigned certify_level = 2);

}  // namespace frobfix
