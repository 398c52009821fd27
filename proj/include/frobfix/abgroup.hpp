#pragma once

#include "frobfix/errors.hpp"
#include "frobfix/integer.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace frobfix {

class Presentation;

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, d_i >= 2.
///
/// Elements are column vectors in the normal-form basis: the k torsion
/// coordinates come first (coordinate i read mod d_i), then the free ones.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(Eigen::Index free_rank, std::vector<Integer> invariant_factors);

  /// Z/n for n >= 2, the trivial group for n = +-1, Z for n = 0.
  static FgAbGroup cyclic(const Integer& n);
  static FgAbGroup free(Eigen::Index rank) { return FgAbGroup(rank, {}); }

  Eigen::Index free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  Eigen::Index torsion_count() const { return static_cast<Eigen::Index>(factors_.size()); }
  Eigen::Index generator_count() const { return torsion_count() + free_rank_; }

  bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  /// Order of the torsion subgroup.
  Integer torsion_order() const;
  /// Order of a finite group; throws std::domain_error for infinite groups.
  Integer order() const;
  /// Exponent of the torsion subgroup (1 when torsion free).
  Integer torsion_exponent() const;

  /// Canonical presentation: one generator per coordinate, one relation
  /// d_i * e_i per torsion coordinate.
  const Presentation& presentation() const;

  IntVector reduce(const IntVector& x) const;
  bool is_zero(const IntVector& x) const;
  IntVector zero() const { return IntVector::Zero(generator_count()); }
  IntVector basis_vector(Eigen::Index j) const;

  std::string to_string() const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
  }

 private:
  Eigen::Index free_rank_ = 0;
  std::vector<Integer> factors_;
  mutable std::shared_ptr<const Presentation> presentation_;
};

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

/// Generators modulo the row space of an integer relation matrix. The normal
/// form and the change of basis to it are computed once at construction.
class Presentation {
 public:
  Presentation(Eigen::Index generator_count, IntMatrix relations);

  static Presentation canonical(const FgAbGroup& group);

  Eigen::Index generator_count() const { return data_->generators; }
  const IntMatrix& relations() const { return data_->relations; }

  /// The isomorphism type, i.e. the normalized group.
  const FgAbGroup& group() const { return data_->group; }
  /// Normal-form coordinates of a vector of generator coefficients:
  /// (normal generators) x (generators).
  const IntMatrix& to_normal() const { return data_->to_normal; }
  /// Generator coefficients of each normal-form basis element.
  const IntMatrix& from_normal() const { return data_->from_normal; }

  /// Normal-form coordinates of x, reduced.
  IntVector normalize(const IntVector& x) const;
  bool is_zero(const IntVector& x) const { return group().is_zero(to_normal() * x); }

  /// Same generators and relations.
  friend bool operator==(const Presentation& a, const Presentation& b);

 private:
  struct Data {
    Eigen::Index generators = 0;
    IntMatrix relations;
    FgAbGroup group;
    IntMatrix to_normal, from_normal;
  };
  explicit Presentation(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// A homomorphism given on generators: column j is the image of generator j
/// of the source, written in the generators of the target. Well-definedness
/// (relations map to relations) is verified at construction.
class GroupHom {
 public:
  GroupHom(Presentation source, Presentation target, IntMatrix matrix);

  static GroupHom identity(const Presentation& p);
  static GroupHom zero(const Presentation& source, const Presentation& target);
  static GroupHom scalar(const Presentation& p, const Integer& c);

  const Presentation& source() const { return source_; }
  const Presentation& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  /// Image of a source generator vector, in target generators (unreduced).
  IntVector apply(const IntVector& x) const { return matrix_ * x; }
  /// Normal-form in, normal-form out (reduced).
  IntVector apply_normal(const IntVector& y) const;
  /// The map between the normal forms of source and target.
  IntMatrix normal_matrix() const;

  bool is_zero() const;
  bool equals(const GroupHom& other) const;

 private:
  Presentation source_, target_;
  IntMatrix matrix_;
};

/// g after f.
GroupHom compose(const GroupHom& g, const GroupHom& f);
GroupHom operator-(const GroupHom& a, const GroupHom& b);
GroupHom operator+(const GroupHom& a, const GroupHom& b);

struct KernelResult {
  FgAbGroup group;
  GroupHom inclusion;  // group.presentation() -> f.source()
};

struct CokernelResult {
  FgAbGroup group;
  GroupHom projection;  // f.target() -> group.presentation()
  /// Generator coefficients (in f.target()) of a preimage of each basis
  /// element of the cokernel.
  IntMatrix section;
};

KernelResult kernel(const GroupHom& f);
CokernelResult cokernel(const GroupHom& f);
FgAbGroup group_from_presentation(const Presentation& p);

bool is_injective(const GroupHom& f);
bool is_surjective(const GroupHom& f);
bool is_isomorphism(const GroupHom& f);

/// Given an injective hom and a target vector in its image, the unique
/// preimage in normal-form coordinates of the source.
std::optional<IntVector> lift(const GroupHom& injection, const IntVector& target_vector);
/// Factor f through an injective hom with the same target.
GroupHom lift_hom(const GroupHom& injection, const GroupHom& f);

/// Block-diagonal presentation of a direct sum.
Presentation direct_sum(const Presentation& a, const Presentation& b);

/// All elements of a finite group in normal-form coordinates, in
/// lexicographic order. Throws ResourceError for infinite groups or when the
/// order exceeds the bound.
std::vector<IntVector> enumerate_elements(const FgAbGroup& g, const Integer& bound);

// ---------------------------------------------------------------------------
// Localization

/// A set of inverted primes: either finitely many, or all primes outside a
/// finite set (cofinite). Rationalization is the cofinite set with nothing
/// kept; localization at a prime ideal (p) keeps only p.
class Localization {
 public:
  Localization() = default;
  static Localization none() { return {}; }
  static Localization invert(std::set<Integer> primes);
  static Localization at_prime(const Integer& p);
  static Localization rational();

  bool inverts(const Integer& prime) const;
  bool is_none() const { return !cofinite_ && primes_.empty(); }
  bool is_rational() const { return cofinite_ && primes_.empty(); }
  bool cofinite() const { return cofinite_; }
  const std::set<Integer>& primes() const { return primes_; }

  /// Largest divisor of n supported on primes that are not inverted.
  Integer strip(const Integer& n) const;
  /// Whether every prime factor of n is inverted.
  bool is_unit(const Integer& n) const { return strip(n) == 1; }

  /// Inverts the union of both sets.
  Localization join(const Localization& other) const;

  /// Suffix notation: "", "[1/3]", "_(3)", "_Q".
  std::string suffix() const;

  friend bool operator==(const Localization& a, const Localization& b) {
    return a.cofinite_ == b.cofinite_ && a.primes_ == b.primes_;
  }

 private:
  bool cofinite_ = false;
  std::set<Integer> primes_;
};

/// An FgAbGroup tensored with a localization of Z. Stored canonically: the
/// underlying group carries no torsion at inverted primes.
class LocalizedGroup {
 public:
  LocalizedGroup() = default;
  LocalizedGroup(const FgAbGroup& g, Localization loc = {});

  const FgAbGroup& underlying() const { return underlying_; }
  const Localization& localization() const { return loc_; }
  bool is_trivial() const { return underlying_.is_trivial(); }
  bool is_finite() const { return underlying_.is_finite(); }

  std::string to_string() const;

  friend bool operator==(const LocalizedGroup& a, const LocalizedGroup& b) {
    return a.underlying_ == b.underlying_ &&
           (a.underlying_.free_rank() == 0 || a.loc_ == b.loc_);
  }

 private:
  FgAbGroup underlying_;
  Localization loc_;
};

LocalizedGroup localize(const FgAbGroup& g, const Localization& loc);
LocalizedGroup localize(const LocalizedGroup& g, const Localization& loc);
LocalizedGroup direct_sum(const LocalizedGroup& a, const LocalizedGroup& b);

/// The hom induced between the stripped models of source and target. Both
/// must be canonical presentations of FgAbGroups.
GroupHom localize_hom(const GroupHom& f, const Localization& loc);

}  // namespace frobfix
