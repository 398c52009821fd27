#pragma once

#include "frobfix/curves.hpp"
#include "frobfix/fixpoint.hpp"
#include "frobfix/indgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frobfix {

/// X in {Spec F_p, P^1, an elliptic curve over F_p}.
struct Variety {
  enum class Kind { kPoint, kProjectiveLine, kElliptic };
  Kind kind = Kind::kPoint;
  std::uint32_t p = 2;
  std::optional<CurveSpec> curve;

  static Variety point(std::uint32_t p) { return {Kind::kPoint, p, std::nullopt}; }
  static Variety projective_line(std::uint32_t p) { return {Kind::kProjectiveLine, p, std::nullopt}; }
  static Variety elliptic(const CurveSpec& e) { return {Kind::kElliptic, e.p, e}; }
  std::string name() const;
};

/// A point of P^1(F_q): an element of the level field, or infinity.
using ProjectivePoint = std::optional<FiniteField::Elem>;

/// Units of P^1 minus finitely many F_q-points: F_q^x + the lattice of
/// degree-zero divisors supported on the removed points. Lattice basis i is
/// [s_i] - [s_0], realized by (t - s_i) or (t - s_i)/(t - s_0).
struct UnitsDescription {
  std::shared_ptr<const FiniteField> field;
  std::vector<ProjectivePoint> removed;  // s_0 first; infinity is moved to the front
  FgAbGroup group;                       // Z/(q-1) + Z^{k-1}
  /// Coefficient Frobenius: p on constants, permutation of the removed points.
  GroupHom partial_frobenius;
  /// f -> f^p.
  GroupHom absolute_frobenius;

  /// f -> f(c) as a hom to Z/(q-1) (discrete logs); c must not be removed.
  GroupHom evaluation(const ProjectivePoint& c) const;
};

/// Throws std::invalid_argument for points outside the level field, repeated
/// points, an empty set, or a set that the Frobenius does not preserve.
UnitsDescription units_group(std::uint32_t p, const std::vector<ProjectivePoint>& removed, unsigned level,
                             std::uint64_t ceiling = kDefaultFieldCeiling);

/// Pic(X_{F_q}): 0, Z, or Z + E(F_q), with the partial Frobenius.
struct PicGroup {
  FgAbGroup group;
  GroupHom partial_frobenius;
  std::optional<PointGroup> points;
};

PicGroup pic_group(const Variety& X, unsigned level, std::uint64_t ceiling = kDefaultFieldCeiling);

/// Fixed points of the partial Frobenius on H^1 = units and H^2 = Pic of
/// X over F_{p^m}, placed in cohomological degrees 1..3.
struct Weight1Cohomology {
  unsigned level = 0;
  bool localized = false;
  FixedPointPair units;
  FixedPointPair pic;
  GradedFixedPoints graded;
};

Weight1Cohomology weight1_frobenius_cohomology(const Variety& X, unsigned level, bool localize_away_p,
                                               std::uint64_t ceiling = kDefaultFieldCeiling);

struct ClassCertificate {
  std::string component;  // "units", "degree" or "points"
  unsigned level = 0;
  Eigen::Index generator = 0;
  /// Level where the class dies, or nullopt.
  std::optional<unsigned> dies_at;
  /// The class maps isomorphically to every checked level (a constant summand).
  bool stable = false;

  bool certified() const { return dies_at.has_value() || stable; }
};

struct RigidityReport {
  Variety variety;
  bool localized = false;
  std::vector<unsigned> levels;
  std::vector<Weight1Cohomology> per_level;
  /// First level in the list from which kernels agree.
  std::optional<unsigned> stabilization_level;
  bool kernels_agree = false;
  std::vector<ClassCertificate> cokernel_classes;
  std::vector<std::string> failures;

  bool all_certified() const;
  bool passed() const { return kernels_agree && all_certified() && failures.empty(); }
};

/// Kernels are compared as groups and through the inclusions F_{p^m} ->
/// F_{p^n} for m | n; cokernel classes at levels up to certify_level are
/// pushed to levels m s until they vanish.
RigidityReport rigidity_compare(const Variety& X, const std::vector<unsigned>& levels, bool localize_away_p,
                                unsigned certify_level, std::uint64_t ceiling = kDefaultFieldCeiling);

/// Evaluation at two points on the fixed points of f -> f^p on the units of
/// C = P^1 minus removed points.
struct PointIndependenceReport {
  unsigned level = 0;
  ProjectivePoint c0, c1;
  bool kernel_agree = false;
  bool cokernel_agree_raw = false;
  /// Level where the images of all cokernel classes agree in the target.
  std::optional<unsigned> cokernel_agree_at;

  bool passed() const { return kernel_agree && (cokernel_agree_raw || cokernel_agree_at.has_value()); }
};

PointIndependenceReport point_independence_check(std::uint32_t p, const std::vector<ProjectivePoint>& removed,
                                                 unsigned level, const ProjectivePoint& c0, const ProjectivePoint& c1,
                                                 std::uint64_t ceiling = kDefaultFieldCeiling);

/// (Z/(q-1))^n on the factorial tower with sigma composed with x -> x^p.
struct PermTwistReport {
  struct Level {
    int level;
    FgAbGroup kernel, cokernel;
  };
  std::vector<Level> levels;
  VanishingCertificate cokernel_certificate;
  bool rational_h0_vanishes = false;
  bool rational_h1_vanishes = false;
};

IndAbGroup permuted_units_ind(const std::vector<int>& sigma, const Integer& p, int ceiling = kDefaultLevelCeiling);
PermTwistReport perm_twisted_fixed_points(const std::vector<int>& sigma, const Integer& p, int max_level);

}  // namespace frobfix
