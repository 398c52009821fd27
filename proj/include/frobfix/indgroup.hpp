#pragma once

#include "frobfix/abgroup.hpp"
#include "frobfix/fixpoint.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frobfix {

/// Levels above this refuse evaluation unless a system is built with a
/// larger ceiling.
inline constexpr int kDefaultLevelCeiling = 8;

/// A directed system G_first -> G_{first+1} -> ... of finitely generated
/// groups, evaluated lazily and memoized. Homs act on the canonical
/// presentations of the levels. Copies share the memo table.
class IndAbGroup {
 public:
  using LevelFn = std::function<FgAbGroup(int)>;
  /// Normal-form matrix of a hom out of level m, given the level groups.
  using MapFn = std::function<IntMatrix(int)>;

  IndAbGroup(std::string tower, LevelFn level, MapFn transition, std::optional<MapFn> endo = std::nullopt,
             int first_level = 1, int ceiling = kDefaultLevelCeiling);

  static IndAbGroup constant(const FgAbGroup& g, std::optional<IntMatrix> endo = std::nullopt,
                             int ceiling = kDefaultLevelCeiling);

  const std::string& tower() const { return tower_; }
  int first_level() const { return first_; }
  int ceiling() const { return ceiling_; }
  bool has_endo() const { return endo_fn_.has_value(); }

  /// Throws ResourceError above the ceiling and std::out_of_range below the
  /// first level.
  const FgAbGroup& level(int m) const;
  /// level(m) -> level(m+1).
  const GroupHom& transition(int m) const;
  /// level(m) -> level(m); throws std::logic_error without an endo.
  const GroupHom& endo(int m) const;

  /// transition(m) o endo(m) = endo(m+1) o transition(m) for first <= m < up_to;
  /// throws std::logic_error on failure.
  void check_commuting(int up_to) const;

  /// Highest level evaluated so far (first_level - 1 if none).
  int levels_computed() const;

  /// Same system with a different endomorphism.
  IndAbGroup with_endo(MapFn endo) const;
  IndAbGroup with_ceiling(int ceiling) const;

 private:
  struct Memo;
  void check_range(int m) const;

  std::string tower_;
  LevelFn level_fn_;
  MapFn transition_fn_;
  std::optional<MapFn> endo_fn_;
  int first_;
  int ceiling_;
  std::shared_ptr<Memo> memo_;
};

/// Level m is Z/(p^{m!} - 1), the units of F_{p^{m!}}; transitions are the
/// inclusions of the factorial tower and the endo is multiplication by p.
IndAbGroup roots_of_unity_ind(const Integer& p, int ceiling = kDefaultLevelCeiling);

/// Same system with x -> x^{p^i}.
IndAbGroup roots_of_unity_ind(const Integer& p, int power, int ceiling);

struct IndFixedPoints {
  IndAbGroup ker_system;
  IndAbGroup coker_system;
};

/// Level-wise kernels and cokernels of (1 - endo) with induced transitions.
IndFixedPoints ind_fixed_points(const IndAbGroup& g);

struct Stabilization {
  bool stabilized = false;
  int level = 0;       // first level from which all checked transitions are isomorphisms
  int max_level = 0;
  FgAbGroup group;     // the group at that level, or at max_level otherwise
  std::vector<FgAbGroup> levels;  // first_level .. max_level

  std::string report() const;
};

/// Smallest N < max_level such that every transition N -> ... -> max_level is
/// an isomorphism.
Stabilization stabilize(const IndAbGroup& s, int max_level);

struct VanishingWitness {
  int level = 0;
  Eigen::Index generator = 0;
  std::optional<int> dies_at;
};

struct VanishingCertificate {
  int max_level = 0;
  int search_ceiling = 0;
  std::vector<VanishingWitness> witnesses;

  bool complete() const;
  std::vector<VanishingWitness> survivors() const;
};

/// For every normal-form generator at levels first..max_level, the first
/// level (up to the ceiling of the system) where its image vanishes.
VanishingCertificate colim_vanishes(const IndAbGroup& s, int max_level);

/// Fixed points at the colimit: h0 is the stabilized kernel when the kernel
/// system stabilizes by stabilize_level; h1 is zero when every cokernel class
/// up to certify_level dies within the tower. Otherwise the piece is unknown.
struct ColimitFixedPoints {
  Stabilization kernel;
  VanishingCertificate cokernel;
  PartialFixedPoints pieces;
};

ColimitFixedPoints colimit_fixed_points(const IndAbGroup& g, int stabilize_level, int certify_level);

}  // namespace frobfix
