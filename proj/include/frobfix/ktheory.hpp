#pragma once

#include "frobfix/fixpoint.hpp"
#include "frobfix/indgroup.hpp"

#include <map>
#include <string>
#include <utility>
#include <variant>

namespace frobfix {

/// Multiplication by p^n; negative n only on groups with p inverted.
struct MultByPPow {
  int n = 0;
};
/// x -> x^{p^i} on a roots-of-unity ind-group.
struct UnitsFrobenius {
  int i = 1;
};
using EndoSpec = std::variant<MultByPPow, UnitsFrobenius>;

std::string to_string(const EndoSpec& e);

struct TableEntry {
  std::variant<LocalizedGroup, IndAbGroup> group;
  EndoSpec endo;

  bool is_ind() const { return std::holds_alternative<IndAbGroup>(group); }
  std::string describe() const;
};

/// Tower depths used to evaluate ind-group entries at the colimit.
struct TowerSettings {
  int ceiling = kDefaultLevelCeiling;
  int stabilize_level = kDefaultLevelCeiling;
  /// Cokernel classes at levels up to here must die within the ceiling.
  int certify_level = 2;
};

struct KTable {
  Integer p;
  int n_max = 0;
  std::map<int, TableEntry> entries;  // missing degrees are zero
};

/// K_n of the algebraic closure of F_p for -1 <= n <= n_max.
KTable k_fbar(const Integer& p, int n_max = 13, const TowerSettings& settings = {});

/// pi_{r,n}(F_p-bar)[1/p] for odd p, keyed by (r, n).
struct PiTable {
  Integer p;
  std::map<std::pair<int, int>, TableEntry> entries;
};

PiTable pi_table(const Integer& p, const TowerSettings& settings = {});

/// The ind-group obtained by localizing every level and transition.
IndAbGroup localize_ind(const IndAbGroup& g, const Localization& loc);

/// Fixed points of one table entry (colimit pieces for ind-groups).
PartialFixedPoints entry_fixed_points(const TableEntry& e, const Integer& p, const TowerSettings& settings);

/// pi_n of the Frobenius fixed points of K(F_p-bar) for -2 <= n <= n_max.
GradedFixedPoints frobenius_k(const Integer& p, int n_max, const TowerSettings& settings = {});
GradedFixedPoints frobenius_k_rational(const Integer& p, int n_max, const TowerSettings& settings = {});

/// Bigraded fixed points of pi_table: at (r, n) the pieces are h1 of
/// (r+1, n) and h0 of (r, n). Only rows r = 0 and r = -1 are produced.
std::map<std::pair<int, int>, DegreePieces> frobenius_pi_table(const Integer& p, const TowerSettings& settings = {});

struct MilnorComparison {
  Integer p;
  GradedFixedPoints milnor;
  GradedFixedPoints k;
  std::map<int, bool> agree;

  bool all_agree() const;
};

/// Fixed points of id - Frob on K^M_*(F_p-bar) and K_*(F_p-bar), both
/// localized at (p). K^M_n for n >= 2 is modeled rationally.
MilnorComparison milnor_comparison_fbar(const Integer& p, int n_max, const TowerSettings& settings = {});

}  // namespace frobfix
