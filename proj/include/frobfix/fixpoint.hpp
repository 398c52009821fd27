#pragma once

#include "frobfix/abgroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobfix {

/// An endomorphism phi = map / denominator of a localized group. The map acts
/// on the canonical presentation of the stripped underlying group; the
/// denominator must be a unit of the localization (so negative twists
/// p^{-n} are expressible once p is inverted).
struct Endo {
  LocalizedGroup group;
  GroupHom map;
  Integer denominator = 1;

  Endo(LocalizedGroup g, GroupHom m, Integer denom = 1);
  static Endo identity(const LocalizedGroup& g);
};

/// Kernel and cokernel of (1 - phi).
struct FixedPointPair {
  LocalizedGroup h0;
  LocalizedGroup h1;
  /// Witnesses on the underlying models: h0 -> M and M -> h1 (before
  /// localization of the outputs).
  std::optional<GroupHom> inclusion;
  std::optional<GroupHom> projection;
};

FixedPointPair fixed_points(const Endo& e);

/// Fixed points of multiplication by p^twist. Negative twists require p to be
/// inverted in the group.
FixedPointPair fixed_points_mult(const LocalizedGroup& g, const Integer& p, int twist);

// ---------------------------------------------------------------------------
// Graded inputs and the long exact sequence

enum class Grading {
  kHomological,    // pi_n(fix): 0 -> h1(n+1) -> pi_n -> h0(n) -> 0
  kCohomological,  // H^n(fix): 0 -> h1(n-1) -> H^n -> h0(n) -> 0
};

enum class Resolution {
  kTrivialSub,
  kTrivialQuot,
  kCoprimeSplit,  // Ext^1(quot, sub) = 0 for order reasons
  kUnresolved,    // both pieces known, extension not determined
  kUndetermined,  // a piece could not be computed (e.g. no vanishing certificate)
};

std::string to_string(Resolution r);

/// Per-degree fixed points where either piece may be unknown; ind-group
/// entries only determine h0/h1 at the colimit when stabilization and
/// vanishing certificates succeed.
struct PartialFixedPoints {
  std::optional<LocalizedGroup> h0;
  std::optional<LocalizedGroup> h1;

  static PartialFixedPoints from(const FixedPointPair& f) { return {f.h0, f.h1}; }
};

struct DegreePieces {
  int degree = 0;
  std::optional<LocalizedGroup> sub;
  std::optional<LocalizedGroup> quot;
  std::optional<LocalizedGroup> resolved;
  Resolution resolution = Resolution::kTrivialSub;

  bool extension_resolved() const { return resolved.has_value(); }
};

/// Decide whether 0 -> sub -> E -> quot -> 0 determines E, and if so return it.
DegreePieces resolve_extension(int degree, std::optional<LocalizedGroup> sub,
                               std::optional<LocalizedGroup> quot);

struct GradedFixedPoints {
  Grading grading = Grading::kHomological;
  std::map<int, DegreePieces> degrees;

  /// Degrees outside the computed range are zero.
  DegreePieces at(int degree) const;
  bool all_resolved() const;
};

/// Finite-support family of endomorphisms, one per degree.
struct GradedEndo {
  std::map<int, Endo> degrees;
  Grading grading = Grading::kHomological;
};

GradedFixedPoints graded_fixed_points(const GradedEndo& g);
GradedFixedPoints assemble_graded(const std::map<int, PartialFixedPoints>& per_degree, Grading grading);

// ---------------------------------------------------------------------------
// Complexes

/// Bounded cochain complex C^{start} -> C^{start+1} -> ... over canonical
/// presentations.
struct CochainComplex {
  int start_degree = 0;
  std::vector<FgAbGroup> groups;
  std::vector<GroupHom> differentials;  // d^k : C^k -> C^{k+1}, size groups-1

  int end_degree() const { return start_degree + static_cast<int>(groups.size()) - 1; }
  const FgAbGroup& at(int degree) const;
};

/// Cohomology groups with the induced endomorphism.
struct CohomologyWithEndo {
  int degree;
  FgAbGroup group;
  GroupHom endo;
};

/// Checks d o d = 0 and that phi commutes with d; throws std::invalid_argument.
void validate_complex(const CochainComplex& c, const std::vector<GroupHom>& phi);

std::vector<CohomologyWithEndo> cohomology_with_endo(const CochainComplex& c, const std::vector<GroupHom>& phi);

/// Fixed points of phi on the cohomology of C assembled along the long exact
/// sequence of the total complex of [C --(1-phi)--> C].
GradedFixedPoints total_complex_fixed_points(const CochainComplex& c, const std::vector<GroupHom>& phi);

/// H^n of the total complex computed directly (Tot^n = C^n + C^{n-1}); an
/// independent route used to cross-check the long exact sequence.
std::map<int, FgAbGroup> total_complex_cohomology(const CochainComplex& c, const std::vector<GroupHom>& phi);

}  // namespace frobfix
