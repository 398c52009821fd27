#pragma once

#include "frobfix/abgroup.hpp"
#include "frobfix/finite_field.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace frobfix {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coefficients in F_p.
struct CurveSpec {
  std::string name;
  std::uint32_t p = 2;
  std::array<std::int64_t, 5> a{};  // a1, a2, a3, a4, a6

  /// Discriminant reduced into [0, p).
  std::int64_t discriminant() const;
  /// Throws std::invalid_argument unless p is prime and the curve is smooth.
  void validate() const;
};

struct Point {
  FiniteField::Elem x = 0, y = 0;
  bool infinity = true;

  static Point at_infinity() { return {}; }
  static Point affine(FiniteField::Elem x, FiniteField::Elem y) { return {x, y, false}; }
  friend bool operator==(const Point& a, const Point& b) {
    return a.infinity == b.infinity && (a.infinity || (a.x == b.x && a.y == b.y));
  }
};

/// A Weierstrass curve over a finite field with the general addition law.
class WeierstrassCurve {
 public:
  using Elem = FiniteField::Elem;

  WeierstrassCurve(std::shared_ptr<const FiniteField> field, std::array<Elem, 5> a);
  /// The base change of spec to F_{p^k}.
  static WeierstrassCurve over(const CurveSpec& spec, unsigned k, std::uint64_t ceiling = kDefaultFieldCeiling);

  const FiniteField& field() const { return *field_; }
  const std::shared_ptr<const FiniteField>& field_ptr() const { return field_; }
  const std::array<Elem, 5>& coefficients() const { return a_; }
  Elem discriminant() const;
  bool defined_over_prime_field() const;

  bool contains(const Point& P) const;
  Point neg(const Point& P) const;
  Point add(const Point& P, const Point& Q) const;
  Point mul(std::int64_t k, const Point& P) const;

  /// Every point, the point at infinity first, then affine points by x and y.
  std::vector<Point> enumerate() const;

 private:
  std::shared_ptr<const FiniteField> field_;
  std::array<Elem, 5> a_;
};

/// The finite group E(F_q) with an explicit isomorphism to Z/n1 + Z/n2.
class PointGroup {
 public:
  explicit PointGroup(WeierstrassCurve curve);

  const WeierstrassCurve& curve() const { return curve_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Invariant-factor form, at most two factors.
  const FgAbGroup& structure() const { return structure_; }
  /// Points for the normal-form basis of structure().
  const std::vector<Point>& generators() const { return generators_; }

  bool contains(const Point& P) const;
  /// Normal-form coordinates; throws std::out_of_range if P is not in the group.
  IntVector coordinates(const Point& P) const;
  Point from_coordinates(const IntVector& c) const;

  /// The hom on structure() determined by the images of the generators under
  /// a point map with values in target. The map is assumed additive.
  template <class F>
  GroupHom hom_to(const PointGroup& target, F&& map) const {
    IntMatrix m(target.structure().generator_count(), structure_.generator_count());
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = target.coordinates(map(generators_[static_cast<std::size_t>(j)]));
    return GroupHom(structure_.presentation(), target.structure().presentation(), m);
  }

 private:
  static std::uint64_t key(const Point& P);

  WeierstrassCurve curve_;
  std::vector<Point> points_;
  FgAbGroup structure_;
  std::vector<Point> generators_;
  std::vector<std::int64_t> orders_;  // of the generators
  std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::int64_t>> coords_;
};

/// E(F_{p^k}); throws ResourceError above the field ceiling.
PointGroup point_group(const CurveSpec& spec, unsigned k, std::uint64_t ceiling = kDefaultFieldCeiling);

/// (x, y) -> (x^p, y^p); the curve must be defined over F_p.
Point frobenius(const WeierstrassCurve& E, const Point& P);
/// [p] o frobenius^{-1}.
Point verschiebung(const WeierstrassCurve& E, const Point& P);

GroupHom frobenius_on_points(const PointGroup& G);
GroupHom verschiebung_on_points(const PointGroup& G);

/// The map E(F_{p^m}) -> E(F_{p^n}) for m | n, through a field embedding.
GroupHom point_inclusion(const PointGroup& small, const PointGroup& large);
Point embed_point(const FieldEmbedding& e, const Point& P);

/// a = p + 1 - #E(F_p).
std::int64_t trace_of_frobenius(const CurveSpec& spec);
/// p^k + 1 - s_k with s_0 = 2, s_1 = a, s_k = a s_{k-1} - p s_{k-2}.
Integer point_count(const CurveSpec& spec, unsigned k);
Integer point_count_from_trace(std::int64_t a, std::uint32_t p, unsigned k);

/// deg(s + r V) = s^2 + a r s + p r^2, where a is the trace and p the degree
/// of V (the field size when working over F_q).
Integer isogeny_degree_form(std::int64_t a, const Integer& p, const Integer& r, const Integer& s);
Integer isogeny_degree_form(const CurveSpec& spec, const Integer& r, const Integer& s);

struct KernelCount {
  unsigned level = 0;
  std::uint64_t count = 0;
};

/// Kernel sizes of s + r V on E(F_{p^k}) compared with the degree form.
/// Counts must divide the degree; when s + r a is prime to p the isogeny is
/// separable and the count reaches the degree at any level containing the
/// whole kernel.
struct IsogenyKernelCheck {
  std::int64_t r = 0, s = 0;
  Integer degree;
  bool separable = false;
  std::vector<KernelCount> counts;
  std::optional<unsigned> rational_level;  // first level with count == degree

  bool consistent() const;
};

IsogenyKernelCheck isogeny_kernel_check(const CurveSpec& spec, std::int64_t r, std::int64_t s, unsigned max_level,
                                        std::uint64_t ceiling = kDefaultFieldCeiling);

/// V o phi = phi o V = [p] on enumerated points, positivity of the degree
/// form, and deg(p - V) = p #E(F_p) cross-checked by kernel counts.
struct VerschiebungReport {
  CurveSpec curve;
  unsigned max_level = 0;
  std::uint64_t points_checked = 0;
  bool v_after_phi = true;
  bool phi_after_v = true;
  bool form_positive = true;  // on [-5, 5]^2 minus the origin
  Integer p_minus_v_degree;
  Integer expected_degree;  // p #E(F_p)
  IsogenyKernelCheck kernel;

  bool passed() const {
    return v_after_phi && phi_after_v && form_positive && p_minus_v_degree == expected_degree && kernel.consistent();
  }
};

VerschiebungReport verschiebung_report(const CurveSpec& spec, unsigned max_level, unsigned kernel_max_level,
                                       std::uint64_t ceiling = kDefaultFieldCeiling);

/// A curve over F_{p^2} with trace +-2p, so that its degree form over F_{p^2}
/// is a perfect square vanishing at (r, s) != 0.
struct SharpnessWitness {
  bool found = false;
  std::uint32_t p = 0;
  std::array<FiniteField::Elem, 5> a{};  // coefficients in the encoding of F_{p^2}
  std::uint64_t point_count = 0;
  std::int64_t trace = 0;
  std::int64_t r = 0, s = 0;
  Integer form_value;
};

SharpnessWitness odd_power_sharpness(std::uint32_t p);

}  // namespace frobfix
