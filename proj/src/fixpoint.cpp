#include "frobfix/fixpoint.hpp"

#include <stdexcept>

namespace frobfix {

Endo::Endo(LocalizedGroup g, GroupHom m, Integer denom)
    : group(std::move(g)), map(std::move(m)), denominator(std::move(denom)) {
  const Presentation& p = group.underlying().presentation();
  if (!(map.source() == p) || !(map.target() == p))
    throw std::invalid_argument("Endo: map must act on the canonical presentation of the group");
  if (denominator == 0 || !group.localization().is_unit(denominator))
    throw std::invalid_argument("Endo: denominator " + denominator.str() + " is not invertible in the group");
}

Endo Endo::identity(const LocalizedGroup& g) {
  return Endo(g, GroupHom::identity(g.underlying().presentation()));
}

FixedPointPair fixed_points(const Endo& e) {
  // 1 - map/den has the same kernel and cokernel as den - map
  const Presentation& p = e.group.underlying().presentation();
  GroupHom f = GroupHom::scalar(p, e.denominator) - e.map;
  KernelResult k = kernel(f);
  CokernelResult c = cokernel(f);
  const Localization& loc = e.group.localization();
  FixedPointPair out{localize(k.group, loc), localize(c.group, loc), k.inclusion, c.projection};
  return out;
}

FixedPointPair fixed_points_mult(const LocalizedGroup& g, const Integer& p, int twist) {
  if (twist < 0 && !g.localization().inverts(p))
    throw std::invalid_argument("fixed_points_mult: negative twist " + std::to_string(twist) +
                                " needs " + p.str() + " inverted");
  const Presentation& pres = g.underlying().presentation();
  const auto k = static_cast<unsigned long>(twist < 0 ? -twist : twist);
  Integer power = ipow(p, k);
  if (twist >= 0) return fixed_points(Endo(g, GroupHom::scalar(pres, power)));
  return fixed_points(Endo(g, GroupHom::identity(pres), power));
}

std::string to_string(Resolution r) {
  switch (r) {
    case Resolution::kTrivialSub: return "trivial-sub";
    case Resolution::kTrivialQuot: return "trivial-quot";
    case Resolution::kCoprimeSplit: return "coprime-split";
    case Resolution::kUnresolved: return "unresolved";
    case Resolution::kUndetermined: return "undetermined";
  }
  return "?";
}

DegreePieces resolve_extension(int degree, std::optional<LocalizedGroup> sub, std::optional<LocalizedGroup> quot) {
  DegreePieces d;
  d.degree = degree;
  d.sub = std::move(sub);
  d.quot = std::move(quot);
  if (!d.sub || !d.quot) {
    d.resolution = Resolution::kUndetermined;
    return d;
  }
  if (d.sub->is_trivial()) {
    d.resolution = Resolution::kTrivialSub;
    d.resolved = d.quot;
    return d;
  }
  if (d.quot->is_trivial()) {
    d.resolution = Resolution::kTrivialQuot;
    d.resolved = d.sub;
    return d;
  }
  // Ext^1(quot, sub) = Ext^1(tors quot, sub) = sub / n sub for n the torsion
  // exponent of quot; it vanishes iff sub is finite of order prime to n.
  const Integer n = d.quot->underlying().torsion_exponent();
  const bool split = n == 1 || (d.sub->is_finite() && gcd(d.sub->underlying().order(), n) == 1);
  if (split) {
    d.resolution = Resolution::kCoprimeSplit;
    d.resolved = direct_sum(*d.sub, *d.quot);
  } else {
    d.resolution = Resolution::kUnresolved;
  }
  return d;
}

DegreePieces GradedFixedPoints::at(int degree) const {
  auto it = degrees.find(degree);
  if (it != degrees.end()) return it->second;
  return resolve_extension(degree, LocalizedGroup{}, LocalizedGroup{});
}

bool GradedFixedPoints::all_resolved() const {
  for (const auto& [n, d] : degrees)
    if (!d.extension_resolved()) return false;
  return true;
}

GradedFixedPoints assemble_graded(const std::map<int, PartialFixedPoints>& per_degree, Grading grading) {
  GradedFixedPoints out;
  out.grading = grading;
  if (per_degree.empty()) return out;
  const int lo = per_degree.begin()->first, hi = per_degree.rbegin()->first;
  const int shift = grading == Grading::kHomological ? 1 : -1;
  auto piece = [&](int n, bool h0) -> std::optional<LocalizedGroup> {
    auto it = per_degree.find(n);
    if (it == per_degree.end()) return LocalizedGroup{};
    return h0 ? it->second.h0 : it->second.h1;
  };
  const int from = grading == Grading::kHomological ? lo - 1 : lo;
  const int to = grading == Grading::kHomological ? hi : hi + 1;
  for (int n = from; n <= to; ++n) out.degrees[n] = resolve_extension(n, piece(n + shift, false), piece(n, true));
  return out;
}

GradedFixedPoints graded_fixed_points(const GradedEndo& g) {
  std::map<int, PartialFixedPoints> per;
  for (const auto& [n, e] : g.degrees) per[n] = PartialFixedPoints::from(fixed_points(e));
  return assemble_graded(per, g.grading);
}

// ---------------------------------------------------------------------------
// Complexes

const FgAbGroup& CochainComplex::at(int degree) const {
  static const FgAbGroup zero;
  if (degree < start_degree || degree > end_degree()) return zero;
  return groups[static_cast<std::size_t>(degree - start_degree)];
}

void validate_complex(const CochainComplex& c, const std::vector<GroupHom>& phi) {
  if (c.groups.empty()) return;
  if (c.differentials.size() + 1 != c.groups.size())
    throw std::invalid_argument("complex: need one differential between consecutive groups");
  if (phi.size() != c.groups.size()) throw std::invalid_argument("complex: need one endomorphism per group");
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    const Presentation& pk = c.groups[k].presentation();
    if (!(phi[k].source() == pk) || !(phi[k].target() == pk))
      throw std::invalid_argument("complex: endomorphism " + std::to_string(k) + " has wrong presentation");
  }
  for (std::size_t k = 0; k < c.differentials.size(); ++k) {
    const GroupHom& d = c.differentials[k];
    if (!(d.source() == c.groups[k].presentation()) || !(d.target() == c.groups[k + 1].presentation()))
      throw std::invalid_argument("complex: differential " + std::to_string(k) + " has wrong presentation");
    if (k + 1 < c.differentials.size() && !compose(c.differentials[k + 1], d).is_zero())
      throw std::invalid_argument("complex: d o d != 0");
    if (!compose(d, phi[k]).equals(compose(phi[k + 1], d)))
      throw std::invalid_argument("complex: endomorphism does not commute with the differential");
  }
}

std::vector<CohomologyWithEndo> cohomology_with_endo(const CochainComplex& c, const std::vector<GroupHom>& phi) {
  validate_complex(c, phi);
  std::vector<CohomologyWithEndo> out;
  const auto n = static_cast<int>(c.groups.size());
  for (int k = 0; k < n; ++k) {
    const Presentation& pk = c.groups[static_cast<std::size_t>(k)].presentation();
    GroupHom d_out = k + 1 < n ? c.differentials[static_cast<std::size_t>(k)]
                               : GroupHom::zero(pk, FgAbGroup().presentation());
    KernelResult z = kernel(d_out);
    // image of the incoming differential, as a map into the cycles
    GroupHom d_in = k > 0 ? c.differentials[static_cast<std::size_t>(k - 1)]
                          : GroupHom::zero(FgAbGroup().presentation(), pk);
    GroupHom into_cycles = lift_hom(z.inclusion, d_in);
    CokernelResult h = cokernel(into_cycles);
    // induced endomorphism: section, include, phi, lift, project
    GroupHom phi_on_cycles = lift_hom(z.inclusion, compose(phi[static_cast<std::size_t>(k)], z.inclusion));
    const Presentation& hp = h.group.presentation();
    IntMatrix m = h.projection.matrix() * phi_on_cycles.matrix() * h.section;
    out.push_back({c.start_degree + k, h.group, GroupHom(hp, hp, m)});
  }
  return out;
}

GradedFixedPoints total_complex_fixed_points(const CochainComplex& c, const std::vector<GroupHom>& phi) {
  std::map<int, PartialFixedPoints> per;
  for (const auto& h : cohomology_with_endo(c, phi))
    per[h.degree] = PartialFixedPoints::from(fixed_points(Endo(LocalizedGroup(h.group), h.endo)));
  return assemble_graded(per, Grading::kCohomological);
}

std::map<int, FgAbGroup> total_complex_cohomology(const CochainComplex& c, const std::vector<GroupHom>& phi) {
  validate_complex(c, phi);
  std::map<int, FgAbGroup> out;
  if (c.groups.empty()) return out;
  const int lo = c.start_degree, hi = c.end_degree() + 1;

  auto pres = [&](int k) -> Presentation { return c.at(k).presentation(); };
  auto d = [&](int k) -> IntMatrix {  // C^k -> C^{k+1}
    if (k < c.start_degree || k >= c.end_degree())
      return IntMatrix::Zero(c.at(k + 1).generator_count(), c.at(k).generator_count());
    return c.differentials[static_cast<std::size_t>(k - c.start_degree)].matrix();
  };
  auto one_minus_phi = [&](int k) -> IntMatrix {
    const Eigen::Index g = c.at(k).generator_count();
    if (k < c.start_degree || k > c.end_degree()) return IntMatrix::Zero(g, g);
    return identity_matrix(g) - phi[static_cast<std::size_t>(k - c.start_degree)].matrix();
  };
  // Tot^n = C^n + C^{n-1},  D(x, y) = (d x, (1 - phi) x - d y)
  auto tot = [&](int n) { return direct_sum(pres(n), pres(n - 1)); };
  auto D = [&](int n) {
    const Eigen::Index a = c.at(n).generator_count(), b = c.at(n - 1).generator_count();
    const Eigen::Index a2 = c.at(n + 1).generator_count(), b2 = c.at(n).generator_count();
    IntMatrix m = IntMatrix::Zero(a2 + b2, a + b);
    m.topLeftCorner(a2, a) = d(n);
    m.bottomLeftCorner(b2, a) = one_minus_phi(n);
    m.bottomRightCorner(b2, b) = -d(n - 1);
    return GroupHom(tot(n), tot(n + 1), m);
  };
  for (int n = lo; n <= hi; ++n) {
    KernelResult z = kernel(D(n));
    GroupHom into = lift_hom(z.inclusion, D(n - 1));
    out[n] = cokernel(into).group;
  }
  return out;
}

}  // namespace frobfix
