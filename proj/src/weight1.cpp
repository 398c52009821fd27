#include "frobfix/weight1.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace frobfix {

std::string Variety::name() const {
  switch (kind) {
    case Kind::kPoint:
      return "point";
    case Kind::kProjectiveLine:
      return "P1";
    case Kind::kElliptic:
      return curve && !curve->name.empty() ? curve->name : "E";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Units

namespace {

ProjectivePoint frob(const FiniteField& F, const ProjectivePoint& s) {
  if (!s) return s;
  return F.frobenius(*s);
}

}  // namespace

UnitsDescription units_group(std::uint32_t p, const std::vector<ProjectivePoint>& removed, unsigned level,
                             std::uint64_t ceiling) {
  if (removed.empty()) throw std::invalid_argument("units_group: no removed points");
  auto F = FiniteField::get(p, level, ceiling);
  std::vector<ProjectivePoint> pts = removed;
  std::set<ProjectivePoint> seen;
  for (const auto& s : pts) {
    if (s && *s >= F->order()) throw std::invalid_argument("units_group: removed point not rational over the level field");
    if (!seen.insert(s).second) throw std::invalid_argument("units_group: repeated removed point");
  }
  for (const auto& s : pts)
    if (!seen.count(frob(*F, s))) throw std::invalid_argument("units_group: removed set not Frobenius-stable");
  std::stable_partition(pts.begin(), pts.end(), [](const ProjectivePoint& s) { return !s.has_value(); });

  const Eigen::Index k = static_cast<Eigen::Index>(pts.size());
  const Integer q1 = F->order() - 1;
  const FgAbGroup constants = FgAbGroup::cyclic(q1);
  const Eigen::Index c = constants.generator_count();
  FgAbGroup group = direct_sum(constants, FgAbGroup::free(k - 1));

  auto basis = [&](const ProjectivePoint& x) {
    IntVector v = IntVector::Zero(group.generator_count());
    auto it = std::find(pts.begin(), pts.end(), x);
    const Eigen::Index i = it - pts.begin();
    if (i > 0) v(c + i - 1) = 1;
    return v;
  };
  IntMatrix partial = IntMatrix::Zero(group.generator_count(), group.generator_count());
  if (c) partial(0, 0) = p;
  for (Eigen::Index i = 1; i < k; ++i)
    partial.col(c + i - 1) = basis(frob(*F, pts[static_cast<std::size_t>(i)])) - basis(frob(*F, pts[0]));

  const Presentation& pres = group.presentation();
  return UnitsDescription{F, pts, group, GroupHom(pres, pres, partial), GroupHom::scalar(pres, p)};
}

GroupHom UnitsDescription::evaluation(const ProjectivePoint& c) const {
  if (std::find(removed.begin(), removed.end(), c) != removed.end())
    throw std::invalid_argument("evaluation: point is removed");
  if (c && *c >= field->order()) throw std::invalid_argument("evaluation: point not rational over the level field");
  const FiniteField& F = *field;
  const FgAbGroup target = FgAbGroup::cyclic(F.order() - 1);
  IntMatrix m = IntMatrix::Zero(target.generator_count(), group.generator_count());
  if (target.generator_count() == 1) {
    const Eigen::Index cdim = 1;
    m(0, 0) = 1;
    for (std::size_t i = 1; i < removed.size(); ++i) {
      FiniteField::Elem value = 1;
      if (c) {
        value = F.sub(*c, *removed[i]);
        if (removed[0]) value = F.div(value, F.sub(*c, *removed[0]));
      }
      m(0, cdim + static_cast<Eigen::Index>(i) - 1) = F.log(value);
    }
  }
  return GroupHom(group.presentation(), target.presentation(), m);
}

// ---------------------------------------------------------------------------
// Pic

PicGroup pic_group(const Variety& X, unsigned level, std::uint64_t ceiling) {
  switch (X.kind) {
    case Variety::Kind::kPoint: {
      FgAbGroup g;
      return {g, GroupHom::identity(g.presentation()), std::nullopt};
    }
    case Variety::Kind::kProjectiveLine: {
      FiniteField::get(X.p, level, ceiling);
      FgAbGroup g = FgAbGroup::free(1);
      return {g, GroupHom::identity(g.presentation()), std::nullopt};
    }
    case Variety::Kind::kElliptic: {
      PointGroup pts = point_group(*X.curve, level, ceiling);
      const FgAbGroup& e = pts.structure();
      FgAbGroup g(1, e.invariant_factors());
      const Eigen::Index t = e.generator_count();
      IntMatrix m = IntMatrix::Zero(t + 1, t + 1);
      m.topLeftCorner(t, t) = frobenius_on_points(pts).matrix();
      m(t, t) = 1;
      return {g, GroupHom(g.presentation(), g.presentation(), m), std::move(pts)};
    }
  }
  throw std::logic_error("pic_group: unknown variety");
}

// ---------------------------------------------------------------------------
// Weight one

namespace {

Localization away_from(std::uint32_t p, bool flag) { return flag ? Localization::invert({Integer(p)}) : Localization::none(); }

Endo localized_endo(const GroupHom& map, const Localization& loc) {
  GroupHom m = localize_hom(map, loc);
  return Endo(LocalizedGroup(m.source().group(), loc), m);
}

}  // namespace

Weight1Cohomology weight1_frobenius_cohomology(const Variety& X, unsigned level, bool localize_away_p,
                                               std::uint64_t ceiling) {
  const Localization loc = away_from(X.p, localize_away_p);
  auto F = FiniteField::get(X.p, level, ceiling);
  const FgAbGroup units = FgAbGroup::cyclic(F->order() - 1);
  PicGroup pic = pic_group(X, level, ceiling);

  GradedEndo g;
  g.grading = Grading::kCohomological;
  g.degrees.emplace(1, localized_endo(GroupHom::scalar(units.presentation(), X.p), loc));
  g.degrees.emplace(2, localized_endo(pic.partial_frobenius, loc));

  Weight1Cohomology out;
  out.level = level;
  out.localized = localize_away_p;
  out.units = fixed_points(g.degrees.at(1));
  out.pic = fixed_points(g.degrees.at(2));
  out.graded = graded_fixed_points(g);
  return out;
}

namespace {

// One summand of H^1 or H^2 across levels, with the maps F_{p^m} -> F_{p^n}.
class Component {
 public:
  Component(std::string name, const Variety& X, std::uint64_t ceiling) : name_(std::move(name)), X_(X), ceiling_(ceiling) {}

  const std::string& name() const { return name_; }

  const GroupHom& endo(unsigned m) {
    auto it = endos_.find(m);
    if (it != endos_.end()) return it->second;
    return endos_.emplace(m, build_endo(m)).first->second;
  }

  GroupHom transition(unsigned m, unsigned n) {
    const Presentation& src = endo(m).source();
    const Presentation& tgt = endo(n).source();
    if (name_ == "units") {
      const Integer ratio = (ipow(Integer(X_.p), n) - 1) / (ipow(Integer(X_.p), m) - 1);
      IntMatrix a = IntMatrix::Zero(tgt.generator_count(), src.generator_count());
      if (a.size() == 1) a(0, 0) = ratio;
      return GroupHom(src, tgt, a);
    }
    if (name_ == "degree") return GroupHom::identity(src);
    return point_inclusion(points_.at(m), points_.at(n));
  }

 private:
  GroupHom build_endo(unsigned m) {
    if (name_ == "units")
      return GroupHom::scalar(FgAbGroup::cyclic(ipow(Integer(X_.p), m) - 1).presentation(), X_.p);
    if (name_ == "degree") return GroupHom::identity(FgAbGroup::free(1).presentation());
    PointGroup G = point_group(*X_.curve, m, ceiling_);
    GroupHom phi = frobenius_on_points(G);
    points_.emplace(m, std::move(G));
    return phi;
  }

  std::string name_;
  Variety X_;
  std::uint64_t ceiling_;
  std::map<unsigned, GroupHom> endos_;
  std::map<unsigned, PointGroup> points_;
};

GroupHom one_minus(const GroupHom& e) { return GroupHom::identity(e.source()) - e; }

// Map between kernels of (1 - endo) induced by a transition.
GroupHom induced_on_kernels(const KernelResult& lo, const KernelResult& hi, const GroupHom& t) {
  return lift_hom(hi.inclusion, compose(t, lo.inclusion));
}

GroupHom induced_on_cokernels(const CokernelResult& lo, const CokernelResult& hi, const GroupHom& t) {
  return GroupHom(lo.group.presentation(), hi.group.presentation(), hi.projection.matrix() * t.matrix() * lo.section);
}

}  // namespace

bool RigidityReport::all_certified() const {
  return std::all_of(cokernel_classes.begin(), cokernel_classes.end(), [](const auto& c) { return c.certified(); });
}

RigidityReport rigidity_compare(const Variety& X, const std::vector<unsigned>& levels, bool localize_away_p,
                                unsigned certify_level, std::uint64_t ceiling) {
  if (levels.size() < 2) throw std::invalid_argument("rigidity_compare: need at least two levels");
  RigidityReport r;
  r.variety = X;
  r.localized = localize_away_p;
  r.levels = levels;
  std::sort(r.levels.begin(), r.levels.end());
  const Localization loc = away_from(X.p, localize_away_p);
  for (unsigned m : r.levels) r.per_level.push_back(weight1_frobenius_cohomology(X, m, localize_away_p, ceiling));

  std::vector<Component> components;
  components.emplace_back("units", X, ceiling);
  if (X.kind != Variety::Kind::kPoint) components.emplace_back("degree", X, ceiling);
  if (X.kind == Variety::Kind::kElliptic) components.emplace_back("points", X, ceiling);

  // Kernels: equal groups from some level on, and isomorphic under every
  // inclusion between those levels.
  auto kernels_equal = [&](std::size_t i, std::size_t j) {
    const auto& a = r.per_level[i];
    const auto& b = r.per_level[j];
    return a.units.h0 == b.units.h0 && a.pic.h0 == b.pic.h0;
  };
  auto inclusions_iso = [&](std::size_t from) {
    for (std::size_t i = from; i < r.levels.size(); ++i)
      for (std::size_t j = i + 1; j < r.levels.size(); ++j) {
        const unsigned m = r.levels[i], n = r.levels[j];
        if (n % m != 0) continue;
        for (auto& c : components) {
          KernelResult lo = kernel(one_minus(c.endo(m))), hi = kernel(one_minus(c.endo(n)));
          if (!is_isomorphism(localize_hom(induced_on_kernels(lo, hi, c.transition(m, n)), loc))) return false;
        }
      }
    return true;
  };
  for (std::size_t i = 0; i + 1 < r.levels.size(); ++i) {
    bool ok = true;
    for (std::size_t j = i + 1; j < r.levels.size() && ok; ++j) ok = kernels_equal(i, j);
    if (ok && inclusions_iso(i)) {
      r.stabilization_level = r.levels[i];
      break;
    }
  }
  r.kernels_agree = r.stabilization_level.has_value();
  if (!r.kernels_agree) r.failures.push_back("kernels do not stabilize over the given levels");

  // Cokernel classes at low levels.
  constexpr unsigned kMaxStretch = 24;
  for (unsigned m : r.levels) {
    if (m > certify_level) continue;
    for (auto& c : components) {
      CokernelResult C = cokernel(one_minus(c.endo(m)));
      const FgAbGroup& cg = C.group;
      for (Eigen::Index j = 0; j < cg.generator_count(); ++j) {
        Integer mult = 1;
        if (j < cg.torsion_count() && localize_away_p) {
          const Integer& d = cg.invariant_factors()[static_cast<std::size_t>(j)];
          mult = d / loc.strip(d);
          if (mult == d) continue;  // a p-power class, zero after inverting p
        }
        ClassCertificate cert{c.name(), m, j, std::nullopt, false};
        const IntVector x = C.section.col(j) * mult;
        bool all_iso = true, tried = false;
        for (unsigned s = 2; s <= kMaxStretch && !cert.dies_at; ++s) {
          const unsigned n = m * s;
          GroupHom t = GroupHom::zero(c.endo(m).source(), c.endo(m).source());
          try {
            t = c.transition(m, n);
          } catch (const ResourceError&) {
            break;
          }
          CokernelResult D = cokernel(one_minus(c.endo(n)));
          tried = true;
          if (D.group.is_zero(D.projection.apply(t.apply(x)))) cert.dies_at = n;
          else if (!is_isomorphism(localize_hom(induced_on_cokernels(C, D, t), loc))) all_iso = false;
        }
        cert.stable = !cert.dies_at && tried && all_iso;
        r.cokernel_classes.push_back(cert);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Point independence

PointIndependenceReport point_independence_check(std::uint32_t p, const std::vector<ProjectivePoint>& removed,
                                                 unsigned level, const ProjectivePoint& c0, const ProjectivePoint& c1,
                                                 std::uint64_t ceiling) {
  UnitsDescription U = units_group(p, removed, level, ceiling);
  PointIndependenceReport r{level, c0, c1, false, false, std::nullopt};
  const GroupHom ev0 = U.evaluation(c0), ev1 = U.evaluation(c1);
  const GroupHom& target_frob = GroupHom::scalar(ev0.target(), p);

  KernelResult K = kernel(one_minus(U.absolute_frobenius));
  r.kernel_agree = compose(ev0 - ev1, K.inclusion).is_zero();

  CokernelResult C = cokernel(one_minus(U.absolute_frobenius));
  CokernelResult T = cokernel(one_minus(target_frob));
  const IntMatrix diff = T.projection.matrix() * (ev0 - ev1).matrix() * C.section;
  auto zero_in = [](const CokernelResult& D, const IntMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!D.group.is_zero(m.col(j))) return false;
    return true;
  };
  r.cokernel_agree_raw = zero_in(T, diff);
  if (r.cokernel_agree_raw) return r;

  // Push the differences up the units tower F_{p^m} -> F_{p^{ms}}.
  const IntMatrix lifted = (ev0 - ev1).matrix() * C.section;
  const Integer qm = ipow(Integer(p), level) - 1;
  for (unsigned s = 2; s <= 64; ++s) {
    const unsigned n = level * s;
    const Integer qn = ipow(Integer(p), n) - 1;
    const FgAbGroup big = FgAbGroup::cyclic(qn);
    CokernelResult D = cokernel(one_minus(GroupHom::scalar(big.presentation(), p)));
    if (zero_in(D, D.projection.matrix() * (lifted * (qn / qm)))) {
      r.cokernel_agree_at = n;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Permutation twists

IndAbGroup permuted_units_ind(const std::vector<int>& sigma, const Integer& p, int ceiling) {
  const Eigen::Index n = static_cast<Eigen::Index>(sigma.size());
  std::vector<bool> hit(sigma.size(), false);
  for (int s : sigma) {
    if (s < 0 || s >= n || hit[static_cast<std::size_t>(s)]) throw std::invalid_argument("permuted_units_ind: not a permutation");
    hit[static_cast<std::size_t>(s)] = true;
  }
  auto order = [p](int m) { return ipow(p, factorial(m)) - 1; };
  auto level = [order, n](int m) {
    const Integer N = order(m);
    return N == 1 ? FgAbGroup() : FgAbGroup(0, std::vector<Integer>(static_cast<std::size_t>(n), N));
  };
  auto transition = [order, level](int m) {
    const FgAbGroup lo = level(m), hi = level(m + 1);
    IntMatrix a = IntMatrix::Zero(hi.generator_count(), lo.generator_count());
    for (Eigen::Index i = 0; i < a.cols(); ++i) a(i, i) = order(m + 1) / order(m);
    return a;
  };
  auto endo = [sigma, p, level](int m) {
    const Eigen::Index g = level(m).generator_count();
    IntMatrix a = IntMatrix::Zero(g, g);
    for (Eigen::Index i = 0; i < g; ++i) a(sigma[static_cast<std::size_t>(i)], i) = p;
    return a;
  };
  return IndAbGroup("factorial-perm", level, transition, endo, 1, ceiling);
}

PermTwistReport perm_twisted_fixed_points(const std::vector<int>& sigma, const Integer& p, int max_level) {
  IndAbGroup G = permuted_units_ind(sigma, p);
  G.check_commuting(max_level);
  IndFixedPoints f = ind_fixed_points(G);
  PermTwistReport r;
  bool finite_k = true, finite_c = true;
  for (int m = 1; m <= max_level; ++m) {
    r.levels.push_back({m, f.ker_system.level(m), f.coker_system.level(m)});
    finite_k = finite_k && f.ker_system.level(m).is_finite();
    finite_c = finite_c && f.coker_system.level(m).is_finite();
  }
  r.cokernel_certificate = colim_vanishes(f.coker_system, max_level);
  r.rational_h0_vanishes = finite_k;
  r.rational_h1_vanishes = finite_c;
  return r;
}

}  // namespace frobfix
