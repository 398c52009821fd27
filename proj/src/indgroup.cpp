#include "frobfix/indgroup.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace frobfix {

struct IndAbGroup::Memo {
  std::mutex mutex;
  std::map<int, FgAbGroup> levels;
  std::map<int, GroupHom> transitions;
  std::map<int, GroupHom> endos;
};

IndAbGroup::IndAbGroup(std::string tower, LevelFn level, MapFn transition, std::optional<MapFn> endo,
                       int first_level, int ceiling)
    : tower_(std::move(tower)),
      level_fn_(std::move(level)),
      transition_fn_(std::move(transition)),
      endo_fn_(std::move(endo)),
      first_(first_level),
      ceiling_(ceiling),
      memo_(std::make_shared<Memo>()) {
  if (ceiling_ < first_) throw std::invalid_argument("IndAbGroup: ceiling below first level");
}

IndAbGroup IndAbGroup::constant(const FgAbGroup& g, std::optional<IntMatrix> endo, int ceiling) {
  std::optional<MapFn> e;
  if (endo) e = [m = *endo](int) { return m; };
  return IndAbGroup(
      "constant", [g](int) { return g; }, [n = g.generator_count()](int) { return identity_matrix(n); }, e, 1,
      ceiling);
}

void IndAbGroup::check_range(int m) const {
  if (m < first_) throw std::out_of_range("IndAbGroup: level " + std::to_string(m) + " below first level");
  if (m > ceiling_)
    throw ResourceError("level " + std::to_string(m) + " exceeds the ceiling " + std::to_string(ceiling_));
}

// Level functions may recurse into other systems but never into this one, so
// the lock is not held while evaluating them.
const FgAbGroup& IndAbGroup::level(int m) const {
  check_range(m);
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->levels.find(m); it != memo_->levels.end()) return it->second;
  }
  FgAbGroup g = level_fn_(m);
  std::lock_guard lock(memo_->mutex);
  return memo_->levels.try_emplace(m, std::move(g)).first->second;
}

const GroupHom& IndAbGroup::transition(int m) const {
  check_range(m + 1);
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->transitions.find(m); it != memo_->transitions.end()) return it->second;
  }
  GroupHom t(level(m).presentation(), level(m + 1).presentation(), transition_fn_(m));
  std::lock_guard lock(memo_->mutex);
  return memo_->transitions.try_emplace(m, std::move(t)).first->second;
}

const GroupHom& IndAbGroup::endo(int m) const {
  if (!endo_fn_) throw std::logic_error("IndAbGroup: no endomorphism");
  check_range(m);
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->endos.find(m); it != memo_->endos.end()) return it->second;
  }
  GroupHom e(level(m).presentation(), level(m).presentation(), (*endo_fn_)(m));
  std::lock_guard lock(memo_->mutex);
  return memo_->endos.try_emplace(m, std::move(e)).first->second;
}

void IndAbGroup::check_commuting(int up_to) const {
  for (int m = first_; m < up_to; ++m) {
    if (!compose(transition(m), endo(m)).equals(compose(endo(m + 1), transition(m))))
      throw std::logic_error("IndAbGroup: endo does not commute with transition at level " + std::to_string(m));
  }
}

int IndAbGroup::levels_computed() const {
  std::lock_guard lock(memo_->mutex);
  return memo_->levels.empty() ? first_ - 1 : memo_->levels.rbegin()->first;
}

IndAbGroup IndAbGroup::with_endo(MapFn endo) const {
  return IndAbGroup(tower_, level_fn_, transition_fn_, std::move(endo), first_, ceiling_);
}

IndAbGroup IndAbGroup::with_ceiling(int ceiling) const {
  return IndAbGroup(tower_, level_fn_, transition_fn_, endo_fn_, first_, ceiling);
}

namespace {

Integer units_order(const Integer& p, int m) { return ipow(p, factorial(m)) - 1; }

IntMatrix one_by_one(const FgAbGroup& source, const FgAbGroup& target, const Integer& c) {
  IntMatrix a = IntMatrix::Zero(target.generator_count(), source.generator_count());
  if (a.size() == 1) a(0, 0) = c;
  return a;
}

}  // namespace

IndAbGroup roots_of_unity_ind(const Integer& p, int ceiling) { return roots_of_unity_ind(p, 1, ceiling); }

IndAbGroup roots_of_unity_ind(const Integer& p, int power, int ceiling) {
  if (!is_prime(p)) throw std::invalid_argument("roots_of_unity_ind: p must be prime");
  if (power < 0) throw std::invalid_argument("roots_of_unity_ind: negative power");
  auto level = [p](int m) { return FgAbGroup::cyclic(units_order(p, m)); };
  auto transition = [p](int m) {
    Integer lo = units_order(p, m), hi = units_order(p, m + 1);
    return one_by_one(FgAbGroup::cyclic(lo), FgAbGroup::cyclic(hi), hi / lo);
  };
  Integer scalar = ipow(p, static_cast<unsigned long>(power));
  auto endo = [p, scalar](int m) {
    FgAbGroup g = FgAbGroup::cyclic(units_order(p, m));
    return one_by_one(g, g, scalar);
  };
  return IndAbGroup("factorial", level, transition, endo, 1, ceiling);
}

IndFixedPoints ind_fixed_points(const IndAbGroup& g) {
  if (!g.has_endo()) throw std::invalid_argument("ind_fixed_points: system has no endomorphism");

  auto one_minus = [g](int m) { return GroupHom::identity(g.level(m).presentation()) - g.endo(m); };
  struct Cache {
    std::mutex mutex;
    std::map<int, KernelResult> kernels;
    std::map<int, CokernelResult> cokernels;
  };
  auto cache = std::make_shared<Cache>();

  auto ker = [one_minus, cache](int m) -> KernelResult {
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->kernels.find(m); it != cache->kernels.end()) return it->second;
    }
    KernelResult k = kernel(one_minus(m));
    std::lock_guard lock(cache->mutex);
    return cache->kernels.try_emplace(m, std::move(k)).first->second;
  };
  auto coker = [one_minus, cache](int m) -> CokernelResult {
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->cokernels.find(m); it != cache->cokernels.end()) return it->second;
    }
    CokernelResult c = cokernel(one_minus(m));
    std::lock_guard lock(cache->mutex);
    return cache->cokernels.try_emplace(m, std::move(c)).first->second;
  };

  IndAbGroup ker_system(
      g.tower() + "/ker", [ker](int m) { return ker(m).group; },
      [g, ker](int m) {
        KernelResult lo = ker(m), hi = ker(m + 1);
        GroupHom pushed = compose(g.transition(m), lo.inclusion);
        return lift_hom(hi.inclusion, pushed).matrix();
      },
      std::nullopt, g.first_level(), g.ceiling());

  IndAbGroup coker_system(
      g.tower() + "/coker", [coker](int m) { return coker(m).group; },
      [g, coker](int m) {
        CokernelResult lo = coker(m), hi = coker(m + 1);
        return IntMatrix(hi.projection.matrix() * g.transition(m).matrix() * lo.section);
      },
      std::nullopt, g.first_level(), g.ceiling());

  return {ker_system, coker_system};
}

std::string Stabilization::report() const {
  std::ostringstream out;
  if (stabilized)
    out << "stabilized at level " << level << " to " << group.to_string() << " (checked to level " << max_level
        << ")";
  else
    out << "not stabilized by level " << max_level;
  return out.str();
}

Stabilization stabilize(const IndAbGroup& s, int max_level) {
  Stabilization r;
  r.max_level = max_level;
  if (max_level <= s.first_level()) throw std::invalid_argument("stabilize: max_level must exceed the first level");
  for (int m = s.first_level(); m <= max_level; ++m) r.levels.push_back(s.level(m));
  int n = max_level;
  while (n > s.first_level() && is_isomorphism(s.transition(n - 1))) --n;
  r.stabilized = n < max_level;
  r.level = r.stabilized ? n : max_level;
  r.group = s.level(r.level);
  return r;
}

bool VanishingCertificate::complete() const {
  for (const auto& w : witnesses)
    if (!w.dies_at) return false;
  return true;
}

std::vector<VanishingWitness> VanishingCertificate::survivors() const {
  std::vector<VanishingWitness> out;
  for (const auto& w : witnesses)
    if (!w.dies_at) out.push_back(w);
  return out;
}

VanishingCertificate colim_vanishes(const IndAbGroup& s, int max_level) {
  VanishingCertificate cert;
  cert.max_level = max_level;
  cert.search_ceiling = s.ceiling();
  for (int m = s.first_level(); m <= max_level; ++m) {
    const FgAbGroup& g = s.level(m);
    for (Eigen::Index j = 0; j < g.generator_count(); ++j) {
      VanishingWitness w{m, j, std::nullopt};
      IntVector x = g.basis_vector(j);
      for (int k = m; k <= s.ceiling(); ++k) {
        if (s.level(k).is_zero(x)) {
          w.dies_at = k;
          break;
        }
        if (k == s.ceiling()) break;
        x = s.level(k + 1).reduce(s.transition(k).apply(x));
      }
      cert.witnesses.push_back(w);
    }
  }
  return cert;
}

ColimitFixedPoints colimit_fixed_points(const IndAbGroup& g, int stabilize_level, int certify_level) {
  IndFixedPoints f = ind_fixed_points(g);
  ColimitFixedPoints r;
  r.kernel = stabilize(f.ker_system, stabilize_level);
  if (r.kernel.stabilized) r.pieces.h0 = LocalizedGroup(r.kernel.group);
  r.cokernel = colim_vanishes(f.coker_system, certify_level);
  if (r.cokernel.complete()) {
    r.pieces.h1 = LocalizedGroup();
  } else if (auto c = stabilize(f.coker_system, stabilize_level); c.stabilized) {
    r.pieces.h1 = LocalizedGroup(c.group);
  }
  return r;
}

}  // namespace frobfix
