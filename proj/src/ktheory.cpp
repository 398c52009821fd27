#include "frobfix/ktheory.hpp"

#include <stdexcept>

namespace frobfix {

std::string to_string(const EndoSpec& e) {
  if (const auto* m = std::get_if<MultByPPow>(&e)) return "p^" + std::to_string(m->n);
  return "x^(p^" + std::to_string(std::get<UnitsFrobenius>(e).i) + ")";
}

std::string TableEntry::describe() const {
  if (const auto* g = std::get_if<LocalizedGroup>(&group)) return g->to_string();
  return "colim " + std::get<IndAbGroup>(group).tower();
}

namespace {

TableEntry plain(const FgAbGroup& g, Localization loc, int twist) {
  return {LocalizedGroup(g, std::move(loc)), MultByPPow{twist}};
}

void require_prime(const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

void require_odd_prime(const Integer& p) {
  require_prime(p);
  if (p == 2) throw std::invalid_argument("p must be odd");
}

TableEntry zero_entry() { return plain(FgAbGroup(), {}, 0); }

const TableEntry& lookup(const std::map<int, TableEntry>& m, int n, const TableEntry& zero) {
  auto it = m.find(n);
  return it == m.end() ? zero : it->second;
}

GradedFixedPoints fixed_points_of(const std::map<int, TableEntry>& entries, const Integer& p, int lo, int hi,
                                  const TowerSettings& settings) {
  const TableEntry zero = zero_entry();
  std::map<int, PartialFixedPoints> per_degree;
  for (int n = lo; n <= hi; ++n) per_degree[n] = entry_fixed_points(lookup(entries, n, zero), p, settings);
  GradedFixedPoints all = assemble_graded(per_degree, Grading::kHomological);
  // The top degree has no h1 from above; drop it so only complete degrees remain.
  all.degrees.erase(hi);
  return all;
}

KTable localize_table(const KTable& t, const Localization& loc) {
  KTable out{t.p, t.n_max, {}};
  for (const auto& [n, e] : t.entries) {
    TableEntry le = e;
    if (const auto* g = std::get_if<LocalizedGroup>(&e.group))
      le.group = localize(*g, loc);
    else
      le.group = localize_ind(std::get<IndAbGroup>(e.group), loc);
    out.entries.emplace(n, le);
  }
  return out;
}

}  // namespace

KTable k_fbar(const Integer& p, int n_max, const TowerSettings& settings) {
  require_prime(p);
  KTable t{p, n_max, {}};
  t.entries.emplace(0, plain(FgAbGroup::free(1), {}, 0));
  for (int i = 1; 2 * i - 1 <= n_max; ++i)
    t.entries.emplace(2 * i - 1, TableEntry{roots_of_unity_ind(p, i, settings.ceiling), UnitsFrobenius{i}});
  return t;
}

PiTable pi_table(const Integer& p, const TowerSettings& settings) {
  require_odd_prime(p);
  Localization inv = Localization::invert({p});
  PiTable t{p, {}};
  t.entries.emplace(std::pair{1, 0}, plain(FgAbGroup(0, {2, 2}), inv, 0));
  t.entries.emplace(std::pair{1, 1}, plain(FgAbGroup::cyclic(2), inv, 1));
  t.entries.emplace(std::pair{1, 2}, plain(FgAbGroup::cyclic(24), inv, 2));
  t.entries.emplace(std::pair{0, -1}, TableEntry{roots_of_unity_ind(p, 1, settings.ceiling), UnitsFrobenius{1}});
  t.entries.emplace(std::pair{0, 0}, plain(FgAbGroup::free(1), inv, 0));
  return t;
}

IndAbGroup localize_ind(const IndAbGroup& g, const Localization& loc) {
  auto level = [g, loc](int m) { return localize(g.level(m), loc).underlying(); };
  auto transition = [g, loc](int m) { return localize_hom(g.transition(m), loc).matrix(); };
  std::optional<IndAbGroup::MapFn> endo;
  if (g.has_endo()) endo = [g, loc](int m) { return localize_hom(g.endo(m), loc).matrix(); };
  return IndAbGroup(g.tower() + loc.suffix(), level, transition, endo, g.first_level(), g.ceiling());
}

PartialFixedPoints entry_fixed_points(const TableEntry& e, const Integer& p, const TowerSettings& settings) {
  if (const auto* g = std::get_if<LocalizedGroup>(&e.group)) {
    if (const auto* m = std::get_if<MultByPPow>(&e.endo)) return PartialFixedPoints::from(fixed_points_mult(*g, p, m->n));
    throw std::invalid_argument("entry_fixed_points: units Frobenius on a finitely generated entry");
  }
  const IndAbGroup& ind = std::get<IndAbGroup>(e.group);
  if (!std::holds_alternative<UnitsFrobenius>(e.endo))
    throw std::invalid_argument("entry_fixed_points: ind-group entry needs a units Frobenius");
  return colimit_fixed_points(ind, settings.stabilize_level, settings.certify_level).pieces;
}

GradedFixedPoints frobenius_k(const Integer& p, int n_max, const TowerSettings& settings) {
  KTable t = k_fbar(p, n_max + 1, settings);
  return fixed_points_of(t.entries, p, -1, n_max + 1, settings);
}

GradedFixedPoints frobenius_k_rational(const Integer& p, int n_max, const TowerSettings& settings) {
  KTable t = localize_table(k_fbar(p, n_max + 1, settings), Localization::rational());
  return fixed_points_of(t.entries, p, -1, n_max + 1, settings);
}

std::map<std::pair<int, int>, DegreePieces> frobenius_pi_table(const Integer& p, const TowerSettings& settings) {
  PiTable t = pi_table(p, settings);
  const TableEntry zero = zero_entry();
  auto fp = [&](int r, int n) {
    auto it = t.entries.find({r, n});
    return entry_fixed_points(it == t.entries.end() ? zero : it->second, p, settings);
  };
  std::map<std::pair<int, int>, DegreePieces> out;
  for (int r : {0, -1})
    for (int n = -1; n <= 2; ++n) {
      DegreePieces d = resolve_extension(n, fp(r + 1, n).h1, fp(r, n).h0);
      out.emplace(std::pair{r, n}, d);
    }
  return out;
}

bool MilnorComparison::all_agree() const {
  for (const auto& [n, ok] : agree)
    if (!ok) return false;
  return true;
}

MilnorComparison milnor_comparison_fbar(const Integer& p, int n_max, const TowerSettings& settings) {
  require_prime(p);
  const Localization at_p = Localization::at_prime(p);
  std::map<int, TableEntry> milnor;
  milnor.emplace(0, plain(FgAbGroup::free(1), {}, 0));
  milnor.emplace(1, TableEntry{roots_of_unity_ind(p, 1, settings.ceiling), UnitsFrobenius{1}});
  for (int n = 2; n <= n_max + 1; ++n) milnor.emplace(n, plain(FgAbGroup::free(1), Localization::rational(), n));

  KTable mk{p, n_max + 1, milnor};
  MilnorComparison r{p, {}, {}, {}};
  r.milnor = fixed_points_of(localize_table(mk, at_p).entries, p, -1, n_max + 1, settings);
  r.k = fixed_points_of(localize_table(k_fbar(p, n_max + 1, settings), at_p).entries, p, -1, n_max + 1, settings);
  for (int n = -2; n <= n_max; ++n) {
    DegreePieces a = r.milnor.at(n), b = r.k.at(n);
    r.agree[n] = a.resolved.has_value() && b.resolved.has_value() && *a.resolved == *b.resolved;
  }
  return r;
}

}  // namespace frobfix
