// Runs the acceptance criteria and prints one line per criterion.

#include "oracles.hpp"

#include "frobfix/curves.hpp"
#include "frobfix/golden.hpp"
#include "frobfix/indgroup.hpp"
#include "frobfix/io.hpp"
#include "frobfix/ktheory.hpp"
#include "frobfix/smith.hpp"
#include "frobfix/thh.hpp"
#include "frobfix/weight1.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace frobfix;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Outcome k_table() {
  Outcome o;
  int cells = 0;
  for (long p : {2, 3, 5}) {
    const GradedFixedPoints k = frobenius_k(p, 12);
    if (!k.all_resolved()) o.fail("unresolved extension for p=" + std::to_string(p));
    for (int n = -2; n <= 12; ++n, ++cells) {
      const DegreePieces d = k.at(n);
      const LocalizedGroup want = golden::frobenius_k(p, n);
      if (!d.resolved || !(*d.resolved == want))
        o.fail("p=" + std::to_string(p) + " n=" + std::to_string(n) + ": got " + io::describe(d) + ", want " +
               want.to_string());
    }
  }
  if (o.ok) o.detail = std::to_string(cells) + " degrees match";
  return o;
}

Outcome pi_table_criterion() {
  Outcome o;
  int cells = 0;
  for (long p : {3, 5, 7}) {
    const auto table = frobenius_pi_table(p);
    const auto want = golden::frobenius_pi(p);
    for (int r : {0, -1})
      for (int n = -1; n <= 2; ++n, ++cells) {
        auto it = table.find({r, n});
        const std::string where = "p=" + std::to_string(p) + " (" + std::to_string(r) + "," + std::to_string(n) + ")";
        if (it == table.end()) {
          o.fail(where + " missing");
          continue;
        }
        const DegreePieces& d = it->second;
        auto w = want.find({r, n});
        if (w == want.end()) {
          if (!d.resolved || !d.resolved->is_trivial()) o.fail(where + " should be 0");
        } else if (w->second.pieces) {
          const auto& [sub, quot] = *w->second.pieces;
          if (!d.sub || !d.quot || !(*d.sub == sub) || !(*d.quot == quot) || d.resolution != Resolution::kCoprimeSplit)
            o.fail(where + ": pieces differ");
        } else if (!d.resolved || !(*d.resolved == *w->second.group)) {
          o.fail(where + ": got " + io::describe(d) + ", want " + w->second.group->to_string());
        }
      }
  }
  if (o.ok) o.detail = std::to_string(cells) + " cells match";
  return o;
}

Outcome kummer() {
  Outcome o;
  int witnessed = 0;
  for (long p : {2, 3, 5}) {
    const IndFixedPoints f = ind_fixed_points(roots_of_unity_ind(p));
    const Stabilization s = stabilize(f.ker_system, kDefaultLevelCeiling);
    if (!s.stabilized || s.level > p || !(s.group == FgAbGroup::cyclic(p - 1)))
      o.fail("p=" + std::to_string(p) + ": " + s.report());
    const VanishingCertificate c = colim_vanishes(f.coker_system, 4);
    if (!c.complete()) o.fail("p=" + std::to_string(p) + ": " + std::to_string(c.survivors().size()) + " survivors");
    witnessed += static_cast<int>(c.witnesses.size());
  }
  if (o.ok) o.detail = std::to_string(witnessed) + " cokernel generators witnessed";
  return o;
}

Outcome verschiebung(const std::vector<CurveSpec>& corpus) {
  Outcome o;
  std::set<std::uint32_t> primes;
  std::uint64_t points = 0;
  int rational = 0;
  for (const auto& c : corpus) {
    primes.insert(c.p);
    const VerschiebungReport r = verschiebung_report(c, 3, 6);
    points += r.points_checked;
    if (r.kernel.rational_level) ++rational;
    if (!r.passed()) o.fail(c.name + " fails");
  }
  if (corpus.size() < 10) o.fail("corpus has fewer than 10 curves");
  if (primes != std::set<std::uint32_t>{2, 3, 5, 7}) o.fail("corpus does not cover p in {2,3,5,7}");
  if (o.ok)
    o.detail = std::to_string(corpus.size()) + " curves, " + std::to_string(points) + " points, kernel rational for " +
               std::to_string(rational);
  return o;
}

Outcome sharpness() {
  Outcome o;
  for (std::uint32_t p : {2u, 3u}) {
    const SharpnessWitness w = odd_power_sharpness(p);
    if (!w.found || w.form_value != 0 || (w.r == 0 && w.s == 0)) o.fail("no witness for p=" + std::to_string(p));
    else o.detail += (o.detail.empty() ? "" : "; ") + ("p=" + std::to_string(p) + " trace " + std::to_string(w.trace));
  }
  return o;
}

Outcome weight1(const std::vector<CurveSpec>& corpus) {
  Outcome o;
  std::vector<Variety> varieties;
  for (std::uint32_t p : {3u, 5u}) {
    varieties.push_back(Variety::point(p));
    varieties.push_back(Variety::projective_line(p));
  }
  for (const auto& c : corpus)
    if (c.name == "e3a" || c.name == "e5a") varieties.push_back(Variety::elliptic(c));
  if (varieties.size() != 6) o.fail("elliptic curves e3a, e5a missing from the corpus");
  std::size_t classes = 0;
  for (const auto& X : varieties) {
    const RigidityReport r = rigidity_compare(X, {1, 2, 3, 4}, true, 3);
    classes += r.cokernel_classes.size();
    if (!r.passed()) o.fail(X.name() + " over F_" + std::to_string(X.p) + " fails");
  }
  if (o.ok) o.detail = std::to_string(varieties.size()) + " varieties, " + std::to_string(classes) + " classes certified";
  return o;
}

Outcome point_independence() {
  Outcome o;
  int pairs = 0;
  for (std::uint32_t p : {2u, 3u}) {
    auto F = FiniteField::get(p, 2);
    const std::vector<ProjectivePoint> removed{0, 1, std::nullopt};
    for (FiniteField::Elem c0 = 2; c0 < F->order(); ++c0)
      for (FiniteField::Elem c1 = 2; c1 < F->order(); ++c1)
        if (c1 != c0 && (++pairs, !point_independence_check(p, removed, 2, c0, c1).passed()))
          o.fail("q=" + std::to_string(F->order()) + " points " + std::to_string(c0) + "," + std::to_string(c1));
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs agree";
  return o;
}

Outcome thh() {
  Outcome o;
  int reports = 0;
  for (long p : {2, 3, 5})
    for (unsigned d = 1; d <= 2; ++d)
      for (unsigned n = 0; n <= 5; ++n, ++reports) {
        const ThhReport r = frobenius_thh_rigidity(p, d, n, 5, {1, 2, 3});
        if (!r.passed())
          o.fail("p=" + std::to_string(p) + " d=" + std::to_string(d) + " n=" + std::to_string(n) + " fails");
      }
  if (o.ok) o.detail = std::to_string(reports) + " (p, d, n) reports";
  return o;
}

Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<int> dim(1, 7), entry(-30, 30);
  for (int t = 0; t < 500; ++t) {
    IntMatrix a(dim(rng), dim(rng));
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = entry(rng);
    const auto s = smith_normal_form(a);
    bool good = s.U * a * s.V == s.D && abs(oracle::determinant(s.U)) == 1 && abs(oracle::determinant(s.V)) == 1;
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
      for (Eigen::Index j = 0; j < s.D.cols(); ++j)
        if (i != j && s.D(i, j) != 0) good = false;
    for (Eigen::Index i = 0; i + 1 < s.rank; ++i)
      if (s.D(i + 1, i + 1) % s.D(i, i) != 0) good = false;
    if (!good) o.fail("SNF trial " + std::to_string(t));
  }
  int endos = 0;
  while (endos < 200) {
    const FgAbGroup g = oracle::random_finite_group(rng, 1000);
    if (g.is_trivial()) continue;
    const GroupHom phi = oracle::random_hom(rng, g, g);
    const GroupHom f = GroupHom::identity(phi.source()) - phi;
    const KernelResult k = kernel(f);
    const CokernelResult c = cokernel(f);
    if (k.group.order() != oracle::kernel_order(f) || c.group.order() != oracle::cokernel_order(f))
      o.fail("kernel/cokernel mismatch on " + g.to_string());
    const FixedPointPair fp = fixed_points(Endo(LocalizedGroup(g), phi));
    if (fp.h0.underlying().order() != fp.h1.underlying().order()) o.fail("|ker| != |coker| on " + g.to_string());
    ++endos;
  }
  if (o.ok) o.detail = "500 SNF, 200 endomorphisms";
  return o;
}

}  // namespace

int main() {
  const auto corpus = io::load_corpus(FROBFIX_DATA_DIR "/curves.json");
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Frobenius K-theory table", 5, k_table},
      {2, "Frobenius stable homotopy table", 1, pi_table_criterion},
      {3, "Kummer rigidity", 5, kummer},
      {4, "Verschiebung identities", 60, [&] { return verschiebung(corpus); }},
      {5, "odd-power sharpness", 30, sharpness},
      {6, "weight-1 rigidity", 60, [&] { return weight1(corpus); }},
      {7, "point independence", 5, point_independence},
      {8, "Frobenius THH", 30, thh},
      {9, "oracle suites", 30, oracles},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit) o.fail("over time");
    if (!o.ok) ++failures;
    std::printf("[%s] %d %s (%.2f s, limit %.0f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.limit,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
