#include "doctest.h"
#include "oracles.hpp"

#include "frobfix/weight1.hpp"

#include <set>

using namespace frobfix;

namespace {

const CurveSpec e3a{"e3a", 3, {0, 1, 0, 0, 1}};
const CurveSpec e5a{"e5a", 5, {0, 0, 0, 3, 0}};

// f^p = f on F_q^x has |F_p^x| solutions.
Integer brute_fixed_units(std::uint32_t p, unsigned m) {
  auto F = FiniteField::get(p, m);
  Integer n = 0;
  for (FiniteField::Elem x = 1; x < F->order(); ++x)
    if (F->pow(x, p) == x) ++n;
  return n;
}

}  // namespace

TEST_CASE("units of P1 minus points") {
  auto U = units_group(3, {0, 1, std::nullopt}, 2);
  CHECK(U.group.to_string() == "Z/8 + Z^2");
  CHECK(!U.removed.front().has_value());

  // Rosenlicht: |constants| * lattice rank.
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned m = 1; m <= 3; ++m) {
      auto F = FiniteField::get(p, m);
      std::vector<ProjectivePoint> pts{std::nullopt};
      for (FiniteField::Elem a = 0; a < p; ++a) pts.push_back(a);
      auto V = units_group(p, pts, m);
      CHECK(V.group.torsion_order() == F->order() - 1);
      CHECK(V.group.free_rank() == static_cast<Eigen::Index>(pts.size()) - 1);
    }
}

TEST_CASE("units_group input validation") {
  CHECK_THROWS_AS(units_group(3, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(units_group(3, {0, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(units_group(3, {9}, 2), std::invalid_argument);
  // a generator of F_9 is not fixed by x -> x^3
  auto F = FiniteField::get(3, 2);
  CHECK_THROWS_AS(units_group(3, {F->generator()}, 2), std::invalid_argument);
  CHECK_NOTHROW(units_group(3, {F->generator(), F->frobenius(F->generator())}, 2));
}

TEST_CASE("partial Frobenius permutes conjugate removed points") {
  auto F = FiniteField::get(2, 2);
  const auto w = F->generator();
  auto U = units_group(2, {std::nullopt, w, F->frobenius(w)}, 2);
  // constants: x -> x^2 on Z/3; lattice: swap of the two conjugates
  const IntMatrix& a = U.partial_frobenius.matrix();
  CHECK(a(0, 0) == 2);
  CHECK(a(1, 2) == 1);
  CHECK(a(2, 1) == 1);
  CHECK(a(1, 1) == 0);
}

TEST_CASE("evaluation matches discrete logs of the basis functions") {
  auto U = units_group(5, {0, 1, std::nullopt}, 1);
  auto F = U.field;
  for (FiniteField::Elem c = 2; c < 5; ++c) {
    GroupHom ev = U.evaluation(c);
    // basis: constant generator, t - 0, t - 1
    CHECK(ev.matrix()(0, 1) == F->log(c));
    CHECK(ev.matrix()(0, 2) == F->log(F->sub(c, 1)));
  }
  CHECK_THROWS_AS(U.evaluation(std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(U.evaluation(0), std::invalid_argument);

  auto W = units_group(5, {0, 1}, 1);
  GroupHom at_inf = W.evaluation(std::nullopt);
  CHECK(at_inf.matrix()(0, 1) == 0);
}

TEST_CASE("pic groups") {
  auto pt = pic_group(Variety::point(3), 1);
  CHECK(pt.group.is_trivial());
  auto line = pic_group(Variety::projective_line(3), 2);
  CHECK(line.group == FgAbGroup::free(1));
  CHECK(line.partial_frobenius.equals(GroupHom::identity(line.group.presentation())));
  auto e = pic_group(Variety::elliptic(e5a), 1);
  CHECK(e.group.free_rank() == 1);
  CHECK(e.group.torsion_order() == 10);
  CHECK(e.partial_frobenius.is_zero() == false);
}

TEST_CASE("weight one cohomology of a point is the Kummer computation") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned m = 1; m <= 4; ++m) {
      auto w = weight1_frobenius_cohomology(Variety::point(p), m, false);
      CHECK(w.units.h0.underlying() == FgAbGroup::cyclic(p - 1));
      CHECK(w.units.h0.underlying().order() == brute_fixed_units(p, m));
      // |ker| = |coker| on a finite group
      CHECK(w.units.h1.underlying().order() == w.units.h0.underlying().order());
      CHECK(w.graded.at(1).quot->underlying() == FgAbGroup::cyclic(p - 1));
      CHECK(w.graded.at(3).sub->is_trivial());
    }
}

TEST_CASE("weight one cohomology of P1 has the degree summand") {
  auto w = weight1_frobenius_cohomology(Variety::projective_line(3), 2, true);
  CHECK(w.pic.h0.to_string() == "Z[1/3]");
  CHECK(w.pic.h1.to_string() == "Z[1/3]");
  // H^3 = coker on Pic
  CHECK(w.graded.at(3).resolved->to_string() == "Z[1/3]");
}

TEST_CASE("weight one kernel on an elliptic curve is E(F_p) at every level") {
  for (const auto& spec : {e3a, e5a}) {
    const Integer n = point_count(spec, 1);
    for (unsigned m = 1; m <= 4; ++m) {
      auto w = weight1_frobenius_cohomology(Variety::elliptic(spec), m, false);
      CHECK(w.pic.h0.underlying().torsion_order() == n);
      CHECK(w.pic.h0.underlying().free_rank() == 1);
    }
  }
}

TEST_CASE("rigidity across levels") {
  const std::vector<unsigned> levels{1, 2, 3, 4};
  for (std::uint32_t p : {3u, 5u}) {
    for (const auto& X : {Variety::point(p), Variety::projective_line(p)}) {
      auto r = rigidity_compare(X, levels, true, 3);
      CHECK(r.kernels_agree);
      CHECK(r.stabilization_level == 1u);
      CHECK(r.all_certified());
      CHECK(r.passed());
    }
  }
  for (const auto& spec : {e3a, e5a}) {
    auto r = rigidity_compare(Variety::elliptic(spec), levels, true, 3);
    CHECK(r.passed());
    bool saw_points = false, saw_degree = false;
    for (const auto& c : r.cokernel_classes) {
      if (c.component == "points") {
        saw_points = true;
        REQUIRE(c.dies_at.has_value());
        CHECK(*c.dies_at % c.level == 0);
      }
      if (c.component == "degree") {
        saw_degree = true;
        CHECK(c.stable);
      }
    }
    CHECK(saw_points);
    CHECK(saw_degree);
  }
}

TEST_CASE("unlocalized units classes still die along the tower") {
  auto r = rigidity_compare(Variety::point(5), {1, 2}, false, 2);
  CHECK(r.passed());
  for (const auto& c : r.cokernel_classes) CHECK(*c.dies_at == c.level * 4);
}

TEST_CASE("point independence on P1 minus three points") {
  for (std::uint32_t p : {2u, 3u}) {
    auto F = FiniteField::get(p, 2);
    std::vector<ProjectivePoint> removed{0, 1, std::nullopt};
    for (FiniteField::Elem c0 = 2; c0 < F->order(); ++c0)
      for (FiniteField::Elem c1 = c0 + 1; c1 < F->order(); ++c1) {
        auto r = point_independence_check(p, removed, 2, c0, c1);
        CHECK(r.passed());
      }
  }
}

TEST_CASE("perm twisted fixed points") {
  auto id = perm_twisted_fixed_points({0}, 3, 4);
  for (const auto& l : id.levels) CHECK(l.kernel == FgAbGroup::cyclic(2));
  CHECK(id.cokernel_certificate.complete());
  CHECK(id.rational_h0_vanishes);
  CHECK(id.rational_h1_vanishes);

  auto swap = perm_twisted_fixed_points({1, 0}, 3, 4);
  // (x, y) = (y^3, x^3): x = x^9, so the kernel is F_9^x
  for (const auto& l : swap.levels)
    if (l.level >= 2) CHECK(l.kernel == FgAbGroup::cyclic(8));
  CHECK(swap.cokernel_certificate.complete());
  CHECK(swap.rational_h0_vanishes);

  CHECK_THROWS_AS(permuted_units_ind({0, 0}, 3), std::invalid_argument);
}
