#include "doctest.h"
#include "oracles.hpp"

#include "frobfix/indgroup.hpp"

#include <random>
#include <thread>

using namespace frobfix;

namespace {

Integer units(long p, int m) { return ipow(Integer(p), factorial(m)) - 1; }

IndAbGroup zero_system() {
  return IndAbGroup::constant(FgAbGroup(), IntMatrix(0, 0));
}

}  // namespace

TEST_CASE("roots_of_unity_ind levels and transitions") {
  CHECK(roots_of_unity_ind(2).level(2) == FgAbGroup::cyclic(3));
  CHECK(roots_of_unity_ind(3).level(3) == FgAbGroup::cyclic(728));
  CHECK(roots_of_unity_ind(2).level(1).is_trivial());
  auto g = roots_of_unity_ind(2);
  CHECK(g.transition(2).matrix()(0, 0) == 21);
  CHECK(g.level(3) == FgAbGroup::cyclic(63));
  CHECK(is_injective(g.transition(2)));
  CHECK_THROWS_AS(roots_of_unity_ind(4), std::invalid_argument);
}

TEST_CASE("level orders divide the next level") {
  for (long p : {2, 3, 5, 7}) {
    auto g = roots_of_unity_ind(p);
    for (int m = 1; m < 6; ++m) {
      Integer lo = m == 1 && p == 2 ? Integer(1) : g.level(m).order();
      CHECK(lo == units(p, m));
      CHECK(g.level(m + 1).order() % lo == 0);
    }
  }
}

TEST_CASE("levels above the ceiling raise a resource error") {
  auto g = roots_of_unity_ind(2);
  CHECK_THROWS_AS(g.level(kDefaultLevelCeiling + 1), ResourceError);
  CHECK_THROWS_AS(g.level(0), std::out_of_range);
  CHECK_NOTHROW(g.with_ceiling(3).level(3));
  CHECK_THROWS_AS(g.with_ceiling(3).level(4), ResourceError);
}

TEST_CASE("endo commutes with transitions") {
  for (long p : {2, 3, 5})
    for (int i : {1, 2, 3}) CHECK_NOTHROW(roots_of_unity_ind(p, i, 8).check_commuting(5));
  // Z/2 -> Z/4 by 2; endo 1 on Z/2 commutes with 3 on Z/4 but not with 2
  auto system = [](long top) {
    return IndAbGroup(
        "test", [](int m) { return FgAbGroup::cyclic(m == 1 ? 2 : 4); },
        [](int) { return IntMatrix::Constant(1, 1, Integer(2)); },
        [top](int m) { return IntMatrix::Constant(1, 1, Integer(m == 1 ? 1 : top)); }, 1, 2);
  };
  CHECK_NOTHROW(system(3).check_commuting(2));
  CHECK_THROWS_AS(system(2).check_commuting(2), std::logic_error);
}

TEST_CASE("identity endo gives ker = coker = G") {
  auto g = roots_of_unity_ind(3, 0, 8);
  auto f = ind_fixed_points(g);
  for (int m = 1; m <= 4; ++m) {
    CHECK(f.ker_system.level(m) == g.level(m));
    CHECK(f.coker_system.level(m) == g.level(m));
  }
  CHECK(is_injective(f.ker_system.transition(2)));
  CHECK_THROWS_AS(ind_fixed_points(IndAbGroup("x", [](int) { return FgAbGroup(); },
                                              [](int) { return IntMatrix(0, 0); })),
                  std::invalid_argument);
}

TEST_CASE("kernel levels of x -> x^{p^i} match gcd(p^{m!} - 1, p^i - 1)") {
  for (long p : {2, 3, 5})
    for (int i = 1; i <= 6; ++i) {
      auto f = ind_fixed_points(roots_of_unity_ind(p, i, 8));
      for (int m = 1; m <= 4; ++m) {
        Integer expected = gcd(units(p, m), ipow(Integer(p), static_cast<unsigned long>(i)) - 1);
        CHECK(FgAbGroup::cyclic(expected) == f.ker_system.level(m));
        CHECK(FgAbGroup::cyclic(expected) == f.coker_system.level(m));
      }
    }
}

TEST_CASE("kernel system stabilizes to Z/(p^i - 1) once i divides m!") {
  for (long p : {2, 3, 5})
    for (int i = 1; i <= 4; ++i) {
      auto f = ind_fixed_points(roots_of_unity_ind(p, i, 8));
      auto s = stabilize(f.ker_system, 6);
      REQUIRE(s.stabilized);
      CHECK(s.group == FgAbGroup::cyclic(ipow(Integer(p), static_cast<unsigned long>(i)) - 1));
      int first = 1;
      while (factorial(first) % i != 0) ++first;
      // Z/(2-1) is trivial at every level
      if (!(p == 2 && i == 1)) CHECK(s.level == first);
    }
}

TEST_CASE("stabilize") {
  auto c = IndAbGroup::constant(FgAbGroup::cyclic(5));
  auto s = stabilize(c, 4);
  CHECK(s.stabilized);
  CHECK(s.level == 1);
  CHECK(s.group == FgAbGroup::cyclic(5));

  auto grow = stabilize(roots_of_unity_ind(3), 4);
  CHECK_FALSE(grow.stabilized);
  CHECK(grow.report() == "not stabilized by level 4");
}

TEST_CASE("vanishing certificates") {
  SUBCASE("zero system") {
    auto cert = colim_vanishes(zero_system(), 3);
    CHECK(cert.complete());
    CHECK(cert.witnesses.empty());
  }
  SUBCASE("Kummer cokernels of 1 - p die") {
    for (long p : {2, 3, 5}) {
      auto f = ind_fixed_points(roots_of_unity_ind(p));
      auto cert = colim_vanishes(f.coker_system, 5);
      CHECK(cert.complete());
      for (const auto& w : cert.witnesses) {
        // the class 1 in Z/(p-1) at level m dies once (p-1) divides k!/m!
        int k = w.level;
        while ((factorial(k) / factorial(w.level)) % (p - 1) != 0) ++k;
        CHECK(w.dies_at == k);
      }
    }
  }
  SUBCASE("constant nonzero system") {
    auto cert = colim_vanishes(IndAbGroup::constant(FgAbGroup(0, {2, 2})), 2);
    CHECK_FALSE(cert.complete());
    CHECK(cert.survivors().size() == 4);
  }
}

TEST_CASE("colimit fixed points") {
  auto r = colimit_fixed_points(roots_of_unity_ind(5), 6, 4);
  REQUIRE(r.pieces.h0.has_value());
  REQUIRE(r.pieces.h1.has_value());
  CHECK(r.pieces.h0->underlying() == FgAbGroup::cyclic(4));
  CHECK(r.pieces.h1->is_trivial());

  auto id = colimit_fixed_points(IndAbGroup::constant(FgAbGroup::cyclic(6), IntMatrix::Constant(1, 1, Integer(1))), 3, 2);
  CHECK(id.pieces.h0->underlying() == FgAbGroup::cyclic(6));
  CHECK(id.pieces.h1->underlying() == FgAbGroup::cyclic(6));
}

TEST_CASE("stabilized kernel agrees with the kernel on the materialized colimit") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    // Z/a_1 -> Z/a_2 -> Z/a_3 = Z/a_4 = Z/a_5, transitions multiplication by t_k
    std::vector<long> a(5);
    std::vector<long> t(4);
    a[0] = 2 + static_cast<long>(rng() % 60);
    for (int k = 1; k < 3; ++k) {
      a[k] = 2 + static_cast<long>(rng() % 60);
      long g = std::gcd(a[k], a[k - 1]);
      long step = a[k] / g;  // multiples of step send relations of Z/a[k-1] into those of Z/a[k]
      t[k - 1] = step * (1 + static_cast<long>(rng() % 3));
    }
    a[3] = a[4] = a[2];
    t[2] = t[3] = 1;
    long c = static_cast<long>(rng() % 10);
    IndAbGroup sys(
        "test", [a](int m) { return FgAbGroup::cyclic(a[m - 1]); },
        [t](int m) { return IntMatrix::Constant(1, 1, Integer(t[m - 1])); },
        [c](int) { return IntMatrix::Constant(1, 1, Integer(c)); }, 1, 5);
    sys.check_commuting(5);
    auto s = stabilize(ind_fixed_points(sys).ker_system, 5);
    REQUIRE(s.stabilized);
    const FgAbGroup& colim = sys.level(5);
    CHECK(s.group.order() == oracle::fixed_set_order(GroupHom::scalar(colim.presentation(), c)));
  }
}

TEST_CASE("concurrent level evaluation") {
  auto g = roots_of_unity_ind(3);
  auto f = ind_fixed_points(g);
  std::vector<std::thread> threads;
  std::vector<Integer> orders(8);
  for (int k = 0; k < 8; ++k)
    threads.emplace_back([&, k] { orders[k] = f.ker_system.level(1 + k % 4).order() + g.level(1 + k % 5).order(); });
  for (auto& th : threads) th.join();
  for (int k = 0; k < 8; ++k)
    CHECK(orders[k] == gcd(units(3, 1 + k % 4), Integer(2)) + units(3, 1 + k % 5));
  CHECK(g.levels_computed() == 5);
}
