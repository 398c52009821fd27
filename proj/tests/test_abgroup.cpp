#include "doctest.h"
#include "oracles.hpp"

#include "frobfix/abgroup.hpp"

#include <random>

using namespace frobfix;

namespace {

FgAbGroup Zmod(long n) { return FgAbGroup::cyclic(n); }

GroupHom mult(const FgAbGroup& g, long c) { return GroupHom::scalar(g.presentation(), c); }

IntMatrix rows(std::initializer_list<std::initializer_list<long>> r) {
  IntMatrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (auto row : r) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("FgAbGroup validates the divisibility chain") {
  CHECK_THROWS_AS(FgAbGroup(0, {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(FgAbGroup(0, {1}), std::invalid_argument);
  CHECK_NOTHROW(FgAbGroup(1, {2, 4, 8}));
  CHECK(FgAbGroup(2, {2, 2}).to_string() == "Z/2^2 + Z^2");
  CHECK(FgAbGroup().to_string() == "0");
}

TEST_CASE("group_from_presentation examples") {
  for (long n : {2, 3, 12}) CHECK(group_from_presentation(Presentation(1, rows({{n}}))) == Zmod(n));
  CHECK(group_from_presentation(Presentation(2, rows({{2, 0}, {0, 0}}))) == FgAbGroup(1, {2}));
  CHECK(group_from_presentation(Presentation(2, rows({{2, 2}, {0, 4}}))) == FgAbGroup(0, {2, 4}));
  // factor 1 entries are stripped
  CHECK(group_from_presentation(Presentation(2, rows({{1, 0}, {0, 5}}))) == Zmod(5));
}

TEST_CASE("normalization is idempotent and the change of basis is consistent") {
  Presentation p(3, rows({{2, 4, 6}, {0, 6, 0}, {4, 0, 8}}));
  const FgAbGroup& g = p.group();
  CHECK(group_from_presentation(g.presentation()) == g);
  // from_normal then to_normal is the identity on normal coordinates
  IntMatrix round = p.to_normal() * p.from_normal();
  for (Eigen::Index j = 0; j < round.cols(); ++j) CHECK(g.reduce(round.col(j)) == g.basis_vector(j));
  // every relation is zero in the normal form
  for (Eigen::Index r = 0; r < p.relations().rows(); ++r) CHECK(p.is_zero(p.relations().row(r).transpose()));
}

TEST_CASE("kernel examples") {
  CHECK(kernel(mult(Zmod(6), 1)).group.is_trivial());
  CHECK(kernel(mult(Zmod(6), 2)).group == Zmod(2));
  // 1 - (mult by 5) on Z/24
  CHECK(kernel(mult(Zmod(24), -4)).group == Zmod(4));
  auto k = kernel(mult(Zmod(24), -4));
  CHECK(compose(mult(Zmod(24), -4), k.inclusion).is_zero());
  CHECK(is_injective(k.inclusion));
}

TEST_CASE("cokernel examples") {
  CHECK(cokernel(mult(FgAbGroup::free(1), 1)).group.is_trivial());
  CHECK(cokernel(mult(Zmod(24), -4)).group == Zmod(4));
  CHECK(cokernel(mult(Zmod(5), 0)).group == Zmod(5));
  auto c = cokernel(mult(Zmod(24), -4));
  CHECK(compose(c.projection, mult(Zmod(24), -4)).is_zero());
  CHECK(is_surjective(c.projection));
}

TEST_CASE("a hom that does not respect relations is rejected") {
  CHECK_THROWS_AS(GroupHom(Zmod(4).presentation(), Zmod(6).presentation(), rows({{1}})), std::invalid_argument);
  CHECK_NOTHROW(GroupHom(Zmod(4).presentation(), Zmod(6).presentation(), rows({{3}})));
}

TEST_CASE("kernel and cokernel of maps with free parts") {
  // Z^2 -> Z, (a, b) -> 2a + 4b: kernel Z, cokernel Z/2
  GroupHom f(FgAbGroup::free(2).presentation(), FgAbGroup::free(1).presentation(), rows({{2, 4}}));
  CHECK(kernel(f).group == FgAbGroup::free(1));
  CHECK(cokernel(f).group == Zmod(2));
  // Z -> Z/6 + Z, 1 -> (1, 3)
  FgAbGroup t(1, {6});
  GroupHom g(FgAbGroup::free(1).presentation(), t.presentation(), rows({{1}, {3}}));
  CHECK(kernel(g).group.is_trivial());
  CHECK(cokernel(g).group == Zmod(18));
}

TEST_CASE("lift through an injection") {
  auto k = kernel(mult(Zmod(12), 3));  // Z/3 inside Z/12, generated by 4
  IntVector y(1);
  y << 8;
  auto x = lift(k.inclusion, y);
  REQUIRE(x.has_value());
  CHECK(Zmod(12).is_zero(k.inclusion.apply(*x) - y));
  y << 5;
  CHECK_FALSE(lift(k.inclusion, y).has_value());
}

TEST_CASE("enumerate_elements") {
  CHECK(enumerate_elements(FgAbGroup(0, {2, 2}), 100).size() == 4);
  CHECK_THROWS_AS(enumerate_elements(FgAbGroup::free(1), 100), ResourceError);
  CHECK_THROWS_AS(enumerate_elements(Zmod(6), 5), ResourceError);
}

TEST_CASE("localize examples") {
  CHECK(localize(Zmod(24), Localization::invert({3})).underlying() == Zmod(8));
  auto q = localize(FgAbGroup(1, {9}), Localization::rational());
  CHECK(q.underlying() == FgAbGroup::free(1));
  CHECK(localize(Zmod(24), Localization::invert({5})).underlying() == Zmod(24));
  CHECK(localize(Zmod(24), Localization::at_prime(2)).underlying() == Zmod(8));
  CHECK(localize(FgAbGroup(1, {2}), Localization::invert({3})).to_string() == "Z/2 + Z[1/3]");
  CHECK_THROWS_AS(Localization::invert({4}), std::invalid_argument);
}

TEST_CASE("localize is idempotent and commutes with direct sum") {
  std::mt19937_64 rng(11);
  const std::vector<Localization> locs = {Localization::invert({2}), Localization::invert({3, 5}),
                                          Localization::at_prime(2), Localization::rational()};
  for (int t = 0; t < 40; ++t) {
    FgAbGroup a = direct_sum(oracle::random_finite_group(rng, 1000), FgAbGroup::free(t % 2));
    FgAbGroup b = oracle::random_finite_group(rng, 1000);
    for (const auto& l : locs) {
      CHECK(localize(localize(a, l), l) == localize(a, l));
      CHECK(localize(direct_sum(a, b), l) == direct_sum(localize(a, l), localize(b, l)));
    }
  }
}

TEST_CASE("localize_hom is compatible with kernels") {
  // mult by 6 on Z/36; inverting 3 leaves mult by 6 on Z/4 whose kernel is Z/2
  GroupHom f = mult(Zmod(36), 6);
  GroupHom g = localize_hom(f, Localization::invert({3}));
  CHECK(g.source().group() == Zmod(4));
  CHECK(kernel(g).group == localize(kernel(f).group, Localization::invert({3})).underlying());
}

TEST_CASE("kernel and cokernel orders match brute-force enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    FgAbGroup s = oracle::random_finite_group(rng, 1000), t = oracle::random_finite_group(rng, 1000);
    GroupHom f = oracle::random_hom(rng, s, t);
    CHECK(kernel(f).group.order() == oracle::kernel_order(f));
    CHECK(cokernel(f).group.order() == oracle::cokernel_order(f));
  }
}

TEST_CASE("endomorphisms of finite groups have |ker| = |coker|") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    FgAbGroup g = oracle::random_finite_group(rng, 1000);
    GroupHom f = oracle::random_hom(rng, g, g);
    CHECK(kernel(f).group.order() == cokernel(f).group.order());
  }
}
