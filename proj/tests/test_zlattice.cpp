#include "doctest.h"

#include <random>

#include "hermlat/catalog.hpp"
#include "hermlat/error.hpp"
#include "hermlat/zlattice.hpp"
#include "support.hpp"

using namespace hermlat;

TEST_SUITE("zlattice") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(zl_make({{1, 2}, {3, 1}}), ValidationError);
    CHECK_THROWS_AS(zl_make({{1, 2}, {2, 1}}), ValidationError);
    CHECK_THROWS_AS(zl_make({{0}}), ValidationError);
    CHECK_NOTHROW(zl_make({{2, -1}, {-1, 2}}));
  }

  TEST_CASE("root lattices") {
    auto& A2 = catalog_z("A2");
    auto& D4 = catalog_z("D4");
    auto& E8 = catalog_z("E8");
    CHECK(zl_det(A2) == 3);
    CHECK(zl_det(D4) == 4);
    CHECK(zl_det(E8) == 1);
    CHECK(zl_minimum(A2).kissing == 6);
    CHECK(zl_minimum(D4).kissing == 24);
    auto m = zl_minimum(E8);
    CHECK(m.min == 2);
    CHECK(m.kissing == 240);
    CHECK(zl_is_even(E8));
    CHECK(zl_is_unimodular(E8));
    CHECK(is_extremal(E8));
    CHECK(!zl_is_unimodular(D4));
  }

  TEST_CASE("perfection") {
    CHECK(perfection_rank(catalog_z("A2")) == 3);
    CHECK(perfection_rank(catalog_z("D4")) == 10);
    CHECK(is_perfect(catalog_z("E8")));
    auto T = tensor_z(catalog_z("A2"), catalog_z("A2"));
    CHECK(perfection_rank(T) == 9);
    CHECK(!is_perfect(T));
    CHECK(zl_minimum(T).min == 4);
    CHECK(kitaoka_split_rule(2, 2));
    CHECK(!kitaoka_split_rule(44, 44));
    CHECK(extremal_bound(24) == 4);
    CHECK(extremal_bound(48) == 6);
  }

  TEST_CASE("dual and tensor") {
    std::mt19937 rng(3);
    for (int k = 0; k < 40; ++k) {
      auto L = testing_support::random_z(3, rng);
      auto M = testing_support::random_z(2, rng);
      CHECK(zl_det(zl_dual(L)) * zl_det(L) == 1);
      CHECK(zl_dual(zl_dual(L)).gram() == L.gram());
      CHECK(zl_det(tensor_z(L, M)) == pow(zl_det(L), 2) * pow(zl_det(M), 3));
      CHECK(zl_det(orthogonal_sum(L, M)) == zl_det(L) * zl_det(M));
    }
  }

  TEST_CASE("LLL keeps the lattice") {
    std::mt19937 rng(5);
    for (int k = 0; k < 40; ++k) {
      auto L = testing_support::random_z(4, rng, 3);
      auto r = lll_reduce(L.gram());
      CHECK(zl_det(ZLattice(r.gram)) == zl_det(L));
      // basis is unimodular and maps the Gram
      RationalMatrix B(4, 4, Rational(0));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) B(i, j) = Rational(r.basis(i, j));
      CHECK(abs(determinant(B, Rational(1))) == 1);
      CHECK(B.transpose() * L.gram() * B == r.gram);
      CHECK(unimodular_inverse(r.basis) * r.basis == IntMatrix::identity(4, 1, 0));
      CHECK(zl_minimum(L).min == zl_minimum(ZLattice(r.gram)).min);
    }
  }

  TEST_CASE("isometry") {
    std::mt19937 rng(9);
    for (int k = 0; k < 20; ++k) {
      auto L = testing_support::random_z(3, rng);
      auto r = lll_reduce(L.gram());
      auto u = isometry(L, ZLattice(r.gram));
      REQUIRE(u);
      RationalMatrix U(3, 3, Rational(0));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) U(i, j) = Rational((*u)(i, j));
      CHECK(U.transpose() * r.gram * U == L.gram());
    }
    CHECK(!isometry(catalog_z("D4"), catalog_z("A2perpA2")));
    CHECK(!isometry(catalog_z("A2"), catalog_z("D4")));
  }

  TEST_CASE("short vectors match a box scan") {
    std::mt19937 rng(13);
    for (int k = 0; k < 30; ++k) {
      auto L = testing_support::random_z(1 + k % 4, rng);
      Rational b = zl_minimum(L).min * 2;
      auto s = short_vectors(L, b);
      auto box = testing_support::box_scan(L, b);
      CHECK(2 * s.size() == box.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto v = s.vector(i);
        CHECK(inner(L.gram(), v, v) == s.norms[i]);
        CHECK(s.norms[i] <= b);
      }
    }
  }

  TEST_CASE("rational Gram matrices") {
    auto L = ZLattice(catalog_z("A2").gram().map([](const Rational& x) { return Rational(x / 3); }));
    CHECK(zl_minimum(L).min == ratio(2, 3));
    CHECK(zl_minimum(L).kissing == 6);
    CHECK(!zl_is_integral(L));
  }
}
