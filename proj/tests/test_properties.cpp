#include "doctest.h"

#include <random>

#include "hermlat/catalog.hpp"
#include "hermlat/hermitian.hpp"
#include "support.hpp"

using namespace hermlat;
using testing_support::fields;
using testing_support::random_herm;

namespace {

std::size_t violations = 0;

#define PROP(cond)      \
  do {                  \
    if (!(cond)) {      \
      ++violations;     \
      CHECK(cond);      \
    }                   \
  } while (0)

bool rank_two(const HermVector& z) { return !(z[0] * z[3] - z[1] * z[2]).is_zero(); }

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("trace determinant") {
    std::mt19937 rng(20240101);
    std::size_t n = 0;
    for (int k = 0; k < 110; ++k)
      for (auto d : fields()) {
        auto f = make_field(d);
        auto L = random_herm(f, 1 + k % 3, rng, 3);
        auto t = trace_lattice(L);
        PROP(zl_det(t) == pow(Rational(testing_support::disc_abs(f)), L.rank()) * pow(herm_disc(L), 2));
        ++n;
      }
    CHECK(n >= 500);
    CHECK(violations == 0);
  }

  TEST_CASE("duality identity for d_r") {
    std::mt19937 rng(77);
    std::size_t n = 0;
    for (int k = 0; k < 30; ++k)
      for (auto d : fields()) {
        auto f = make_field(d);
        const std::size_t m = 2 + k % 2;
        auto L = random_herm(f, m, rng, 1);
        auto D = herm_dual(L);
        const Rational dl = herm_disc(L);
        for (std::size_t r = 1; r < m; ++r) {
          auto a = d_r(L, r), b = d_r(D, m - r);
          REQUIRE(a.certified);
          REQUIRE(b.certified);
          PROP(*a.best == dl * *b.best);
          ++n;
        }
      }
    CHECK(n >= 200);
    CHECK(violations == 0);
  }

  TEST_CASE("tensor bound and its equality case") {
    std::mt19937 rng(99);
    std::size_t n = 0, equal = 0;
    for (int k = 0; k < 44; ++k)
      for (auto d : fields()) {
        auto f = make_field(d);
        auto L = random_herm(f, 2, rng, 1);
        HermLattice M = k % 2 ? random_herm(f, 2, rng, 1)
                              : herm_scale(herm_conj(herm_dual(L)), herm_disc(L));
        auto R = tensor_herm(L, M);
        const Rational ml = herm_minimum(L).min, mm = herm_minimum(M).min;
        const RootValue b2 = tensor_rank_bound(RootValue::of(herm_disc(L)), RootValue::of(herm_disc(M)), 2);
        const RootValue bound = std::min(RootValue::of(ml * mm), b2);
        const Rational rmin = herm_minimum(R).min;
        PROP(bound <= RootValue::of(rmin));
        // rank-2 vectors never go below b2; they reach it exactly in the dual-section case
        bool hit = false;
        auto vs = herm_short_vectors(R, Rational(b2.ceil()));
        for (std::size_t i = 0; i < vs.size(); ++i) {
          auto z = from_trace_coords(f, vs.vector(i));
          if (!rank_two(z)) continue;
          PROP(RootValue::of(vs.norms[i]) >= b2);
          if (RootValue::of(vs.norms[i]) == b2) hit = true;
        }
        bool dual_section = false;
        if (auto lam = b2.exact()) dual_section = herm_isometry(M, herm_scale(herm_conj(herm_dual(L)), *lam / 2)).has_value();
        PROP(hit == dual_section);
        if (hit) ++equal;
        ++n;
      }
    CHECK(n >= 200);
    CHECK(equal >= 100);
    CHECK(violations == 0);
  }

  TEST_CASE("two-dimensional discriminant bound") {
    std::mt19937 rng(5150);
    std::size_t n = 0;
    for (int k = 0; k < 110; ++k)
      for (auto d : fields()) {
        auto f = make_field(d);
        auto L = random_herm(f, 2, rng, 3);
        const Rational m = herm_minimum(L).min;
        PROP(herm_disc(L) >= m * m * (1 - *f.euclidean_min));
        ++n;
      }
    CHECK(n >= 500);
    CHECK(violations == 0);
  }

  TEST_CASE("short vectors against a box scan on the corpus") {
    for (auto& name : catalog_names()) {
      auto e = catalog_get(name);
      ZLattice Z;
      if (e.kind() == LatticeKind::euclidean) {
        if (e.zlattice().rank() > 4) continue;
        Z = e.zlattice();
        const Rational b = 2 * zl_minimum(Z).min;
        PROP(2 * short_vectors(Z, b).size() == testing_support::box_scan(Z, b).size());
      } else {
        if (e.hermitian().rank() > 3) continue;
        Z = trace_lattice(e.hermitian());
        const Rational hb = 2 * herm_minimum(e.hermitian()).min;
        PROP(herm_short_vectors(e.hermitian(), hb).size() == testing_support::box_scan(Z, 2 * hb).size());
      }
    }
    CHECK(violations == 0);
  }
}
