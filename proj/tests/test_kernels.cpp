#include "doctest.h"

#include <random>
#include <vector>

#include "hermlat/catalog.hpp"
#include "hermlat/certify.hpp"
#include "hermlat/kernels/inner_product.hpp"

using namespace hermlat;

TEST_SUITE("kernels") {
  TEST_CASE("scalar and avx2 agree") {
    std::mt19937 rng(1234);
    for (std::size_t dim : {1u, 3u, 4u, 7u, 8u, 9u, 16u, 24u, 31u}) {
      for (std::size_t n : {0u, 1u, 5u, 64u, 257u}) {
        for (std::int32_t span : {3, 1000, (1 << 23) - 1}) {
          std::uniform_int_distribution<std::int32_t> u(-span, span);
          std::vector<std::int32_t> rows(n * dim), q1(dim), q2(dim);
          for (auto& x : rows) x = u(rng);
          for (auto& x : q1) x = u(rng);
          for (auto& x : q2) x = u(rng);
          std::vector<std::int64_t> a(n), b(n), c(n), d(n), ref(n);
          for (std::size_t i = 0; i < n; ++i) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < dim; ++k) s += static_cast<std::int64_t>(rows[i * dim + k]) * q1[k];
            ref[i] = s;
          }
          kernels::scalar::dot_rows(rows.data(), n, dim, q1.data(), a.data());
          CHECK(a == ref);
          kernels::scalar::dot_rows2(rows.data(), n, dim, q1.data(), q2.data(), b.data(), c.data());
          CHECK(b == ref);
          if (kernels::avx2::available()) {
            kernels::avx2::dot_rows(rows.data(), n, dim, q1.data(), d.data());
            CHECK(d == ref);
            std::vector<std::int64_t> e(n), g(n);
            kernels::avx2::dot_rows2(rows.data(), n, dim, q1.data(), q2.data(), e.data(), g.data());
            CHECK(e == ref);
            CHECK(g == c);
          }
        }
      }
    }
  }

  TEST_CASE("dispatch honours the scalar override") {
    kernels::force_scalar(true);
    CHECK(kernels::active_isa() == "scalar");
    auto& Pb = catalog_h("Pb");
    auto s = count_isometric_sublattices(Pb, Pb);
    kernels::force_scalar(false);
    auto v = count_isometric_sublattices(Pb, Pb);
    CHECK(s.raw == v.raw);
    if (kernels::avx2::available()) CHECK(kernels::active_isa() == "avx2");
  }
}
