#pragma once

#include <random>
#include <vector>

#include "hermlat/hermitian.hpp"
#include "hermlat/zlattice.hpp"

namespace testing_support {

using namespace hermlat;

inline const std::vector<std::int64_t>& fields() {
  static const std::vector<std::int64_t> ds{1, 2, 3, 7, 11};
  return ds;
}

inline FieldElement random_integer(const QuadField& f, std::mt19937& rng, int span) {
  std::uniform_int_distribution<int> u(-span, span);
  return f.from_omega_coords(u(rng), u(rng));
}

// Gram B conj(B)^t of a random O_K basis matrix B; never singular.
inline HermLattice random_herm(const QuadField& f, std::size_t m, std::mt19937& rng, int span = 2) {
  HermMatrix B(m, m, f.zero());
  for (;;) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) B(i, j) = random_integer(f, rng, span);
    if (!determinant(B, f.one()).is_zero()) break;
  }
  HermMatrix G(m, m, f.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) G(i, j) += B(i, k) * B(j, k).conj();
  return HermLattice(f, G);
}

inline ZLattice random_z(std::size_t n, std::mt19937& rng, int span = 2) {
  std::uniform_int_distribution<int> u(-span, span);
  IntMatrix B(n, n, 0);
  RationalMatrix G(n, n, Rational(0));
  for (;;) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = u(rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long s = 0;
        for (std::size_t k = 0; k < n; ++k) s += static_cast<long>(B(i, k) * B(j, k));
        G(i, j) = s;
      }
    if (determinant(G, Rational(1)) != 0) break;
  }
  return ZLattice(G);
}

inline long disc_abs(const QuadField& f) { return f.d % 4 == 3 ? f.d : 4 * f.d; }

// All x with x^t G x <= bound inside the box |x_i|^2 <= bound (G^-1)_ii.
inline std::vector<std::vector<std::int64_t>> box_scan(const ZLattice& L, const Rational& bound) {
  const std::size_t n = L.rank();
  RationalMatrix inv = inverse(L.gram(), Rational(1));
  std::vector<std::int64_t> lim(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = bound * inv(i, i);
    std::int64_t k = 0;
    while (Rational((k + 1) * (k + 1)) <= r) ++k;
    lim[i] = k;
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -lim[i];
  for (;;) {
    bool zero = true;
    for (auto c : x) zero = zero && c == 0;
    if (!zero && inner(L.gram(), x, x) <= bound) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == lim[i]) x[i] = -lim[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

}  // namespace testing_support
