#include <cmath>
#include <vector>

#include "hermlat/error.hpp"
#include "hermlat/zlattice.hpp"

namespace hermlat {

namespace {

using Real = long double;

struct Gso {
  std::vector<std::vector<Real>> mu;
  std::vector<Real> b;  // squared lengths of the Gram-Schmidt vectors
};

void gso_row(const RationalMatrix& G, Gso& g, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    Real s = static_cast<Real>(G(k, j).get_d());
    for (std::size_t l = 0; l < j; ++l) s -= g.mu[j][l] * g.mu[k][l] * g.b[l];
    g.mu[k][j] = s / g.b[j];
  }
  Real s = static_cast<Real>(G(k, k).get_d());
  for (std::size_t l = 0; l < k; ++l) s -= g.mu[k][l] * g.mu[k][l] * g.b[l];
  g.b[k] = s;
}

// b_k -= r * b_j on the exact Gram and the transform.
void size_step(RationalMatrix& G, IntMatrix& U, std::size_t k, std::size_t j, std::int64_t r) {
  const std::size_t n = G.rows();
  for (std::size_t i = 0; i < n; ++i) G(k, i) -= r * Rational(G(j, i));
  for (std::size_t i = 0; i < n; ++i) G(i, k) -= r * Rational(G(i, j));
  // the column pass reads the already updated row, so G(k,k) ends as N(b_k - r b_j)
  for (std::size_t i = 0; i < n; ++i) U(i, k) -= r * U(i, j);
}

void swap_basis(RationalMatrix& G, IntMatrix& U, std::size_t a, std::size_t b) {
  const std::size_t n = G.rows();
  G.swap_rows(a, b);
  for (std::size_t i = 0; i < n; ++i) std::swap(G(i, a), G(i, b));
  for (std::size_t i = 0; i < n; ++i) std::swap(U(i, a), U(i, b));
}

}  // namespace

LllResult lll_reduce(const RationalMatrix& gram, double delta) {
  const std::size_t n = gram.rows();
  LllResult res{gram, IntMatrix::identity(n, 1, 0)};
  if (n <= 1) return res;
  RationalMatrix& G = res.gram;
  IntMatrix& U = res.basis;
  Gso g{std::vector<std::vector<Real>>(n, std::vector<Real>(n, 0)), std::vector<Real>(n, 0)};
  for (std::size_t k = 0; k < n; ++k) gso_row(G, g, k);

  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 2000000) throw Error("LLL did not terminate");
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (std::size_t j = k; j-- > 0;) {
        Real m = g.mu[k][j];
        if (std::fabs(m) <= 0.5L) continue;
        Real rr = std::nearbyint(m);
        if (std::fabs(rr) > 4e15L) throw Error("LLL coefficient overflow");
        auto r = static_cast<std::int64_t>(rr);
        size_step(G, U, k, j, r);
        for (std::size_t l = 0; l < j; ++l) g.mu[k][l] -= rr * g.mu[j][l];
        g.mu[k][j] -= rr;
        changed = true;
      }
      gso_row(G, g, k);
      if (!changed) break;
    }
    Real m = g.mu[k][k - 1];
    if (g.b[k] < (static_cast<Real>(delta) - m * m) * g.b[k - 1]) {
      swap_basis(G, U, k, k - 1);
      for (std::size_t i = k - 1; i < n; ++i) gso_row(G, g, i);
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }
  return res;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  auto Q = U.map([](std::int64_t v) { return Rational(static_cast<long>(v)); });
  auto inv = inverse(Q, Rational(1));
  IntMatrix out(U.rows(), U.cols());
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j) {
      if (!is_integer(inv(i, j))) throw ValidationError("matrix is not unimodular");
      out(i, j) = to_int64(inv(i, j).get_num());
    }
  return out;
}

}  // namespace hermlat
