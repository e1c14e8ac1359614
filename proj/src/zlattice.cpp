#include "hermlat/zlattice.hpp"

#include <algorithm>
#include <numeric>

#include "hermlat/error.hpp"

namespace hermlat {

namespace {

void check_positive_definite(const RationalMatrix& g) {
  RationalMatrix a = g;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    if (a(c, c) <= 0) {
      throw ValidationError("Gram matrix is not positive definite (pivot " + std::to_string(c) + " is " +
                            to_string(a(c, c)) + ")");
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
}

}  // namespace

ZLattice::ZLattice(RationalMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.square()) throw ValidationError("Gram matrix must be square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.cols(); ++j)
      if (gram_(i, j) != gram_(j, i)) {
        throw ValidationError("Gram matrix is not symmetric at gram[" + std::to_string(i) + "][" +
                              std::to_string(j) + "]");
      }
  check_positive_definite(gram_);
}

ZLattice zl_make(RationalMatrix gram) { return ZLattice(std::move(gram)); }

ZLattice zl_make(const std::vector<std::vector<long>>& gram) {
  RationalMatrix g(gram.size(), gram.size());
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (gram[i].size() != gram.size()) throw ValidationError("Gram matrix must be square");
    for (std::size_t j = 0; j < gram.size(); ++j) g(i, j) = gram[i][j];
  }
  return ZLattice(std::move(g));
}

Rational zl_det(const ZLattice& L) {
  if (L.rank() == 0) return 1;
  return determinant(L.gram(), Rational(1));
}

ZLattice zl_dual(const ZLattice& L) {
  if (L.rank() == 0) return L;
  return ZLattice(inverse(L.gram(), Rational(1)));
}

bool zl_is_integral(const ZLattice& L) {
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j)
      if (!is_integer(L.gram()(i, j))) return false;
  return true;
}

bool zl_is_even(const ZLattice& L) {
  if (!zl_is_integral(L)) return false;
  for (std::size_t i = 0; i < L.rank(); ++i)
    if (L.gram()(i, i).get_num() % 2 != 0) return false;
  return true;
}

bool zl_is_unimodular(const ZLattice& L) { return zl_is_integral(L) && zl_det(L) == 1; }

Rational inner(const RationalMatrix& G, std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) row += G(i, j) * static_cast<long>(y[j]);
    s += row * static_cast<long>(x[i]);
  }
  return s;
}

std::optional<ScaledGram> integer_scaled(const RationalMatrix& G) {
  Integer D = 1;
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j < G.cols(); ++j) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), G(i, j).get_den_mpz_t());
  if (!fits_int64(D)) return std::nullopt;
  ScaledGram s;
  s.scale = to_int64(D);
  s.gram = IntMatrix(G.rows(), G.cols());
  // keep headroom so that callers can form 2*a*x*y sums in int128
  const Integer cap = Integer(1) << 40;
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j < G.cols(); ++j) {
      Integer v = G(i, j).get_num() * (D / G(i, j).get_den());
      if (abs(v) > cap) return std::nullopt;
      s.gram(i, j) = to_int64(v);
    }
  return s;
}

std::size_t outer_product_rank(const ShortVectorSet& vs) {
  const std::size_t n = vs.dim;
  const std::size_t full = n * (n + 1) / 2;
  // echelon rows kept sorted by pivot column
  std::vector<std::pair<std::size_t, std::vector<Integer>>> rows;
  std::vector<Integer> v(full);
  for (std::size_t k = 0; k < vs.size() && rows.size() < full; ++k) {
    auto x = vs.vector(k);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) v[idx++] = Integer(static_cast<long>(x[i] * x[j]));
    for (auto& [p, r] : rows) {
      if (v[p] == 0) continue;
      Integer a = r[p], b = v[p];
      for (std::size_t c = p; c < full; ++c) v[c] = v[c] * a - r[c] * b;
      Integer g = 0;
      for (std::size_t c = p; c < full; ++c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[c].get_mpz_t());
      if (g > 1)
        for (std::size_t c = p; c < full; ++c) mpz_divexact(v[c].get_mpz_t(), v[c].get_mpz_t(), g.get_mpz_t());
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Integer& z) { return z != 0; });
    if (it == v.end()) continue;
    std::size_t p = static_cast<std::size_t>(it - v.begin());
    auto pos = std::lower_bound(rows.begin(), rows.end(), p, [](const auto& e, std::size_t q) { return e.first < q; });
    rows.insert(pos, {p, v});
  }
  return rows.size();
}

std::size_t perfection_rank(const ZLattice& L, const EnumOptions& opts) {
  if (L.rank() == 0) return 0;
  return outer_product_rank(zl_minimum(L, opts).vectors);
}

bool is_perfect(const ZLattice& L) {
  const std::size_t n = L.rank();
  return perfection_rank(L) == n * (n + 1) / 2;
}

ZLattice tensor_z(const ZLattice& L, const ZLattice& M) { return ZLattice(kronecker(L.gram(), M.gram())); }

ZLattice orthogonal_sum(const ZLattice& L, const ZLattice& M) {
  return ZLattice(block_diagonal(L.gram(), M.gram()));
}

bool kitaoka_split_rule(std::size_t rank_l, std::size_t rank_m) {
  if (rank_l == 0 || rank_m == 0) throw ValidationError("ranks must be positive");
  return std::min(rank_l, rank_m) <= 43;
}

Rational extremal_bound(std::size_t n) { return 2 + 2 * Rational(static_cast<long>(n / 24)); }

bool is_extremal(const ZLattice& L, const EnumOptions& opts) {
  if (!zl_is_even(L) || !zl_is_unimodular(L)) throw ValidationError("is_extremal needs an even unimodular lattice");
  return zl_minimum(L, opts).min == extremal_bound(L.rank());
}

namespace {

// Backtracking search for images y_0..y_{n-1} in M realising a target Gram.
class IsometrySearch {
 public:
  IsometrySearch(const RationalMatrix& target, const ZLattice& M) : target_(target), n_(target.rows()) {
    Rational maxnorm = 0;
    for (std::size_t i = 0; i < n_; ++i) maxnorm = std::max(maxnorm, target(i, i));
    ShortVectorSet s = short_vectors(M, maxnorm);
    for (std::size_t k = 0; k < s.size(); ++k) {
      auto v = s.vector(k);
      cand_.emplace_back(v.begin(), v.end());
      norm_.push_back(s.norms[k]);
      std::vector<std::int64_t> neg(v.begin(), v.end());
      for (auto& e : neg) e = -e;
      cand_.push_back(std::move(neg));
      norm_.push_back(s.norms[k]);
    }
    // G_M * y for every candidate, for cheap inner products
    for (auto& y : cand_) {
      std::vector<Rational> gy(n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (y[j] != 0) gy[i] += M.gram()(i, j) * static_cast<long>(y[j]);
      gy_.push_back(std::move(gy));
    }
    by_level_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < cand_.size(); ++k)
        if (norm_[k] == target(i, i)) by_level_[i].push_back(k);
  }

  std::optional<std::vector<std::size_t>> run() {
    chosen_.clear();
    if (n_ == 0) return chosen_;
    if (extend(0)) return chosen_;
    return std::nullopt;
  }

  const std::vector<std::int64_t>& vec(std::size_t k) const { return cand_[k]; }

 private:
  Rational ip(std::size_t a, std::size_t b) const {
    Rational s = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (cand_[a][i] != 0) s += gy_[b][i] * static_cast<long>(cand_[a][i]);
    return s;
  }

  bool extend(std::size_t level) {
    if (level == n_) return true;
    for (std::size_t k : by_level_[level]) {
      // -1 is always an automorphism, so the first image can be taken up to sign
      if (level == 0 && k % 2 == 1) continue;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = ip(k, chosen_[j]) == target_(level, j);
      if (!ok) continue;
      chosen_.push_back(k);
      if (extend(level + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const RationalMatrix& target_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> cand_;
  std::vector<Rational> norm_;
  std::vector<std::vector<Rational>> gy_;
  std::vector<std::vector<std::size_t>> by_level_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<IntMatrix> isometry(const ZLattice& L, const ZLattice& M) {
  const std::size_t n = L.rank();
  if (M.rank() != n) return std::nullopt;
  if (n == 0) return IntMatrix();
  if (zl_det(L) != zl_det(M)) return std::nullopt;
  LllResult red = lll_reduce(L.gram());
  IsometrySearch search(red.gram, M);
  auto found = search.run();
  if (!found) return std::nullopt;
  IntMatrix Y(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) Y(i, j) = search.vec((*found)[j])[i];
  IntMatrix W = Y * unimodular_inverse(red.basis);
  auto Wq = W.map([](std::int64_t v) { return Rational(static_cast<long>(v)); });
  if (!(Wq.transpose() * M.gram() * Wq == L.gram())) throw Error("isometry verification failed");
  return W;
}

}  // namespace hermlat
