#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "hermlat/error.hpp"
#include "hermlat/zlattice.hpp"

namespace hermlat {

namespace {

using Real = long double;
using i128 = __int128;

// Exact norm test for a candidate in reduced coordinates.
class NormCheck {
 public:
  NormCheck(const RationalMatrix& G, const Rational& bound) : G_(G), bound_(bound) {
    if (auto s = integer_scaled(G)) {
      Rational lim = bound * s->scale;
      Integer f = floor(lim);
      if (fits_int64(f)) {
        scaled_ = std::move(*s);
        limit_ = static_cast<i128>(to_int64(f));
        fast_ = true;
      }
    }
  }

  // Returns true and sets norm when x^t G x <= bound.
  bool accept(const std::int64_t* x, std::size_t n, Rational& norm) const {
    if (fast_) {
      i128 s = 0;
      const IntMatrix& A = scaled_.gram;
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        i128 row = static_cast<i128>(A(i, i)) * x[i];
        for (std::size_t j = i + 1; j < n; ++j) row += static_cast<i128>(2 * A(i, j)) * x[j];
        s += row * x[i];
      }
      if (s > limit_) return false;
      norm = Rational(Integer(static_cast<long>(s)), Integer(scaled_.scale));
      norm.canonicalize();
      return true;
    }
    norm = inner(G_, {x, n}, {x, n});
    return norm <= bound_;
  }

 private:
  const RationalMatrix& G_;
  const Rational& bound_;
  ScaledGram scaled_;
  i128 limit_ = 0;
  bool fast_ = false;
};

struct Hit {
  std::vector<std::int64_t> x;
  Rational norm;
};

class Enumerator {
 public:
  Enumerator(const RationalMatrix& G, const Rational& bound) : n_(G.rows()), check_(G, bound) {
    q_.assign(n_, std::vector<Real>(n_, 0));
    std::vector<std::vector<Real>> a(n_, std::vector<Real>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a[i][j] = static_cast<Real>(G(i, j).get_d());
    for (std::size_t i = 0; i < n_; ++i) {
      Real d = a[i][i];
      for (std::size_t k = 0; k < i; ++k) d -= q_[k][k] * q_[k][i] * q_[k][i];
      if (!(d > 0)) throw Error("enumeration: Cholesky breakdown");
      q_[i][i] = d;
      for (std::size_t j = i + 1; j < n_; ++j) {
        Real s = a[i][j];
        for (std::size_t k = 0; k < i; ++k) s -= q_[k][k] * q_[k][i] * q_[k][j];
        q_[i][j] = s / d;
      }
    }
    Real b = static_cast<Real>(bound.get_d());
    budget_ = b * (1 + 1e-9L) + 1e-12L;
    slack_ = b * 1e-9L + 1e-12L;
  }

  // Values of the outermost coordinate (half enumeration: >= 0).
  std::vector<std::int64_t> top_values() const {
    std::vector<std::int64_t> v;
    if (n_ == 0) return v;
    Real r = std::sqrt(budget_ / q_[n_ - 1][n_ - 1]);
    auto hi = static_cast<std::int64_t>(std::floor(r + slack_));
    for (std::int64_t t = n_ == 1 ? 1 : 0; t <= hi; ++t) v.push_back(t);
    return v;
  }

  void run_top(std::int64_t top, std::vector<Hit>& out) const {
    std::vector<std::int64_t> x(n_, 0);
    const std::size_t i = n_ - 1;
    Real t = budget_ - q_[i][i] * static_cast<Real>(top) * static_cast<Real>(top);
    if (t < -slack_) return;
    x[i] = top;
    if (i == 0) {
      leaf(x, out);
      return;
    }
    descend(i - 1, std::max(t, Real(0)), top == 0, x, out);
  }

 private:
  void leaf(const std::vector<std::int64_t>& x, std::vector<Hit>& out) const {
    Rational norm;
    if (check_.accept(x.data(), n_, norm)) out.push_back({x, std::move(norm)});
  }

  void descend(std::size_t i, Real T, bool zero_above, std::vector<std::int64_t>& x, std::vector<Hit>& out) const {
    Real c = 0;
    for (std::size_t j = i + 1; j < n_; ++j) c -= q_[i][j] * static_cast<Real>(x[j]);
    Real r = std::sqrt(T / q_[i][i]);
    auto lo = static_cast<std::int64_t>(std::ceil(c - r - slack_));
    auto hi = static_cast<std::int64_t>(std::floor(c + r + slack_));
    if (zero_above) lo = std::max<std::int64_t>(lo, i == 0 ? 1 : 0);
    for (std::int64_t v = lo; v <= hi; ++v) {
      Real d = static_cast<Real>(v) - c;
      Real t = T - q_[i][i] * d * d;
      if (t < -slack_) continue;
      x[i] = v;
      if (i == 0) {
        leaf(x, out);
      } else {
        descend(i - 1, std::max(t, Real(0)), zero_above && v == 0, x, out);
      }
    }
    x[i] = 0;
  }

  std::size_t n_;
  NormCheck check_;
  std::vector<std::vector<Real>> q_;
  Real budget_ = 0;
  Real slack_ = 0;
};

}  // namespace

ShortVectorSet short_vectors(const ZLattice& L, const Rational& bound, const EnumOptions& opts) {
  const std::size_t n = L.rank();
  ShortVectorSet set;
  set.bound = bound;
  set.dim = n;
  if (n == 0 || bound <= 0) return set;

  LllResult red = lll_reduce(L.gram());
  Enumerator en(red.gram, bound);
  const auto tops = en.top_values();
  std::vector<std::vector<Hit>> parts(tops.size());

  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= tops.size()) return;
      en.run_top(tops[k], parts[k]);
      std::size_t fin = done.fetch_add(1) + 1;
      if (opts.progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        opts.progress(fin, tops.size());
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(tops.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Back to input coordinates, sign-normalised.
  std::vector<Hit> hits;
  for (auto& p : parts)
    for (auto& h : p) hits.push_back(std::move(h));
  const IntMatrix& U = red.basis;
  for (auto& h : hits) {
    std::vector<std::int64_t> y(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] += U(i, j) * h.x[j];
    auto first = std::find_if(y.begin(), y.end(), [](std::int64_t v) { return v != 0; });
    if (first != y.end() && *first < 0)
      for (auto& v : y) v = -v;
    h.x = std::move(y);
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.x < b.x;
  });
  set.coords.reserve(hits.size() * n);
  set.norms.reserve(hits.size());
  for (auto& h : hits) {
    set.coords.insert(set.coords.end(), h.x.begin(), h.x.end());
    set.norms.push_back(std::move(h.norm));
  }
  return set;
}

ZMinimum zl_minimum(const ZLattice& L, const EnumOptions& opts) {
  if (L.rank() == 0) throw ValidationError("minimum of the zero lattice");
  LllResult red = lll_reduce(L.gram());
  Rational bound = red.gram(0, 0);
  for (std::size_t i = 1; i < red.gram.rows(); ++i) bound = std::min(bound, red.gram(i, i));
  ShortVectorSet all = short_vectors(L, bound, opts);
  if (all.size() == 0) throw Error("enumeration lost the basis vectors");
  ZMinimum res;
  res.min = all.norms[0];
  std::size_t k = 0;
  while (k < all.size() && all.norms[k] == res.min) ++k;
  res.kissing = 2 * k;
  all.coords.resize(k * all.dim);
  all.norms.resize(k);
  all.bound = res.min;
  res.vectors = std::move(all);
  return res;
}

}  // namespace hermlat
