#include "hermlat/hermitian.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hermlat/error.hpp"

namespace hermlat {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  return "gram[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

FieldElement in_field(const QuadField& f, const FieldElement& x) {
  if (x.d() != 0 && x.d() != f.d) {
    throw ValidationError("element " + x.str() + " does not lie in Q(sqrt(-" + std::to_string(f.d) + "))");
  }
  return f.element(x.re(), x.im());
}

HermMatrix conj_matrix(const HermMatrix& G) {
  return G.map([](const FieldElement& x) { return x.conj(); });
}

}  // namespace

HermLattice::HermLattice(QuadField field, HermMatrix gram) : field_(std::move(field)), gram_(std::move(gram)) {
  if (!gram_.square()) throw ValidationError("Hermitian Gram matrix must be square");
  const std::size_t m = gram_.rows();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gram_(i, j) = in_field(field_, gram_(i, j));
  for (std::size_t i = 0; i < m; ++i) {
    if (!gram_(i, i).is_rational()) throw ValidationError(entry_name(i, i) + " must be rational");
    for (std::size_t j = i + 1; j < m; ++j)
      if (gram_(j, i) != gram_(i, j).conj()) {
        throw ValidationError(entry_name(j, i) + " is not the conjugate of " + entry_name(i, j));
      }
  }
  try {
    ZLattice check(trace_gram(field_, gram_));
  } catch (const ValidationError&) {
    throw ValidationError("Hermitian Gram matrix is not positive definite");
  }
}

HermLattice herm_make(const QuadField& field, HermMatrix gram) { return HermLattice(field, std::move(gram)); }

HermMatrix herm_matrix(const QuadField& field,
                       const std::vector<std::vector<std::pair<std::string, std::string>>>& rows) {
  HermMatrix G(rows.size(), rows.size(), field.zero());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ValidationError("Hermitian Gram matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j)
      G(i, j) = field.element(parse_rational(rows[i][j].first), parse_rational(rows[i][j].second));
  }
  return G;
}

FieldElement herm_form(const HermMatrix& G, std::span<const FieldElement> x, std::span<const FieldElement> y) {
  FieldElement s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    FieldElement row;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero()) row += G(i, j) * y[j].conj();
    s += x[i] * row;
  }
  return s;
}

FieldElement herm_form(const HermLattice& L, std::span<const FieldElement> x, std::span<const FieldElement> y) {
  FieldElement s = herm_form(L.gram(), x, y);
  return L.field().element(s.re(), s.im());
}

Rational herm_disc(const QuadField& field, const HermMatrix& gram) {
  if (gram.rows() == 0) return 1;
  FieldElement det = determinant(gram, field.one());
  if (!det.is_rational()) throw Error("Hermitian determinant is not rational: " + det.str());
  return det.re();
}

Rational herm_disc(const HermLattice& L) { return herm_disc(L.field(), L.gram()); }

HermLattice herm_dual(const HermLattice& L) {
  if (L.rank() == 0) return L;
  return HermLattice(L.field(), inverse(L.gram(), L.field().one()));
}

HermLattice herm_scale(const HermLattice& L, const Rational& s) {
  if (s <= 0) throw ValidationError("scale factor must be positive");
  FieldElement f = L.field().element(s, 0);
  return HermLattice(L.field(), L.gram().map([&](const FieldElement& x) { return x * f; }));
}

HermLattice herm_conj(const HermLattice& L) { return HermLattice(L.field(), conj_matrix(L.gram())); }

HermLattice herm_orthogonal_sum(const HermLattice& L, const HermLattice& M) {
  if (!(L.field() == M.field())) throw ValidationError("orthogonal sum of lattices over different fields");
  HermMatrix g(L.rank() + M.rank(), L.rank() + M.rank(), L.field().zero());
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) g(i, j) = L.gram()(i, j);
  for (std::size_t i = 0; i < M.rank(); ++i)
    for (std::size_t j = 0; j < M.rank(); ++j) g(L.rank() + i, L.rank() + j) = M.gram()(i, j);
  return HermLattice(L.field(), std::move(g));
}

HermLattice tensor_herm(const HermLattice& L, const HermLattice& M) {
  if (!(L.field() == M.field())) throw ValidationError("tensor product of lattices over different fields");
  return HermLattice(L.field(), kronecker(L.gram(), M.gram()));
}

bool dual_is_multiple(const HermLattice& L, const FieldElement& s) {
  const QuadField& f = L.field();
  // dual basis e#_i = sum_k C_ik e_k with C = G^-1; L# = sL iff C/s in GL_m(O_K)
  HermMatrix C = inverse(L.gram(), f.one());
  FieldElement inv_s = f.one() / s;
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) {
      C(i, j) *= inv_s;
      if (!f.is_integral(C(i, j))) return false;
    }
  FieldElement det = determinant(C, f.one());
  return det.norm() == 1 && f.is_integral(det);
}

RationalMatrix trace_gram(const QuadField& field, const HermMatrix& gram) {
  const std::size_t m = gram.rows();
  const FieldElement w = field.omega();
  const FieldElement basis[2] = {field.one(), w};
  RationalMatrix t(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u) t(2 * i + s, 2 * j + u) = (basis[s] * basis[u].conj() * gram(i, j)).trace();
  return t;
}

ZLattice trace_lattice(const HermLattice& L) { return ZLattice(trace_gram(L.field(), L.gram())); }

HermVector from_trace_coords(const QuadField& field, std::span<const std::int64_t> t) {
  HermVector x(t.size() / 2);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = field.from_omega_coords(Rational(static_cast<long>(t[2 * i])), Rational(static_cast<long>(t[2 * i + 1])));
  return x;
}

std::vector<std::int64_t> to_trace_coords(const QuadField& field, std::span<const FieldElement> x) {
  std::vector<std::int64_t> t(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto [s, u] = field.omega_coords(x[i]);
    if (!is_integer(s) || !is_integer(u)) throw ValidationError("coordinate " + x[i].str() + " is not in O_K");
    t[2 * i] = to_int64(s.get_num());
    t[2 * i + 1] = to_int64(u.get_num());
  }
  return t;
}

HermSublattice herm_short_basis(const HermLattice& L, const EnumOptions& opts) {
  const QuadField& f = L.field();
  const std::size_t r = L.rank();
  const HermMatrix id = HermMatrix::identity(r, f.one(), f.zero());
  if (r == 0 || r > 4) return herm_sublattice(L, id);
  Rational top = 0;
  for (std::size_t i = 0; i < r; ++i) top = std::max(top, L.gram()(i, i).re());
  ShortVectorSet vs = unit_class_representatives(f, herm_short_vectors(L, top, opts));
  std::vector<std::size_t> order(vs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vs.norms[a] < vs.norms[b]; });
  std::vector<HermVector> vecs;
  for (auto k : order) vecs.push_back(from_trace_coords(f, vs.vector(k)));

  // smallest prefix of the sorted list that contains a basis
  std::vector<std::size_t> pick;
  HermMatrix found;
  bool ok = false;
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t limit) -> bool {
    if (pick.size() == r) {
      HermMatrix B(r, r, f.zero());
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t i = 0; i < r; ++i) B(i, c) = vecs[pick[c]][i];
      FieldElement det = determinant(B, f.one());
      if (det.norm() == 1 && f.is_integral(det)) {
        found = B;
        return true;
      }
      return false;
    }
    for (std::size_t k = start; k < limit; ++k) {
      pick.push_back(k);
      if (dfs(k + 1, limit)) return true;
      pick.pop_back();
    }
    return false;
  };
  std::size_t limit = 0;
  while (limit < vecs.size() && !ok) {
    std::size_t next = limit + 1;
    while (next < vecs.size() && vs.norms[order[next]] == vs.norms[order[limit]]) ++next;
    // the new norm level must be used, so fix the last vector in it
    for (std::size_t last = limit; last < next && !ok; ++last) {
      pick.clear();
      std::function<bool(std::size_t)> lower = [&](std::size_t start) -> bool {
        if (pick.size() == r - 1) {
          pick.push_back(last);
          if (dfs(0, 0)) return true;
          pick.pop_back();
          return false;
        }
        for (std::size_t k = start; k < last; ++k) {
          pick.push_back(k);
          if (lower(k + 1)) return true;
          pick.pop_back();
        }
        return false;
      };
      ok = lower(0);
    }
    limit = next;
  }
  return herm_sublattice(L, ok ? found : id);
}

bool has_integral_norms(const HermLattice& L) {
  const QuadField& f = L.field();
  const FieldElement w = f.omega();
  for (std::size_t i = 0; i < L.rank(); ++i) {
    if (!is_integer(L.gram()(i, i).re())) return false;
    for (std::size_t j = i + 1; j < L.rank(); ++j) {
      const FieldElement& g = L.gram()(i, j);
      if (!is_integer(g.trace()) || !is_integer((g * w).trace())) return false;
    }
  }
  return true;
}

namespace {

// Multiplies every O_K coordinate pair (a, b) ~ a + b*w by u.
std::vector<std::int64_t> unit_times(const QuadField& f, const FieldElement& u, std::span<const std::int64_t> t) {
  if (u.is_rational()) {
    std::vector<std::int64_t> y(t.begin(), t.end());
    if (u.re() < 0)
      for (auto& c : y) c = -c;
    return y;
  }
  auto x = from_trace_coords(f, t);
  for (auto& c : x) c = u * c;
  return to_trace_coords(f, x);
}

ShortVectorSet halve_norms(ShortVectorSet s) {
  for (auto& n : s.norms) n /= 2;
  s.bound /= 2;
  return s;
}

}  // namespace

ShortVectorSet unit_class_representatives(const QuadField& field, const ShortVectorSet& all) {
  const auto units = field.units();
  ShortVectorSet out;
  out.bound = all.bound;
  out.dim = all.dim;
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto v = all.vector(k);
    std::vector<std::int64_t> self(v.begin(), v.end());
    bool first = true;
    for (auto& u : units) {
      if (u == field.one()) continue;
      auto w = unit_times(field, u, v);
      if (w > self) {
        first = false;
        break;
      }
    }
    if (!first) continue;
    out.coords.insert(out.coords.end(), v.begin(), v.end());
    out.norms.push_back(all.norms[k]);
  }
  return out;
}

ShortVectorSet all_unit_multiples(const QuadField& field, const ShortVectorSet& half) {
  const auto units = field.units();
  struct Item {
    Rational norm;
    std::vector<std::int64_t> x;
  };
  std::vector<Item> items;
  for (std::size_t k = 0; k < half.size(); ++k) {
    auto v = half.vector(k);
    for (auto& u : units) items.push_back({half.norms[k], unit_times(field, u, v)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.x < b.x;
  });
  items.erase(std::unique(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.x == b.x; }),
              items.end());
  ShortVectorSet out;
  out.bound = half.bound;
  out.dim = half.dim;
  for (auto& it : items) {
    out.coords.insert(out.coords.end(), it.x.begin(), it.x.end());
    out.norms.push_back(it.norm);
  }
  return out;
}

ShortVectorSet herm_short_vectors(const HermLattice& L, const Rational& bound, const EnumOptions& opts) {
  ShortVectorSet half = short_vectors(trace_lattice(L), 2 * bound, opts);
  return all_unit_multiples(L.field(), halve_norms(std::move(half)));
}

HermMinimum herm_minimum(const HermLattice& L, bool unit_classes, const EnumOptions& opts) {
  if (L.rank() == 0) throw ValidationError("minimum of the zero lattice");
  ZMinimum zm = zl_minimum(trace_lattice(L), opts);
  ShortVectorSet all = all_unit_multiples(L.field(), halve_norms(std::move(zm.vectors)));
  HermMinimum res;
  res.min = zm.min / 2;
  res.count = all.size();
  ShortVectorSet chosen = unit_classes ? unit_class_representatives(L.field(), all) : std::move(all);
  res.trace_coords = chosen.coords;
  for (std::size_t k = 0; k < chosen.size(); ++k) res.vectors.push_back(from_trace_coords(L.field(), chosen.vector(k)));
  return res;
}

HermSublattice herm_sublattice(const HermLattice& L, const HermMatrix& basis) {
  if (basis.rows() != L.rank()) throw ValidationError("sublattice basis has the wrong length");
  const std::size_t r = basis.cols();
  HermSublattice s;
  s.basis = basis;
  s.gram = HermMatrix(r, r, L.field().zero());
  std::vector<HermVector> cols(r);
  for (std::size_t a = 0; a < r; ++a) cols[a] = basis.column(a);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) s.gram(a, b) = herm_form(L, cols[a], cols[b]);
  s.disc = herm_disc(L.field(), s.gram);
  if (s.disc <= 0) throw ValidationError("sublattice basis is linearly dependent");
  return s;
}

HermSublattice herm_sublattice(const HermLattice& L, const std::vector<HermVector>& vectors) {
  HermMatrix b(L.rank(), vectors.size(), L.field().zero());
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t i = 0; i < L.rank(); ++i) b(i, a) = vectors[a][i];
  return herm_sublattice(L, b);
}

Decomposition orthogonal_decompose(const HermLattice& L, const HermMatrix& basis) {
  const QuadField& f = L.field();
  const std::size_t m = L.rank();
  const std::size_t r = basis.cols();
  if (basis.rows() != m || r == 0 || r > m) throw ValidationError("sublattice basis has the wrong shape");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!f.is_integral(basis(i, j))) throw ValidationError("sublattice basis is not in L");
  if (!f.is_euclidean()) throw UnsupportedError("saturation test needs a norm-Euclidean field");

  // Row reduce B with unimodular W (W*B = [R; 0]), keeping Winv.
  HermMatrix B = basis;
  HermMatrix Winv = HermMatrix::identity(m, f.one(), f.zero());
  auto row_op = [&](std::size_t dst, std::size_t src, const FieldElement& q) {
    // row_dst -= q*row_src in B; the inverse gets column_src += q*column_dst
    for (std::size_t j = 0; j < r; ++j) B(dst, j) -= q * B(src, j);
    for (std::size_t i = 0; i < m; ++i) Winv(i, src) += Winv(i, dst) * q;
  };
  auto swap_op = [&](std::size_t a, std::size_t b) {
    B.swap_rows(a, b);
    for (std::size_t i = 0; i < m; ++i) std::swap(Winv(i, a), Winv(i, b));
  };
  for (std::size_t c = 0; c < r; ++c) {
    for (;;) {
      std::size_t piv = m;
      for (std::size_t i = c; i < m; ++i)
        if (!B(i, c).is_zero() && (piv == m || B(i, c).norm() < B(piv, c).norm())) piv = i;
      if (piv == m) throw ValidationError("sublattice basis is linearly dependent");
      swap_op(c, piv);
      bool done = true;
      for (std::size_t i = c + 1; i < m; ++i) {
        if (B(i, c).is_zero()) continue;
        auto dv = euclidean_divide(f, B(i, c), B(c, c));
        row_op(i, c, dv.quotient);
        if (!B(i, c).is_zero()) done = false;
      }
      if (done) break;
    }
  }
  HermMatrix R(r, r, f.zero());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) R(i, j) = B(i, j);
  HermMatrix Rinv = inverse(R, f.one());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i)
      if (!f.is_integral(Rinv(i, k))) {
        HermVector v = Winv.column(k);
        std::string s;
        for (auto& x : v) s += (s.empty() ? "" : ", ") + x.str();
        throw ValidationError("sublattice is not saturated: (" + s + ") lies in K*S and L but not in S");
      }

  // Basis of L: the given vectors followed by the remaining columns of Winv.
  Decomposition d;
  d.basis = HermMatrix(m, m, f.zero());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < r; ++j) d.basis(i, j) = basis(i, j);
    for (std::size_t j = r; j < m; ++j) d.basis(i, j) = Winv(i, j);
  }
  HermSublattice full = herm_sublattice(L, d.basis);
  HermMatrix A(r, r, f.zero()), X(r, m - r, f.zero()), Y(m - r, m - r, f.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i < r && j < r) A(i, j) = full.gram(i, j);
      else if (i < r) X(i, j - r) = full.gram(i, j);
      else if (j >= r) Y(i - r, j - r) = full.gram(i, j);
    }
  HermMatrix XH = conj_matrix(X.transpose());
  HermMatrix P = Y;
  if (m > r) {
    HermMatrix corr = XH * inverse(A, f.one()) * X;
    for (std::size_t i = 0; i < m - r; ++i)
      for (std::size_t j = 0; j < m - r; ++j) P(i, j) -= corr(i, j);
  }
  d.section = HermLattice(f, A);
  d.projection = m > r ? HermLattice(f, P) : HermLattice(f, HermMatrix());
  return d;
}

namespace {

class HermIsometrySearch {
 public:
  HermIsometrySearch(const HermLattice& L, const HermLattice& M) : L_(L), M_(M), m_(L.rank()) {
    Rational maxnorm = 0;
    for (std::size_t i = 0; i < m_; ++i) maxnorm = std::max(maxnorm, L.gram()(i, i).re());
    ShortVectorSet all = herm_short_vectors(M, maxnorm);
    ShortVectorSet reps = unit_class_representatives(M.field(), all);
    for (std::size_t k = 0; k < all.size(); ++k) add(all, k, false);
    for (std::size_t k = 0; k < reps.size(); ++k) add(reps, k, true);
  }

  std::optional<std::vector<std::size_t>> run() {
    chosen_.clear();
    if (extend(0)) return chosen_;
    return std::nullopt;
  }

  const HermVector& vec(std::size_t k) const { return cand_[k]; }

 private:
  void add(const ShortVectorSet& s, std::size_t k, bool rep) {
    HermVector v = from_trace_coords(M_.field(), s.vector(k));
    HermVector gv(m_, M_.field().zero());
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) gv[i] += M_.gram()(i, j) * v[j].conj();
    cand_.push_back(std::move(v));
    gconj_.push_back(std::move(gv));
    norm_.push_back(s.norms[k]);
    first_level_.push_back(rep);
  }

  // h(y_a, y_b)
  FieldElement ip(std::size_t a, std::size_t b) const {
    FieldElement s = M_.field().zero();
    for (std::size_t i = 0; i < m_; ++i)
      if (!cand_[a][i].is_zero()) s += cand_[a][i] * gconj_[b][i];
    return s;
  }

  bool extend(std::size_t level) {
    if (level == m_) return true;
    for (std::size_t k = 0; k < cand_.size(); ++k) {
      // unit multiples are automorphisms, so the first image is taken up to units
      if ((level == 0) != first_level_[k]) continue;
      if (norm_[k] != L_.gram()(level, level).re()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = ip(k, chosen_[j]) == L_.gram()(level, j);
      if (!ok) continue;
      chosen_.push_back(k);
      if (extend(level + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const HermLattice& L_;
  const HermLattice& M_;
  std::size_t m_;
  std::vector<HermVector> cand_;
  std::vector<HermVector> gconj_;
  std::vector<Rational> norm_;
  std::vector<bool> first_level_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<HermMatrix> herm_isometry(const HermLattice& L, const HermLattice& M) {
  if (!(L.field() == M.field()) || L.rank() != M.rank()) return std::nullopt;
  const std::size_t m = L.rank();
  if (m == 0) return HermMatrix();
  if (herm_disc(L) != herm_disc(M)) return std::nullopt;
  HermIsometrySearch search(L, M);
  auto found = search.run();
  if (!found) return std::nullopt;
  HermMatrix U(m, m, L.field().zero());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) U(i, j) = search.vec((*found)[j])[i];
  HermMatrix check = U.transpose() * M.gram() * conj_matrix(U);
  if (!(check == L.gram())) throw Error("Hermitian isometry verification failed");
  return U;
}

}  // namespace hermlat
