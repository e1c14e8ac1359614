#include "hermlat/vector_table.hpp"

#include <cstdlib>
#include <limits>

#include "hermlat/error.hpp"
#include "hermlat/kernels/inner_product.hpp"

namespace hermlat {

namespace {

using i128 = __int128;

constexpr std::int64_t kKernelLimit = std::int64_t(1) << 24;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error("vector table: inner product key overflows int64");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

std::vector<std::int64_t> omega_times_trace(const QuadField& field, std::span<const std::int64_t> w) {
  std::vector<std::int64_t> out(w.size());
  const std::int64_t t = field.omega_trace(), n = field.omega_norm();
  for (std::size_t i = 0; i + 1 < w.size(); i += 2) {
    out[i] = -n * w[i + 1];
    out[i + 1] = w[i] + t * w[i + 1];
  }
  return out;
}

VectorTable::VectorTable(const HermLattice& L, const ShortVectorSet& vectors)
    : field_(L.field()), n_(vectors.size()), dim_(vectors.dim), d_(L.field().d) {
  if (dim_ != 2 * L.rank()) throw ValidationError("vector table: vectors are not trace coordinates of L");
  auto sg = integer_scaled(trace_gram(L.field(), L.gram()));
  if (!sg) throw Error("vector table: trace Gram too large for int64");
  scale_ = sg->scale;
  ig_ = std::move(sg->gram);
  q_ = 2 * scale_ * d_;
  rows_.resize(vectors.coords.size());
  rows64_ = vectors.coords;
  for (std::size_t i = 0; i < rows64_.size(); ++i) {
    std::int64_t v = rows64_[i];
    if (std::llabs(v) >= kKernelLimit) throw ValidationError("vector table: coordinate too large");
    rows_[i] = static_cast<std::int32_t>(v);
    row_max_ = std::max<std::int64_t>(row_max_, std::llabs(v));
  }
  norms_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Rational nv = vectors.norms[i] * q_;
    if (!is_integer(nv)) throw Error("vector table: norm not on the key grid");
    norms_[i] = {to_int64(nv.get_num()), 0};
  }
}

void VectorTable::keys_from(const std::int64_t* t1, const std::int64_t* t2, std::vector<HKey>& out) const {
  const bool half = field_.half_integral();
  for (std::size_t i = 0; i < n_; ++i) {
    i128 x = static_cast<i128>(d_) * t1[i];
    i128 y = half ? 2 * static_cast<i128>(t2[i]) - t1[i] : static_cast<i128>(t2[i]);
    out[i] = {narrow(x), narrow(y)};
  }
}

void VectorTable::inner_all(std::span<const std::int64_t> w, std::vector<HKey>& out) const {
  out.resize(n_);
  if (n_ == 0) return;
  auto ww = omega_times_trace(field_, w);
  std::vector<i128> a(dim_, 0), b(dim_, 0);
  i128 qmax = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      a[i] += static_cast<i128>(ig_(i, j)) * w[j];
      b[i] += static_cast<i128>(ig_(i, j)) * ww[j];
    }
    qmax = std::max({qmax, a[i] < 0 ? -a[i] : a[i], b[i] < 0 ? -b[i] : b[i]});
  }
  std::vector<std::int64_t> t1(n_), t2(n_);
  if (qmax < kKernelLimit) {
    std::vector<std::int32_t> q1(dim_), q2(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      q1[i] = static_cast<std::int32_t>(a[i]);
      q2[i] = static_cast<std::int32_t>(b[i]);
    }
    kernels::dot_rows2(rows_.data(), n_, dim_, q1.data(), q2.data(), t1.data(), t2.data());
  } else {
    // wide queries: exact scalar path
    for (std::size_t r = 0; r < n_; ++r) {
      i128 s1 = 0, s2 = 0;
      const std::int64_t* v = rows64_.data() + r * dim_;
      for (std::size_t i = 0; i < dim_; ++i) {
        s1 += a[i] * v[i];
        s2 += b[i] * v[i];
      }
      t1[r] = narrow(s1);
      t2[r] = narrow(s2);
    }
  }
  keys_from(t1.data(), t2.data(), out);
}

HKey VectorTable::inner(std::span<const std::int64_t> v, std::span<const std::int64_t> w) const {
  auto ww = omega_times_trace(field_, w);
  i128 t1 = 0, t2 = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (v[i] == 0) continue;
    i128 s1 = 0, s2 = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      s1 += static_cast<i128>(ig_(i, j)) * w[j];
      s2 += static_cast<i128>(ig_(i, j)) * ww[j];
    }
    t1 += s1 * v[i];
    t2 += s2 * v[i];
  }
  i128 x = static_cast<i128>(d_) * t1;
  i128 y = field_.half_integral() ? 2 * t2 - t1 : t2;
  return {narrow(x), narrow(y)};
}

VectorTable::Query VectorTable::query(std::span<const std::int64_t> w) const {
  auto ww = omega_times_trace(field_, w);
  Query q{std::vector<std::int64_t>(dim_), std::vector<std::int64_t>(dim_)};
  for (std::size_t i = 0; i < dim_; ++i) {
    i128 a = 0, b = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      a += static_cast<i128>(ig_(i, j)) * w[j];
      b += static_cast<i128>(ig_(i, j)) * ww[j];
    }
    q.q1[i] = narrow(a);
    q.q2[i] = narrow(b);
  }
  return q;
}

HKey VectorTable::eval(std::size_t i, const Query& q) const {
  const std::int64_t* v = rows64_.data() + i * dim_;
  i128 t1 = 0, t2 = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    t1 += static_cast<i128>(v[k]) * q.q1[k];
    t2 += static_cast<i128>(v[k]) * q.q2[k];
  }
  i128 x = static_cast<i128>(d_) * t1;
  i128 y = field_.half_integral() ? 2 * t2 - t1 : t2;
  return {narrow(x), narrow(y)};
}

std::optional<HKey> VectorTable::key(const FieldElement& g) const {
  Rational x = g.re() * q_, y = g.im() * q_;
  if (!is_integer(x) || !is_integer(y) || !fits_int64(x.get_num()) || !fits_int64(y.get_num())) return std::nullopt;
  return HKey{to_int64(x.get_num()), to_int64(y.get_num())};
}

FieldElement VectorTable::value(const HKey& k) const {
  return field_.element(ratio(k.x, q_), ratio(k.y, q_));
}

__int128 VectorTable::det2(const HKey& h11, const HKey& h22, const HKey& h12) const {
  return static_cast<i128>(h11.x) * h22.x - (static_cast<i128>(h12.x) * h12.x + static_cast<i128>(d_) * h12.y * h12.y);
}

__int128 VectorTable::det3(const HKey& h11, const HKey& h22, const HKey& h33, const HKey& h12, const HKey& h13,
                           const HKey& h23) const {
  auto nrm = [&](const HKey& k) { return static_cast<i128>(k.x) * k.x + static_cast<i128>(d_) * k.y * k.y; };
  // Re(h12 h23 h31), h31 = conj(h13)
  const i128 ax = h12.x, ay = h12.y, bx = h23.x, by = h23.y, cx = h13.x, cy = -h13.y;
  i128 re3 = ax * bx * cx - static_cast<i128>(d_) * (ax * by * cy + ay * bx * cy + ay * by * cx);
  return static_cast<i128>(h11.x) * h22.x * h33.x - static_cast<i128>(h11.x) * nrm(h23) -
         static_cast<i128>(h22.x) * nrm(h13) - static_cast<i128>(h33.x) * nrm(h12) + 2 * re3;
}

namespace {
Integer to_integer(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}
}  // namespace

Rational VectorTable::det2_value(__int128 v) const {
  Rational r(to_integer(v), Integer(q_) * q_);
  r.canonicalize();
  return r;
}

Rational VectorTable::det3_value(__int128 v) const {
  Rational r(to_integer(v), Integer(q_) * q_ * q_);
  r.canonicalize();
  return r;
}

}  // namespace hermlat
