#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hermlat/hermitian.hpp"

namespace hermlat {

/// Exact h-value (X + Y*sqrt(-d)) / Q with Q fixed by the table.
struct HKey {
  std::int64_t x = 0;
  std::int64_t y = 0;
  HKey conj() const { return {x, -y}; }
  friend bool operator==(const HKey&, const HKey&) = default;
  friend auto operator<=>(const HKey&, const HKey&) = default;
};

/// Vectors of a Hermitian lattice as int32 trace coordinates, with batched
/// evaluation of h(v_i, w) over all rows.
class VectorTable {
 public:
  VectorTable(const HermLattice& L, const ShortVectorSet& vectors);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  std::int64_t denominator() const { return q_; }
  std::int64_t d() const { return d_; }
  std::span<const std::int32_t> row(std::size_t i) const { return {rows_.data() + i * dim_, dim_}; }
  std::span<const std::int64_t> row64(std::size_t i) const { return {rows64_.data() + i * dim_, dim_}; }
  /// h(v_i, v_i) as a key (y = 0).
  const HKey& norm_key(std::size_t i) const { return norms_[i]; }

  /// out[i] = key of h(v_i, w) for w in trace coordinates (row first).
  void inner_all(std::span<const std::int64_t> w, std::vector<HKey>& out) const;
  void inner_all_row(std::size_t j, std::vector<HKey>& out) const { inner_all(row64(j), out); }
  HKey inner(std::span<const std::int64_t> v, std::span<const std::int64_t> w) const;

  /// Precomputed IG*w and IG*(omega w) for repeated single-row evaluation.
  struct Query {
    std::vector<std::int64_t> q1, q2;
  };
  Query query(std::span<const std::int64_t> w) const;
  /// Key of h(v_i, w) for a prepared query.
  HKey eval(std::size_t i, const Query& q) const;

  /// Key of an exact value, or nothing when it is not of the form (X+Y s)/Q.
  std::optional<HKey> key(const FieldElement& g) const;
  FieldElement value(const HKey& k) const;

  /// Q^2 * (h11 h22 - N(h12)).
  __int128 det2(const HKey& h11, const HKey& h22, const HKey& h12) const;
  /// Q^3 * det of the Hermitian Gram with upper entries h12, h13, h23.
  __int128 det3(const HKey& h11, const HKey& h22, const HKey& h33, const HKey& h12, const HKey& h13,
                const HKey& h23) const;
  Rational det2_value(__int128 v) const;
  Rational det3_value(__int128 v) const;

 private:
  void keys_from(const std::int64_t* t1, const std::int64_t* t2, std::vector<HKey>& out) const;

  QuadField field_;
  std::size_t n_ = 0, dim_ = 0;
  std::int64_t d_ = 0, scale_ = 1, q_ = 1;
  IntMatrix ig_;
  std::vector<std::int32_t> rows_;
  std::vector<std::int64_t> rows64_;
  std::int64_t row_max_ = 0;
  std::vector<HKey> norms_;
};

/// Trace coordinates of omega * w.
std::vector<std::int64_t> omega_times_trace(const QuadField& field, std::span<const std::int64_t> w);

}  // namespace hermlat
