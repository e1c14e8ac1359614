#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hermlat/matrix.hpp"
#include "hermlat/rational.hpp"

namespace hermlat {

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<std::int64_t>;

/// A Euclidean lattice given by a symmetric positive definite rational Gram
/// matrix on a fixed basis. Rank 0 is allowed.
class ZLattice {
 public:
  ZLattice() = default;
  /// Validates symmetry and positive definiteness (exact pivots).
  explicit ZLattice(RationalMatrix gram);

  std::size_t rank() const { return gram_.rows(); }
  const RationalMatrix& gram() const { return gram_; }

  friend bool operator==(const ZLattice& a, const ZLattice& b) { return a.gram_ == b.gram_; }

 private:
  RationalMatrix gram_;
};

ZLattice zl_make(RationalMatrix gram);
ZLattice zl_make(const std::vector<std::vector<long>>& gram);
Rational zl_det(const ZLattice& L);
ZLattice zl_dual(const ZLattice& L);
bool zl_is_integral(const ZLattice& L);
bool zl_is_even(const ZLattice& L);
bool zl_is_unimodular(const ZLattice& L);

/// Lattice vectors of norm <= bound, one per +- pair, in canonical order
/// (norm ascending, then lexicographic, first nonzero coordinate positive).
/// Coordinates are stored row by row in `coords`.
struct ShortVectorSet {
  Rational bound;
  std::size_t dim = 0;
  std::vector<std::int64_t> coords;
  std::vector<Rational> norms;

  std::size_t size() const { return norms.size(); }
  std::span<const std::int64_t> vector(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

struct EnumOptions {
  /// Worker threads over the outermost coordinate; output does not depend on it.
  unsigned threads = 1;
  /// Called with (finished, total) top-level branches.
  std::function<void(std::size_t, std::size_t)> progress;
};

ShortVectorSet short_vectors(const ZLattice& L, const Rational& bound, const EnumOptions& opts = {});

struct ZMinimum {
  Rational min;
  /// Number of minimal vectors, both signs counted.
  std::uint64_t kissing = 0;
  ShortVectorSet vectors;
};

/// Exact minimum of a lattice of rank >= 1.
ZMinimum zl_minimum(const ZLattice& L, const EnumOptions& opts = {});

/// Rank of the span of x x^t over the minimal vectors x.
std::size_t perfection_rank(const ZLattice& L, const EnumOptions& opts = {});
/// Same rank for a given list of coordinate vectors.
std::size_t outer_product_rank(const ShortVectorSet& vectors);
bool is_perfect(const ZLattice& L);

ZLattice tensor_z(const ZLattice& L, const ZLattice& M);
ZLattice orthogonal_sum(const ZLattice& L, const ZLattice& M);

/// True when one of the ranks is at most 43, where every minimal vector of
/// the tensor product is split.
bool kitaoka_split_rule(std::size_t rank_l, std::size_t rank_m);

/// 2 + 2*floor(n/24).
Rational extremal_bound(std::size_t n);
/// L must be even unimodular.
bool is_extremal(const ZLattice& L, const EnumOptions& opts = {});

/// U with U^t G_M U = G_L, or nullopt when L and M are not isometric.
std::optional<IntMatrix> isometry(const ZLattice& L, const ZLattice& M);

/// LLL reduction of a Gram matrix. Columns of `basis` are the reduced basis
/// in the input coordinates; gram = basis^t G basis exactly.
struct LllResult {
  RationalMatrix gram;
  IntMatrix basis;
};
LllResult lll_reduce(const RationalMatrix& gram, double delta = 0.99);

/// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& U);

/// x^t G y for integer coordinate vectors.
Rational inner(const RationalMatrix& G, std::span<const std::int64_t> x, std::span<const std::int64_t> y);

/// Exact integer form D*G when it fits in int64; D is the lcm of denominators.
struct ScaledGram {
  std::int64_t scale = 1;
  IntMatrix gram;
};
std::optional<ScaledGram> integer_scaled(const RationalMatrix& G);

}  // namespace hermlat
