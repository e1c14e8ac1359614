#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hermlat/number_field.hpp"
#include "hermlat/root_value.hpp"
#include "hermlat/zlattice.hpp"

namespace hermlat {

using HermMatrix = Matrix<FieldElement>;
using HermVector = std::vector<FieldElement>;

/// A free Hermitian O_K-lattice: gram(i,j) = h(e_i, e_j) with h linear in
/// the first argument, so h(x, y) = x^t G conj(y) on coordinate columns.
class HermLattice {
 public:
  HermLattice() = default;
  /// Validates Hermitian symmetry and positive definiteness.
  HermLattice(QuadField field, HermMatrix gram);

  const QuadField& field() const { return field_; }
  const HermMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

  friend bool operator==(const HermLattice& a, const HermLattice& b) {
    return a.field_ == b.field_ && a.gram_ == b.gram_;
  }

 private:
  QuadField field_;
  HermMatrix gram_;
};

HermLattice herm_make(const QuadField& field, HermMatrix gram);
/// Convenience for literals: entries given as (re, im) rational strings.
HermMatrix herm_matrix(const QuadField& field, const std::vector<std::vector<std::pair<std::string, std::string>>>& rows);

FieldElement herm_form(const HermMatrix& G, std::span<const FieldElement> x, std::span<const FieldElement> y);
FieldElement herm_form(const HermLattice& L, std::span<const FieldElement> x, std::span<const FieldElement> y);

/// det of the Gram matrix, a positive rational.
Rational herm_disc(const HermLattice& L);
Rational herm_disc(const QuadField& field, const HermMatrix& gram);
/// Gram matrix of L^# on the dual basis, which is G^-1.
HermLattice herm_dual(const HermLattice& L);
/// L with h scaled by a positive rational.
HermLattice herm_scale(const HermLattice& L, const Rational& s);
HermLattice herm_conj(const HermLattice& L);
HermLattice herm_orthogonal_sum(const HermLattice& L, const HermLattice& M);
HermLattice tensor_herm(const HermLattice& L, const HermLattice& M);

/// True when L^# = s*L for the given s in K.
bool dual_is_multiple(const HermLattice& L, const FieldElement& s);

/// Gram of Tr h on the Z-basis (e_1, w e_1, e_2, w e_2, ...).
RationalMatrix trace_gram(const QuadField& field, const HermMatrix& gram);
ZLattice trace_lattice(const HermLattice& L);

/// O_K coordinates from trace coordinates and back.
HermVector from_trace_coords(const QuadField& field, std::span<const std::int64_t> t);
std::vector<std::int64_t> to_trace_coords(const QuadField& field, std::span<const FieldElement> x);

/// All Hermitian norms h(z,z) are integers (diagonal in Z, and Tr(g),
/// Tr(g*w) in Z off the diagonal).
bool has_integral_norms(const HermLattice& L);

struct HermMinimum {
  Rational min;
  /// Number of minimal vectors, all unit multiples counted.
  std::uint64_t count = 0;
  /// Minimal vectors in O_K coordinates: one per unit class when requested,
  /// otherwise all of them, in canonical order.
  std::vector<HermVector> vectors;
  /// Trace coordinates of `vectors`, row by row.
  std::vector<std::int64_t> trace_coords;
};

HermMinimum herm_minimum(const HermLattice& L, bool unit_classes = false, const EnumOptions& opts = {});

/// Vectors of L with h(v,v) <= bound (all unit multiples), as trace coordinates.
ShortVectorSet herm_short_vectors(const HermLattice& L, const Rational& bound, const EnumOptions& opts = {});

/// Keeps the first vector of every unit class in a trace-coordinate set.
ShortVectorSet unit_class_representatives(const QuadField& field, const ShortVectorSet& all);
/// Adds the negatives (and other unit multiples) of a half set.
ShortVectorSet all_unit_multiples(const QuadField& field, const ShortVectorSet& half);

struct HermSublattice {
  /// m x r, columns are O_K coordinates of the basis vectors.
  HermMatrix basis;
  HermMatrix gram;
  Rational disc;
};

HermSublattice herm_sublattice(const HermLattice& L, const HermMatrix& basis);
HermSublattice herm_sublattice(const HermLattice& L, const std::vector<HermVector>& vectors);

/// A basis of L whose largest norm is as small as possible (rank <= 4).
/// Returns the identity basis when no better one is found.
HermSublattice herm_short_basis(const HermLattice& L, const EnumOptions& opts = {});

struct Decomposition {
  HermLattice section;
  HermLattice projection;
  /// Completion of the sublattice basis to a basis of L (columns), the first
  /// r columns spanning the section.
  HermMatrix basis;
};

/// Splits L along the saturated sublattice spanned by the columns of basis.
/// Throws ValidationError naming a vector of (K*S cap L) \ S otherwise.
Decomposition orthogonal_decompose(const HermLattice& L, const HermMatrix& basis);

/// U (columns in M coordinates) with U^t G_M conj(U) = G_L.
std::optional<HermMatrix> herm_isometry(const HermLattice& L, const HermLattice& M);

struct DrOptions {
  /// 0 skips witness searches beyond r = 1, 2; higher values widen the r >= 3 beam.
  int effort = 1;
  unsigned threads = 1;
  /// Number of first minimal vectors tried as v1 in witness scans.
  std::size_t witness_roots = 16;
  /// r >= 3 witnesses are drawn from vectors of norm <= norm_factor*min.
  Rational norm_factor = 2;
  /// For d = 7 and r = 3, also use the classified densest ternary lattice:
  /// d_3 >= min^3/8.
  bool use_densest_ternary = true;
};

struct DrResult {
  std::size_t r = 0;
  bool certified = false;
  /// Proven lower bound (equal to best when certified).
  RootValue lower;
  /// Smallest discriminant of a sublattice found.
  std::optional<Rational> best;
  std::optional<HermSublattice> witness;
  std::string method;
  std::vector<std::string> notes;
};

DrResult d_r(const HermLattice& L, std::size_t r, const DrOptions& opts = {});

/// Lower bound for d_r from gamma_h <= (sqrt|d_K|/2) * gamma_{2r}, r <= 4.
RootValue hermite_dr_bound(const QuadField& field, const Rational& min, std::size_t r);

/// r * (a*b)^(1/r).
RootValue tensor_rank_bound(const RootValue& dr_l, const RootValue& dr_m, std::size_t r);

}  // namespace hermlat
