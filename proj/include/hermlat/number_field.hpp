#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hermlat/rational.hpp"

namespace hermlat {

/// An element re + im*sqrt(-d) of K = Q(sqrt(-d)), stored on the Q-basis
/// (1, sqrt(-d)).
///
/// A default-constructed element is the rational 0 and is not yet tied to a
/// field (d() == 0). Rational elements adopt the field of the other operand
/// in mixed arithmetic; combining elements of two different fields throws.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Rational re, Rational im, std::int64_t d);

  static FieldElement rational(Rational q, std::int64_t d) { return {std::move(q), Rational(0), d}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  std::int64_t d() const { return d_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_rational() const { return im_ == 0; }

  FieldElement conj() const { return {re_, -im_, d_}; }
  /// re^2 + d*im^2.
  Rational norm() const;
  /// 2*re.
  Rational trace() const { return 2 * re_; }

  FieldElement operator-() const { return {-re_, -im_, d_}; }
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  /// Value equality; the field tag is ignored for rational values.
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.re_ == b.re_ && a.im_ == b.im_ && (a.im_ == 0 || a.d_ == b.d_);
  }
  /// Canonical order: lexicographic on (re, im).
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

  /// "re", "im*sqrt(-d)" or "re+im*sqrt(-d)" with exact rationals.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.str(); }

 private:
  std::int64_t common_d(const FieldElement& o) const;

  Rational re_;
  Rational im_;
  std::int64_t d_ = 0;
};

inline Rational norm(const FieldElement& x) { return x.norm(); }
inline Rational trace(const FieldElement& x) { return x.trace(); }
inline FieldElement conj(const FieldElement& x) { return x.conj(); }

/// Descriptor of K = Q(sqrt(-d)) and its ring of integers O_K.
struct QuadField {
  std::int64_t d = 0;
  /// Field discriminant: -d if d = 3 mod 4, else -4d.
  std::int64_t disc = 0;
  /// Euclidean minimum mu(O_K); set exactly for the norm-Euclidean fields.
  std::optional<Rational> euclidean_min;

  bool is_euclidean() const { return euclidean_min.has_value(); }
  /// True when O_K = Z[(1+sqrt(-d))/2].
  bool half_integral() const { return d % 4 == 3; }

  FieldElement zero() const { return {Rational(0), Rational(0), d}; }
  FieldElement one() const { return {Rational(1), Rational(0), d}; }
  FieldElement element(Rational re, Rational im) const { return {std::move(re), std::move(im), d}; }
  FieldElement from_int(long n) const { return {Rational(n), Rational(0), d}; }
  /// sqrt(-d).
  FieldElement sqrt_neg_d() const { return {Rational(0), Rational(1), d}; }
  /// Integral generator: (1+sqrt(-d))/2 when d = 3 mod 4, sqrt(-d) otherwise.
  FieldElement omega() const;
  /// Tr(omega) and N(omega); omega^2 = t*omega - n.
  long omega_trace() const { return half_integral() ? 1 : 0; }
  long omega_norm() const { return half_integral() ? (d + 1) / 4 : d; }

  /// Coordinates (s, t) with x = s + t*omega.
  std::pair<Rational, Rational> omega_coords(const FieldElement& x) const;
  FieldElement from_omega_coords(const Rational& s, const Rational& t) const;
  /// x in O_K.
  bool is_integral(const FieldElement& x) const;
  /// The unit group of O_K (+-1, plus i or the sixth roots for d = 1, 3).
  std::vector<FieldElement> units() const;

  friend bool operator==(const QuadField& a, const QuadField& b) { return a.d == b.d; }
};

/// Validates d (positive, squarefree) and fills the descriptor, including
/// the Euclidean minimum when it is < 1.
QuadField make_field(std::int64_t d);

struct DivisionResult {
  FieldElement quotient;
  FieldElement remainder;
};

/// a = q*b + r with q in O_K minimising N(a/b - q); ties are broken by the
/// smallest (re, im) of q. Requires a norm-Euclidean field.
DivisionResult euclidean_divide(const QuadField& field, const FieldElement& a, const FieldElement& b);

/// All q in O_K with N(center - q) <= bound, in canonical order.
std::vector<FieldElement> integers_near(const QuadField& field, const FieldElement& center, const Rational& bound);

/// All x in scale*O_K with N(x) = target, in canonical order. An empty result
/// certifies that target is not a norm from scale*O_K.
std::vector<FieldElement> elements_of_norm(const QuadField& field, const Rational& target,
                                           const FieldElement& scale);
std::vector<FieldElement> elements_of_norm(const QuadField& field, const Rational& target);

struct DeepHoleReport {
  Rational mu;
  /// Vertices of the Voronoi cell of 0 attaining mu.
  std::vector<FieldElement> holes;
  /// Orbits of the holes under unit multiplication and conjugation.
  std::vector<std::vector<FieldElement>> orbits;
};

/// Euclidean minimum as the covering radius of O_K for the norm form,
/// computed exactly from the Voronoi cell of the rank-2 lattice O_K.
DeepHoleReport euclidean_minimum(const QuadField& field);

}  // namespace hermlat
