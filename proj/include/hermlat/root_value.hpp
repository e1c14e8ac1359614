#pragma once

#include <string>

#include "hermlat/rational.hpp"

namespace hermlat {

/// The positive real base^(1/index) for a non-negative rational base. All
/// comparisons are exact, done by raising both sides to a common power.
class RootValue {
 public:
  RootValue() : base_(0), index_(1) {}
  RootValue(Rational base, unsigned index);
  static RootValue of(const Rational& q) { return {q, 1}; }

  const Rational& base() const { return base_; }
  unsigned index() const { return index_; }

  /// The rational value when base is a perfect index-th power.
  std::optional<Rational> exact() const;
  bool is_integer() const;
  /// Smallest integer >= the value.
  Integer ceil() const;
  double approx() const;

  /// value^(1/r).
  RootValue root(unsigned r) const { return {base_, index_ * r}; }
  /// q * value.
  RootValue scaled(const Rational& q) const;
  RootValue operator*(const RootValue& o) const;

  friend int compare(const RootValue& a, const RootValue& b);
  friend int compare(const RootValue& a, const Rational& q) { return compare(a, of(q)); }

  friend bool operator==(const RootValue& a, const RootValue& b) { return compare(a, b) == 0; }
  friend bool operator<(const RootValue& a, const RootValue& b) { return compare(a, b) < 0; }
  friend bool operator>(const RootValue& a, const RootValue& b) { return compare(a, b) > 0; }
  friend bool operator<=(const RootValue& a, const RootValue& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const RootValue& a, const RootValue& b) { return compare(a, b) >= 0; }

  /// "p/q" when exact, else "(p/q)^(1/k)".
  std::string str() const;

 private:
  void normalize();

  Rational base_;
  unsigned index_;
};

}  // namespace hermlat
