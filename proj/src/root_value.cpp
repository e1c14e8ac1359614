#include "hermlat/root_value.hpp"

#include <cmath>
#include <numeric>

#include "hermlat/error.hpp"

namespace hermlat {

RootValue::RootValue(Rational base, unsigned index) : base_(std::move(base)), index_(index) {
  if (index_ == 0) throw ValidationError("root of index 0");
  if (base_ < 0) throw ValidationError("root of a negative number");
  normalize();
}

void RootValue::normalize() {
  if (base_ == 0) {
    index_ = 1;
    return;
  }
  // Lower the index while the base is a perfect power of a divisor of it.
  for (unsigned p = 2; p <= index_;) {
    if (index_ % p == 0) {
      if (auto r = exact_root(base_, p)) {
        base_ = *r;
        index_ /= p;
        continue;
      }
    }
    ++p;
  }
}

std::optional<Rational> RootValue::exact() const {
  if (index_ == 1) return base_;
  return std::nullopt;
}

bool RootValue::is_integer() const { return index_ == 1 && hermlat::is_integer(base_); }

Integer RootValue::ceil() const {
  if (index_ == 1) return hermlat::ceil(base_);
  // floor of the real root from the integer root of floor(base), then adjust.
  Integer n;
  Integer fl = hermlat::floor(base_);
  mpz_root(n.get_mpz_t(), fl.get_mpz_t(), index_);
  while (compare(*this, Rational(n)) > 0) ++n;
  while (n > 0 && compare(*this, Rational(Integer(n - 1))) <= 0) --n;
  return n;
}

double RootValue::approx() const { return std::pow(base_.get_d(), 1.0 / index_); }

RootValue RootValue::scaled(const Rational& q) const {
  if (q < 0) throw ValidationError("negative scale of a root value");
  return {base_ * pow(q, index_), index_};
}

RootValue RootValue::operator*(const RootValue& o) const {
  unsigned l = std::lcm(index_, o.index_);
  return {pow(base_, l / index_) * pow(o.base_, l / o.index_), l};
}

int compare(const RootValue& a, const RootValue& b) {
  unsigned l = std::lcm(a.index_, b.index_);
  Rational x = pow(a.base_, l / a.index_);
  Rational y = pow(b.base_, l / b.index_);
  return cmp(x, y) < 0 ? -1 : cmp(x, y) > 0 ? 1 : 0;
}

std::string RootValue::str() const {
  if (index_ == 1) return to_string(base_);
  return "(" + to_string(base_) + ")^(1/" + std::to_string(index_) + ")";
}

}  // namespace hermlat
