#include "hermlat/rational.hpp"

#include <limits>

#include "hermlat/error.hpp"

namespace hermlat {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer_text(num) || (slash != std::string_view::npos && !valid_integer_text(den))) {
    throw ValidationError("not a rational number: '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  Rational q;
  q.get_num() = Integer(n, 10);
  if (slash == std::string_view::npos) {
    q.get_den() = 1;
  } else {
    std::string d(den[0] == '+' ? den.substr(1) : den);
    q.get_den() = Integer(d, 10);
    if (q.get_den() == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

Rational ratio(const Integer& n, const Integer& d) {
  if (d == 0) throw ValidationError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational pow(const Rational& q, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_root(const Rational& q, unsigned k) {
  if (k == 0) throw ValidationError("zeroth root");
  if (k == 1) return q;
  if (q < 0 && k % 2 == 0) return std::nullopt;
  Integer num = q.get_num();
  bool negative = num < 0;
  if (negative) num = -num;
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), k)) return std::nullopt;
  Rational r(negative ? Integer(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

bool fits_int64(const Integer& z) {
  return mpz_cmp_si(z.get_mpz_t(), std::numeric_limits<long>::min()) >= 0 &&
         mpz_cmp_si(z.get_mpz_t(), std::numeric_limits<long>::max()) <= 0;
}

std::int64_t to_int64(const Integer& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (!fits_int64(z)) throw ValidationError("integer out of 64-bit range: " + to_string(z));
  return z.get_si();
}

}  // namespace hermlat
