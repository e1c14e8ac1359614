#include "hermlat/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hermlat/error.hpp"

namespace hermlat {

FieldElement::FieldElement(Rational re, Rational im, std::int64_t d) : re_(std::move(re)), im_(std::move(im)), d_(d) {
  re_.canonicalize();
  im_.canonicalize();
  if (d_ < 0) throw ValidationError("field parameter d must be positive");
  if (d_ == 0 && im_ != 0) throw ValidationError("irrational element without a field");
}

std::int64_t FieldElement::common_d(const FieldElement& o) const {
  if (d_ == o.d_ || o.d_ == 0) return d_;
  if (d_ == 0) return o.d_;
  throw ValidationError("arithmetic between elements of Q(sqrt(-" + std::to_string(d_) + ")) and Q(sqrt(-" +
                        std::to_string(o.d_) + "))");
}

Rational FieldElement::norm() const { return re_ * re_ + d_ * im_ * im_; }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  d_ = common_d(o);
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  d_ = common_d(o);
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  d_ = common_d(o);
  if (im_ == 0 && o.im_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - d_ * im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  if (o.is_zero()) throw DivisionError("division by zero in " + (d_ ? "Q(sqrt(-" + std::to_string(d_) + "))" : std::string("Q")));
  d_ = common_d(o);
  if (o.im_ == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  // a / b = a * conj(b) / N(b)
  Rational re = (re_ * o.re_ + d_ * im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string FieldElement::str() const {
  std::ostringstream os;
  const std::string root = "sqrt(-" + std::to_string(d_) + ")";
  if (im_ == 0) return to_string(re_);
  if (re_ != 0) os << to_string(re_) << (im_ > 0 ? "+" : "-");
  else if (im_ < 0) os << "-";
  Rational a = abs(im_);
  if (a != 1) os << to_string(a) << "*";
  os << root;
  return os.str();
}

FieldElement QuadField::omega() const {
  if (half_integral()) return element(Rational(1, 2), Rational(1, 2));
  return sqrt_neg_d();
}

std::pair<Rational, Rational> QuadField::omega_coords(const FieldElement& x) const {
  if (half_integral()) {
    Rational t = 2 * x.im();
    return {x.re() - t / 2, t};
  }
  return {x.re(), x.im()};
}

FieldElement QuadField::from_omega_coords(const Rational& s, const Rational& t) const {
  if (half_integral()) return element(s + t / 2, t / 2);
  return element(s, t);
}

bool QuadField::is_integral(const FieldElement& x) const {
  auto [s, t] = omega_coords(x);
  return is_integer(s) && is_integer(t);
}

std::vector<FieldElement> QuadField::units() const {
  std::vector<FieldElement> u{one(), -one()};
  if (d == 1) {
    u.push_back(sqrt_neg_d());
    u.push_back(-sqrt_neg_d());
  } else if (d == 3) {
    FieldElement w = omega();  // primitive sixth root of unity
    u.push_back(w);
    u.push_back(-w);
    u.push_back(w * w);
    u.push_back(-(w * w));
  }
  std::sort(u.begin(), u.end());
  return u;
}

namespace {

bool squarefree(std::int64_t d) {
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

long double approx(const Rational& q) { return static_cast<long double>(q.get_d()); }

// Voronoi vertices of the cell of 0 in O_K for the norm form. Each vertex
// is the circumcentre of 0 and two lattice vectors which has no lattice
// point strictly closer than 0.
std::vector<FieldElement> voronoi_vertices(const QuadField& field) {
  Rational reach = 4 * Rational(field.omega_norm());
  std::vector<FieldElement> rel;
  for (auto& v : integers_near(field, field.zero(), reach)) {
    if (!v.is_zero()) rel.push_back(v);
  }
  std::vector<FieldElement> vertices;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t j = i + 1; j < rel.size(); ++j) {
      const FieldElement& u = rel[i];
      const FieldElement& v = rel[j];
      // Solve <c,u> = N(u)/2, <c,v> = N(v)/2 with <x,y> = x.re*y.re + d*x.im*y.im.
      Rational det = field.d * (u.re() * v.im() - u.im() * v.re());
      if (det == 0) continue;
      Rational bu = u.norm() / 2;
      Rational bv = v.norm() / 2;
      Rational cre = (bu * field.d * v.im() - bv * field.d * u.im()) / det;
      Rational cim = (u.re() * bv - v.re() * bu) / det;
      FieldElement c = field.element(cre, cim);
      Rational r = c.norm();
      bool vertex = true;
      for (auto& q : integers_near(field, c, r)) {
        if ((c - q).norm() < r) {
          vertex = false;
          break;
        }
      }
      if (vertex) vertices.push_back(c);
    }
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

}  // namespace

QuadField make_field(std::int64_t d) {
  if (d < 1) throw ValidationError("d must be a positive squarefree integer, got " + std::to_string(d));
  if (!squarefree(d)) throw ValidationError("d must be squarefree, got " + std::to_string(d));
  QuadField f;
  f.d = d;
  f.disc = d % 4 == 3 ? -d : -4 * d;
  Rational mu = euclidean_minimum(f).mu;
  if (mu < 1) f.euclidean_min = mu;
  return f;
}

std::vector<FieldElement> integers_near(const QuadField& field, const FieldElement& center, const Rational& bound) {
  std::vector<FieldElement> out;
  if (bound < 0) return out;
  const FieldElement w = field.omega();
  const long double radius = std::sqrt(approx(bound) / field.d);
  const long double cim = approx(center.im());
  const long double wim = approx(w.im());
  long tlo = static_cast<long>(std::floor((cim - radius) / wim)) - 1;
  long thi = static_cast<long>(std::ceil((cim + radius) / wim)) + 1;
  for (long t = tlo; t <= thi; ++t) {
    Rational dim = center.im() - t * w.im();
    Rational rest = bound - field.d * dim * dim;
    if (rest < 0) continue;
    Rational cs = center.re() - t * w.re();
    long double rr = std::sqrt(approx(rest));
    long double cc = approx(cs);
    long slo = static_cast<long>(std::floor(cc - rr)) - 1;
    long shi = static_cast<long>(std::ceil(cc + rr)) + 1;
    for (long s = slo; s <= shi; ++s) {
      Rational dre = cs - s;
      if (dre * dre <= rest) out.push_back(field.from_omega_coords(Rational(s), Rational(t)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DivisionResult euclidean_divide(const QuadField& field, const FieldElement& a, const FieldElement& b) {
  if (b.is_zero()) throw DivisionError("euclidean_divide: division by zero");
  if (!field.is_euclidean()) {
    throw UnsupportedError("Q(sqrt(-" + std::to_string(field.d) + ")) is not norm-Euclidean");
  }
  FieldElement x = a / b;
  std::optional<FieldElement> best;
  Rational best_norm;
  // integers_near returns candidates in (re, im) order, so the first
  // minimiser is the lexicographically smallest one.
  for (auto& q : integers_near(field, x, *field.euclidean_min)) {
    Rational n = (x - q).norm();
    if (!best || n < best_norm) {
      best = q;
      best_norm = n;
    }
  }
  return {*best, a - *best * b};
}

std::vector<FieldElement> elements_of_norm(const QuadField& field, const Rational& target, const FieldElement& scale) {
  if (target < 0) throw ValidationError("elements_of_norm: negative target " + to_string(target));
  if (scale.is_zero()) throw ValidationError("elements_of_norm: zero scale");
  Rational t = target / scale.norm();
  std::vector<FieldElement> out;
  for (auto& y : integers_near(field, field.zero(), t)) {
    if (y.norm() == t) out.push_back(scale * y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElement> elements_of_norm(const QuadField& field, const Rational& target) {
  return elements_of_norm(field, target, field.one());
}

DeepHoleReport euclidean_minimum(const QuadField& field) {
  DeepHoleReport report;
  auto vertices = voronoi_vertices(field);
  report.mu = 0;
  for (auto& v : vertices) report.mu = std::max(report.mu, v.norm());
  for (auto& v : vertices) {
    if (v.norm() == report.mu) report.holes.push_back(v);
  }
  const auto units = field.units();
  std::vector<bool> seen(report.holes.size(), false);
  for (std::size_t i = 0; i < report.holes.size(); ++i) {
    if (seen[i]) continue;
    std::vector<FieldElement> orbit;
    for (auto& u : units) {
      orbit.push_back(u * report.holes[i]);
      orbit.push_back(u * report.holes[i].conj());
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (auto& z : orbit) {
      auto it = std::lower_bound(report.holes.begin(), report.holes.end(), z);
      if (it == report.holes.end() || *it != z) {
        throw Error("deep hole orbit leaves the Voronoi cell: " + z.str());
      }
      seen[it - report.holes.begin()] = true;
    }
    report.orbits.push_back(std::move(orbit));
  }
  return report;
}

}  // namespace hermlat
