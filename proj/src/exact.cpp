#include "qboson/exact.hpp"

#include <cmath>
#include <utility>

namespace qboson::exact {

namespace {

bool perfect_square(const Int& v, Int& root) {
  if (v < 0) return false;
  root = boost::multiprecision::sqrt(v);
  return root * root == v;
}

}  // namespace

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("cannot convert non-finite double to rational");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral
  long long scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(scaled);
  if (exp > 0) r *= Rational(Int(1) << exp);
  if (exp < 0) r /= Rational(Int(1) << (-exp));
  return r;
}

Surd Surd::sqrt_of(Rational r) {
  if (r < 0) throw Error("sqrt of a negative rational");
  Surd s;
  s.c_ = 1;
  s.r_ = std::move(r);
  s.normalize();
  return s;
}

void Surd::normalize() {
  if (c_ == 0 || r_ == 0) {
    if (r_ == 0) c_ = 0;
    r_ = 1;
    return;
  }
  Int num = boost::multiprecision::numerator(r_);
  Int den = boost::multiprecision::denominator(r_);
  Int rn, rd;
  if (perfect_square(num, rn) && perfect_square(den, rd)) {
    c_ *= Rational(rn, rd);
    r_ = 1;
  }
}

Surd Surd::operator*(const Surd& o) const {
  Surd out;
  out.c_ = c_ * o.c_;
  out.r_ = r_ * o.r_;
  out.normalize();
  return out;
}

Surd Surd::operator+(const Surd& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (r_ == o.r_) {
    Surd out;
    out.c_ = c_ + o.c_;
    out.r_ = r_;
    out.normalize();
    return out;
  }
  // commensurable if r/o.r is the square of a rational
  Rational ratio = r_ / o.r_;
  Int rn, rd;
  if (perfect_square(boost::multiprecision::numerator(ratio), rn) &&
      perfect_square(boost::multiprecision::denominator(ratio), rd)) {
    Surd out;
    out.c_ = c_ * Rational(rn, rd) + o.c_;
    out.r_ = o.r_;
    out.normalize();
    return out;
  }
  throw Error("sum of incommensurable surds");
}

Surd Surd::operator-() const {
  Surd out = *this;
  out.c_ = -out.c_;
  return out;
}

Surd Surd::inverse() const {
  if (is_zero()) throw Error("inverse of zero surd");
  // 1/(c sqrt(r)) = (1/(c r)) sqrt(r)
  Surd out;
  out.c_ = Rational(1) / (c_ * r_);
  out.r_ = r_;
  out.normalize();
  return out;
}

bool Surd::operator==(const Surd& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if ((c_ > 0) != (o.c_ > 0)) return false;
  return c_ * c_ * r_ == o.c_ * o.c_ * o.r_;
}

double Surd::to_double() const {
  return static_cast<double>(c_) * std::sqrt(static_cast<double>(r_));
}

ExactLadder ExactLadder::from_spec(const DeformationSpec& spec) {
  if (spec.kind() != DeformationKind::series && spec.kind() != DeformationKind::table) {
    throw UnsupportedKindError("exact ladders require series or table specs");
  }
  if (spec.hbar() != 1.0) {
    throw UnsupportedKindError("exact ladders are defined at hbar = 1");
  }
  const int d = spec.level_cap();
  std::vector<Rational> f(static_cast<std::size_t>(d));
  if (spec.kind() == DeformationKind::table) {
    for (int n = 0; n < d; ++n) f[n] = rational_from_double(spec.coeffs()[n]);
  } else {
    std::vector<Rational> c;
    for (double x : spec.coeffs()) c.push_back(rational_from_double(x));
    for (int n = 0; n < d; ++n) {
      Rational acc(0);
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * n + *it;
      f[n] = acc;
    }
  }
  return from_values(f);
}

ExactLadder ExactLadder::from_values(const std::vector<Rational>& f_values) {
  ExactLadder lad;
  lad.dim = static_cast<int>(f_values.size());
  lad.F.resize(f_values.size() + 1);
  lad.Ffact.resize(f_values.size() + 1);
  lad.F[0] = 0;
  lad.Ffact[0] = 1;
  for (std::size_t n = 1; n < lad.F.size(); ++n) {
    lad.F[n] = lad.F[n - 1] + f_values[n - 1];
    lad.Ffact[n] = lad.Ffact[n - 1] * lad.F[n];
  }
  return lad;
}

int ExactLadder::first_degenerate_level() const {
  for (int j = 1; j <= dim; ++j)
    if (F[static_cast<std::size_t>(j)] <= 0) return j;
  return 0;
}

Surd c_coeff(const ExactLadder& lad, int n, int m, int i) {
  const Rational& fi = lad.Ffact[static_cast<std::size_t>(i)];
  if (fi == 0) throw DegenerateDeformationError(lad.first_degenerate_level(),
                                                "F! vanishes in C coefficient");
  return Surd::sqrt_of(lad.Ffact[static_cast<std::size_t>(n + i)] *
                       lad.Ffact[static_cast<std::size_t>(m + i)]) *
         Surd(Rational(1) / fi);
}

std::vector<Surd> d_row(const ExactLadder& lad, int n, int m, int kmax) {
  const int bad = lad.first_degenerate_level();
  if (bad != 0 && bad <= std::max(n, m) + kmax) {
    throw DegenerateDeformationError(
        bad, "degenerate deformation: F(" + std::to_string(bad) + ") <= 0");
  }
  std::vector<Surd> d(static_cast<std::size_t>(kmax) + 1);
  d[0] = c_coeff(lad, n, m, 0).inverse();
  for (int k = 1; k <= kmax; ++k) {
    Surd sum;
    for (int i = 0; i < k; ++i) {
      sum = sum + c_coeff(lad, n + i, m + i, k - i) * d[static_cast<std::size_t>(i)];
    }
    d[static_cast<std::size_t>(k)] = -(c_coeff(lad, n + k, m + k, 0).inverse() * sum);
  }
  return d;
}

std::vector<Surd> omega_roundtrip(const ExactLadder& lad, int n, int m, int Kmax) {
  const int kcap = lad.dim - 1 - std::max(n, m);
  auto d = d_row(lad, n, m, std::max(kcap, 0));
  std::vector<Surd> out(static_cast<std::size_t>(Kmax) + 1);
  for (int K = 0; K <= Kmax; ++K) {
    Surd acc;
    for (int k = 0; k <= std::min(K, kcap); ++k) {
      acc = acc + d[static_cast<std::size_t>(k)] * c_coeff(lad, n + k, m + k, K - k);
    }
    out[static_cast<std::size_t>(K)] = acc;
  }
  return out;
}

std::vector<Surd> monomial_roundtrip(const ExactLadder& lad, int n, int m, int Jmax) {
  const int icap = lad.dim - 1 - std::max(n, m);
  std::vector<Surd> out(static_cast<std::size_t>(Jmax) + 1);
  for (int j = 0; j <= Jmax; ++j) {
    Surd acc;
    for (int i = 0; i <= std::min(j, icap); ++i) {
      auto d = d_row(lad, n + i, m + i, j - i);
      acc = acc + c_coeff(lad, n, m, i) * d[static_cast<std::size_t>(j - i)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace qboson::exact
