#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qboson/deformation.hpp"
#include "qboson/errors.hpp"

namespace qboson::exact {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact dyadic rational equal to the double (finite inputs only).
Rational rational_from_double(double x);

/// coeff * sqrt(radicand) with rational coeff and nonnegative rational
/// radicand. Closed under products; sums require commensurable radicands,
/// which is all the sigma round trip ever produces.
class Surd {
 public:
  Surd() : c_(0), r_(1) {}
  explicit Surd(Rational c) : c_(std::move(c)), r_(1) {}
  static Surd sqrt_of(Rational r);

  const Rational& coeff() const { return c_; }
  const Rational& radicand() const { return r_; }
  bool is_zero() const { return c_ == 0; }

  Surd operator*(const Surd& o) const;
  Surd operator+(const Surd& o) const;
  Surd operator-() const;
  Surd inverse() const;

  /// Value equality (representation-independent).
  bool operator==(const Surd& o) const;

  double to_double() const;

 private:
  void normalize();
  Rational c_;
  Rational r_;
};

/// Ladder data in exact arithmetic; hbar = 1, rational f values.
struct ExactLadder {
  int dim = 0;
  std::vector<Rational> F;      // length dim+1
  std::vector<Rational> Ffact;  // length dim+1

  /// Series/table specs at hbar == 1 (coefficients taken as exact dyadics).
  static ExactLadder from_spec(const DeformationSpec& spec);
  static ExactLadder from_values(const std::vector<Rational>& f_values);

  /// First level j with F(j) <= 0, or 0 if none.
  int first_degenerate_level() const;
};

/// C(n,m,i) = sqrt(F!(n+i) F!(m+i)) / F!(i).
Surd c_coeff(const ExactLadder& lad, int n, int m, int i);

/// D(n,m,k) for k = 0..kmax via the triangular recursion. Throws
/// DegenerateDeformationError when F! vanishes in range.
std::vector<Surd> d_row(const ExactLadder& lad, int n, int m, int kmax);

/// Coefficients of sigma(sigma^-1(Omega_nm)) at Omega_{n+K,m+K}, K=0..Kmax,
/// with sigma^-1 truncated at max(n,m)+k <= dim-1 (the float convention).
std::vector<Surd> omega_roundtrip(const ExactLadder& lad, int n, int m, int Kmax);

/// Coefficients of sigma^-1(sigma(A+^n A^m)) at monomial (n+j, m+j), j=0..Jmax.
std::vector<Surd> monomial_roundtrip(const ExactLadder& lad, int n, int m, int Jmax);

}  // namespace qboson::exact
