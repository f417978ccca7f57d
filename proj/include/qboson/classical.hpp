#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qboson/deformation.hpp"
#include "qboson/eigenstate.hpp"

namespace qboson {

/// Real function of one variable: a polynomial (exact derivatives) or a
/// callable (central differences at relative step 1e-5).
class ClassicalFunction {
 public:
  static ClassicalFunction polynomial(std::vector<double> coeffs);  // ascending powers
  static ClassicalFunction callable(std::function<double(double)> fn);

  double value(double x) const;
  double operator()(double x) const { return value(x); }
  double derivative(double x) const;
  double second_derivative(double x) const;

  bool is_polynomial() const { return poly_.has_value(); }
  const std::vector<double>& coefficients() const;
  ClassicalFunction derivative_function() const;

 private:
  ClassicalFunction() = default;
  std::optional<std::vector<double>> poly_;
  std::function<double(double)> fn_;
};

/// Classical Hamiltonian of a series deformation: F(x) = int_0^x f(s) ds.
ClassicalFunction classical_hamiltonian(const DeformationSpec& spec);

/// Complex polynomial in the phase-space pair (a, abar), a = (q+ip)/sqrt(2).
class PhasePoly {
 public:
  using TermMap = std::map<std::pair<int, int>, Complex>;  // (a power, abar power)

  PhasePoly() = default;
  static PhasePoly constant(Complex c);
  static PhasePoly variable_a();
  static PhasePoly variable_abar();
  static PhasePoly h0() { return variable_a() * variable_abar(); }
  /// p(H0) as a phase-space polynomial, H0 = a abar.
  static PhasePoly from_h0_polynomial(const std::vector<double>& coeffs);

  const TermMap& terms() const { return terms_; }
  void add(int i, int j, Complex c);
  bool is_zero() const { return terms_.empty(); }

  PhasePoly operator+(const PhasePoly& o) const;
  PhasePoly operator-(const PhasePoly& o) const;
  PhasePoly operator*(const PhasePoly& o) const;
  PhasePoly operator*(Complex s) const;
  bool operator==(const PhasePoly& o) const { return terms_ == o.terms_; }

  PhasePoly partial_a() const;
  PhasePoly partial_abar() const;

  Complex eval(double q, double p) const;

 private:
  TermMap terms_;
};

/// {f,g} = df/da dg/dabar - df/dabar dg/da; the constant rescaling of the
/// (q,p) bracket with {a, abar} = 1.
PhasePoly canonical_bracket(const PhasePoly& f, const PhasePoly& g);

/// {f,g}_weighted = weight(H0) {f,g}; exact for polynomial weights.
PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g,
                          const ClassicalFunction& weight);

/// Pointwise value of the weighted bracket; works for callable weights too.
Complex poisson_bracket_value(const PhasePoly& f, const PhasePoly& g,
                              const ClassicalFunction& weight, double q, double p);

struct OrderCheckReport {
  std::vector<std::pair<double, double>> residuals;  // (hbar, r)
  std::optional<double> slope;  // log-log regression, absent when exact
  bool exact = false;

  std::string to_json() const;
};

/// r(hbar) = |F(H0+hbar/2) - F(H0-hbar/2) - hbar F'(H0)|; slope of the
/// log-log fit (= 3 for smooth non-quadratic F), or "exact" when every
/// residual sits below 1e-14.
OrderCheckReport commutator_order_check(const ClassicalFunction& F, double H0,
                                        const std::vector<double>& hbars);

struct QuantizeResult {
  double integral = 0.0;   // adaptive Gauss-Kronrod over [H0-hbar/2, H0+hbar/2]
  double expansion = 0.0;  // hbar Theta(H0) + hbar^3/24 Theta''(H0)
};

QuantizeResult quantize_bracket(const ClassicalFunction& theta, double H0, double hbar);

struct DiscreteContinuumReport {
  struct Row {
    int n;
    double F_discrete;
    double F_continuum;
    double deviation;
  };
  std::vector<Row> rows;
  double max_deviation = 0.0;
  double bound_constant = 0.0;  // max_n dev(n) / (n max|f'| / 2)

  std::string to_json() const;
};

/// Compares the ladder sum F(n) with the antiderivative at integer arguments.
DiscreteContinuumReport discrete_continuum_report(const DeformationSpec& spec, int n_max);

}  // namespace qboson
