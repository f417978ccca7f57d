#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qboson/errors.hpp"

namespace qboson {

enum class DeformationKind { standard, q_symmetric, qp, series, table };

std::string to_string(DeformationKind kind);

/// Deformation of the boson commutator [A,A+] = f(N), given either as a
/// preset, a polynomial in N (series) or an explicit value table.
class DeformationSpec {
 public:
  static DeformationSpec standard(double hbar = 1.0, int level_cap = kDefaultLevelCap);
  static DeformationSpec q_symmetric(double q, double hbar = 1.0,
                                     int level_cap = kDefaultLevelCap);
  static DeformationSpec qp(double q, double p, double hbar = 1.0,
                            int level_cap = kDefaultLevelCap);
  static DeformationSpec series(std::vector<double> coeffs, double hbar = 1.0,
                                int level_cap = kDefaultLevelCap);
  static DeformationSpec table(std::vector<double> values, double hbar = 1.0);

  DeformationKind kind() const { return kind_; }
  double hbar() const { return hbar_; }
  int level_cap() const { return level_cap_; }
  double q() const { return q_; }
  double p() const { return p_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// f(n); requires n < level_cap (table: n < values.size()).
  double eval_f(int n) const;

  /// Cumulative ladder F(n) = sum_{i=1..n} f(i-1) from the closed form where
  /// one exists, else by summation. Requires n <= level_cap.
  double closed_F(int n) const;

  /// q_n -> q_n hbar^n on the series coefficients.
  DeformationSpec scale_coefficients() const;

  /// Same deformation with a different cap (table kinds truncate; growing a
  /// table beyond its values is rejected).
  DeformationSpec with_level_cap(int level_cap) const;

  bool operator==(const DeformationSpec& other) const = default;

  std::string to_json() const;
  static DeformationSpec from_json(const std::string& text);

  static constexpr int kDefaultLevelCap = 32;

 private:
  DeformationSpec() = default;

  DeformationKind kind_ = DeformationKind::standard;
  double hbar_ = 1.0;
  int level_cap_ = kDefaultLevelCap;
  double q_ = 0.0;
  double p_ = 0.0;
  std::vector<double> coeffs_;  // series coefficients or table values
};

/// Cached ladder data for one deformation: F, F! and the spectrum E up to a
/// level cap D. Immutable after construction.
class LadderTable {
 public:
  explicit LadderTable(const DeformationSpec& spec);

  const DeformationSpec& spec() const { return spec_; }
  int dim() const { return dim_; }
  double hbar() const { return spec_.hbar(); }

  double F(int n) const;           // 0 <= n <= dim
  double F_factorial(int n) const; // 0 <= n <= dim
  double energy(int n) const;      // 0 <= n < dim; (F(n+1)+F(n))/2
  double f(int n) const;           // 0 <= n < dim; spec.eval_f(n)

  bool is_standard() const { return spec_.kind() == DeformationKind::standard; }

  /// First level j <= dim with F(j) <= 0 or non-finite (j >= 1), or 0 if none.
  int first_degenerate_level() const;

  bool compatible_with(const LadderTable& other) const;

 private:
  DeformationSpec spec_;
  int dim_;
  std::vector<double> F_;       // length dim+1
  std::vector<double> F_fact_;  // length dim+1
  std::vector<double> E_;       // length dim
};

using LadderTableRef = std::shared_ptr<const LadderTable>;

LadderTableRef build_ladder_table(const DeformationSpec& spec);

}  // namespace qboson
