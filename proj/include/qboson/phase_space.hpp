#pragma once

#include <cmath>
#include <iosfwd>
#include <vector>

#include "qboson/eigenstate.hpp"

namespace qboson {

/// Uniform symmetric grid on [-L, L]^2.
struct PhaseGrid {
  double half_width = 8.0;
  int points = 512;

  double spacing() const { return 2.0 * half_width / (points - 1); }
  double axis(int i) const { return -half_width + i * spacing(); }
  void validate() const;
  bool operator==(const PhaseGrid&) const = default;

  static PhaseGrid defaults_for(double hbar, int points = 512) {
    return PhaseGrid{8.0 * std::sqrt(hbar), points};
  }
};

/// Complex samples of a phase-space function; samples(iq, ip).
class WignerField {
 public:
  WignerField(PhaseGrid grid, double hbar);

  const PhaseGrid& grid() const { return grid_; }
  double hbar() const { return hbar_; }
  Complex sample(int iq, int ip) const { return samples_(iq, ip); }
  Complex& sample(int iq, int ip) { return samples_(iq, ip); }
  const Eigen::MatrixXcd& samples() const { return samples_; }

 private:
  PhaseGrid grid_;
  double hbar_;
  Eigen::MatrixXcd samples_;
};

/// Left-right oscillator eigenfunction Omega_nm on the grid. Closed form:
/// for m >= n, with u = (q^2+p^2)/hbar and z = (q+ip) sqrt(2/hbar),
///   Omega_nm = 2 (-1)^n sqrt(n!/m!) z^{m-n} L_n^{m-n}(2u) e^{-u},
/// and Omega_nm = conj(Omega_mn) for n > m. Anchored by
/// Omega_00 = 2 exp(-(q^2+p^2)/hbar).
WignerField eval_omega(int n, int m, const PhaseGrid& grid, double hbar);

/// (2 pi hbar)^-1 \iint conj(x) y dq dp by trapezoidal quadrature
/// (row-major pairwise summation; deterministic).
Complex quadrature_ip(const WignerField& x, const WignerField& y);

/// (2 pi hbar)^-1 \iint x dq dp.
Complex quadrature_integral(const WignerField& x);

/// CSV rows "q,p,re,im" (row-major in q, 17 significant digits).
void write_field_csv(std::ostream& os, const WignerField& field);

/// Density rho = sum c_nm Omega_nm with Hermitian, unit-trace coefficients.
class DensitySpec {
 public:
  DensitySpec(Eigen::MatrixXcd c, LadderTableRef table);

  /// omega * conj(omega), normalised to unit trace (positive semidefinite).
  static DensitySpec from_state(const EigenElement& omega);

  int dim() const { return static_cast<int>(c_.rows()); }
  const Eigen::MatrixXcd& coefficients() const { return c_; }
  const LadderTableRef& table() const { return table_; }

 private:
  Eigen::MatrixXcd c_;
  LadderTableRef table_;
};

/// omega_nm = (F(m+1)+F(m)-F(n+1)-F(n))/2: the evolution phase of c_nm.
double omega_frequency(const LadderTable& table, int n, int m);

/// c_nm(t) = c_nm(0) exp(i t omega_nm); diagonal (and hence every trace
/// pairing with a diagonal observable) is exactly constant.
DensitySpec evolve_density(const DensitySpec& rho0, double t);

/// <O> = sum_nm O_mn c_nm (trace pairing; equals the phase-space integral).
Complex expectation(const EigenElement& obs, const DensitySpec& rho);

/// Quadrature cross-check of expectation(); practical for dim <= 6.
Complex expectation_quadrature(const EigenElement& obs, const DensitySpec& rho,
                               const PhaseGrid& grid);

/// CSV rows "t,n,m,re,im" over steps+1 sample times in [t0, t1].
void write_coefficient_trace_csv(std::ostream& os, const DensitySpec& rho0, double t0,
                                 double t1, int steps);

/// CSV rows "t,observable,value" with observables trace, N, H, norm2.
void write_observable_trace_csv(std::ostream& os, const DensitySpec& rho0, double t0,
                                double t1, int steps);

}  // namespace qboson
