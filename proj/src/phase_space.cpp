#include "qboson/phase_space.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qboson {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Complex pairwise_sum(const Complex* data, std::size_t count) {
  if (count <= 8) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

double trapezoid_weight(int i, int points, double spacing) {
  return (i == 0 || i == points - 1) ? 0.5 * spacing : spacing;
}

void check_same_grid(const WignerField& x, const WignerField& y) {
  if (!(x.grid() == y.grid()) || x.hbar() != y.hbar()) {
    throw IncompatibleError("fields live on different grids or hbar");
  }
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

void PhaseGrid::validate() const {
  if (points < 2) throw InputError("grid needs at least 2 points per axis");
  if (!(half_width > 0.0)) throw InputError("grid half-width must be positive");
}

WignerField::WignerField(PhaseGrid grid, double hbar) : grid_(grid), hbar_(hbar) {
  grid_.validate();
  if (!(hbar > 0.0)) throw InputError("hbar must be positive");
  samples_ = Eigen::MatrixXcd::Zero(grid_.points, grid_.points);
}

WignerField eval_omega(int n, int m, const PhaseGrid& grid, double hbar) {
  if (n < 0 || m < 0) throw InputError("eval_omega needs nonnegative levels");
  if (n > m) {
    WignerField swapped = eval_omega(m, n, grid, hbar);
    WignerField out(grid, hbar);
    for (int iq = 0; iq < grid.points; ++iq)
      for (int ip = 0; ip < grid.points; ++ip)
        out.sample(iq, ip) = std::conj(swapped.sample(iq, ip));
    return out;
  }
  WignerField out(grid, hbar);
  const int k = m - n;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
  const double zscale = std::sqrt(2.0 / hbar);
  for (int iq = 0; iq < grid.points; ++iq) {
    const double q = grid.axis(iq);
    for (int ip = 0; ip < grid.points; ++ip) {
      const double p = grid.axis(ip);
      const double u = (q * q + p * p) / hbar;
      Complex zpow{1.0, 0.0};
      const Complex z{q * zscale, p * zscale};
      for (int j = 0; j < k; ++j) zpow *= z;
      const double lag = std::assoc_laguerre(static_cast<unsigned>(n),
                                             static_cast<unsigned>(k), 2.0 * u);
      out.sample(iq, ip) = 2.0 * sign * ratio * zpow * lag * std::exp(-u);
    }
  }
  return out;
}

Complex quadrature_ip(const WignerField& x, const WignerField& y) {
  check_same_grid(x, y);
  const PhaseGrid& g = x.grid();
  const double h = g.spacing();
  std::vector<Complex> cells;
  cells.reserve(static_cast<std::size_t>(g.points) * g.points);
  for (int iq = 0; iq < g.points; ++iq) {
    const double wq = trapezoid_weight(iq, g.points, h);
    for (int ip = 0; ip < g.points; ++ip) {
      const double wp = trapezoid_weight(ip, g.points, h);
      cells.push_back(wq * wp * std::conj(x.sample(iq, ip)) * y.sample(iq, ip));
    }
  }
  return pairwise_sum(cells.data(), cells.size()) / (2.0 * kPi * x.hbar());
}

Complex quadrature_integral(const WignerField& x) {
  const PhaseGrid& g = x.grid();
  const double h = g.spacing();
  std::vector<Complex> cells;
  cells.reserve(static_cast<std::size_t>(g.points) * g.points);
  for (int iq = 0; iq < g.points; ++iq) {
    const double wq = trapezoid_weight(iq, g.points, h);
    for (int ip = 0; ip < g.points; ++ip) {
      const double wp = trapezoid_weight(ip, g.points, h);
      cells.push_back(wq * wp * x.sample(iq, ip));
    }
  }
  return pairwise_sum(cells.data(), cells.size()) / (2.0 * kPi * x.hbar());
}

void write_field_csv(std::ostream& os, const WignerField& field) {
  const PhaseGrid& g = field.grid();
  os << "q,p,re,im\n";
  for (int iq = 0; iq < g.points; ++iq) {
    for (int ip = 0; ip < g.points; ++ip) {
      const Complex v = field.sample(iq, ip);
      os << fmt17(g.axis(iq)) << ',' << fmt17(g.axis(ip)) << ',' << fmt17(v.real())
         << ',' << fmt17(v.imag()) << '\n';
    }
  }
}

DensitySpec::DensitySpec(Eigen::MatrixXcd c, LadderTableRef table)
    : c_(std::move(c)), table_(std::move(table)) {
  if (c_.rows() != c_.cols() || c_.rows() != table_->dim()) {
    throw IncompatibleError("density coefficients must be dim x dim for the table");
  }
  const double scale = std::max(1.0, c_.cwiseAbs().maxCoeff());
  if ((c_ - c_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("density coefficients must be Hermitian");
  }
  const Complex tr = c_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > 1e-9) {
    throw InputError("density coefficients must have unit trace");
  }
}

DensitySpec DensitySpec::from_state(const EigenElement& omega) {
  const EigenElement rho = star(omega, conjugate(omega));
  Eigen::MatrixXcd c = pi_matrix(rho);
  const double tr = c.trace().real();
  if (!(tr > 0.0)) throw InputError("state has zero norm");
  c /= tr;
  return DensitySpec(std::move(c), omega.table());
}

double omega_frequency(const LadderTable& table, int n, int m) {
  const double sn = table.F(n + 1) + table.F(n);
  const double sm = table.F(m + 1) + table.F(m);
  return 0.5 * (sm - sn);
}

DensitySpec evolve_density(const DensitySpec& rho0, double t) {
  const LadderTable& tab = *rho0.table();
  const int d = rho0.dim();
  std::vector<double> s(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) s[static_cast<std::size_t>(n)] = tab.F(n + 1) + tab.F(n);
  Eigen::MatrixXcd c = rho0.coefficients();
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      if (n == m) continue;  // omega_nn = 0: diagonal exactly constant
      const double w = 0.5 * (s[static_cast<std::size_t>(m)] - s[static_cast<std::size_t>(n)]);
      c(n, m) *= std::polar(1.0, t * w);
    }
  }
  return DensitySpec(std::move(c), rho0.table());
}

Complex expectation(const EigenElement& obs, const DensitySpec& rho) {
  if (obs.dim() != rho.dim() || !obs.table()->compatible_with(*rho.table())) {
    throw IncompatibleError("observable and density use different tables");
  }
  Complex acc{0.0, 0.0};
  for (const auto& [nm, v] : obs.terms()) acc += v * rho.coefficients()(nm.second, nm.first);
  return acc;
}

Complex expectation_quadrature(const EigenElement& obs, const DensitySpec& rho,
                               const PhaseGrid& grid) {
  if (obs.dim() != rho.dim() || !obs.table()->compatible_with(*rho.table())) {
    throw IncompatibleError("observable and density use different tables");
  }
  const double hbar = rho.table()->hbar();
  WignerField obs_field(grid, hbar);
  for (const auto& [nm, v] : obs.terms()) {
    const WignerField w = eval_omega(nm.first, nm.second, grid, hbar);
    for (int iq = 0; iq < grid.points; ++iq)
      for (int ip = 0; ip < grid.points; ++ip)
        obs_field.sample(iq, ip) += v * w.sample(iq, ip);
  }
  WignerField rho_field(grid, hbar);
  const Eigen::MatrixXcd& c = rho.coefficients();
  for (int n = 0; n < rho.dim(); ++n) {
    for (int m = 0; m < rho.dim(); ++m) {
      if (c(n, m) == Complex{0.0, 0.0}) continue;
      const WignerField w = eval_omega(n, m, grid, hbar);
      for (int iq = 0; iq < grid.points; ++iq)
        for (int ip = 0; ip < grid.points; ++ip)
          rho_field.sample(iq, ip) += c(n, m) * w.sample(iq, ip);
    }
  }
  // integral of the plain product (no conjugate): conjugate the first factor
  // back so quadrature_ip's conj cancels
  WignerField conj_obs(grid, hbar);
  for (int iq = 0; iq < grid.points; ++iq)
    for (int ip = 0; ip < grid.points; ++ip)
      conj_obs.sample(iq, ip) = std::conj(obs_field.sample(iq, ip));
  return quadrature_ip(conj_obs, rho_field);
}

namespace {

std::vector<double> trace_times(double t0, double t1, int steps) {
  if (steps < 1) throw InputError("evolution needs at least one step");
  std::vector<double> ts(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) ts[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / steps;
  return ts;
}

}  // namespace

void write_coefficient_trace_csv(std::ostream& os, const DensitySpec& rho0, double t0,
                                 double t1, int steps) {
  os << "t,n,m,re,im\n";
  for (double t : trace_times(t0, t1, steps)) {
    const DensitySpec rho = evolve_density(rho0, t);
    const Eigen::MatrixXcd& c0 = rho0.coefficients();
    for (int n = 0; n < rho.dim(); ++n) {
      for (int m = 0; m < rho.dim(); ++m) {
        if (c0(n, m) == Complex{0.0, 0.0}) continue;
        const Complex v = rho.coefficients()(n, m);
        os << fmt17(t) << ',' << n << ',' << m << ',' << fmt17(v.real()) << ','
           << fmt17(v.imag()) << '\n';
      }
    }
  }
}

void write_observable_trace_csv(std::ostream& os, const DensitySpec& rho0, double t0,
                                double t1, int steps) {
  const LadderTableRef& table = rho0.table();
  const EigenElement n_op = generator(Generator::n, table);
  const EigenElement h_op = generator(Generator::h, table);
  os << "t,observable,value\n";
  for (double t : trace_times(t0, t1, steps)) {
    const DensitySpec rho = evolve_density(rho0, t);
    const double trace = rho.coefficients().trace().real();
    const double n_val = expectation(n_op, rho).real();
    const double h_val = expectation(h_op, rho).real();
    const double norm2 = rho.coefficients().cwiseAbs2().sum();
    os << fmt17(t) << ",trace," << fmt17(trace) << '\n';
    os << fmt17(t) << ",N," << fmt17(n_val) << '\n';
    os << fmt17(t) << ",H," << fmt17(h_val) << '\n';
    os << fmt17(t) << ",norm2," << fmt17(norm2) << '\n';
  }
}

}  // namespace qboson
