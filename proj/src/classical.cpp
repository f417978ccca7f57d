#include "qboson/classical.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace qboson {

namespace {

double eval_poly(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> diff_poly(const std::vector<double>& coeffs) {
  std::vector<double> out;
  for (std::size_t k = 1; k < coeffs.size(); ++k) out.push_back(coeffs[k] * static_cast<double>(k));
  if (out.empty()) out.push_back(0.0);
  return out;
}

}  // namespace

ClassicalFunction ClassicalFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  ClassicalFunction f;
  f.poly_ = std::move(coeffs);
  return f;
}

ClassicalFunction ClassicalFunction::callable(std::function<double(double)> fn) {
  if (!fn) throw InputError("callable classical function needs a target");
  ClassicalFunction f;
  f.fn_ = std::move(fn);
  return f;
}

double ClassicalFunction::value(double x) const {
  return poly_ ? eval_poly(*poly_, x) : fn_(x);
}

double ClassicalFunction::derivative(double x) const {
  if (poly_) return eval_poly(diff_poly(*poly_), x);
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (fn_(x + h) - fn_(x - h)) / (2.0 * h);
}

double ClassicalFunction::second_derivative(double x) const {
  if (poly_) return eval_poly(diff_poly(diff_poly(*poly_)), x);
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (fn_(x + h) - 2.0 * fn_(x) + fn_(x - h)) / (h * h);
}

const std::vector<double>& ClassicalFunction::coefficients() const {
  if (!poly_) throw UnsupportedKindError("classical function is not a polynomial");
  return *poly_;
}

ClassicalFunction ClassicalFunction::derivative_function() const {
  if (poly_) return polynomial(diff_poly(*poly_));
  auto fn = fn_;
  return callable([fn](double x) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (fn(x + h) - fn(x - h)) / (2.0 * h);
  });
}

ClassicalFunction classical_hamiltonian(const DeformationSpec& spec) {
  if (spec.kind() != DeformationKind::series) {
    throw UnsupportedKindError("classical_hamiltonian needs a series spec");
  }
  const auto& q = spec.coeffs();
  std::vector<double> F(q.size() + 1, 0.0);
  for (std::size_t n = 0; n < q.size(); ++n) F[n + 1] = q[n] / static_cast<double>(n + 1);
  return ClassicalFunction::polynomial(std::move(F));
}

PhasePoly PhasePoly::constant(Complex c) {
  PhasePoly p;
  p.add(0, 0, c);
  return p;
}

PhasePoly PhasePoly::variable_a() {
  PhasePoly p;
  p.add(1, 0, Complex{1.0, 0.0});
  return p;
}

PhasePoly PhasePoly::variable_abar() {
  PhasePoly p;
  p.add(0, 1, Complex{1.0, 0.0});
  return p;
}

PhasePoly PhasePoly::from_h0_polynomial(const std::vector<double>& coeffs) {
  PhasePoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0.0) out.add(static_cast<int>(k), static_cast<int>(k), coeffs[k]);
  }
  return out;
}

void PhasePoly::add(int i, int j, Complex c) {
  if (i < 0 || j < 0) throw Error("negative phase-space powers");
  if (c == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

PhasePoly PhasePoly::operator+(const PhasePoly& o) const {
  PhasePoly out = *this;
  for (const auto& [ij, c] : o.terms_) out.add(ij.first, ij.second, c);
  return out;
}

PhasePoly PhasePoly::operator-(const PhasePoly& o) const {
  PhasePoly out = *this;
  for (const auto& [ij, c] : o.terms_) out.add(ij.first, ij.second, -c);
  return out;
}

PhasePoly PhasePoly::operator*(const PhasePoly& o) const {
  PhasePoly out;
  for (const auto& [ij, c] : terms_)
    for (const auto& [kl, d] : o.terms_)
      out.add(ij.first + kl.first, ij.second + kl.second, c * d);
  return out;
}

PhasePoly PhasePoly::operator*(Complex s) const {
  PhasePoly out;
  for (const auto& [ij, c] : terms_) out.add(ij.first, ij.second, c * s);
  return out;
}

PhasePoly PhasePoly::partial_a() const {
  PhasePoly out;
  for (const auto& [ij, c] : terms_) {
    if (ij.first > 0) out.add(ij.first - 1, ij.second, c * static_cast<double>(ij.first));
  }
  return out;
}

PhasePoly PhasePoly::partial_abar() const {
  PhasePoly out;
  for (const auto& [ij, c] : terms_) {
    if (ij.second > 0) out.add(ij.first, ij.second - 1, c * static_cast<double>(ij.second));
  }
  return out;
}

Complex PhasePoly::eval(double q, double p) const {
  const Complex a{q / std::sqrt(2.0), p / std::sqrt(2.0)};
  const Complex abar = std::conj(a);
  Complex acc{0.0, 0.0};
  for (const auto& [ij, c] : terms_) {
    Complex t = c;
    for (int k = 0; k < ij.first; ++k) t *= a;
    for (int k = 0; k < ij.second; ++k) t *= abar;
    acc += t;
  }
  return acc;
}

PhasePoly canonical_bracket(const PhasePoly& f, const PhasePoly& g) {
  return f.partial_a() * g.partial_abar() - f.partial_abar() * g.partial_a();
}

PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g,
                          const ClassicalFunction& weight) {
  if (!weight.is_polynomial()) {
    throw UnsupportedKindError(
        "weighted bracket needs a polynomial weight; use poisson_bracket_value");
  }
  return PhasePoly::from_h0_polynomial(weight.coefficients()) * canonical_bracket(f, g);
}

Complex poisson_bracket_value(const PhasePoly& f, const PhasePoly& g,
                              const ClassicalFunction& weight, double q, double p) {
  const double h0 = 0.5 * (q * q + p * p);
  return canonical_bracket(f, g).eval(q, p) * weight.value(h0);
}

std::string OrderCheckReport::to_json() const {
  nlohmann::ordered_json j;
  if (exact) {
    j["slope"] = "exact";
  } else if (slope) {
    j["slope"] = *slope;
  } else {
    j["slope"] = nullptr;
  }
  j["residuals"] = nlohmann::json::array();
  for (const auto& [h, r] : residuals) j["residuals"].push_back({h, r});
  return j.dump();
}

OrderCheckReport commutator_order_check(const ClassicalFunction& F, double H0,
                                        const std::vector<double>& hbars) {
  if (hbars.size() < 2) throw InputError("order check needs at least two hbar values");
  for (std::size_t i = 0; i < hbars.size(); ++i) {
    if (hbars[i] < 1e-4) throw InputError("hbar values below 1e-4 are dominated by roundoff");
    if (i > 0 && hbars[i] >= hbars[i - 1]) throw InputError("hbar values must decrease");
  }
  OrderCheckReport report;
  const double fp = F.derivative(H0);
  for (double h : hbars) {
    const double r = std::abs(F.value(H0 + 0.5 * h) - F.value(H0 - 0.5 * h) - h * fp);
    report.residuals.emplace_back(h, r);
  }
  bool all_tiny = true;
  for (const auto& [h, r] : report.residuals) all_tiny = all_tiny && r < 1e-14;
  if (all_tiny) {
    report.exact = true;
    return report;
  }
  // least-squares slope of log r against log hbar
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& [h, r] : report.residuals) {
    if (r <= 0.0) continue;
    const double x = std::log(h), y = std::log(r);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++count;
  }
  if (count < 2) {
    report.exact = true;
    return report;
  }
  report.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return report;
}

namespace {

// Gauss-Kronrod 7/15 pair on [-1, 1] (QUADPACK constants).
constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double kronrod;
  double gauss;
};

PanelResult gk15_panel(const ClassicalFunction& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kr = 0.0, gs = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kGK15Nodes[i];
    const double f_plus = f.value(mid + dx);
    const double f_minus = f.value(mid - dx);
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
      throw Error("integrand is not finite on the quantisation interval");
    }
    const double pair = (i == 7) ? f_plus : f_plus + f_minus;
    kr += kGK15Weights[i] * pair;
    if (i % 2 == 1) gs += kG7Weights[i / 2] * pair;  // Gauss nodes are the odd Kronrod ones
  }
  return {kr * half, gs * half};
}

double adaptive_gk(const ClassicalFunction& f, double a, double b, double tol, int depth) {
  const PanelResult r = gk15_panel(f, a, b);
  const double err = std::abs(r.kronrod - r.gauss);
  if (err <= tol || depth >= 40) return r.kronrod;
  const double mid = 0.5 * (a + b);
  return adaptive_gk(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_gk(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

QuantizeResult quantize_bracket(const ClassicalFunction& theta, double H0, double hbar) {
  if (!(hbar > 0.0)) throw InputError("hbar must be positive");
  QuantizeResult out;
  const double a = H0 - 0.5 * hbar;
  const double b = H0 + 0.5 * hbar;
  out.integral = adaptive_gk(theta, a, b, 1e-12, 0);
  out.expansion = hbar * theta.value(H0) + hbar * hbar * hbar / 24.0 * theta.second_derivative(H0);
  return out;
}

std::string DiscreteContinuumReport::to_json() const {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"n", r.n}, {"F_discrete", r.F_discrete},
                         {"F_continuum", r.F_continuum}, {"deviation", r.deviation}});
  }
  j["max_deviation"] = max_deviation;
  j["bound_constant"] = bound_constant;
  return j.dump();
}

DiscreteContinuumReport discrete_continuum_report(const DeformationSpec& spec, int n_max) {
  if (spec.kind() != DeformationKind::series) {
    throw UnsupportedKindError("discrete-continuum comparison needs a series spec");
  }
  if (n_max < 1 || n_max > spec.level_cap()) {
    throw InputError("n_max must lie within the level cap");
  }
  const ClassicalFunction F_cont = classical_hamiltonian(spec);
  const LadderTable table(spec);
  const ClassicalFunction f_poly = ClassicalFunction::polynomial(spec.coeffs());

  double max_fp = 0.0;
  for (int n = 0; n <= n_max; ++n) max_fp = std::max(max_fp, std::abs(f_poly.derivative(n)));

  DiscreteContinuumReport report;
  for (int n = 0; n <= n_max; ++n) {
    const double fd = table.F(n);
    const double fc = F_cont.value(static_cast<double>(n));
    const double dev = std::abs(fd - fc);
    report.rows.push_back({n, fd, fc, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
    if (n >= 1 && max_fp > 0.0) {
      report.bound_constant =
          std::max(report.bound_constant, dev / (0.5 * n * max_fp));
    }
  }
  return report;
}

}  // namespace qboson
