#include "qboson/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "qboson/aso.hpp"
#include "qboson/eigenstate.hpp"
#include "qboson/equivalence.hpp"
#include "qboson/exact.hpp"
#include "qboson/hopf.hpp"

namespace qboson::verify {

namespace {

EigenElement random_sparse(LadderTableRef table, std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, table->dim() - 1);
  std::uniform_int_distribution<int> amp(-4, 4);
  EigenElement x(table);
  const int entries = 2 * table->dim();
  for (int k = 0; k < entries; ++k) {
    x.add(idx(rng), idx(rng), Complex{static_cast<double>(amp(rng)),
                                      static_cast<double>(amp(rng))});
  }
  return x;
}

double max_abs(const EigenElement& x) {
  double m = 0.0;
  for (const auto& [nm, v] : x.terms()) m = std::max(m, std::abs(v));
  return m;
}

CheckResult check_star_associativity(const LadderTableRef& table) {
  CheckResult r{"star_associativity", true, 0.0,
                "(x*y)*z == x*(y*z) bit-exactly on integer-coefficient sparse triples"};
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 24; ++trial) {
    const EigenElement x = random_sparse(table, rng);
    const EigenElement y = random_sparse(table, rng);
    const EigenElement z = random_sparse(table, rng);
    const EigenElement lhs = star(star(x, y), z);
    const EigenElement rhs = star(x, star(y, z));
    EigenElement diff = lhs;
    diff -= rhs;
    r.max_deviation = std::max(r.max_deviation, max_abs(diff));
  }
  r.pass = r.max_deviation == 0.0;
  return r;
}

CheckResult check_commutator(const LadderTableRef& table) {
  CheckResult r{"commutator_identity", true, 0.0,
                "pi([A,A+]) == diag f on interior indices, deviation scaled by max(1,|f(n)|)"};
  const OperatorMatrix a = pi_matrix(generator(Generator::a, table));
  const OperatorMatrix ap = pi_matrix(generator(Generator::a_plus, table));
  const OperatorMatrix comm = a * ap - ap * a;
  const int d = table->dim();
  for (int i = 0; i + 1 < d; ++i) {
    for (int j = 0; j + 1 < d; ++j) {
      const double expected = (i == j) ? table->f(i) : 0.0;
      const double dev = std::abs(comm(i, j) - Complex{expected, 0.0});
      r.max_deviation = std::max(r.max_deviation, dev / std::max(1.0, std::abs(expected)));
    }
  }
  r.pass = r.max_deviation < 1e-12;
  return r;
}

// sigma round trip with the deviation scaled by the cancellation magnitude
// (sum of |terms|); float precision cannot do better for fast-growing F!.
CheckResult check_sigma_roundtrip_float(const LadderTableRef& table) {
  CheckResult r{"sigma_roundtrip", true, 0.0,
                "sigma o sigma^-1 and sigma^-1 o sigma on the guaranteed window, "
                "deviation scaled by the cancellation size"};
  const int d = table->dim();
  const int window = d / 2;
  try {
    const int bad = table->first_degenerate_level();
    if (bad != 0) {
      throw DegenerateDeformationError(
          bad, "sigma-inverse check: degenerate deformation at level " + std::to_string(bad));
    }
    const SigmaCoeffs coeffs(table);
    for (int n = 0; n <= window; ++n) {
      for (int m = 0; m <= window; ++m) {
        const int kcap = d - 1 - std::max(n, m);
        const int inspect = std::min(window - std::max(n, m), kcap);
        const auto drow = coeffs.d_row(n, m, kcap);
        for (int K = 0; K <= inspect; ++K) {
          double signed_sum = 0.0, abs_sum = 0.0;
          for (int k = 0; k <= K; ++k) {
            const double t = drow[static_cast<std::size_t>(k)] * coeffs.c(n + k, m + k, K - k);
            signed_sum += t;
            abs_sum += std::abs(t);
          }
          const double dev = std::abs(signed_sum - (K == 0 ? 1.0 : 0.0));
          r.max_deviation = std::max(r.max_deviation, dev / std::max(1.0, abs_sum));
        }
        for (int j = 0; j <= inspect; ++j) {
          double signed_sum = 0.0, abs_sum = 0.0;
          for (int i = 0; i <= j; ++i) {
            const auto row = coeffs.d_row(n + i, m + i, j - i);
            const double t = coeffs.c(n, m, i) * row[static_cast<std::size_t>(j - i)];
            signed_sum += t;
            abs_sum += std::abs(t);
          }
          const double dev = std::abs(signed_sum - (j == 0 ? 1.0 : 0.0));
          r.max_deviation = std::max(r.max_deviation, dev / std::max(1.0, abs_sum));
        }
      }
    }
    r.pass = r.max_deviation < 1e-12;
  } catch (const DegenerateDeformationError& e) {
    r.pass = false;
    r.details = e.what();
    r.max_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

CheckResult check_sigma_roundtrip_rational(const DeformationSpec& spec, int dim) {
  CheckResult r{"sigma_roundtrip", true, 0.0, "exact rational round trip on the window"};
  try {
    const exact::ExactLadder lad = exact::ExactLadder::from_spec(spec.with_level_cap(dim));
    const int window = dim / 2;
    for (int n = 0; n <= window; ++n) {
      for (int m = 0; m <= window; ++m) {
        const int inspect = std::min(window - std::max(n, m), dim - 1 - std::max(n, m));
        const auto omega = exact::omega_roundtrip(lad, n, m, inspect);
        const auto mono = exact::monomial_roundtrip(lad, n, m, inspect);
        for (int k = 0; k <= inspect; ++k) {
          const exact::Surd expected =
              (k == 0) ? exact::Surd(exact::Rational(1)) : exact::Surd();
          if (!(omega[static_cast<std::size_t>(k)] == expected) ||
              !(mono[static_cast<std::size_t>(k)] == expected)) {
            r.pass = false;
            r.details = "round trip broke exactness at (" + std::to_string(n) + "," +
                        std::to_string(m) + ") offset " + std::to_string(k);
            return r;
          }
        }
      }
    }
  } catch (const DegenerateDeformationError& e) {
    r.pass = false;
    r.details = e.what();
  }
  return r;
}

double window_scaled_diff(const ASOElement& x, const ASOElement& y, int degree_window) {
  double dev = 0.0;
  const double scale = [&] {
    double m = 1.0;
    for (const auto& [nm, v] : x.terms())
      if (nm.first + nm.second <= degree_window) m = std::max(m, std::abs(v));
    for (const auto& [nm, v] : y.terms())
      if (nm.first + nm.second <= degree_window) m = std::max(m, std::abs(v));
    return m;
  }();
  auto scan = [&](const ASOElement& lhs, const ASOElement& rhs) {
    for (const auto& [nm, v] : lhs.terms()) {
      if (nm.first + nm.second > degree_window) continue;
      dev = std::max(dev, std::abs(v - rhs.coeff(nm.first, nm.second)) / scale);
    }
  };
  scan(x, y);
  scan(y, x);
  return dev;
}

CheckResult check_bullet_consistency(const LadderTableRef& table) {
  CheckResult r{"bullet_consistency", true, 0.0, ""};
  const int d = table->dim();
  const int degree_window = d / 2;
  try {
    if (table->is_standard()) {
      r.details = "bullet_deformed == bullet_undeformed on monomials of degree <= 3";
      for (int n = 0; n <= 1; ++n)
        for (int m = 0; m <= 2 - n; ++m)
          for (int s = 0; s <= 1; ++s)
            for (int t = 0; t <= 2 - s; ++t) {
              const ASOElement x = ASOElement::monomial(n, m, table);
              const ASOElement y = ASOElement::monomial(s, t, table);
              r.max_deviation = std::max(
                  r.max_deviation,
                  window_scaled_diff(bullet_deformed(x, y), bullet_undeformed(x, y),
                                     degree_window));
            }
    } else {
      r.details = "A.A+ - A+.A == sigma^-1(diag f) and associativity on the window";
      const ASOElement a = ASOElement::monomial(0, 1, table);
      const ASOElement ap = ASOElement::monomial(1, 0, table);
      const ASOElement lhs = bullet_deformed(a, ap) - bullet_deformed(ap, a);
      EigenElement diag_f(table);
      for (int i = 0; i < d; ++i) diag_f.add(i, i, Complex{table->f(i), 0.0});
      r.max_deviation = window_scaled_diff(lhs, sigma_inverse(diag_f), degree_window);
    }
    // associativity on ladder-letter triples, compared inside the window
    const ASOElement a = ASOElement::monomial(0, 1, table);
    const ASOElement ap = ASOElement::monomial(1, 0, table);
    for (const auto* x : {&a, &ap})
      for (const auto* y : {&a, &ap})
        for (const auto* z : {&a, &ap}) {
          const ASOElement lhs = bullet_deformed(bullet_deformed(*x, *y), *z);
          const ASOElement rhs = bullet_deformed(*x, bullet_deformed(*y, *z));
          r.max_deviation =
              std::max(r.max_deviation, window_scaled_diff(lhs, rhs, degree_window));
        }
    r.pass = r.max_deviation < 1e-9;
  } catch (const DegenerateDeformationError& e) {
    r.pass = false;
    r.details = e.what();
    r.max_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

CheckResult check_bosonisation(const DeformationSpec& spec, const LadderTableRef& table) {
  CheckResult r{"bosonisation_conjugation", true, 0.0,
                "K(N)b, b+K(N) reproduce the source generators and commutator"};
  const LadderTableRef std_table =
      build_ladder_table(DeformationSpec::standard(spec.hbar(), table->dim()));
  const EquivalenceMap map = build_map(table, std_table);
  if (!map.invertible) {
    r.pass = false;
    r.details = "equivalence map degenerate at level " +
                std::to_string(map.first_defect.value_or(0));
    r.max_deviation = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const auto [a_img, ap_img] = transform_generators(map);
  const OperatorMatrix a_src = pi_matrix(generator(Generator::a, table));
  const OperatorMatrix ap_src = pi_matrix(generator(Generator::a_plus, table));
  const int d = table->dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double scale = std::max(1.0, std::abs(a_src(i, j)));
      r.max_deviation =
          std::max(r.max_deviation, std::abs(a_img(i, j) - a_src(i, j)) / scale);
      const double scale_p = std::max(1.0, std::abs(ap_src(i, j)));
      r.max_deviation =
          std::max(r.max_deviation, std::abs(ap_img(i, j) - ap_src(i, j)) / scale_p);
    }
  const OperatorMatrix comm = a_img * ap_img - ap_img * a_img;
  for (int i = 0; i + 1 < d; ++i)
    for (int j = 0; j + 1 < d; ++j) {
      const double expected = (i == j) ? table->f(i) : 0.0;
      r.max_deviation = std::max(
          r.max_deviation,
          std::abs(comm(i, j) - Complex{expected, 0.0}) / std::max(1.0, std::abs(expected)));
    }
  // inverse map composes to 1
  const EquivalenceMap back = build_map(std_table, table);
  for (std::size_t n = 0; n < map.K_values.size(); ++n) {
    r.max_deviation =
        std::max(r.max_deviation, std::abs(map.K_values[n] * back.K_values[n] - 1.0));
  }
  r.pass = r.max_deviation < 1e-12;
  return r;
}

CheckResult check_coproduct(const DeformationSpec& spec) {
  CheckResult r{"coproduct_homomorphism", true, 0.0,
                "transported coproduct is multiplicative on degree-<=2 words (tensor interior)"};
  const int d = std::min(spec.level_cap(), 6);
  try {
    const DeformationSpec small = spec.with_level_cap(d);
    const LadderTableRef table = build_ladder_table(small);
    const LadderTableRef std_table =
        build_ladder_table(DeformationSpec::standard(spec.hbar(), d));
    const EquivalenceMap map = build_map(table, std_table);
    if (!map.invertible) {
      r.pass = false;
      r.details = "equivalence map degenerate at level " +
                  std::to_string(map.first_defect.value_or(0));
      r.max_deviation = std::numeric_limits<double>::quiet_NaN();
      return r;
    }
    const Eigen::VectorXd s = bosonisation_scaling(map);
    Eigen::VectorXcd sv(d), sv_inv(d);
    for (int i = 0; i < d; ++i) {
      sv(i) = s(i);
      sv_inv(i) = 1.0 / s(i);
    }
    const OperatorMatrix a_def = sv.asDiagonal() *
                                 pi_matrix(generator(Generator::a, std_table)) *
                                 sv_inv.asDiagonal();
    const OperatorMatrix ap_def = sv.asDiagonal() *
                                  pi_matrix(generator(Generator::a_plus, std_table)) *
                                  sv_inv.asDiagonal();
    const TensorOperator da = coproduct_deformed(Generator::a, map);
    const TensorOperator dap = coproduct_deformed(Generator::a_plus, map);

    struct WordCase {
      OperatorMatrix matrix;
      TensorOperator image;
    };
    std::vector<WordCase> words = {{a_def * ap_def, da * dap},
                                   {ap_def * a_def, dap * da},
                                   {a_def * a_def, da * da},
                                   {ap_def * ap_def, dap * dap}};
    const int interior = d - 2;  // degree-2 words eat two levels of headroom
    for (const auto& w : words) {
      const TensorOperator via_transport = coproduct_deformed_extend(w.matrix, map, 2);
      for (int i1 = 0; i1 < interior; ++i1)
        for (int i2 = 0; i2 < interior; ++i2)
          for (int j1 = 0; j1 < interior; ++j1)
            for (int j2 = 0; j2 < interior; ++j2) {
              const Complex lhs = via_transport(i1 * d + i2, j1 * d + j2);
              const Complex rhs = w.image(i1 * d + i2, j1 * d + j2);
              r.max_deviation = std::max(
                  r.max_deviation, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
    }
    r.pass = r.max_deviation < 1e-10;
  } catch (const DegenerateDeformationError& e) {
    r.pass = false;
    r.details = e.what();
    r.max_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = {{"spec", nlohmann::json::parse(spec_json)},
                 {"dim", dim},
                 {"mode", mode == Mode::float_mode ? "float" : "rational"},
                 {"defaults", {{"level_cap", DeformationSpec::kDefaultLevelCap},
                               {"grid_half_width", "8*sqrt(hbar)"},
                               {"grid_points", 512}}}};
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    if (std::isnan(c.max_deviation)) {
      cj["max_deviation"] = nullptr;
    } else {
      cj["max_deviation"] = c.max_deviation;
    }
    cj["details"] = c.details;
    j["checks"].push_back(cj);
  }
  j["pass"] = pass();
  return j.dump(2);
}

Report run_all(const DeformationSpec& spec, int dim, Mode mode) {
  if (mode == Mode::float_mode && (dim < 2 || dim > 64)) {
    throw InputError("float mode supports 2 <= dim <= 64");
  }
  if (mode == Mode::rational_mode && (dim < 2 || dim > 16)) {
    throw InputError("rational mode supports 2 <= dim <= 16");
  }
  const DeformationSpec sized = spec.with_level_cap(dim);
  const LadderTableRef table = build_ladder_table(sized);

  Report report;
  report.spec_json = spec.to_json();
  report.dim = dim;
  report.mode = mode;
  report.checks.push_back(check_star_associativity(table));
  report.checks.push_back(check_commutator(table));
  if (mode == Mode::rational_mode) {
    report.checks.push_back(check_sigma_roundtrip_rational(spec, dim));
  } else {
    report.checks.push_back(check_sigma_roundtrip_float(table));
  }
  report.checks.push_back(check_bullet_consistency(table));
  report.checks.push_back(check_bosonisation(sized, table));
  report.checks.push_back(check_coproduct(sized));
  return report;
}

}  // namespace qboson::verify
