#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qboson/aso.hpp"
#include "qboson/classical.hpp"
#include "qboson/deformation.hpp"
#include "qboson/eigenstate.hpp"
#include "qboson/equivalence.hpp"
#include "qboson/phase_space.hpp"
#include "qboson/verify.hpp"

namespace {

using namespace qboson;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file ? *file : std::cout; }
  std::unique_ptr<std::ofstream> file;
};

std::string defaults_comment(const DeformationSpec& spec) {
  std::ostringstream ss;
  ss << "# defaults: level_cap=" << DeformationSpec::kDefaultLevelCap
     << " grid_half_width=8*sqrt(hbar) grid_points=512\n"
     << "# spec: " << spec.to_json() << "\n";
  return ss.str();
}

nlohmann::ordered_json params_json(const DeformationSpec& spec) {
  return {{"spec", nlohmann::json::parse(spec.to_json())},
          {"defaults", {{"level_cap", DeformationSpec::kDefaultLevelCap},
                        {"grid_half_width", "8*sqrt(hbar)"},
                        {"grid_points", 512}}}};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw InputError("bad number \"" + item + "\" in list");
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

int run_spectrum(const DeformationSpec& spec, int levels, const std::string& out_path) {
  const LadderTableRef table = build_ladder_table(spec);
  if (levels < 0) levels = table->dim() - 1;
  if (levels > table->dim()) throw InputError("--levels exceeds the level cap");
  const int bad = table->first_degenerate_level();
  if (bad != 0 && bad <= levels) {
    std::ostringstream w;
    w << "warning: F(" << bad << ")=" << table->F(bad) << ": degenerate";
    std::cerr << w.str() << "\n";
  }
  Output out(out_path);
  out.stream() << defaults_comment(spec) << "n,F,E,f\n";
  for (int n = 0; n <= levels; ++n) {
    out.stream() << n << ',' << fmt17(table->F(n)) << ',';
    if (n < table->dim()) {
      out.stream() << fmt17(table->energy(n)) << ',' << fmt17(table->f(n));
    } else {
      out.stream() << ',';
    }
    out.stream() << '\n';
  }
  return 0;
}

int run_verify(const DeformationSpec& spec, int dim, const std::string& mode,
               const std::string& out_path) {
  verify::Mode m;
  if (mode == "float") m = verify::Mode::float_mode;
  else if (mode == "rational") m = verify::Mode::rational_mode;
  else throw InputError("--mode must be float or rational");
  const verify::Report report = verify::run_all(spec, dim, m);
  Output out(out_path);
  out.stream() << report.to_json() << "\n";
  if (!report.pass()) {
    for (const auto& c : report.checks) {
      if (!c.pass) std::cerr << "verification failed: " << c.name << "\n";
    }
    return 1;
  }
  return 0;
}

int run_transform(const DeformationSpec& spec, const std::string& target_path, bool check,
                  const std::string& out_path) {
  const LadderTableRef src = build_ladder_table(spec);
  DeformationSpec tgt_spec = target_path.empty()
                                 ? DeformationSpec::standard(spec.hbar(), spec.level_cap())
                                 : DeformationSpec::from_json(read_file(target_path));
  const LadderTableRef tgt = build_ladder_table(tgt_spec);
  const EquivalenceMap map = build_map(src, tgt);
  nlohmann::ordered_json j = nlohmann::json::parse(map.to_json());
  j["params"] = params_json(spec);
  if (check && map.invertible) {
    const auto [a_img, ap_img] = transform_generators(map);
    const OperatorMatrix comm = a_img * ap_img - ap_img * a_img;
    double dev = 0.0;
    for (int i = 0; i + 1 < src->dim(); ++i)
      for (int k = 0; k + 1 < src->dim(); ++k) {
        const double expected = (i == k) ? src->f(i) : 0.0;
        dev = std::max(dev, std::abs(comm(i, k) - Complex{expected, 0.0}) /
                                std::max(1.0, std::abs(expected)));
      }
    j["commutator_deviation"] = dev;
  }
  Output out(out_path);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

int run_evolve(const DeformationSpec& spec, const std::string& rho_path, double t0, double t1,
               int steps, const std::string& out_path, const std::string& coeffs_path) {
  const LadderTableRef table = build_ladder_table(spec);
  const nlohmann::json rj = nlohmann::json::parse(read_file(rho_path));
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(table->dim(), table->dim());
  if (!rj.is_object() || !rj.contains("terms")) {
    throw InputError("density JSON needs a \"terms\" array");
  }
  for (const auto& t : rj["terms"]) {
    const int n = t.at("n").get<int>();
    const int m = t.at("m").get<int>();
    if (n < 0 || m < 0 || n >= table->dim() || m >= table->dim()) {
      throw InputError("density term outside the level cap");
    }
    c(n, m) += Complex{t.at("re").get<double>(), t.value("im", 0.0)};
  }
  const DensitySpec rho0(std::move(c), table);
  Output out(out_path);
  out.stream() << defaults_comment(spec);
  write_observable_trace_csv(out.stream(), rho0, t0, t1, steps);
  if (!coeffs_path.empty()) {
    std::ofstream cf(coeffs_path);
    if (!cf) throw InputError("cannot write " + coeffs_path);
    cf << defaults_comment(spec);
    write_coefficient_trace_csv(cf, rho0, t0, t1, steps);
  }
  return 0;
}

int run_wigner(const DeformationSpec& spec, int n, int m, double half_width, int points,
               const std::string& out_path) {
  PhaseGrid grid{half_width > 0 ? half_width : 8.0 * std::sqrt(spec.hbar()), points};
  const WignerField field = eval_omega(n, m, grid, spec.hbar());
  Output out(out_path);
  out.stream() << defaults_comment(spec);
  write_field_csv(out.stream(), field);
  return 0;
}

ClassicalFunction hamiltonian_from(const DeformationSpec& spec, const std::string& poly) {
  if (!poly.empty()) return ClassicalFunction::polynomial(parse_list(poly));
  return classical_hamiltonian(spec.scale_coefficients());
}

int run_classical(const DeformationSpec& spec, const std::string& poly, double h0,
                  const std::string& hbars_text, const std::string& out_path) {
  const ClassicalFunction F = hamiltonian_from(spec, poly);
  std::vector<double> hbars = hbars_text.empty()
                                  ? std::vector<double>{1e-1, 3.16e-2, 1e-2, 3.16e-3, 1e-3}
                                  : parse_list(hbars_text);
  const OrderCheckReport report = commutator_order_check(F, h0, hbars);
  nlohmann::ordered_json j = nlohmann::json::parse(report.to_json());
  j["params"] = params_json(spec);
  j["params"]["H0"] = h0;
  Output out(out_path);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

int run_quantize(const DeformationSpec& spec, const std::string& theta_poly, double h0,
                 double hbar, const std::string& out_path) {
  ClassicalFunction theta = theta_poly.empty()
                                ? hamiltonian_from(spec, "").derivative_function()
                                : ClassicalFunction::polynomial(parse_list(theta_poly));
  const QuantizeResult r = quantize_bracket(theta, h0, hbar);
  nlohmann::ordered_json j;
  j["integral"] = r.integral;
  j["expansion"] = r.expansion;
  j["difference"] = r.integral - r.expansion;
  j["params"] = params_json(spec);
  j["params"]["H0"] = h0;
  j["params"]["quantize_hbar"] = hbar;
  Output out(out_path);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformed boson algebra toolkit"};
  app.require_subcommand(1);

  std::string spec_path, out_path, target_path, rho_path, coeffs_path;
  std::string mode = "float", poly, theta_poly, hbars_text;
  int levels = -1, dim = DeformationSpec::kDefaultLevelCap;
  int n = 0, m = 0, points = 512, steps = 1000;
  double t0 = 0.0, t1 = 100.0, h0 = 1.0, hbar = 0.1, half_width = -1.0;
  bool check = false;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "deformation spec JSON file")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "ladder functions and spectrum as CSV");
  add_spec(spectrum);
  spectrum->add_option("--levels", levels, "rows 0..k (default: level_cap-1)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  add_spec(verify_cmd);
  verify_cmd->add_option("--dim", dim, "truncation dimension");
  verify_cmd->add_option("--mode", mode, "float | rational");

  CLI::App* transform = app.add_subcommand("transform", "equivalence map diagnostics");
  add_spec(transform);
  transform->add_option("--target", target_path, "target spec JSON (default: standard)");
  transform->add_flag("--check", check, "also conjugate the commutator");

  CLI::App* evolve = app.add_subcommand("evolve", "density evolution traces as CSV");
  add_spec(evolve);
  evolve->add_option("--rho", rho_path, "density coefficients JSON")->required();
  evolve->add_option("--t0", t0);
  evolve->add_option("--t1", t1);
  evolve->add_option("--steps", steps);
  evolve->add_option("--coeffs-out", coeffs_path, "also write the coefficient trace CSV");

  CLI::App* wigner = app.add_subcommand("wigner", "sample Omega_nm on a grid as CSV");
  add_spec(wigner);
  wigner->add_option("--n", n);
  wigner->add_option("--m", m);
  wigner->add_option("--half-width", half_width, "default 8*sqrt(hbar)");
  wigner->add_option("--points", points);

  CLI::App* classical = app.add_subcommand("classical", "commutator order check report");
  add_spec(classical);
  classical->add_option("--poly", poly, "F coefficients c0,c1,... (default: from spec)");
  classical->add_option("--h0", h0);
  classical->add_option("--hbars", hbars_text, "decreasing list, e.g. 0.1,0.01,0.001");

  CLI::App* quantize = app.add_subcommand("quantize", "quantisation rule integral vs expansion");
  add_spec(quantize);
  quantize->add_option("--theta", theta_poly, "Theta coefficients (default: F' from spec)");
  quantize->add_option("--h0", h0);
  quantize->add_option("--hbar", hbar);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const DeformationSpec spec = DeformationSpec::from_json(read_file(spec_path));
    if (spectrum->parsed()) return run_spectrum(spec, levels, out_path);
    if (verify_cmd->parsed()) return run_verify(spec, dim, mode, out_path);
    if (transform->parsed()) return run_transform(spec, target_path, check, out_path);
    if (evolve->parsed()) return run_evolve(spec, rho_path, t0, t1, steps, out_path, coeffs_path);
    if (wigner->parsed()) return run_wigner(spec, n, m, half_width, points, out_path);
    if (classical->parsed()) return run_classical(spec, poly, h0, hbars_text, out_path);
    if (quantize->parsed()) return run_quantize(spec, theta_poly, h0, hbar, out_path);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
