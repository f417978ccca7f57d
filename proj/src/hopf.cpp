#include "qboson/hopf.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "qboson/aso.hpp"

namespace qboson {

namespace {

void require_standard(const LadderTable& table, const char* who) {
  if (!table.is_standard()) {
    throw UnsupportedKindError(std::string(who) + " is defined on the standard table");
  }
}

}  // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

TensorOperator coproduct_h1(Generator which, LadderTableRef table) {
  require_standard(*table, "coproduct_h1");
  const int d = table->dim();
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const OperatorMatrix a = pi_matrix(generator(Generator::a, table));
  const OperatorMatrix ap = pi_matrix(generator(Generator::a_plus, table));
  switch (which) {
    case Generator::one:
      return kron(id, id);
    case Generator::e:
      return kron(id, id) + kron(id, id);
    case Generator::a:
      return kron(a, id) + kron(id, a);
    case Generator::a_plus:
      return kron(ap, id) + kron(id, ap);
    case Generator::n: {
      const OperatorMatrix nmat = pi_matrix(generator(Generator::n, table));
      return kron(nmat, id) + kron(id, nmat) +
             (kron(a, ap) + kron(ap, a)) / table->hbar();
    }
    case Generator::h:
      throw UnsupportedKindError("coproduct_h1 covers the h(1) generators 1, E, A, A+, N");
  }
  throw Error("unreachable generator");
}

TensorOperator coproduct_weyl(Generator which, LadderTableRef table) {
  require_standard(*table, "coproduct_weyl");
  const int d = table->dim();
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const OperatorMatrix a = pi_matrix(generator(Generator::a, table));
  const OperatorMatrix ap = pi_matrix(generator(Generator::a_plus, table));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (which) {
    case Generator::one:
    case Generator::e:
      return kron(id, id);
    case Generator::a:
      return (kron(a, id) + kron(id, a)) * inv_sqrt2;
    case Generator::a_plus:
      return (kron(ap, id) + kron(id, ap)) * inv_sqrt2;
    case Generator::n:
      return coproduct_weyl(Generator::a_plus, table) *
             coproduct_weyl(Generator::a, table) / table->hbar();
    case Generator::h: {
      const TensorOperator da = coproduct_weyl(Generator::a, table);
      const TensorOperator dap = coproduct_weyl(Generator::a_plus, table);
      return (dap * da + da * dap) * 0.5;
    }
  }
  throw Error("unreachable generator");
}

TensorOperator coproduct_weyl_extend(const OperatorMatrix& u, LadderTableRef table,
                                     int max_degree) {
  require_standard(*table, "coproduct_weyl_extend");
  const ASOElement aso = sigma_inverse(element_from_matrix(u, table));
  const int d = table->dim();
  const TensorOperator da = coproduct_weyl(Generator::a, table);
  const TensorOperator dap = coproduct_weyl(Generator::a_plus, table);

  const int cap = max_degree < 0 ? aso.max_degree() : max_degree;
  // cache powers of the two generator images
  std::vector<TensorOperator> a_pow{TensorOperator::Identity(d * d, d * d)};
  std::vector<TensorOperator> ap_pow{TensorOperator::Identity(d * d, d * d)};
  for (int k = 1; k <= cap; ++k) {
    a_pow.push_back(a_pow.back() * da);
    ap_pow.push_back(ap_pow.back() * dap);
  }

  TensorOperator out = TensorOperator::Zero(d * d, d * d);
  for (const auto& [nm, v] : aso.terms()) {
    if (nm.first + nm.second > cap) continue;
    out += v * (ap_pow[static_cast<std::size_t>(nm.first)] *
                a_pow[static_cast<std::size_t>(nm.second)]);
  }
  return out;
}

Eigen::VectorXd bosonisation_scaling(const EquivalenceMap& map) {
  if (!map.invertible) {
    throw DegenerateDeformationError(
        map.first_defect.value_or(0),
        "bosonisation scaling needs an invertible map (defect at level " +
            std::to_string(map.first_defect.value_or(0)) + ")");
  }
  const int d = map.source->dim();
  Eigen::VectorXd s(d);
  s(0) = 1.0;
  for (int n = 0; n + 1 < d; ++n) {
    s(n + 1) = s(n) / map.K_values[static_cast<std::size_t>(n)];
  }
  return s;
}

TensorOperator coproduct_deformed(Generator which, const EquivalenceMap& map) {
  require_standard(*map.target, "coproduct_deformed");
  const int d = map.target->dim();
  const Eigen::VectorXd s = bosonisation_scaling(map);
  Eigen::VectorXcd ss(d * d), ss_inv(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ss(i * d + j) = s(i) * s(j);
      ss_inv(i * d + j) = 1.0 / (s(i) * s(j));
    }
  const TensorOperator delta = coproduct_weyl(which, map.target);
  return ss.asDiagonal() * delta * ss_inv.asDiagonal();
}

TensorOperator coproduct_deformed_extend(const OperatorMatrix& u, const EquivalenceMap& map,
                                         int max_degree) {
  require_standard(*map.target, "coproduct_deformed_extend");
  const int d = map.target->dim();
  const Eigen::VectorXd s = bosonisation_scaling(map);
  Eigen::VectorXcd sv(d), sv_inv(d);
  for (int i = 0; i < d; ++i) {
    sv(i) = s(i);
    sv_inv(i) = 1.0 / s(i);
  }
  const OperatorMatrix pulled = sv_inv.asDiagonal() * u * sv.asDiagonal();
  const TensorOperator delta = coproduct_weyl_extend(pulled, map.target, max_degree);
  Eigen::VectorXcd ss(d * d), ss_inv(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ss(i * d + j) = s(i) * s(j);
      ss_inv(i * d + j) = 1.0 / (s(i) * s(j));
    }
  return ss.asDiagonal() * delta * ss_inv.asDiagonal();
}

double counit_h1(Generator which) {
  switch (which) {
    case Generator::one: return 1.0;
    case Generator::e:
    case Generator::a:
    case Generator::a_plus:
    case Generator::n:
      return 0.0;
    case Generator::h:
      throw UnsupportedKindError("counit_h1 covers the h(1) generators 1, E, A, A+, N");
  }
  throw Error("unreachable generator");
}

OperatorMatrix antipode_h1(Generator which, LadderTableRef table) {
  const int d = table->dim();
  if (which == Generator::one) return OperatorMatrix::Identity(d, d);
  if (which == Generator::h) {
    throw UnsupportedKindError("antipode_h1 covers the h(1) generators 1, E, A, A+, N");
  }
  return -pi_matrix(generator(which, table));
}

std::string CounitObstructionReport::to_json() const {
  nlohmann::ordered_json j;
  j["hbar"] = hbar;
  j["commutator_of_images"] = commutator_of_images;
  j["required_value"] = required_value;
  j["obstructed"] = obstructed;
  j["message"] = message;
  return j.dump();
}

CounitObstructionReport counit_obstruction_check(double hbar) {
  CounitObstructionReport r;
  r.hbar = hbar;
  // eps maps into scalars, so the images of A and A+ commute no matter what
  r.commutator_of_images = 0.0;
  r.required_value = hbar * 1.0;
  r.obstructed = r.commutator_of_images != r.required_value;
  r.message = r.obstructed
                  ? "homomorphic counit impossible: 0 != hbar, so eps(A) = eps(A+) = 0 "
                    "and only the zero counit survives"
                  : "no obstruction: commutative limit";
  return r;
}

CounitObstructionReport counit_obstruction_check(const LadderTable& table) {
  return counit_obstruction_check(table.hbar());
}

}  // namespace qboson
