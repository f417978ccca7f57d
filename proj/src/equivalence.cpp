#include "qboson/equivalence.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace qboson {

std::string EquivalenceMap::to_json() const {
  nlohmann::ordered_json j;
  j["invertible"] = invertible;
  if (first_defect) {
    j["first_defect"] = *first_defect;
  } else {
    j["first_defect"] = nullptr;
  }
  j["K"] = K_values;
  return j.dump();
}

EquivalenceMap build_map(LadderTableRef src, LadderTableRef tgt) {
  if (src->dim() != tgt->dim()) {
    throw IncompatibleError("equivalence maps need matching dimensions");
  }
  if (src->hbar() != tgt->hbar()) {
    throw IncompatibleError("equivalence maps are defined at a fixed hbar");
  }
  EquivalenceMap map;
  map.source = std::move(src);
  map.target = std::move(tgt);
  const int d = map.source->dim();
  map.invertible = true;
  // the defect scan covers the whole stored ladder, not just the K range
  for (int j = 1; j <= d && map.invertible; ++j) {
    const double fa = map.source->F(j);
    const double fb = map.target->F(j);
    if (!(fa > 0.0) || !(fb > 0.0) || !std::isfinite(fa) || !std::isfinite(fb)) {
      map.invertible = false;
      map.first_defect = j;
    }
  }
  map.K_values.resize(static_cast<std::size_t>(std::max(d - 1, 0)));
  for (int n = 0; n + 1 < d; ++n) {
    const double fa = map.source->F(n + 1);
    const double fb = map.target->F(n + 1);
    const bool ok = fa > 0.0 && fb > 0.0 && std::isfinite(fa) && std::isfinite(fb);
    map.K_values[static_cast<std::size_t>(n)] = ok ? std::sqrt(fa / fb) : 0.0;
  }
  return map;
}

std::pair<OperatorMatrix, OperatorMatrix> transform_generators(const EquivalenceMap& map) {
  if (!map.invertible) {
    const int level = map.first_defect.value_or(0);
    throw DegenerateDeformationError(
        level, "equivalence map is not invertible: first defect at level " +
                   std::to_string(level));
  }
  const int d = map.target->dim();
  OperatorMatrix b = pi_matrix(generator(Generator::a, map.target));
  OperatorMatrix b_plus = pi_matrix(generator(Generator::a_plus, map.target));
  Eigen::VectorXcd k_diag(d);
  for (int n = 0; n < d; ++n) {
    // K(dim-1) never multiplies a stored ladder entry; kept at 1
    k_diag(n) = (n + 1 < d) ? Complex{map.K_values[static_cast<std::size_t>(n)], 0.0}
                            : Complex{1.0, 0.0};
  }
  OperatorMatrix a_img = k_diag.asDiagonal() * b;
  OperatorMatrix a_plus_img = b_plus * k_diag.asDiagonal();
  return {a_img, a_plus_img};
}

}  // namespace qboson
