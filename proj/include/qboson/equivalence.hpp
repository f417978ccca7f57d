#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qboson/eigenstate.hpp"

namespace qboson {

/// Non-linear equivalence between two deformations at the same hbar and cap:
/// K(n) = sqrt(F_src(n+1) / F_tgt(n+1)). Carries invertibility diagnostics
/// instead of raising during construction.
struct EquivalenceMap {
  LadderTableRef source;
  LadderTableRef target;
  std::vector<double> K_values;  // K(n) for 0 <= n < dim-1
  bool invertible = false;
  std::optional<int> first_defect;  // first level j with F(j) <= 0 or non-finite

  std::string to_json() const;
};

EquivalenceMap build_map(LadderTableRef src, LadderTableRef tgt);

/// A = K(N) * B and A+ = B+ * K(N) as truncated matrices, where B, B+ are the
/// target-algebra generators. Raises on non-invertible maps.
std::pair<OperatorMatrix, OperatorMatrix> transform_generators(const EquivalenceMap& map);

}  // namespace qboson
