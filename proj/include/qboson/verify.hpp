#pragma once

#include <string>
#include <vector>

#include "qboson/deformation.hpp"

namespace qboson::verify {

enum class Mode { float_mode, rational_mode };

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;  // scaled backward-error metric where noted
  std::string details;
};

struct Report {
  std::string spec_json;
  int dim = 0;
  Mode mode = Mode::float_mode;
  std::vector<CheckResult> checks;

  bool pass() const;
  std::string to_json() const;
};

/// The full invariant suite: star associativity, commutator identity, sigma
/// round trip, bullet consistency, bosonisation conjugation, coproduct
/// homomorphism. Rational mode swaps the sigma round trip for the exact path
/// (series/table specs at hbar = 1, dim <= 16).
Report run_all(const DeformationSpec& spec, int dim, Mode mode);

}  // namespace qboson::verify
