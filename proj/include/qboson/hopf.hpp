#pragma once

#include <string>

#include "qboson/equivalence.hpp"
#include "qboson/eigenstate.hpp"

namespace qboson {

/// Operators on the tensor square of the truncated Fock space (dim^2 square).
using TensorOperator = Eigen::MatrixXcd;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// Lie-algebra coproduct of h(1) on the standard truncated representation:
/// primitive on A, A+, E; Delta(N) carries the non-canonical cross terms
/// (A (x) A+ + A+ (x) A)/hbar so that hbar Delta(N) = Delta(A+) Delta(A).
TensorOperator coproduct_h1(Generator which, LadderTableRef table);

/// Weyl coproduct: Delta(A) = (A (x) 1 + 1 (x) A)/sqrt(2), N and H extended
/// through hbar Delta(N) = Delta(A+) Delta(A).
TensorOperator coproduct_weyl(Generator which, LadderTableRef table);

/// Multiplicative extension of the Weyl coproduct to a truncated operator via
/// its ASO expansion (standard table). max_degree declares the polynomial
/// degree of the word; expansion terms above it are truncation junk from the
/// matrix corner band and are dropped (-1 keeps everything).
TensorOperator coproduct_weyl_extend(const OperatorMatrix& u, LadderTableRef table,
                                     int max_degree = -1);

/// Transported deformed coproduct: conjugation of the Weyl coproduct by
/// S (x) S, where S = diag(prod K(j)^-1) intertwines the bosonisation map.
/// Coincides with coproduct_weyl at the identity deformation.
TensorOperator coproduct_deformed(Generator which, const EquivalenceMap& map);
TensorOperator coproduct_deformed_extend(const OperatorMatrix& u, const EquivalenceMap& map,
                                         int max_degree = -1);

/// Diagonal bosonisation intertwiner S with S a S^-1 = K(N) a.
Eigen::VectorXd bosonisation_scaling(const EquivalenceMap& map);

/// Evaluation map of h(1): 1 on the unit, 0 on A, A+, N, E.
double counit_h1(Generator which);

/// Antipode on generators: S(x) = -x; S(1) = +1 by the homomorphic extension.
OperatorMatrix antipode_h1(Generator which, LadderTableRef table);

struct CounitObstructionReport {
  double hbar = 0.0;
  double commutator_of_images = 0.0;  // [eps(A), eps(A+)] for scalar eps
  double required_value = 0.0;        // hbar * eps(1)
  bool obstructed = false;
  std::string message;

  std::string to_json() const;
};

/// A homomorphic counit on the Weyl product forces eps(A) = eps(A+) = 0:
/// scalars commute, so [eps(A), eps(A+)] = 0 must equal hbar eps(1).
CounitObstructionReport counit_obstruction_check(double hbar);
CounitObstructionReport counit_obstruction_check(const LadderTable& table);

}  // namespace qboson
