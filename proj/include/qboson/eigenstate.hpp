#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qboson/deformation.hpp"
#include "qboson/errors.hpp"

namespace qboson {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;

enum class Generator { one, e, a, a_plus, n, h };

std::string to_string(Generator g);

/// Finite linear combination of the eigenstates Omega_nm, stored as a sparse
/// complex coefficient map. Indices live below the table's level cap.
class EigenElement {
 public:
  using TermMap = std::map<std::pair<int, int>, Complex>;

  explicit EigenElement(LadderTableRef table);
  static EigenElement basis(int n, int m, LadderTableRef table);

  int dim() const { return dim_; }
  const LadderTableRef& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex coeff(int n, int m) const;
  void add(int n, int m, Complex amplitude);

  EigenElement& operator+=(const EigenElement& other);
  EigenElement& operator-=(const EigenElement& other);
  EigenElement& operator*=(Complex scale);

  friend EigenElement operator+(EigenElement x, const EigenElement& y) { return x += y; }
  friend EigenElement operator-(EigenElement x, const EigenElement& y) { return x -= y; }
  friend EigenElement operator*(Complex s, EigenElement x) { return x *= s; }

  bool operator==(const EigenElement& other) const;

  std::string to_json() const;
  static EigenElement from_json(const std::string& text, LadderTableRef table);

 private:
  LadderTableRef table_;
  int dim_;
  TermMap terms_;
};

/// Omega_nm * Omega_n'm' = delta_{m n'} Omega_nm', extended bilinearly.
EigenElement star(const EigenElement& x, const EigenElement& y);

/// conj(Omega_nm) = Omega_mn, antilinear.
EigenElement conjugate(const EigenElement& x);

/// <Omega_nm, Omega_n'm'> = delta delta; conjugate-linear in the first slot.
Complex inner_product(const EigenElement& x, const EigenElement& y);

/// I = sum_n Omega_nn (truncated resolution of the identity).
EigenElement identity_element(LadderTableRef table);

/// Sigma image of a generator: truncated sums over the eigenstate basis.
EigenElement generator(Generator which, LadderTableRef table);

enum class Side { left, right };

/// Closed-form ladder action, e.g. left A: Omega_nm -> sqrt(F(n)) Omega_{n-1,m}.
EigenElement apply_ladder(Side side, Generator which, const EigenElement& x);

/// Formal word in the generators: sum of complex-scaled letter sequences.
struct Word {
  struct Term {
    Complex coeff{1.0, 0.0};
    std::vector<Generator> letters;
  };
  std::vector<Term> terms;

  /// Tokens: A  A+  N  E  1  numbers (optional trailing i). "A+" is the
  /// creation operator when '+' is attached; binary +/- need whitespace.
  static Word parse(std::string_view text);

  int ladder_degree() const;
};

/// Sigma(u) = I * u * I, evaluated by composing generator images.
EigenElement sigma_hom(const Word& word, LadderTableRef table);

/// pi(Omega_nm) = e(n,m): dense matrix of the coefficients.
OperatorMatrix pi_matrix(const EigenElement& x);

/// Inverse of pi_matrix on the truncated block.
EigenElement element_from_matrix(const OperatorMatrix& mat, LadderTableRef table);

}  // namespace qboson
