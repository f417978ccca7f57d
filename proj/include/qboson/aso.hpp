#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qboson/eigenstate.hpp"

namespace qboson {

/// Finite linear combination of anti-standard-ordered monomials A+^n * A^m
/// (creation powers to the left).
class ASOElement {
 public:
  using TermMap = std::map<std::pair<int, int>, Complex>;

  explicit ASOElement(LadderTableRef table);
  static ASOElement monomial(int n, int m, LadderTableRef table,
                             Complex coeff = Complex{1.0, 0.0});
  static ASOElement unit(LadderTableRef table) { return monomial(0, 0, std::move(table)); }

  const LadderTableRef& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const;  // max stored n+m, 0 when empty

  Complex coeff(int n, int m) const;
  void add(int n, int m, Complex amplitude);

  ASOElement& operator+=(const ASOElement& other);
  ASOElement& operator-=(const ASOElement& other);
  ASOElement& operator*=(Complex scale);

  friend ASOElement operator+(ASOElement x, const ASOElement& y) { return x += y; }
  friend ASOElement operator-(ASOElement x, const ASOElement& y) { return x -= y; }
  friend ASOElement operator*(Complex s, ASOElement x) { return x *= s; }

  bool operator==(const ASOElement& other) const;

  std::string to_json() const;
  static ASOElement from_json(const std::string& text, LadderTableRef table);

 private:
  LadderTableRef table_;
  TermMap terms_;
};

/// Basis-change coefficients between ASO monomials and eigenstates.
/// C is evaluated directly; D rows are memoised (pure cache).
class SigmaCoeffs {
 public:
  explicit SigmaCoeffs(LadderTableRef table);

  /// C(n,m,i) = sqrt(F!(n+i) F!(m+i)) / F!(i); needs n+i, m+i <= dim.
  double c(int n, int m, int i) const;

  /// D(n,m,0..kmax): D(n,m,0) = C(n,m,0)^-1,
  /// D(n,m,k) = -C(n+k,m+k,0)^-1 sum_{i<k} C(n+i,m+i,k-i) D(n,m,i).
  std::vector<double> d_row(int n, int m, int kmax) const;

 private:
  LadderTableRef table_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::vector<double>> rows_;
};

/// Undeformed bullet product by the closed-form exponential pairing:
/// (A+^n A^m) bullet (A+^r A^s)
///   = sum_k hbar^k k! binom(m,k) binom(r,k) A+^{n+r-k} A^{m+s-k}.
/// Requires the standard table.
ASOElement bullet_undeformed(const ASOElement& x, const ASOElement& y);

/// sigma(A+^n A^m) = sum_i C(n,m,i) Omega_{n+i,m+i}, truncated at the cap.
EigenElement sigma(const ASOElement& x);

/// sigma^-1(Omega_nm) = sum_k D(n,m,k) A+^{n+k} A^{m+k}. Scans the table for
/// degeneracy (F(j) <= 0) upfront and raises naming the first bad level.
ASOElement sigma_inverse(const EigenElement& x);

/// Deformed bullet product by transport: sigma^-1(sigma(x) * sigma(y)).
ASOElement bullet_deformed(const ASOElement& x, const ASOElement& y);

}  // namespace qboson
