#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qboson/aso.hpp"
#include "qboson/exact.hpp"
#include "test_support.hpp"

using namespace qboson;

namespace {

LadderTableRef std_table(int d) {
  return build_ladder_table(DeformationSpec::standard(1.0, d));
}

LadderTableRef qp_table(int d) {
  return build_ladder_table(DeformationSpec::qp(2.0, 1.0, 1.0, d));
}

}  // namespace

TEST_CASE("sigma coefficient anchors") {
  auto t = qp_table(12);
  const SigmaCoeffs coeffs(t);
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      const double c0 = std::sqrt(t->F_factorial(n) * t->F_factorial(m));
      CHECK(coeffs.c(n, m, 0) == doctest::Approx(c0).epsilon(1e-15));
      CHECK(coeffs.d_row(n, m, 0)[0] == doctest::Approx(1.0 / c0).epsilon(1e-15));
      for (int i = 0; i < 4; ++i) CHECK(coeffs.c(n, m, i) > 0.0);
    }
  // C(0,0,i) = 1 for every deformation
  for (int i = 0; i < 12; ++i) CHECK(coeffs.c(0, 0, i) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bullet_undeformed closed form vs spec examples") {
  auto t = std_table(8);
  const ASOElement a = ASOElement::monomial(0, 1, t);
  const ASOElement ap = ASOElement::monomial(1, 0, t);

  // A . A+ = A+A + hbar
  const ASOElement prod = bullet_undeformed(a, ap);
  CHECK(prod.coeff(1, 1) == Complex{1.0, 0.0});
  CHECK(prod.coeff(0, 0) == Complex{1.0, 0.0});
  CHECK(prod.terms().size() == 2);

  // A+ . A is already anti-standard ordered
  CHECK(bullet_undeformed(ap, a) == ASOElement::monomial(1, 1, t));

  // (A+A) . (A+A) = A+^2 A^2 + hbar A+A
  const ASOElement number = ASOElement::monomial(1, 1, t);
  const ASOElement sq = bullet_undeformed(number, number);
  CHECK(sq.coeff(2, 2) == Complex{1.0, 0.0});
  CHECK(sq.coeff(1, 1) == Complex{1.0, 0.0});
  CHECK(sq.terms().size() == 2);

  CHECK_THROWS_AS(bullet_undeformed(ASOElement::monomial(0, 1, qp_table(8)),
                                    ASOElement::monomial(1, 0, qp_table(8))),
                  UnsupportedKindError);
}

TEST_CASE("bullet_undeformed against the truncated-matrix oracle") {
  auto t = std_table(12);
  const int interior = 12 - 6;  // degree-3 pairs eat six levels of headroom
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m + n <= 3; ++m)
      for (int r = 0; r <= 2; ++r)
        for (int s = 0; s + r <= 3; ++s) {
          const ASOElement x = ASOElement::monomial(n, m, t);
          const ASOElement y = ASOElement::monomial(r, s, t);
          const OperatorMatrix lhs = testing::aso_matrix(bullet_undeformed(x, y));
          const OperatorMatrix rhs = testing::aso_matrix(x) * testing::aso_matrix(y);
          CHECK(testing::interior_max_diff(lhs, rhs, interior) < 1e-12);
        }
}

TEST_CASE("hbar scaling in the pairing") {
  auto t = build_ladder_table(DeformationSpec::standard(0.5, 8));
  const ASOElement a = ASOElement::monomial(0, 1, t);
  const ASOElement ap = ASOElement::monomial(1, 0, t);
  CHECK(bullet_undeformed(a, ap).coeff(0, 0) == Complex{0.5, 0.0});
}

TEST_CASE("sigma maps monomials onto shifted diagonals") {
  auto t = qp_table(10);
  CHECK(sigma(ASOElement::unit(t)) == identity_element(t));
  CHECK(sigma(ASOElement::monomial(1, 0, t)) == generator(Generator::a_plus, t));
  CHECK(sigma(ASOElement::monomial(0, 1, t)) == generator(Generator::a, t));

  auto std12 = std_table(12);
  const EigenElement via_sigma = sigma(ASOElement::monomial(1, 1, std12));
  const EigenElement via_word = sigma_hom(Word::parse("A+A"), std12);
  CHECK(testing::window_max_diff(via_sigma, via_word, 11) < 1e-12);
}

TEST_CASE("sigma_inverse of the identity is the unit monomial") {
  for (auto t : {std_table(12), qp_table(12)}) {
    const ASOElement inv = sigma_inverse(identity_element(t));
    const int window = t->dim() / 2;
    CHECK(std::abs(inv.coeff(0, 0) - Complex{1.0, 0.0}) < 1e-12);
    for (const auto& [nm, v] : inv.terms()) {
      if (nm.first == 0) continue;
      if (nm.first + nm.second > window) continue;
      CHECK(std::abs(v) < 1e-12);
    }
  }
}

TEST_CASE("vacuum expansion reproduces the alternating factorial series") {
  auto t = std_table(12);
  const ASOElement vac = sigma_inverse(EigenElement::basis(0, 0, t));
  double factorial = 1.0;
  for (int i = 0; i <= 8; ++i) {
    if (i > 0) factorial *= i;
    const double expected = (i % 2 == 0 ? 1.0 : -1.0) / factorial;
    CHECK(std::abs(vac.coeff(i, i) - Complex{expected, 0.0}) < 1e-14);
  }
}

TEST_CASE("degenerate table raises with the offending level") {
  auto fix = build_ladder_table(DeformationSpec::table({1.0, 0.0, -1.0}));
  try {
    sigma_inverse(EigenElement::basis(0, 0, fix));
    FAIL("expected DegenerateDeformationError");
  } catch (const DegenerateDeformationError& e) {
    CHECK(e.level == 3);
  }
  CHECK_THROWS_AS(bullet_deformed(ASOElement::unit(fix), ASOElement::unit(fix)),
                  DegenerateDeformationError);
}

TEST_CASE("sigma round trip on monomials and eigenstates") {
  // the float window shrinks with the growth of F!: the omega direction
  // cancels terms of size ~F!(window) (the exact-mode test covers qp deeper)
  for (auto [t, window] : {std::pair{std_table(16), 8}, std::pair{qp_table(16), 4}}) {
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m) {
        const ASOElement mono = ASOElement::monomial(n, m, t);
        CHECK(testing::window_max_diff(sigma_inverse(sigma(mono)), mono, window) < 1e-10);
        const EigenElement w = EigenElement::basis(n, m, t);
        CHECK(testing::window_max_diff(sigma(sigma_inverse(w)), w, window) < 1e-10);
      }
  }
}

TEST_CASE("exact rational round trip is literally exact") {
  // qp(2,1) has F(n) = 2^n - 1: exact integers
  std::vector<exact::Rational> f;
  for (int n = 0; n < 12; ++n) f.push_back(exact::Rational(exact::Int(1) << n));
  const exact::ExactLadder lad = exact::ExactLadder::from_values(f);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      const auto omega = exact::omega_roundtrip(lad, n, m, 5);
      const auto mono = exact::monomial_roundtrip(lad, n, m, 5);
      for (int k = 0; k <= 5; ++k) {
        const exact::Surd expected =
            (k == 0) ? exact::Surd(exact::Rational(1)) : exact::Surd();
        CHECK(omega[k] == expected);
        CHECK(mono[k] == expected);
      }
    }
}

TEST_CASE("bullet_deformed recovers the commutator function") {
  auto t = qp_table(12);
  const ASOElement a = ASOElement::monomial(0, 1, t);
  const ASOElement ap = ASOElement::monomial(1, 0, t);
  const ASOElement lhs = bullet_deformed(a, ap) - bullet_deformed(ap, a);
  EigenElement diag_f(t);
  for (int i = 0; i < t->dim(); ++i) diag_f.add(i, i, Complex{t->f(i), 0.0});
  const ASOElement rhs = sigma_inverse(diag_f);
  CHECK(testing::window_max_diff(lhs, rhs, t->dim() / 2) < 1e-9);
}

TEST_CASE("unit is neutral for bullet_deformed") {
  auto t = qp_table(10);
  std::mt19937 rng(23);
  const ASOElement x = testing::random_aso_element(t, rng, 2);
  CHECK(testing::window_max_diff(bullet_deformed(ASOElement::unit(t), x), x, 5) < 1e-12);
  CHECK(testing::window_max_diff(bullet_deformed(x, ASOElement::unit(t)), x, 5) < 1e-12);
}

TEST_CASE("deformed bullet reduces to the closed-form pairing on the standard table") {
  auto t = std_table(16);
  std::mt19937 rng(29);
  for (int trial = 0; trial < 12; ++trial) {
    const ASOElement x = testing::random_aso_element(t, rng, 3);
    const ASOElement y = testing::random_aso_element(t, rng, 3);
    CHECK(testing::window_max_diff(bullet_deformed(x, y), bullet_undeformed(x, y), 8) <
          1e-10);
  }
}

TEST_CASE("bullet_deformed associativity inside the window") {
  for (auto t : {std_table(16), qp_table(16)}) {
    const int window = t->dim() / 2;
    const ASOElement a = ASOElement::monomial(0, 1, t);
    const ASOElement ap = ASOElement::monomial(1, 0, t);
    for (const ASOElement* x : {&a, &ap})
      for (const ASOElement* y : {&a, &ap})
        for (const ASOElement* z : {&a, &ap}) {
          const ASOElement lhs = bullet_deformed(bullet_deformed(*x, *y), *z);
          const ASOElement rhs = bullet_deformed(*x, bullet_deformed(*y, *z));
          CHECK(testing::window_max_diff(lhs, rhs, window) < 1e-9);
        }
  }
}

TEST_CASE("sigma intertwines the undeformed bullet product") {
  auto t = std_table(16);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const ASOElement x = testing::random_aso_element(t, rng, 2);
    const ASOElement y = testing::random_aso_element(t, rng, 2);
    const EigenElement lhs = sigma(bullet_undeformed(x, y));
    const EigenElement rhs = star(sigma(x), sigma(y));
    CHECK(testing::window_max_diff(lhs, rhs, 8) < 1e-10);
  }
}

TEST_CASE("ASO JSON round trip") {
  auto t = std_table(8);
  ASOElement x(t);
  x.add(2, 1, Complex{0.5, 0.25});
  x.add(0, 0, Complex{-3.0, 0.0});
  CHECK(ASOElement::from_json(x.to_json(), t) == x);
  CHECK(x.max_degree() == 3);
  CHECK_THROWS_AS(ASOElement::from_json("[]", t), InputError);
}
