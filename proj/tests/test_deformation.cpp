#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qboson/deformation.hpp"
#include "qboson/exact.hpp"
#include "test_support.hpp"

using namespace qboson;

TEST_CASE("eval_f presets") {
  const DeformationSpec std1 = DeformationSpec::standard(1.0, 8);
  CHECK(std1.eval_f(5) == 1.0);

  const DeformationSpec constant_series = DeformationSpec::series({1.0}, 1.0, 8);
  for (int n = 0; n < 8; ++n) CHECK(constant_series.eval_f(n) == std1.eval_f(n));

  // qp with q=2, p=1: F(3) = (8-1)/(2-1) = 7, f(2) = F(3)-F(2) = 4
  const DeformationSpec qp = DeformationSpec::qp(2.0, 1.0, 1.0, 8);
  CHECK(qp.closed_F(3) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(qp.eval_f(2) == doctest::Approx(4.0).epsilon(1e-15));

  // brute force: diagonal of [A,A+] on a 5-level truncated ladder
  const LadderTable t(DeformationSpec::qp(2.0, 1.0, 1.0, 5));
  const OperatorMatrix a = testing::annihilation_matrix(t);
  const OperatorMatrix ap = testing::creation_matrix(t);
  const OperatorMatrix comm = a * ap - ap * a;
  CHECK(std::abs(comm(2, 2) - Complex{4.0, 0.0}) < 1e-12);
}

TEST_CASE("eval_f range errors") {
  const DeformationSpec s = DeformationSpec::standard(1.0, 4);
  CHECK_THROWS_AS(s.eval_f(4), LevelCapError);
  CHECK_THROWS_AS(s.eval_f(-1), LevelCapError);
  const DeformationSpec tab = DeformationSpec::table({1.0, 2.0});
  CHECK_THROWS_AS(tab.eval_f(2), LevelCapError);
}

TEST_CASE("build_ladder_table standard closed forms") {
  for (double hbar : {0.5, 1.0, 2.0}) {
    const LadderTable t(DeformationSpec::standard(hbar, 16));
    double fact = 1.0;
    for (int n = 0; n <= 16; ++n) {
      CHECK(t.F(n) == hbar * n);
      if (n > 0) fact *= hbar * n;
      CHECK(t.F_factorial(n) == fact);
    }
    for (int n = 0; n < 16; ++n) CHECK(t.energy(n) == hbar * (n + 0.5));
  }
}

TEST_CASE("ladder table anchors and fixture") {
  const LadderTable t(DeformationSpec::qp(3.0, 0.25, 2.0, 12));
  CHECK(t.F(0) == 0.0);
  CHECK(t.F_factorial(0) == 1.0);

  const LadderTable fix(DeformationSpec::table({1.0, 0.0, -1.0}));
  CHECK(fix.F(0) == 0.0);
  CHECK(fix.F(1) == 1.0);
  CHECK(fix.F(2) == 1.0);
  CHECK(fix.F(3) == 0.0);
  CHECK(fix.F_factorial(1) == 1.0);
  CHECK(fix.F_factorial(2) == 1.0);
  CHECK(fix.F_factorial(3) == 0.0);
  CHECK(fix.first_degenerate_level() == 3);
}

TEST_CASE("scale_coefficients") {
  const DeformationSpec s1 = DeformationSpec::series({2.0, 3.0, 4.0}, 1.0, 8);
  CHECK(s1.scale_coefficients().coeffs() == s1.coeffs());

  const DeformationSpec s2 = DeformationSpec::series({1.0, 1.0, 1.0}, 0.5, 8);
  const auto scaled = s2.scale_coefficients().coeffs();
  CHECK(scaled[0] == 1.0);
  CHECK(scaled[1] == 0.5);
  CHECK(scaled[2] == 0.25);

  const DeformationSpec s3 = DeformationSpec::series({2.0}, 3.7, 8);
  CHECK(s3.scale_coefficients().coeffs()[0] == 2.0);

  CHECK_THROWS_AS(DeformationSpec::standard(1.0, 8).scale_coefficients(),
                  UnsupportedKindError);
  CHECK_THROWS_AS(DeformationSpec::table({1.0}).scale_coefficients(), UnsupportedKindError);
}

TEST_CASE("spectral gap identity") {
  // dyadic fixtures: cumulative sums stay exact, so the identity is bitwise
  const LadderTable dyadic(DeformationSpec::table({1.0, 0.5, 0.25, 2.0, 4.0, 0.125}));
  for (int n = 1; n <= dyadic.dim(); ++n) {
    CHECK(dyadic.F(n) - dyadic.F(n - 1) == dyadic.f(n - 1));
  }
  // presets: within a few ulp of the closed-form gap
  const LadderTable qp(DeformationSpec::qp(2.0, 0.5, 1.0, 32));
  for (int n = 1; n <= 32; ++n) {
    const double gap = qp.F(n) - qp.F(n - 1);
    CHECK(std::abs(gap - qp.f(n - 1)) <= 4e-16 * std::max(1.0, std::abs(qp.F(n))));
  }
}

TEST_CASE("energy gap identity") {
  const LadderTable t(DeformationSpec::table({1.0, 2.0, 4.0, 0.5, 8.0}));
  for (int n = 0; n + 1 < t.dim(); ++n) {
    CHECK(t.energy(n + 1) - t.energy(n) == 0.5 * (t.f(n + 1) + t.f(n)));
  }
}

TEST_CASE("F_factorial positivity for positive presets") {
  for (const auto& spec : {DeformationSpec::standard(0.5, 24), DeformationSpec::q_symmetric(1.3, 1.0, 24),
                           DeformationSpec::qp(2.0, 0.5, 1.0, 24)}) {
    const LadderTable t(spec);
    for (int n = 0; n <= t.dim(); ++n) CHECK(t.F_factorial(n) > 0.0);
  }
}

TEST_CASE("q to 1 limit approaches the standard ladder") {
  const LadderTable limit(DeformationSpec::q_symmetric(1.0 + 1e-6, 1.0, 21));
  const LadderTable std_t(DeformationSpec::standard(1.0, 21));
  for (int n = 1; n <= 20; ++n) {
    CHECK(std::abs(limit.F(n) - std_t.F(n)) / std_t.F(n) < 1e-4);
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(DeformationSpec::q_symmetric(1.0, 1.0, 8), InputError);
  CHECK_THROWS_AS(DeformationSpec::qp(2.0, 2.0, 1.0, 8), InputError);
  CHECK_THROWS_AS(DeformationSpec::standard(-1.0, 8), InputError);
  CHECK_THROWS_AS(DeformationSpec::standard(1.0, 0), InputError);
  CHECK_THROWS_AS(DeformationSpec::series({}, 1.0, 8), InputError);
}

TEST_CASE("JSON round trip and strictness") {
  const DeformationSpec qp = DeformationSpec::qp(2.0, 0.5, 1.0, 16);
  CHECK(DeformationSpec::from_json(qp.to_json()) == qp);

  const DeformationSpec ser = DeformationSpec::series({1.0, 0.1}, 2.0, 12);
  CHECK(DeformationSpec::from_json(ser.to_json()) == ser);

  CHECK(DeformationSpec::from_json(R"({"kind":"standard"})") ==
        DeformationSpec::standard(1.0, 32));
  CHECK(DeformationSpec::from_json(R"({"kind":"q","q":1.3})").q() == 1.3);

  CHECK_THROWS_AS(DeformationSpec::from_json(R"({"kind":"standard","bogus":1})"), InputError);
  CHECK_THROWS_AS(DeformationSpec::from_json(R"({"kind":"q","coeffs":[1]})"), InputError);
  CHECK_THROWS_AS(DeformationSpec::from_json(R"({"kind":"wat"})"), InputError);
  CHECK_THROWS_AS(DeformationSpec::from_json(R"({"hbar":1.0})"), InputError);
  CHECK_THROWS_AS(DeformationSpec::from_json("not json"), InputError);
  CHECK_THROWS_AS(DeformationSpec::from_json(R"({"kind":"table","values":[1,2],"level_cap":5})"),
                  InputError);
}

TEST_CASE("with_level_cap") {
  const DeformationSpec s = DeformationSpec::qp(2.0, 1.0, 1.0, 32);
  CHECK(s.with_level_cap(8).level_cap() == 8);
  const DeformationSpec tab = DeformationSpec::table({1.0, 2.0, 3.0});
  CHECK(tab.with_level_cap(2).coeffs().size() == 2);
  CHECK_THROWS_AS(tab.with_level_cap(5), InputError);
}

TEST_CASE("exact ladder agrees with the float table on dyadic input") {
  const DeformationSpec spec = DeformationSpec::series({1.0, 0.5}, 1.0, 10);
  const exact::ExactLadder lad = exact::ExactLadder::from_spec(spec);
  const LadderTable t(spec);
  for (int n = 0; n <= 10; ++n) {
    CHECK(static_cast<double>(lad.F[n]) == t.F(n));
  }
  CHECK_THROWS_AS(exact::ExactLadder::from_spec(DeformationSpec::standard(1.0, 8)),
                  UnsupportedKindError);
  CHECK_THROWS_AS(exact::ExactLadder::from_spec(DeformationSpec::series({1.0}, 2.0, 8)),
                  UnsupportedKindError);
}

TEST_CASE("surd arithmetic") {
  using exact::Rational;
  using exact::Surd;
  const Surd two = Surd(Rational(2));
  const Surd root2 = Surd::sqrt_of(Rational(2));
  CHECK(root2 * root2 == two);
  CHECK((root2 + root2) * (root2 + root2) == Surd(Rational(8)));
  CHECK(root2.inverse() * root2 == Surd(Rational(1)));
  CHECK(Surd::sqrt_of(Rational(9, 4)) == Surd(Rational(3, 2)));
  const Surd root8 = Surd::sqrt_of(Rational(8));
  CHECK(root8 == two * root2);           // commensurable comparison
  CHECK((root8 + (-(two * root2))).is_zero());
  CHECK_THROWS(root2 + Surd::sqrt_of(Rational(3)));
}
