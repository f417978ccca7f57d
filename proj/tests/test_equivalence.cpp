#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qboson/equivalence.hpp"
#include "test_support.hpp"

using namespace qboson;

namespace {

LadderTableRef table_of(const DeformationSpec& s) { return build_ladder_table(s); }

}  // namespace

TEST_CASE("identity map has unit K") {
  auto t = table_of(DeformationSpec::qp(2.0, 0.5, 1.0, 12));
  const EquivalenceMap map = build_map(t, t);
  CHECK(map.invertible);
  CHECK(!map.first_defect.has_value());
  for (double k : map.K_values) CHECK(k == 1.0);
}

TEST_CASE("standard to qp ladder ratio") {
  auto std_t = table_of(DeformationSpec::standard(1.0, 12));
  auto qp_t = table_of(DeformationSpec::qp(2.0, 1.0, 1.0, 12));
  const EquivalenceMap map = build_map(std_t, qp_t);
  // K(2) = sqrt(F_std(3)/F_qp(3)) = sqrt(3/7)
  CHECK(map.K_values[2] == doctest::Approx(std::sqrt(3.0 / 7.0)).epsilon(1e-15));
}

TEST_CASE("degenerate fixture is reported, not raised") {
  auto fix = table_of(DeformationSpec::table({1.0, 0.0, -1.0}));
  auto std_t = table_of(DeformationSpec::standard(1.0, 3));
  const EquivalenceMap map = build_map(fix, std_t);
  CHECK(!map.invertible);
  CHECK(map.first_defect == 3);
  CHECK_THROWS_AS(transform_generators(map), DegenerateDeformationError);
  try {
    transform_generators(map);
  } catch (const DegenerateDeformationError& e) {
    CHECK(e.level == 3);
  }
}

TEST_CASE("map construction rejects mismatched tables") {
  auto a = table_of(DeformationSpec::standard(1.0, 8));
  auto b = table_of(DeformationSpec::standard(1.0, 10));
  auto c = table_of(DeformationSpec::standard(0.5, 8));
  CHECK_THROWS_AS(build_map(a, b), IncompatibleError);
  CHECK_THROWS_AS(build_map(a, c), IncompatibleError);
}

TEST_CASE("identity transform returns the target generators unchanged") {
  auto t = table_of(DeformationSpec::qp(2.0, 1.0, 1.0, 10));
  const auto [a_img, ap_img] = transform_generators(build_map(t, t));
  CHECK(a_img == pi_matrix(generator(Generator::a, t)));
  CHECK(ap_img == pi_matrix(generator(Generator::a_plus, t)));
}

TEST_CASE("bosonisation reproduces the source generators and commutator") {
  const int d = 16;
  for (const auto& spec : {DeformationSpec::q_symmetric(1.3, 1.0, d),
                           DeformationSpec::qp(2.0, 0.5, 1.0, d),
                           DeformationSpec::series({1.0, 0.1, 0.01}, 1.0, d)}) {
    auto src = table_of(spec);
    auto tgt = table_of(DeformationSpec::standard(1.0, d));
    const EquivalenceMap map = build_map(src, tgt);
    REQUIRE(map.invertible);
    const auto [a_img, ap_img] = transform_generators(map);

    const OperatorMatrix a_src = pi_matrix(generator(Generator::a, src));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        CHECK(std::abs(a_img(i, j) - a_src(i, j)) <=
              1e-14 * std::max(1.0, std::abs(a_src(i, j))));
      }

    const OperatorMatrix comm = a_img * ap_img - ap_img * a_img;
    for (int i = 0; i + 1 < d; ++i)
      for (int j = 0; j + 1 < d; ++j) {
        const double expected = (i == j) ? src->f(i) : 0.0;
        CHECK(std::abs(comm(i, j) - Complex{expected, 0.0}) <=
              1e-13 * std::max(1.0, std::abs(expected)));
      }

    // transformed Hamiltonian matches the source spectrum on the interior
    const OperatorMatrix h_img = 0.5 * (ap_img * a_img + a_img * ap_img);
    const OperatorMatrix h_src = pi_matrix(generator(Generator::h, src));
    CHECK(testing::interior_max_diff(h_img, h_src, d - 1) <=
          1e-13 * std::max(1.0, src->F(d)));

    // number-operator invariance: A+A is diagonal with entries F_src(n)
    const OperatorMatrix number = ap_img * a_img;
    for (int i = 0; i + 1 < d; ++i)
      for (int j = 0; j + 1 < d; ++j) {
        const double expected = (i == j) ? src->F(i) : 0.0;
        CHECK(std::abs(number(i, j) - Complex{expected, 0.0}) <=
              1e-13 * std::max(1.0, std::abs(expected)));
      }
  }
}

TEST_CASE("composition and inverse of K") {
  const int d = 12;
  auto a = table_of(DeformationSpec::q_symmetric(1.3, 1.0, d));
  auto b = table_of(DeformationSpec::standard(1.0, d));
  auto c = table_of(DeformationSpec::qp(2.0, 1.0, 1.0, d));
  const EquivalenceMap ab = build_map(a, b);
  const EquivalenceMap bc = build_map(b, c);
  const EquivalenceMap ac = build_map(a, c);
  const EquivalenceMap ba = build_map(b, a);
  for (std::size_t n = 0; n < ab.K_values.size(); ++n) {
    CHECK(std::abs(ab.K_values[n] * bc.K_values[n] - ac.K_values[n]) <=
          4e-16 * ac.K_values[n]);
    CHECK(std::abs(ab.K_values[n] * ba.K_values[n] - 1.0) <= 4e-16);
  }
}

TEST_CASE("map summary JSON") {
  auto fix = table_of(DeformationSpec::table({1.0, 0.0, -1.0}));
  auto std_t = table_of(DeformationSpec::standard(1.0, 3));
  const std::string j = build_map(fix, std_t).to_json();
  CHECK(j.find("\"invertible\":false") != std::string::npos);
  CHECK(j.find("\"first_defect\":3") != std::string::npos);

  const std::string ok = build_map(std_t, std_t).to_json();
  CHECK(ok.find("\"invertible\":true") != std::string::npos);
  CHECK(ok.find("\"first_defect\":null") != std::string::npos);
}
