#include <doctest.h>

#include <random>

#include "cmwitness/classifier.hpp"
#include "cmwitness/homological.hpp"
#include "cmwitness/poly_io.hpp"
#include "test_support.hpp"

using namespace cmwitness;

namespace {

const BaseRing XYV{{"X", "Y", "V"}};
const BaseRing XY{{"X", "Y"}};

Poly P(const char* s, const BaseRing& r) { return parse_poly(s, r); }

// Exactness in the middle, checked numerically: at generic points
// rank d_i + rank d_{i+1} = rank F_i.
bool ranks_add_up(const FreeComplex& cx, std::size_t nvars) {
  for (std::size_t i = 0; i + 1 < cx.maps.size(); ++i) {
    const auto r1 = testing::max_rank_at_points(cx.maps[i], nvars, 5, 11);
    const auto r2 = testing::max_rank_at_points(cx.maps[i + 1], nvars, 5, 12);
    if (r1 + r2 != cx.maps[i].cols()) return false;
  }
  return true;
}

// d_i·d_{i+1} = 0 at random integer points, without polynomial arithmetic.
bool composition_vanishes_numerically(const FreeComplex& cx, std::size_t nvars, unsigned seed) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 10; ++t) {
    std::vector<Integer> pt(nvars);
    for (auto& x : pt) x = static_cast<long>(rng() % 201) - 100;
    for (std::size_t i = 0; i + 1 < cx.maps.size(); ++i) {
      const auto& a = cx.maps[i];
      const auto& b = cx.maps[i + 1];
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
          Integer acc = 0;
          for (Eigen::Index k = 0; k < a.cols(); ++k) acc += testing::evaluate(a(r, k), pt) * testing::evaluate(b(k, c), pt);
          if (acc != 0) return false;
        }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("homological_toolkit") {
  TEST_CASE("grade certificates") {
    CHECK(verify_grade_certificate({{P("2", XY), P("X", XY), P("Y", XY)}, 3, {P("2", XY), P("X", XY), P("Y", XY)}}));
    CHECK(verify_grade_certificate({{P("-2", XY), P("X", XY)}, 2, {P("-2", XY), P("X", XY)}}));
    CHECK_FALSE(verify_grade_certificate({{P("2", XY), P("X", XY)}, 3, {P("2", XY), P("X", XY)}}));
    // A witness element that is not a generator is rejected.
    CHECK_FALSE(verify_grade_certificate({{P("2", XY), P("X", XY)}, 2, {P("2", XY), P("Y", XY)}}));
    CHECK_FALSE(verify_grade_certificate({{P("2", XY), P("2*X", XY)}, 2, {P("2", XY), P("2*X", XY)}}));
    CHECK(verify_grade_certificate({{P("1+X", XY)}, 3, {}}));
  }

  TEST_CASE("resolution of S/Q in the grade-three case") {
    const auto cx = resolution_of_S_mod_Q(P("1", XY), P("X", XY), P("Y", XY));
    REQUIRE(cx.length() == 3);
    CHECK(check_composition_zero(cx));
    CHECK(composition_vanishes_numerically(cx, 2, 21));
    CHECK(ranks_add_up(cx, 2));
    const auto grades = grade_certificates_for_Q(cx, P("X", XY), P("Y", XY));
    CHECK(be_exactness_check(cx, grades));
    CHECK(grades.back().witness == std::vector<Poly>{P("2", XY), P("X", XY), P("Y", XY)});
    const auto pd = pd_depth_report(cx, true, XY.dimension());
    CHECK(pd.pd_bound == 3);
    CHECK(pd.depth == 0);
    CHECK(pd.minimal);
  }

  TEST_CASE("resolution of S/Q in the grade-two case") {
    const auto cx = resolution_of_S_mod_Q(P("V", XYV), P("X", XYV), P("Y", XYV));
    CHECK(check_composition_zero(cx));
    CHECK(composition_vanishes_numerically(cx, 3, 22));
    CHECK(ranks_add_up(cx, 3));
    CHECK(be_exactness_check(cx, grade_certificates_for_Q(cx, P("X", XYV), P("Y", XYV))));
  }

  TEST_CASE("resolution of I") {
    const Poly f = P("-X^2+4", XY), g = P("-Y^2+4", XY);
    const auto wf = *decompose_S2(f), wg = *decompose_S2(g);
    const auto ir = resolution_of_I(wf, wg, f, g);
    CHECK(ir.identities_ok);
    // e = (fg − h1²h2²)/4 computed directly.
    const Poly h = wf.h * wg.h;
    CHECK(Integer(4) * ir.e == f * g - h * h);
    CHECK(check_composition_zero(ir.complex));
    CHECK(composition_vanishes_numerically(ir.complex, 2, 23));
    CHECK(ranks_add_up(ir.complex, 2));
    CHECK(kernel_saturation_check(ir.complex));
    CHECK(kernel_spot_check(ir.complex, 1, 8));
    CHECK(be_exactness_check(ir.complex, grade_certificates_for_I(ir.complex, wf.h, wg.h)));
    const auto pd = pd_depth_report(ir.complex, true, XY.dimension());
    CHECK(pd.pd_bound == 1);
  }

  TEST_CASE("failures are reported") {
    const Poly f = P("-X^2+4", XY), g = P("-Y^2+4", XY);
    auto wf = *decompose_S2(f);
    const auto wg = *decompose_S2(g);
    wf.a = wf.a + P("1", XY);
    CHECK_THROWS_AS(resolution_of_I(wf, wg, f, g), WitnessMismatch);
    CHECK_THROWS_AS(pd_depth_report(resolution_of_S_mod_Q(P("1", XY), P("X", XY), P("Y", XY)), false, 3),
                    UnverifiedComplex);

    auto cx = resolution_of_S_mod_Q(P("1", XY), P("X", XY), P("Y", XY));
    cx.maps[1](0, 0) = cx.maps[1](0, 0) + P("1", XY);
    CHECK_FALSE(check_composition_zero(cx));
    auto bad = resolution_of_S_mod_Q(P("1", XY), P("X", XY), P("Y", XY));
    bad.maps[2] = zero_matrix<Integer>(2, 1, 2);
    CHECK_THROWS_AS(check_composition_zero(bad), DimensionMismatch);

    // A grade certificate that is too weak breaks the criterion.
    const auto good = resolution_of_S_mod_Q(P("1", XY), P("X", XY), P("Y", XY));
    auto grades = grade_certificates_for_Q(good, P("X", XY), P("Y", XY));
    grades.back().lower_bound = 2;
    CHECK_FALSE(be_exactness_check(good, grades));
  }
}

TEST_SUITE("homological_toolkit properties") {
  TEST_CASE("every emitted complex composes to zero") {
    std::mt19937_64 rng(9101);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 220; ++i) {
      const Poly h1 = testing::random_poly(rng, 2, 2, 3, 3), h2 = testing::random_poly(rng, 2, 2, 3, 3);
      const Poly a = testing::random_poly(rng, 2, 2, 3, 3), b = testing::random_poly(rng, 2, 2, 3, 3);
      if (reduce_mod2(h1).is_zero() && reduce_mod2(h2).is_zero()) continue;
      const Poly f = h1 * h1 + Integer(2) * a, g = h2 * h2 + Integer(2) * b;
      const auto ir = resolution_of_I({h1, a}, {h2, b}, f, g);
      CHECK(check_composition_zero(ir.complex));
      Poly z = testing::random_poly(rng, 2, 2, 2, 2);
      if (reduce_mod2(z).is_zero()) z = z + Poly::constant(2, Integer(1));
      const auto q = resolution_of_S_mod_Q(z, h1, h2);
      CHECK(check_composition_zero(q));
      ++checked;
    }
    CHECK(checked >= 200);
  }
}
