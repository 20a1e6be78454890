#include <doctest.h>

#include <random>

#include "cmwitness/poly_gcd.hpp"
#include "cmwitness/poly_io.hpp"
#include "cmwitness/predicates.hpp"
#include "test_support.hpp"

using namespace cmwitness;

namespace {

const BaseRing XYV{{"X", "Y", "V"}};
const BaseRing UYV{{"U", "Y", "V"}};
const BaseRing XY{{"X", "Y"}};

Poly P(const char* s, const BaseRing& r = XYV) { return parse_poly(s, r); }
F2Poly M(const char* s, const BaseRing& r = XYV) { return reduce_mod2(parse_poly(s, r)); }

}  // namespace

TEST_SUITE("base_ring_predicates") {
  TEST_CASE("squarefree") {
    CHECK(is_squarefree(P("X*V^2+4")));
    CHECK(is_squarefree(P("X*Y^2+4")));
    CHECK_FALSE(is_squarefree(P("X^2*Y")));
    CHECK_THROWS_AS((void)is_squarefree(Poly::zero(3)), ZeroInput);
  }

  TEST_CASE("squarefree at an element with 2-adic valuation one") {
    // Oracle: content 2 (valuation one) and cofactor 2+X is linear, hence irreducible.
    const Poly f = P("4+2*X");
    REQUIRE(content(f) == 2);
    const Poly u = divide_exact(f, P("2"));
    REQUIRE(u == P("X+2"));
    REQUIRE(u.total_degree() == 1);
    CHECK(is_squarefree(f));
    CHECK_FALSE(is_squarefree(P("8+4*X")));
  }

  TEST_CASE("repeated factors that are units of S are harmless") {
    CHECK(is_squarefree(P("(1+X)^2*Y")));
    CHECK_FALSE(is_squarefree(P("(2+X)^2*Y")));
    CHECK(is_squarefree(P("3*X")));
    CHECK_FALSE(is_squarefree(P("X^2*Y^2 - 2*X*Y*V + V^2")));
  }

  TEST_CASE("A1") {
    CHECK(satisfies_A1(P("X*V^2+4"), P("X*Y^2+4")));
    // Oracle: g − Y²·f = 4, so a common factor divides 4 and the primitive f.
    const Poly f = P("X^2+2", XY), g = P("Y^2*(X^2+2)+4", XY);
    REQUIRE(g - P("Y^2", XY) * f == P("4", XY));
    CHECK(satisfies_A1(f, g));
    CHECK_FALSE(satisfies_A1(P("2*X", XY), P("2*Y", XY)));
    CHECK_FALSE(satisfies_A1(P("X*Y", XY), P("X+Y^2", XY) * P("X", XY)));
    CHECK(satisfies_A1(P("(1+X)*Y", XY), P("(1+X)*X", XY)));
  }

  TEST_CASE("field degree four") {
    CHECK(degree_four_check(P("X*V^2+4"), P("X*Y^2+4")));
    CHECK_FALSE(degree_four_check(P("X^2"), P("Y")));
    CHECK(degree_four_check(P("X^2+2", XY), P("Y^2+2", XY)));
    CHECK_FALSE(degree_four_check(P("X*Y", XY), P("X*Y", XY)));
    CHECK_FALSE(degree_four_check(P("(1+X)^2", XY), P("Y", XY)));
    CHECK_THROWS_AS((void)degree_four_check(P("3*(1+X)^2", XY), P("Y", XY)), Unsupported);
    CHECK(degree_four_check(P("-X", XY), P("Y", XY)));
  }

  TEST_CASE("S2 decomposition") {
    auto w = decompose_S2(P("X^2+2", XY));
    REQUIRE(w);
    CHECK(w->h == P("X", XY));
    CHECK(w->a == P("1", XY));
    CHECK_FALSE(decompose_S2(P("X*V^2+4")));
    auto z = decompose_S2(P("2*Y", XY));
    REQUIRE(z);
    CHECK(z->h.is_zero());
    CHECK(z->a == P("Y", XY));
    auto f1 = decompose_S2(P("V^2*X^2-2*X^2+4"));
    REQUIRE(f1);
    CHECK(f1->h == P("X*V"));
    CHECK(f1->a == P("2-X^2"));
  }

  TEST_CASE("S^{2^4} membership") {
    auto w = in_S2wedge4(P("U^2*V^2+4", UYV));
    REQUIRE(w);
    CHECK(w->h == P("U*V", UYV));
    CHECK(w->a_prime == P("1", UYV));
    CHECK_FALSE(in_S2wedge4(P("V^2*X^2-2*X^2+4")));
    CHECK_FALSE(in_S2wedge4(P("2*Y", XY)));
  }

  TEST_CASE("product criterion") {
    const auto f1 = *decompose_S2(P("V^2*X^2-2*X^2+4"));
    const auto g1 = *decompose_S2(P("V^2*Y^2-2*Y^2+4"));
    const Poly combo = f1.a * g1.h * g1.h + g1.a * f1.h * f1.h;
    CHECK(combo == P("2*V^2*(X^2+Y^2-X^2*Y^2)"));
    CHECK(product_in_S2wedge4(f1, g1));

    const auto f2 = *decompose_S2(P("X^2+2", XY));
    const auto g2 = *decompose_S2(P("Y^2+2", XY));
    CHECK(f2.a * g2.h * g2.h + g2.a * f2.h * f2.h == P("X^2+Y^2", XY));
    CHECK_FALSE(product_in_S2wedge4(f2, g2));

    const S2Witness sq{P("X", XY), Poly::zero(2)};
    CHECK(product_in_S2wedge4(sq, S2Witness{P("Y", XY), Poly::zero(2)}));
  }

  TEST_CASE("shape of Q") {
    auto s = ideal_Q_classify(P("V*X"), P("V*Y"));
    CHECK(s.z == M("V"));
    CHECK(s.c == M("X"));
    CHECK(s.e == M("Y"));
    CHECK(s.tag == QTag::Grade2Pd3);
    s = ideal_Q_classify(P("X", XY), P("Y", XY));
    CHECK(s.z == M("1", XY));
    CHECK(s.tag == QTag::Grade3CI_NotTwoGen);
    s = ideal_Q_classify(P("X", XY), P("X*Y", XY));
    CHECK(s.z == M("X", XY));
    CHECK(s.c == M("1", XY));
    CHECK(s.tag == QTag::TwoGenerated);
    CHECK(ideal_Q_classify(P("1+2*X", XY), P("Y", XY)).tag == QTag::UnitIdeal);
  }

  TEST_CASE("regular sequences (2, c, e)") {
    CHECK(regular_sequence_certificate({P("2", XY), P("X", XY), P("Y", XY)}));
    CHECK_FALSE(regular_sequence_certificate({P("2"), P("V*X"), P("V*Y")}));
    CHECK_FALSE(regular_sequence_certificate({P("2", XY), P("X", XY), P("X", XY)}));
    CHECK_FALSE(regular_sequence_certificate({P("2", XY), P("2*X", XY), P("Y", XY)}));
    CHECK_THROWS_AS((void)regular_sequence_certificate({P("2", XY), P("X", XY)}), MalformedSequence);
    CHECK_THROWS_AS((void)regular_sequence_certificate({P("3", XY), P("X", XY), P("Y", XY)}), MalformedSequence);
  }
}

TEST_SUITE("base_ring_predicates properties") {
  TEST_CASE("witnesses re-expand and S^{2^4} ignores the choice of lift") {
    std::mt19937_64 rng(7001);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 250; ++i) {
      const Poly h = testing::random_poly(rng, 3, 3, 4, 3);
      Poly a = testing::random_poly(rng, 3, 3, 4, 3);
      if (rng() % 2 == 0) a = Integer(2) * a;
      const Poly f = h * h + Integer(2) * a;
      if (f.is_zero()) continue;
      const auto w = decompose_S2(f);
      REQUIRE(w);
      CHECK(w->h * w->h + Integer(2) * w->a == f);
      const auto w4 = in_S2wedge4(f);
      if (w4) CHECK(w4->h * w4->h + Integer(4) * w4->a_prime == f);
      for (int k = 0; k < 10; ++k) {
        const Poly t = testing::random_poly(rng, 3, 2, 3, 4);
        const Poly h2 = w->h + Integer(2) * t;
        const S2Witness other{h2, divide_by_power_of_two(f - h2 * h2, 1)};
        CHECK(in_S2wedge4(f, other).has_value() == w4.has_value());
      }
      ++checked;
    }
    CHECK(checked >= 200);
  }

  TEST_CASE("unit squares do not change S^2 or S^{2^4} membership") {
    std::mt19937_64 rng(7002);
    for (int i = 0; i < 250; ++i) {
      const Poly f = testing::random_poly(rng, 3, 4, 5, 6);
      Poly u = testing::random_poly(rng, 3, 2, 3, 5);
      if (!is_unit_local(u)) u = u + Poly::constant(3, Integer(1));
      REQUIRE(is_unit_local(u));
      const Poly uf = u * u * f;
      CHECK(decompose_S2(uf).has_value() == decompose_S2(f).has_value());
      CHECK(in_S2wedge4(uf).has_value() == in_S2wedge4(f).has_value());
    }
  }

  TEST_CASE("product criterion agrees with direct membership of fg") {
    std::mt19937_64 rng(7003);
    int checked = 0;
    for (int i = 0; i < 600 && checked < 220; ++i) {
      const Poly f = [&] {
        const Poly h = testing::random_poly(rng, 3, 2, 3, 1);
        return h * h + Integer(2) * testing::random_poly(rng, 3, 3, 4, 3);
      }();
      const Poly g = [&] {
        const Poly h = testing::random_poly(rng, 3, 2, 3, 1);
        return h * h + Integer(2) * testing::random_poly(rng, 3, 3, 4, 3);
      }();
      const Poly fg = f * g;
      if (fg.is_zero() || all_coefficients_divisible(fg, 1)) continue;
      const auto wf = decompose_S2(f), wg = decompose_S2(g);
      REQUIRE(wf);
      REQUIRE(wg);
      CHECK(product_in_S2wedge4(*wf, *wg) == in_S2wedge4(fg).has_value());
      ++checked;
    }
    CHECK(checked >= 200);
  }

  TEST_CASE("shape of Q is symmetric") {
    std::mt19937_64 rng(7004);
    for (int i = 0; i < 250; ++i) {
      const Poly h1 = testing::random_poly(rng, 3, 3, 4, 1);
      const Poly h2 = testing::random_poly(rng, 3, 3, 4, 1);
      const auto s = ideal_Q_classify(h1, h2), t = ideal_Q_classify(h2, h1);
      CHECK(s.tag == t.tag);
      CHECK(s.z == t.z);
      CHECK(s.c == t.e);
      if (s.tag != QTag::UnitIdeal && !(reduce_mod2(h1).is_zero() && reduce_mod2(h2).is_zero())) {
        CHECK(s.z * s.c == reduce_mod2(h1));
        CHECK(s.z * s.e == reduce_mod2(h2));
      }
    }
  }

  TEST_CASE("planted squarefree products") {
    // Distinct non-unit linear forms multiply to a squarefree element; a
    // repeated one does not; a repeated unit factor does not matter.
    std::mt19937_64 rng(7005);
    for (int i = 0; i < 200; ++i) {
      std::vector<Poly> linear;
      for (int k = 0; k < 3; ++k) {
        Poly l = Poly::variable(3, static_cast<std::size_t>(k)) +
                 Integer(2 * static_cast<long>(rng() % 5)) * Poly::variable(3, static_cast<std::size_t>((k + 1) % 3)) +
                 Poly::constant(3, Integer(2 * static_cast<long>(rng() % 4)));
        linear.push_back(l);
      }
      const Poly prod = linear[0] * linear[1] * linear[2];
      CHECK(is_squarefree(prod));
      CHECK(is_squarefree(Integer(2) * prod));
      CHECK_FALSE(is_squarefree(prod * linear[static_cast<std::size_t>(rng() % 3)]));
      const Poly unit = Poly::constant(3, Integer(1)) + Poly::variable(3, 1);
      CHECK(is_squarefree(prod * unit * unit));
    }
  }
}
