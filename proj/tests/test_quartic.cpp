#include <doctest.h>

#include <map>
#include <random>

#include "cmwitness/classifier.hpp"
#include "cmwitness/f2_linear.hpp"
#include "cmwitness/poly_io.hpp"
#include "cmwitness/quartic_algebra.hpp"
#include "test_support.hpp"

using namespace cmwitness;

namespace {

const BaseRing XYV{{"X", "Y", "V"}};
const BaseRing XY{{"X", "Y"}};

AlgebraDesc algebra(const BaseRing& r, const char* f, const char* g) {
  return make_algebra(r, parse_poly(f, r), parse_poly(g, r));
}

KElement random_element(std::mt19937_64& rng, std::size_t n) {
  KElement::Coords c;
  for (auto& p : c) p = testing::random_poly(rng, n, 2, 3, 4);
  return KElement(c, static_cast<unsigned>(rng() % 3));
}

struct DualCase {
  const char* label;
  const BaseRing* ring;
  const char* f;
  const char* g;
};

// Every case with the product in S^{2^4}; I* is the closure there.
const DualCase kDualCases[] = {
    {"grade-three family", &XY, "-X^2+4", "-Y^2+4"},
    {"grade-two family", &XYV, "V^2*X^2-2*X^2+4", "V^2*Y^2-2*Y^2+4"},
    {"two-generated Q", &XY, "X^2+2", "X^2*Y^2+2*Y^2+4"},
};

// P* = A + A·η holds whenever f and g lie in S².
const DualCase kPDualCases[] = {
    {"grade-three family", &XY, "-X^2+4", "-Y^2+4"},
    {"grade-two family", &XYV, "V^2*X^2-2*X^2+4", "V^2*Y^2-2*Y^2+4"},
    {"two-generated Q", &XY, "X^2+2", "X^2*Y^2+2*Y^2+4"},
    {"product not in S^{2^4}", &XY, "X^2+2", "Y^2+2"},
};

}  // namespace

TEST_SUITE("quartic_algebra") {
  TEST_CASE("elements reduce to lowest terms") {
    const KElement x(KElement::Coords{parse_poly("2", XY), parse_poly("4*X", XY), parse_poly("0", XY),
                                      parse_poly("2*Y", XY)},
                     2);
    CHECK(x.denom_exp() == 1);
    CHECK(x.coord(1) == parse_poly("2*X", XY));
    CHECK(KElement(KElement::Coords{parse_poly("4", XY), Poly::zero(2), Poly::zero(2), Poly::zero(2)}, 2) ==
          KElement::one(2));
    CHECK(a_membership(KElement::omega_mu(2)));
    CHECK_FALSE(a_membership(KElement::one(2).halved(1)));
  }

  TEST_CASE("multiplication uses ω² = f and μ² = g") {
    const auto alg = algebra(XY, "X^2+2", "Y^2+2");
    CHECK(k_mul(alg, KElement::omega(2), KElement::omega(2)) == KElement::scalar(alg.f));
    CHECK(k_mul(alg, KElement::omega_mu(2), KElement::omega_mu(2)) == KElement::scalar(alg.f * alg.g));
    CHECK(k_mul(alg, KElement::omega(2), KElement::mu(2)) == KElement::omega_mu(2));
  }

  TEST_CASE("colon membership") {
    const auto alg = algebra(XYV, "V^2*X^2-2*X^2+4", "V^2*Y^2-2*Y^2+4");
    const auto ids = named_ideals(alg);
    const auto A = MembershipOracle::ring_A(3);
    CHECK(colon_membership(ids.eta, ids.P, A));
    CHECK_FALSE(colon_membership(KElement::one(3).halved(1), ids.P, A));

    const auto b = algebra(XY, "X^2+2", "Y^2+2");
    const auto bids = named_ideals(b);
    // τ = (ω − X)(μ − Y)/2.
    const KElement tau = k_mul(b, KElement::omega(2) - KElement::scalar(parse_poly("X", XY)),
                               KElement::mu(2) - KElement::scalar(parse_poly("Y", XY)))
                             .halved(1);
    CHECK_FALSE(a_membership(tau));
    CHECK(colon_membership(tau, bids.P, MembershipOracle::ring_A(2)));
  }

  TEST_CASE("ideal products") {
    const auto alg = algebra(XY, "-X^2+4", "-Y^2+4");
    const auto ids = named_ideals(alg);
    const auto ip = ideal_product(ids.I, ids.P);
    CHECK(ip.gens.size() <= 9);
    const KElement four = KElement::scalar(parse_poly("4", XY));
    CHECK(std::find(ip.gens.begin(), ip.gens.end(), four) != ip.gens.end());
    const KElement two_u = parse_poly("2", XY) * ids.I.gens[1];
    CHECK(std::find(ip.gens.begin(), ip.gens.end(), two_u) != ip.gens.end());
    const IdealGens two{alg, {KElement::scalar(parse_poly("2", XY))}};
    const auto sq = ideal_product(two, two);
    REQUIRE(sq.gens.size() == 1);
    CHECK(sq.gens[0] == four);
  }

  TEST_CASE("span solving and closure") {
    const auto alg = algebra(XY, "X^2+2", "Y^2+2");
    std::vector<KElement> gens = {KElement::one(2), KElement::omega(2), KElement::mu(2), KElement::omega_mu(2)};
    const auto table = span_closure_check(alg, gens);
    CHECK(table.gens.size() == 4);
    const auto sol = solve_in_span(gens, KElement::one(2).halved(1));
    CHECK((!sol || !std::all_of(sol->begin(), sol->end(), [](const SElement& s) { return s.is_polynomial(); })));
    gens.push_back(KElement::one(2).halved(1));
    CHECK_THROWS(span_closure_check(alg, gens));
  }

  TEST_CASE("colon search guards its size") {
    const auto alg = algebra(XYV, "V^2*X^2-2*X^2+4", "V^2*Y^2-2*Y^2+4");
    const auto ids = named_ideals(alg);
    CHECK_THROWS_AS(bounded_colon_search(ids.P, MembershipOracle::ring_A(3), 1, 9), BoundTooLarge);
    CHECK_THROWS_AS(bounded_colon_search(ids.P, MembershipOracle::ring_A(3), 3, 2), BoundTooLarge);
  }

  TEST_CASE("unit ideal has no new denominators") {
    const auto alg = algebra(XY, "-X^2+4", "-Y^2+4");
    const IdealGens unit{alg, {KElement::one(2)}};
    const auto r = bounded_colon_search(unit, MembershipOracle::ring_A(2), 1, 4);
    CHECK(r.new_elements.empty());
  }

  TEST_CASE("colon search recovers the dual of P") {
    for (const auto& dc : kPDualCases) {
      INFO(std::string(dc.label));
      const auto alg = algebra(*dc.ring, dc.f, dc.g);
      const std::size_t n = alg.nvars();
      const Poly& h1 = alg.wf->h;
      const Poly& h2 = alg.wg->h;
      const unsigned D = 6;
      const auto r = bounded_colon_search(named_ideals(alg).P, MembershipOracle::ring_A(n), 1, D);
      const auto expected = testing::expected_span({{h1 * h2, h2, h1, Poly::constant(n, Integer(1))}}, n, D, 2);
      CHECK(testing::same_span(r.span_mod2, expected, 4 * monomials_up_to(n, D).size()));
      for (const auto& x : r.new_elements) CHECK(colon_membership(x, named_ideals(alg).P, MembershipOracle::ring_A(n)));
    }
  }

  TEST_CASE("colon search recovers the dual of I") {
    for (const auto& dc : kDualCases) {
      INFO(std::string(dc.label));
      const auto alg = algebra(*dc.ring, dc.f, dc.g);
      const std::size_t n = alg.nvars();
      const Poly& h1 = alg.wf->h;
      const Poly& h2 = alg.wg->h;
      const auto q = q_lifts(alg);
      const unsigned D = 6;
      const auto ids = named_ideals(alg);
      const auto r = bounded_colon_search(ids.I, MembershipOracle::ring_A(n), 1, D);
      const Poly zero = Poly::zero(n);
      const auto expected =
          testing::expected_span({{h1 * h2, h2, h1, Poly::constant(n, Integer(1))}, {zero, q.e, q.c, zero}}, n, D, 2);
      CHECK(testing::same_span(r.span_mod2, expected, 4 * monomials_up_to(n, D).size()));
      for (const auto& x : r.new_elements) CHECK(colon_membership(x, ids.I, MembershipOracle::ring_A(n)));
    }
  }

  TEST_CASE("second layer of the colon search stays inside the dual") {
    const auto alg = algebra(XY, "-X^2+4", "-Y^2+4");
    const auto ids = named_ideals(alg);
    const auto ip = ideal_product(ids.I, ids.P);
    const auto r = bounded_colon_search(ip, MembershipOracle::ring_A(2), 2, 2);
    CHECK_FALSE(r.new_elements.empty());
    bool has_quarter = false;
    for (const auto& x : r.new_elements) {
      CHECK(colon_membership(x, ip, MembershipOracle::ring_A(2)));
      has_quarter = has_quarter || x.denom_exp() == 2;
    }
    CHECK(has_quarter);
  }
}

TEST_SUITE("quartic_algebra properties") {
  TEST_CASE("multiplication is commutative, associative and distributive") {
    std::mt19937_64 rng(8101);
    const auto alg = algebra(XY, "X^2*Y-3*X+2", "Y^3+X*Y+6");
    for (int i = 0; i < 250; ++i) {
      const KElement a = random_element(rng, 2), b = random_element(rng, 2), c = random_element(rng, 2);
      CHECK(k_mul(alg, a, b) == k_mul(alg, b, a));
      CHECK(k_mul(alg, k_mul(alg, a, b), c) == k_mul(alg, a, k_mul(alg, b, c)));
      CHECK(k_mul(alg, a, b + c) == k_mul(alg, a, b) + k_mul(alg, a, c));
    }
  }

  TEST_CASE("reduced form is canonical and 2^k·x lies in A") {
    std::mt19937_64 rng(8102);
    for (int i = 0; i < 250; ++i) {
      const KElement x = random_element(rng, 2);
      const KElement again(x.coords(), x.denom_exp());
      CHECK(again == x);
      const Poly scale = Poly::constant(2, Integer(1) << x.denom_exp());
      CHECK(a_membership(scale * x));
    }
  }
}
