#include "cmwitness/classifier.hpp"

#include <algorithm>

#include "cmwitness/poly_gcd.hpp"

namespace cmwitness {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::OutsideScope_not_S2: return "OutsideScope_not_S2";
    case CaseTag::CaseA_bothHypersurfacesNonNormal: return "CaseA_bothHypersurfacesNonNormal";
    case CaseTag::CaseA_oneHypersurfaceNonNormal: return "CaseA_oneHypersurfaceNonNormal";
    case CaseTag::CaseB_productNotS2w4: return "CaseB_productNotS2w4";
    case CaseTag::CaseC_CM_twoGenerated: return "CaseC_CM_twoGenerated";
    case CaseTag::CaseC_NonCM_grade3: return "CaseC_NonCM_grade3";
    case CaseTag::CaseC_NonCM_grade2: return "CaseC_NonCM_grade2";
  }
  return "?";
}

std::optional<bool> cm_verdict(CaseTag tag) {
  switch (tag) {
    case CaseTag::OutsideScope_not_S2: return std::nullopt;
    case CaseTag::CaseC_NonCM_grade3:
    case CaseTag::CaseC_NonCM_grade2: return false;
    default: return true;
  }
}

namespace {

bool two_generated_or_unit(QTag t) { return t == QTag::UnitIdeal || t == QTag::TwoGenerated; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ClosureFailure(what);
}

const S2Witness& wf_of(const AlgebraDesc& alg) {
  if (!alg.wf || !alg.wg) throw WrongCase("f and g must both lie in S^2");
  return *alg.wf;
}

}  // namespace

CaseTag classify(const AlgebraDesc& alg) {
  if (!alg.wf || !alg.wg) return CaseTag::OutsideScope_not_S2;
  const bool f_in_2S = all_coefficients_divisible(alg.f, 1);
  const bool g_in_2S = all_coefficients_divisible(alg.g, 1);
  if (f_in_2S && g_in_2S) throw HypothesisViolation("CaseB_2S_conflict", "f and g both lie in 2S");
  const bool f4 = in_S2wedge4(alg.f, *alg.wf).has_value();
  const bool g4 = in_S2wedge4(alg.g, *alg.wg).has_value();
  if (f4 && g4) return CaseTag::CaseA_bothHypersurfacesNonNormal;
  if (f4 || g4) return CaseTag::CaseA_oneHypersurfaceNonNormal;
  if (!product_in_S2wedge4(*alg.wf, *alg.wg)) return CaseTag::CaseB_productNotS2w4;
  const QShape q = ideal_Q_classify(alg.wf->h, alg.wg->h);
  // (2, f, g) and (2, h1, h2) agree on being two-generated, since f ≡ h1² mod 2.
  require(two_generated_or_unit(ideal_Q_classify(alg.f, alg.g).tag) == two_generated_or_unit(q.tag),
          "(2, f, g) and (2, h1, h2) disagree on two-generation");
  switch (q.tag) {
    case QTag::UnitIdeal:
    case QTag::TwoGenerated: return CaseTag::CaseC_CM_twoGenerated;
    case QTag::Grade3CI_NotTwoGen: return CaseTag::CaseC_NonCM_grade3;
    case QTag::Grade2Pd3: return CaseTag::CaseC_NonCM_grade2;
  }
  throw std::logic_error("unreachable");
}

QLifts q_lifts(const AlgebraDesc& alg) {
  const auto& wf = wf_of(alg);
  QShape s = ideal_Q_classify(wf.h, alg.wg->h);
  const std::size_t n = alg.nvars();
  Poly z = lift_f2(s.z).with_nvars(n), c = lift_f2(s.c).with_nvars(n), e = lift_f2(s.e).with_nvars(n);
  return QLifts{std::move(s), std::move(z), std::move(c), std::move(e)};
}

NamedIdeals named_ideals(const AlgebraDesc& alg) {
  const auto& h1 = wf_of(alg).h;
  const auto& h2 = alg.wg->h;
  const std::size_t n = alg.nvars();
  const KElement two = KElement::scalar(Poly::constant(n, Integer(2)));
  const KElement w = KElement::omega(n), m = KElement::mu(n);
  const KElement u = KElement::omega_mu(n) - KElement::scalar(h1 * h2);
  const KElement v = h2 * w - h1 * m;
  NamedIdeals out{
      IdealGens{alg, {two, w - KElement::scalar(h1), m - KElement::scalar(h2)}},
      IdealGens{alg, {two, u, v}},
      IdealGens{alg, {two, u}},
      k_mul(alg, w + KElement::scalar(h1), m + KElement::scalar(h2)).halved(),
  };
  return out;
}

namespace {

KElement xi_prime(const AlgebraDesc& alg, const QLifts& q) {
  const std::size_t n = alg.nvars();
  return (q.e * KElement::omega(n) + q.c * KElement::mu(n)).halved();
}

// x = (α + β)/2 with α² = A0, β² = B0 in S is a root of
// T⁴ − ((A0 + B0)/2)·T² + (A0 − B0)²/16, integral when those lie in S.
bool xi_integral(const AlgebraDesc& alg, const QLifts& q, const KElement& xi) {
  const Poly a0 = q.e * q.e * alg.f, b0 = q.c * q.c * alg.g;
  const Poly sum = a0 + b0, diff = a0 - b0;
  if (!all_coefficients_divisible(sum, 1) || !all_coefficients_divisible(diff, 2)) return false;
  const Poly half_sum = divide_by_power_of_two(sum, 1);
  const Poly quarter_diff = divide_by_power_of_two(diff, 2);
  const KElement x2 = k_mul(alg, xi, xi);
  const KElement x4 = k_mul(alg, x2, x2);
  return (x4 - half_sum * x2 + KElement::scalar(quarter_diff * quarter_diff)).is_zero();
}

void add_min_poly(RingPresentation& r, const AlgebraDesc& alg, std::string name, const KElement& x,
                  const KElement& c1, const KElement& c0) {
  MinPolyRecord rec{std::move(name), c1, c0, min_poly_check(alg, x, c1, c0)};
  require(rec.ok, "quadratic relation fails for " + rec.name);
  require(a_membership(c1) && a_membership(c0), "quadratic relation has coefficients outside A for " + rec.name);
  r.min_polys.push_back(std::move(rec));
}

void close_span(RingPresentation& r, const AlgebraDesc& alg) {
  try {
    r.mult_table = span_closure_check(alg, r.generators);
  } catch (const NotClosed& e) {
    throw ClosureFailure(e.what());
  } catch (const SpanNotFree& e) {
    throw ClosureFailure(e.what());
  }
  r.checks.emplace_back("mult_table_closed", true);
}

void add_check(RingPresentation& r, const std::string& name, bool ok) {
  r.checks.emplace_back(name, ok);
  require(ok, "presentation check failed: " + name);
}

}  // namespace

RingPresentation build_R(const AlgebraDesc& alg, CaseTag tag) {
  if (tag == CaseTag::OutsideScope_not_S2) throw WrongCase("no construction of R outside scope");
  const auto& wf = wf_of(alg);
  const auto& wg = *alg.wg;
  const std::size_t n = alg.nvars();
  const Poly& h1 = wf.h;
  const Poly& h2 = wg.h;
  const KElement one = KElement::one(n), w = KElement::omega(n), m = KElement::mu(n);
  const KElement zero = KElement::scalar(Poly::zero(n));
  auto S = [](const Poly& p) { return KElement::scalar(p); };

  RingPresentation r;
  r.case_tag = tag;
  r.cm_verdict = cm_verdict(tag).value_or(false);
  r.sfree = r.cm_verdict;

  switch (tag) {
    case CaseTag::CaseA_bothHypersurfacesNonNormal: {
      const auto f4 = in_S2wedge4(alg.f, wf), g4 = in_S2wedge4(alg.g, wg);
      const KElement t1 = (w + S(h1)).halved(), t2 = (m + S(h2)).halved();
      r.generator_names = {"1", "tau1", "tau2", "tau1*tau2"};
      r.generators = {one, t1, t2, k_mul(alg, t1, t2)};
      add_min_poly(r, alg, "tau1", t1, S(h1), S(f4->a_prime));
      add_min_poly(r, alg, "tau2", t2, S(h2), S(g4->a_prime));
      break;
    }
    case CaseTag::CaseA_oneHypersurfaceNonNormal: {
      if (auto f4 = in_S2wedge4(alg.f, wf)) {
        const KElement t1 = (w + S(h1)).halved();
        r.generator_names = {"1", "mu", "tau1", "mu*tau1"};
        r.generators = {one, m, t1, k_mul(alg, m, t1)};
        add_min_poly(r, alg, "mu", m, zero, S(alg.g));
        add_min_poly(r, alg, "tau1", t1, S(h1), S(f4->a_prime));
        add_min_poly(r, alg, "mu*tau1", r.generators[3], h1 * m, S(alg.g * f4->a_prime));
      } else {
        const auto g4 = in_S2wedge4(alg.g, wg);
        const KElement t2 = (m + S(h2)).halved();
        r.generator_names = {"1", "omega", "tau2", "omega*tau2"};
        r.generators = {one, w, t2, k_mul(alg, w, t2)};
        add_min_poly(r, alg, "omega", w, zero, S(alg.f));
        add_min_poly(r, alg, "tau2", t2, S(h2), S(g4->a_prime));
        add_min_poly(r, alg, "omega*tau2", r.generators[3], h2 * w, S(alg.f * g4->a_prime));
      }
      break;
    }
    case CaseTag::CaseB_productNotS2w4: {
      const KElement wm1 = w - S(h1), mm2 = m - S(h2);
      const KElement tau = k_mul(alg, wm1, mm2).halved();
      const KElement k1 = S(h1 * h1 + wf.a) - h1 * w, k2 = S(h2 * h2 + wg.a) - h2 * m;
      r.generator_names = {"1", "omega", "mu", "tau"};
      r.generators = {one, w, m, tau};
      add_min_poly(r, alg, "tau", tau, zero, k_mul(alg, k1, k2));
      add_check(r, "omega_minus_h1_squared_is_2k1", k_mul(alg, wm1, wm1) == Poly::constant(n, Integer(2)) * k1);
      add_check(r, "mu_minus_h2_squared_is_2k2", k_mul(alg, mm2, mm2) == Poly::constant(n, Integer(2)) * k2);
      break;
    }
    case CaseTag::CaseC_CM_twoGenerated:
    case CaseTag::CaseC_NonCM_grade3:
    case CaseTag::CaseC_NonCM_grade2: {
      const QLifts q = q_lifts(alg);
      const NamedIdeals ids = named_ideals(alg);
      const KElement xi = xi_prime(alg, q);
      const KElement eta = ids.eta;
      const KElement eta_c0 =
          wg.a * h1 * (w + S(h1)) + wf.a * h2 * (m + S(h2)) + S(wf.a * wg.a);
      add_min_poly(r, alg, "eta", eta, S(Integer(2) * h1 * h2), eta_c0);
      add_check(r, "xi_integral", xi_integral(alg, q, xi));
      if (tag == CaseTag::CaseC_CM_twoGenerated) {
        if (is_unit_local(q.shape.c)) {
          r.generator_names = {"1", "omega", "xi", "eta"};
          r.generators = {one, w, xi, eta};
        } else {
          r.generator_names = {"1", "mu", "xi", "eta"};
          r.generators = {one, m, xi, eta};
        }
      } else {
        r.generator_names = {"1", "eta", "-omega", "mu", "xi"};
        r.generators = {one, eta, -w, m, xi};
        r.relations = zero_matrix<Integer>(5, 1, n);
        r.relations(2, 0) = -q.e;
        r.relations(3, 0) = q.c;
        r.relations(4, 0) = Poly::constant(n, Integer(-2));
        KElement combo = zero;
        for (Eigen::Index i = 0; i < 5; ++i) combo = combo + r.relations(i, 0) * r.generators[static_cast<std::size_t>(i)];
        add_check(r, "relation_exact", combo.is_zero());
        PolyMatrix coords(4, 5);
        for (Eigen::Index j = 0; j < 5; ++j) {
          const KElement& g = r.generators[static_cast<std::size_t>(j)];
          for (Eigen::Index i = 0; i < 4; ++i)
            coords(i, j) = times_power_of_two(g.coord(static_cast<std::size_t>(i)), 1 - g.denom_exp());
        }
        add_check(r, "generators_rank_four", generic_rank(coords) == 4);
        Poly content = Poly::zero(n);
        for (Eigen::Index i = 0; i < 5; ++i)
          if (!r.relations(i, 0).is_zero())
            content = content.is_zero() ? r.relations(i, 0) : gcd(content, r.relations(i, 0));
        add_check(r, "relation_content_unit", is_unit_local(content));
      }
      const MembershipOracle in_R = MembershipOracle::dual("R", ids.I);
      add_check(r, "generators_in_I_dual",
                std::all_of(r.generators.begin(), r.generators.end(),
                            [&](const KElement& x) { return in_R.contains(alg, x); }));
      break;
    }
    case CaseTag::OutsideScope_not_S2: break;
  }
  if (r.sfree) close_span(r, alg);
  return r;
}

namespace {

bool conducts(const AlgebraDesc& alg, const IdealGens& ideal, const std::vector<KElement>& gens) {
  for (const auto& c : ideal.gens)
    for (const auto& x : gens)
      if (!a_membership(k_mul(alg, c, x))) return false;
  return true;
}

}  // namespace

ConductorReport conductor(const AlgebraDesc& alg, CaseTag tag, const RingPresentation& r) {
  ConductorReport out;
  switch (tag) {
    case CaseTag::OutsideScope_not_S2:
      out.reason = "f or g is not a square modulo 2; no construction applies";
      return out;
    case CaseTag::CaseA_bothHypersurfacesNonNormal:
    case CaseTag::CaseA_oneHypersurfaceNonNormal:
      out.reason = "conductor not identified when a hypersurface ring is not normal";
      return out;
    case CaseTag::CaseB_productNotS2w4: {
      const NamedIdeals ids = named_ideals(alg);
      out.available = true;
      out.name = "P";
      out.ideal = ids.P;
      out.verified = conducts(alg, ids.P, r.generators);
      return out;
    }
    default: break;
  }
  const NamedIdeals ids = named_ideals(alg);
  out.j_datum = ids.J;
  out.j_verified = conducts(alg, ids.J, r.generators);
  if (tag == CaseTag::CaseC_NonCM_grade3) {
    out.available = true;
    out.name = "I";
    out.ideal = ids.I;
    out.verified = conducts(alg, ids.I, r.generators);
  } else {
    out.reason = "conductor not identified here; only J·R ⊆ A is certified";
  }
  return out;
}

ConductorReport conductor(const AlgebraDesc& alg, CaseTag tag) {
  if (tag == CaseTag::OutsideScope_not_S2) return conductor(alg, tag, RingPresentation{});
  return conductor(alg, tag, build_R(alg, tag));
}

bool CmModuleCertificate::valid() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

namespace {

// P = ker(A → S/2S, ω ↦ h1, μ ↦ h2) is S-free on 2, ω − h1, μ − h2, ωμ − h1h2.
bool p_free_check(const AlgebraDesc& alg, const NamedIdeals& ids) {
  const std::size_t n = alg.nvars();
  const auto& h1 = alg.wf->h;
  const auto& h2 = alg.wg->h;
  const std::vector<KElement> basis = {ids.P.gens[0], ids.P.gens[1], ids.P.gens[2], ids.I.gens[1]};
  PolyMatrix coords(4, 4);
  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index i = 0; i < 4; ++i) coords(i, j) = basis[static_cast<std::size_t>(j)].coord(static_cast<std::size_t>(i));
  const Poly det = determinant(coords);
  if (det != Poly::constant(n, Integer(2)) && det != Poly::constant(n, Integer(-2))) return false;
  for (const auto& b : basis) {
    const Poly image = b.coord(0) + b.coord(1) * h1 + b.coord(2) * h2 + b.coord(3) * h1 * h2;
    if (!reduce_mod2(image).is_zero()) return false;
  }
  for (const auto& b : basis)
    for (const auto& x : {KElement::omega(n), KElement::mu(n)}) {
      auto sol = solve_in_span(basis, k_mul(alg, x, b));
      if (!sol) return false;
    }
  for (const auto& g : ids.P.gens)
    if (!solve_in_span(basis, g)) return false;
  return true;
}

// x ∈ I for x ∈ A: I ⊇ 2A, and mod 2 the generators reduce to ωμ − h1h2 and h2ω − h1μ.
bool in_I(const AlgebraDesc& alg, const KElement& x) {
  if (!a_membership(x)) return false;
  const std::size_t n = alg.nvars();
  const F2Poly h1 = reduce_mod2(alg.wf->h).with_nvars(n), h2 = reduce_mod2(alg.wg->h).with_nvars(n);
  std::array<F2Poly, 4> r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = reduce_mod2(x.coord(i)).with_nvars(n);
  const F2Poly s = r[3];
  if (r[0] != s * h1 * h2) return false;
  // t·h2 = r1 and t·h1 = r2 with t in the local ring.
  if (h1.is_zero() && h2.is_zero()) return r[1].is_zero() && r[2].is_zero();
  const F2Poly& piv = h2.is_zero() ? h1 : h2;
  const F2Poly& rhs = h2.is_zero() ? r[2] : r[1];
  const F2Poly g = rhs.is_zero() ? piv : gcd_f2(rhs, piv);
  const F2Poly tn = rhs.is_zero() ? F2Poly::zero(n) : divide_exact(rhs, g);
  const F2Poly td = divide_exact(piv, g);
  if (!is_unit_local(td)) return false;
  // Cross-multiplied consistency for both coordinates.
  return tn * h2 == td * r[1] && tn * h1 == td * r[2];
}

}  // namespace

CmModuleCertificate build_small_cm_certificate(const AlgebraDesc& alg, CaseTag tag, unsigned spot_check_seed) {
  if (tag != CaseTag::CaseC_NonCM_grade3 && tag != CaseTag::CaseC_NonCM_grade2)
    throw WrongCase("the small CM module certificate applies only to the non-CM cases");
  const std::size_t n = alg.nvars();
  const NamedIdeals ids = named_ideals(alg);
  const auto& h1 = alg.wf->h;
  const auto& h2 = alg.wg->h;
  const KElement& u = ids.I.gens[1];
  const KElement& v = ids.I.gens[2];

  CmModuleCertificate cert;
  cert.ideal_I = ids.I;
  cert.ideal_P = ids.P;
  cert.ideal_IP = ideal_product(ids.I, ids.P);
  const KElement two_eta = Poly::constant(n, Integer(2)) * ids.eta;
  cert.ideal_H = IdealGens{alg, {ids.I.gens[0], two_eta, u}};
  cert.module_M_oracle = MembershipOracle::dual("M", cert.ideal_IP);

  const bool p_free = p_free_check(alg, ids);
  const bool eta_conducts = colon_membership(ids.eta, ids.P, MembershipOracle::ring_A(n));
  const KElement lhs = k_mul(alg, KElement::omega(n) + KElement::scalar(h1), KElement::mu(n) + KElement::scalar(h2));
  const KElement rhs = u + v + (Integer(2) * h1) * KElement::mu(n) + KElement::scalar(Integer(2) * h1 * h2);
  const bool h_equals_i = lhs == rhs;
  const bool eta_u_in_I = in_I(alg, k_mul(alg, ids.eta, u));

  const IResolution ires = resolution_of_I(*alg.wf, *alg.wg, alg.f, alg.g);
  cert.I_resolution = ires.complex;
  const bool i_res_ok = ires.identities_ok && check_composition_zero(ires.complex) &&
                        generic_rank(ires.complex.maps[0]) == 2 && kernel_saturation_check(ires.complex) &&
                        kernel_spot_check(ires.complex, spot_check_seed, 8);

  const QLifts q = q_lifts(alg);
  cert.Q_resolution = resolution_of_S_mod_Q(q.z, q.c, q.e);
  const bool q_zero = check_composition_zero(cert.Q_resolution);
  const bool be_ok = i_res_ok && q_zero &&
                     be_exactness_check(ires.complex, grade_certificates_for_I(ires.complex, h1, h2)) &&
                     be_exactness_check(cert.Q_resolution, grade_certificates_for_Q(cert.Q_resolution, q.c, q.e));
  cert.pd_I = pd_depth_report(ires.complex, i_res_ok && be_ok, alg.ring.dimension());
  const bool depth_chain = p_free && eta_conducts && h_equals_i && eta_u_in_I && i_res_ok && be_ok &&
                           cert.pd_I.pd_bound <= 1 && cert.pd_I.depth >= alg.ring.dimension() - 1;

  cert.checks = {{"P_free", p_free},
                 {"eta_conducts", eta_conducts},
                 {"H_equals_I", h_equals_i},
                 {"eta_u_in_I", eta_u_in_I},
                 {"I_resolution_ok", i_res_ok},
                 {"BE_ok", be_ok},
                 {"depth_chain_ok", depth_chain}};
  return cert;
}

bool outside_scope_identity(const BaseRing& ring, const Poly& f, const Poly& g) {
  const int iy = ring.index_of("Y"), iv = ring.index_of("V");
  if (iy < 0 || iv < 0) throw std::invalid_argument("ring must contain variables Y and V");
  const std::size_t n = ring.nvars();
  const Poly y = Poly::variable(n, static_cast<std::size_t>(iy)), v = Poly::variable(n, static_cast<std::size_t>(iv));
  return v * v * g == y * y * f + Integer(4) * (v * v - y * y);
}

bool OutsideScopeRegression::passed() const {
  return predicates_ok && outside_scope && identity_ok && relations_ok && composition_zero && psi_rank_one &&
         substituted_case == CaseTag::CaseA_bothHypersurfacesNonNormal && substituted_cm;
}

namespace {

// (a + b·γ)/v^k over S/2S with γ² = x·v².
struct DElement {
  F2Poly a;
  F2Poly b;
  unsigned k = 0;
};

struct DModel {
  F2Poly x, v;

  DElement mul(const DElement& p, const DElement& q) const {
    return {p.a * q.a + p.b * q.b * x * v * v, p.a * q.b + p.b * q.a, p.k + q.k};
  }
  bool equal(const DElement& p, const DElement& q) const {
    const F2Poly vp = v.pow(p.k), vq = v.pow(q.k);
    return p.a * vq == q.a * vp && p.b * vq == q.b * vp;
  }
};

}  // namespace

OutsideScopeRegression outside_scope_regression(const BaseRing& ring) {
  OutsideScopeRegression out;
  const int ix = ring.index_of("X"), iy = ring.index_of("Y"), iv = ring.index_of("V");
  if (ix < 0 || iy < 0 || iv < 0) throw std::invalid_argument("ring must contain variables X, Y and V");
  const std::size_t n = ring.nvars();
  const Poly f = parse_poly("X*V^2+4", ring), g = parse_poly("X*Y^2+4", ring);

  out.predicates_ok = is_squarefree(f) && is_squarefree(g) && satisfies_A1(f, g) && degree_four_check(f, g) &&
                      !decompose_S2(f) && !decompose_S2(g);
  out.outside_scope = classify(make_algebra(ring, f, g)) == CaseTag::OutsideScope_not_S2;
  out.identity_ok = outside_scope_identity(ring, f, g);

  const F2Poly x = F2Poly::variable(n, static_cast<std::size_t>(ix));
  const F2Poly y = F2Poly::variable(n, static_cast<std::size_t>(iy));
  const F2Poly v = F2Poly::variable(n, static_cast<std::size_t>(iv));
  const F2Poly zero = F2Poly::zero(n), one = F2Poly::constant(n, F2(1));
  const DModel d{x, v};
  const DElement gamma{zero, one, 0};
  const DElement eps{zero, y, 1};
  const bool eps_gamma = d.equal(d.mul(eps, gamma), {x * y * v, zero, 0});
  const bool linear = d.equal(d.mul({y, zero, 0}, gamma), d.mul({v, zero, 0}, eps));
  const bool eps_sq = d.equal(d.mul(eps, eps), {reduce_mod2(g), zero, 0});
  out.relations_ok = eps_gamma && linear && eps_sq;

  // Generators 1, γ, ε with denominators cleared by v, against ψ = [0, y, −v].
  F2PolyMatrix coords(2, 3);
  coords << v, zero, zero, zero, v, y;
  F2PolyMatrix psi(1, 3);
  psi << zero, y, v;
  out.composition_zero = is_zero_matrix<F2>(multiply<F2>(coords, F2PolyMatrix(psi.transpose())));
  out.psi_rank_one = generic_rank<F2>(psi) == 1;

  // T = S[√X]: substitute X = U² and rename.
  BaseRing sub = ring;
  sub.variables[static_cast<std::size_t>(ix)] = "U";
  const Poly u2 = Poly::variable(n, static_cast<std::size_t>(ix)).pow(2);
  const AlgebraDesc alg = make_algebra(sub, f.substitute(static_cast<std::size_t>(ix), u2),
                                       g.substitute(static_cast<std::size_t>(ix), u2));
  out.substituted_case = classify(alg);
  const RingPresentation r = build_R(alg, out.substituted_case);
  out.substituted_cm = r.cm_verdict && r.sfree && r.mult_table.has_value();
  return out;
}

}  // namespace cmwitness
