#include "cmwitness/quartic_algebra.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "cmwitness/poly_gcd.hpp"
#include "cmwitness/poly_matrix.hpp"

namespace cmwitness {

AlgebraDesc make_algebra(const BaseRing& ring, const Poly& f, const Poly& g) {
  try {
    ring.validate();
  } catch (const std::invalid_argument& e) {
    throw HypothesisViolation("ring", e.what());
  }
  if (f.is_zero() || g.is_zero()) throw HypothesisViolation("nonzero", "f and g must be nonzero");
  if (!is_squarefree(f)) throw HypothesisViolation("squarefree", "f is not squarefree in S");
  if (!is_squarefree(g)) throw HypothesisViolation("squarefree", "g is not squarefree in S");
  if (!satisfies_A1(f, g)) throw HypothesisViolation("A1", "f and g share a height-one prime");
  try {
    if (!degree_four_check(f, g))
      throw HypothesisViolation("degree_four", "one of f, g, fg is a square, so [K:L] < 4");
  } catch (const Unsupported& e) {
    throw HypothesisViolation("degree_four_unsupported", e.what());
  }
  const std::size_t n = ring.nvars();
  return AlgebraDesc{ring, f.with_nvars(n), g.with_nvars(n), decompose_S2(f.with_nvars(n)),
                     decompose_S2(g.with_nvars(n))};
}

KElement::KElement(Coords coords, unsigned denom_exp) : coords_(std::move(coords)), denom_exp_(denom_exp) {
  reduce();
}

void KElement::reduce() {
  if (is_zero()) {
    denom_exp_ = 0;
    return;
  }
  unsigned v = denom_exp_;
  for (const auto& c : coords_)
    if (!c.is_zero()) v = std::min(v, two_adic_valuation(c));
  if (v == 0) return;
  for (auto& c : coords_) c = divide_by_power_of_two(c, v);
  denom_exp_ -= v;
}

bool KElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Poly& c) { return c.is_zero(); });
}

KElement KElement::scalar(const Poly& s) {
  const auto z = Poly::zero(s.nvars());
  return KElement({s, z, z, z}, 0);
}

namespace {

KElement basis_element(std::size_t nvars, std::size_t i) {
  KElement::Coords c{Poly::zero(nvars), Poly::zero(nvars), Poly::zero(nvars), Poly::zero(nvars)};
  c[i] = Poly::constant(nvars, Integer(1));
  return KElement(std::move(c), 0);
}

}  // namespace

KElement KElement::one(std::size_t nvars) { return basis_element(nvars, 0); }
KElement KElement::omega(std::size_t nvars) { return basis_element(nvars, 1); }
KElement KElement::mu(std::size_t nvars) { return basis_element(nvars, 2); }
KElement KElement::omega_mu(std::size_t nvars) { return basis_element(nvars, 3); }

KElement KElement::operator-() const {
  KElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

KElement operator+(const KElement& a, const KElement& b) {
  const unsigned m = std::max(a.denom_exp_, b.denom_exp_);
  KElement::Coords c;
  for (std::size_t i = 0; i < 4; ++i)
    c[i] = times_power_of_two(a.coords_[i], m - a.denom_exp_) + times_power_of_two(b.coords_[i], m - b.denom_exp_);
  return KElement(std::move(c), m);
}

KElement operator-(const KElement& a, const KElement& b) { return a + (-b); }

KElement operator*(const Poly& s, const KElement& x) {
  KElement::Coords c;
  for (std::size_t i = 0; i < 4; ++i) c[i] = s * x.coords_[i];
  return KElement(std::move(c), x.denom_exp_);
}

KElement KElement::halved(unsigned k) const { return KElement(coords_, denom_exp_ + k); }

KElement k_mul(const AlgebraDesc& alg, const KElement& a, const KElement& b) {
  const auto& x = a.coords();
  const auto& y = b.coords();
  const Poly& f = alg.f;
  const Poly& g = alg.g;
  KElement::Coords c;
  c[0] = x[0] * y[0] + f * (x[1] * y[1]) + g * (x[2] * y[2]) + f * g * (x[3] * y[3]);
  c[1] = x[0] * y[1] + x[1] * y[0] + g * (x[2] * y[3] + x[3] * y[2]);
  c[2] = x[0] * y[2] + x[2] * y[0] + f * (x[1] * y[3] + x[3] * y[1]);
  c[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1];
  for (auto& p : c) p = p.with_nvars(alg.nvars());
  return KElement(std::move(c), a.denom_exp() + b.denom_exp());
}

bool a_membership(const KElement& x) { return x.denom_exp() == 0; }

bool min_poly_check(const AlgebraDesc& alg, const KElement& x, const KElement& c1, const KElement& c0) {
  return (k_mul(alg, x, x) - k_mul(alg, c1, x) - c0).is_zero();
}

std::string to_string(const SElement& s, const BaseRing& ring) {
  if (s.is_polynomial()) return to_string(s.num, ring);
  return "(" + to_string(s.num, ring) + ")/(" + to_string(s.den, ring) + ")";
}

std::optional<std::vector<SElement>> solve_in_span(const std::vector<KElement>& gens, const KElement& x) {
  if (gens.empty()) throw std::invalid_argument("empty generating set");
  const std::size_t n = x.coord(0).nvars();
  unsigned top = x.denom_exp();
  for (const auto& g : gens) top = std::max(top, g.denom_exp());
  const auto m = static_cast<Eigen::Index>(gens.size());
  PolyMatrix cols(4, m);
  PolyMatrix rhs(4, 1);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index r = 0; r < 4; ++r)
      cols(r, j) = times_power_of_two(gens[static_cast<std::size_t>(j)].coord(static_cast<std::size_t>(r)),
                                      top - gens[static_cast<std::size_t>(j)].denom_exp())
                       .with_nvars(n);
  for (Eigen::Index r = 0; r < 4; ++r)
    rhs(r, 0) = times_power_of_two(x.coord(static_cast<std::size_t>(r)), top - x.denom_exp()).with_nvars(n);

  // Cramer's rule on the first nonsingular maximal minor; every row is checked afterwards.
  std::vector<Eigen::Index> all_cols(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) all_cols[static_cast<std::size_t>(j)] = j;
  std::optional<std::vector<Eigen::Index>> chosen;
  Poly det;
  for (const auto& rows : index_subsets(4, m)) {
    det = determinant(submatrix(cols, rows, all_cols));
    if (!det.is_zero()) {
      chosen = rows;
      break;
    }
  }
  if (!chosen) throw SpanNotFree();

  std::vector<SElement> coeffs;
  for (Eigen::Index j = 0; j < m; ++j) {
    PolyMatrix sub = submatrix(cols, *chosen, all_cols);
    for (Eigen::Index r = 0; r < m; ++r) sub(r, j) = rhs((*chosen)[static_cast<std::size_t>(r)], 0);
    Poly num = determinant(sub);
    Poly den = det;
    if (num.is_zero()) {
      coeffs.push_back({Poly::zero(n), Poly::constant(n, Integer(1))});
      continue;
    }
    const Poly common = gcd(num, den);
    num = divide_exact(num, common);
    den = divide_exact(den, common);
    if (sgn(den.leading_coeff()) < 0) {
      num = -num;
      den = -den;
    }
    if (!is_unit_local(den)) return std::nullopt;
    coeffs.push_back({num.with_nvars(n), den.with_nvars(n)});
  }

  Poly all_dens = Poly::constant(n, Integer(1));
  for (const auto& c : coeffs) all_dens *= c.den;
  for (Eigen::Index r = 0; r < 4; ++r) {
    Poly lhs = Poly::zero(n);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& c = coeffs[static_cast<std::size_t>(j)];
      lhs += divide_exact(all_dens, c.den) * c.num * cols(r, j);
    }
    if (lhs != all_dens * rhs(r, 0)) return std::nullopt;
  }
  return coeffs;
}

MultiplicationTable span_closure_check(const AlgebraDesc& alg, const std::vector<KElement>& gens) {
  if (gens.empty() || gens[0] != KElement::one(alg.nvars()))
    throw std::invalid_argument("the first generator must be 1");
  MultiplicationTable table{gens, {}};
  table.entries.assign(gens.size(), std::vector<std::vector<SElement>>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) {
      auto c = solve_in_span(gens, k_mul(alg, gens[i], gens[j]));
      if (!c) throw NotClosed(i, j);
      table.entries[i][j] = *c;
      table.entries[j][i] = std::move(*c);
    }
  return table;
}

IdealGens ideal_product(const IdealGens& a, const IdealGens& b) {
  IdealGens out{a.algebra, {}};
  for (const auto& x : a.gens)
    for (const auto& y : b.gens) {
      KElement p = k_mul(a.algebra, x, y);
      if (p.is_zero()) continue;
      if (std::find(out.gens.begin(), out.gens.end(), p) == out.gens.end()) out.gens.push_back(std::move(p));
    }
  return out;
}

MembershipOracle MembershipOracle::ring_A(std::size_t nvars) { return {"A", {KElement::one(nvars)}}; }

MembershipOracle MembershipOracle::dual(std::string name, const IdealGens& ideal) {
  return {std::move(name), ideal.gens};
}

bool MembershipOracle::contains(const AlgebraDesc& alg, const KElement& x) const {
  return std::all_of(dual_of.begin(), dual_of.end(),
                     [&](const KElement& d) { return a_membership(k_mul(alg, x, d)); });
}

bool colon_membership(const KElement& x, const IdealGens& ideal, const MembershipOracle& target) {
  return std::all_of(ideal.gens.begin(), ideal.gens.end(),
                     [&](const KElement& g) { return target.contains(ideal.algebra, k_mul(ideal.algebra, x, g)); });
}

std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t v, unsigned budget) -> void {
    if (v == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned k = 0; k <= budget; ++k) {
      cur[v] = k;
      self(self, v + 1, budget - k);
    }
    cur[v] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

F2Vector encode_mod2(const KElement::Coords& n, const std::vector<Exponents>& monomials) {
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], i);
  F2Vector v(4 * monomials.size());
  for (std::size_t c = 0; c < 4; ++c)
    for (const auto& t : reduce_mod2(n[c]).terms()) {
      auto it = index.find(t.exps);
      if (it == index.end()) throw std::invalid_argument("numerator exceeds the degree bound");
      v[c * monomials.size() + it->second] = true;
    }
  return v;
}

namespace {

// Linear system over 𝔽₂ whose rows are indexed by (product, coordinate, monomial).
class SystemBuilder {
 public:
  explicit SystemBuilder(std::size_t unknowns) : columns_(unknowns) {}

  /// Adds v mod 2 (coordinates of the product with effective generator w) to column u.
  void add(std::size_t u, std::size_t w, const KElement::Coords& v) {
    for (std::size_t c = 0; c < 4; ++c)
      for (const auto& t : reduce_mod2(v[c]).terms()) {
        auto key = std::make_tuple(w, c, t.exps);
        auto [it, inserted] = rows_.try_emplace(std::move(key), rows_.size());
        columns_[u].push_back(it->second);
      }
  }

  F2Matrix matrix() const {
    F2Matrix m(rows_.size(), columns_.size());
    for (std::size_t u = 0; u < columns_.size(); ++u)
      for (std::size_t r : columns_[u]) m.flip(r, u);
    return m;
  }

 private:
  std::map<std::tuple<std::size_t, std::size_t, Exponents>, std::size_t> rows_;
  std::vector<std::vector<std::size_t>> columns_;
};

KElement::Coords decode(const F2Vector& v, const std::vector<Exponents>& monomials, std::size_t offset,
                        std::size_t nvars) {
  std::array<std::vector<Poly::Term>, 4> terms;
  for (std::size_t u = 0; u < 4 * monomials.size(); ++u)
    if (v[offset + u]) terms[u / monomials.size()].push_back({monomials[u % monomials.size()], Integer(1)});
  KElement::Coords out;
  for (std::size_t c = 0; c < 4; ++c) out[c] = Poly::from_terms(nvars, std::move(terms[c]));
  return out;
}

KElement::Coords times_monomial(const KElement& x, const Exponents& m) {
  KElement::Coords out;
  const Poly::Term t{m, Integer(1)};
  for (std::size_t c = 0; c < 4; ++c) out[c] = x.coord(c).times_term(t);
  return out;
}

}  // namespace

ColonSearchResult bounded_colon_search(const IdealGens& ideal, const MembershipOracle& target, unsigned k,
                                       unsigned degree_bound) {
  if (k != 1 && k != 2) throw BoundTooLarge("denominator bound must be 1 or 2");
  if (degree_bound > 8) throw BoundTooLarge("degree bound above 8");
  const AlgebraDesc& alg = ideal.algebra;
  const std::size_t n = alg.nvars();
  const auto monomials = monomials_up_to(n, degree_bound);
  const std::size_t block = 4 * monomials.size();
  if (block > 4096) throw BoundTooLarge("too many unknowns for the degree bound");

  // x·g·t ∈ A for every ideal generator g and every t the target is dual to.
  std::vector<KElement> effective;
  for (const auto& g : ideal.gens)
    for (const auto& t : target.dual_of) {
      KElement w = k_mul(alg, g, t);
      if (!a_membership(w)) throw std::invalid_argument("colon search needs ideal·target inside A");
      if (!w.is_zero() && std::find(effective.begin(), effective.end(), w) == effective.end())
        effective.push_back(std::move(w));
    }
  // Products of the basis directions 1, ω, μ, ωμ with each effective generator.
  std::vector<std::array<KElement, 4>> basis_products;
  for (const auto& w : effective) {
    std::array<KElement, 4> row;
    for (std::size_t c = 0; c < 4; ++c) {
      KElement::Coords e{Poly::zero(n), Poly::zero(n), Poly::zero(n), Poly::zero(n)};
      e[c] = Poly::constant(n, Integer(1));
      row[c] = k_mul(alg, KElement(std::move(e), 0), w);
    }
    basis_products.push_back(std::move(row));
  }

  ColonSearchResult result;
  result.denom_bound = k;
  result.degree_bound = degree_bound;

  SystemBuilder stage1(block);
  for (std::size_t u = 0; u < block; ++u)
    for (std::size_t w = 0; w < effective.size(); ++w)
      stage1.add(u, w, times_monomial(basis_products[w][u / monomials.size()], monomials[u % monomials.size()]));
  const auto layer1 = nullspace(stage1.matrix());

  if (k == 1) {
    for (const auto& v : layer1) result.new_elements.emplace_back(decode(v, monomials, 0, n), 1);
    result.span_mod2 = span_basis(layer1, block);
    return result;
  }

  // Second layer: numerators s + 2m with s a lift of a first-layer solution.
  std::vector<KElement> lifts;
  for (const auto& v : layer1) lifts.emplace_back(decode(v, monomials, 0, n), 0);
  const std::size_t unknowns = lifts.size() + block;
  SystemBuilder stage2(unknowns);
  for (std::size_t j = 0; j < lifts.size(); ++j)
    for (std::size_t w = 0; w < effective.size(); ++w) {
      const KElement p = k_mul(alg, lifts[j], effective[w]);
      KElement::Coords half;
      for (std::size_t c = 0; c < 4; ++c) {
        if (!all_coefficients_divisible(p.coord(c), 1)) throw std::logic_error("first-layer solution is not one");
        half[c] = divide_by_power_of_two(p.coord(c), 1);
      }
      stage2.add(j, w, half);
    }
  for (std::size_t u = 0; u < block; ++u)
    for (std::size_t w = 0; w < effective.size(); ++w)
      stage2.add(lifts.size() + u, w,
                 times_monomial(basis_products[w][u / monomials.size()], monomials[u % monomials.size()]));
  for (const auto& v : nullspace(stage2.matrix())) {
    KElement s = KElement::scalar(Poly::zero(n));
    for (std::size_t j = 0; j < lifts.size(); ++j)
      if (v[j]) s = s + lifts[j];
    const KElement m(decode(v, monomials, lifts.size(), n), 0);
    KElement x = (s + Poly::constant(n, Integer(2)) * m).halved(2);
    if (!x.is_zero() && !a_membership(x)) result.new_elements.push_back(std::move(x));
  }
  return result;
}

}  // namespace cmwitness
