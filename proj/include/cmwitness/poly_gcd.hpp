#pragma once

#include <stdexcept>
#include <vector>

#include "cmwitness/polynomial.hpp"

namespace cmwitness {

/// Raised when a gcd is requested of two zero polynomials.
class BothZero : public std::invalid_argument {
 public:
  BothZero() : std::invalid_argument("gcd of two zero polynomials") {}
};

namespace detail {

/// Coefficients of p as a polynomial in variable v (index = degree).
template <class C>
std::vector<Polynomial<C>> coefficients_in(const Polynomial<C>& p, std::size_t v) {
  using P = Polynomial<C>;
  std::vector<std::vector<typename P::Term>> buckets(p.degree_in(v) + 1);
  for (const auto& t : p.terms()) {
    typename P::Term u = t;
    u.exps[v] = 0;
    buckets[t.exps[v]].push_back(std::move(u));
  }
  std::vector<P> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(P::from_terms(p.nvars(), std::move(b)));
  return out;
}

template <class C>
Polynomial<C> leading_coeff_in(const Polynomial<C>& p, std::size_t v) {
  return coefficients_in(p, v).back();
}

template <class C>
Polynomial<C> var_power(std::size_t nvars, std::size_t v, std::uint32_t k) {
  Exponents e(nvars, 0);
  e[v] = k;
  return Polynomial<C>::monomial(std::move(e), C(1));
}

/// Pseudo-remainder of a by b with respect to variable v.
template <class C>
Polynomial<C> pseudo_remainder(Polynomial<C> a, const Polynomial<C>& b, std::size_t v) {
  const std::uint32_t db = b.degree_in(v);
  const Polynomial<C> lcb = leading_coeff_in(b, v);
  if (a.degree_in(v) < db) return a;
  const std::uint32_t delta = a.degree_in(v) - db + 1;
  std::uint32_t steps = 0;
  while (!a.is_zero() && a.degree_in(v) >= db) {
    const std::uint32_t da = a.degree_in(v);
    Polynomial<C> t = leading_coeff_in(a, v) * var_power<C>(a.nvars(), v, da - db);
    a = lcb * a - t * b;
    ++steps;
  }
  return lcb.pow(delta - steps) * a;
}

template <class C>
Polynomial<C> normalize_unit(const Polynomial<C>& p) {
  if (!p.is_zero() && CoeffTraits<C>::is_negative(p.leading_coeff())) return -p;
  return p;
}

template <class C>
Polynomial<C> gcd_rec(const Polynomial<C>& a, const Polynomial<C>& b);

/// Content of p with respect to variable v (gcd of its coefficients).
template <class C>
Polynomial<C> content_in(const Polynomial<C>& p, std::size_t v) {
  Polynomial<C> g = Polynomial<C>::zero(p.nvars());
  for (const auto& c : coefficients_in(p, v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_unit(c) : gcd_rec(g, c);
  }
  return g;
}

template <class C>
Polynomial<C> primitive_part_in(const Polynomial<C>& p, std::size_t v) {
  return divide_exact(p, content_in(p, v));
}

/// Last nonzero remainder of the subresultant PRS of two primitive polynomials.
template <class C>
Polynomial<C> subresultant_prs(Polynomial<C> a, Polynomial<C> b, std::size_t v) {
  using P = Polynomial<C>;
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  P g = P::constant(a.nvars(), C(1));
  P h = g;
  for (;;) {
    const std::uint32_t delta = a.degree_in(v) - b.degree_in(v);
    P r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return b;
    if (r.degree_in(v) == 0) return P::constant(a.nvars(), C(1));
    a = std::move(b);
    b = divide_exact(r, g * h.pow(delta));
    g = leading_coeff_in(a, v);
    if (delta > 0) h = divide_exact(g.pow(delta), h.pow(delta - 1));
  }
}

template <class C>
Polynomial<C> gcd_rec(const Polynomial<C>& a, const Polynomial<C>& b) {
  using P = Polynomial<C>;
  using Tr = CoeffTraits<C>;
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  const std::size_t n = std::max(a.nvars(), b.nvars());
  const int hv = std::max(a.highest_variable(), b.highest_variable());
  if (hv < 0) return P::constant(n, Tr::gcd(a.leading_coeff(), b.leading_coeff()));
  const auto v = static_cast<std::size_t>(hv);
  const P x = a.with_nvars(n), y = b.with_nvars(n);
  if (x.degree_in(v) == 0) return gcd_rec(x, content_in(y, v));
  if (y.degree_in(v) == 0) return gcd_rec(content_in(x, v), y);
  const P cx = content_in(x, v), cy = content_in(y, v);
  const P c = gcd_rec(cx, cy);
  P g = subresultant_prs(divide_exact(x, cx), divide_exact(y, cy), v);
  if (g.degree_in(v) > 0) g = primitive_part_in(g, v);
  return normalize_unit(c * g);
}

}  // namespace detail

/// Greatest common divisor in C[x1..xn], normalized to a positive leading
/// coefficient over the integers. The integer content is included.
template <class C>
Polynomial<C> gcd(const Polynomial<C>& a, const Polynomial<C>& b) {
  if (a.is_zero() && b.is_zero()) throw BothZero();
  return detail::gcd_rec(a, b);
}

/// gcd over S/2S.
inline F2Poly gcd_f2(const F2Poly& a, const F2Poly& b) { return gcd(a, b); }

/// Primitive part over the integers with positive leading coefficient.
inline Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  return detail::normalize_unit(Integer(1) * divide_exact(p, Poly::constant(p.nvars(), content(p))));
}

/// gcd over Q, returned as a primitive integer polynomial with positive leading coefficient.
inline Poly gcd_q(const Poly& a, const Poly& b) { return primitive_part(gcd(a, b)); }

/// Exact square root in Z[x1..xn], or none.
inline std::optional<Poly> exact_sqrt(const Poly& p) {
  if (p.is_zero()) return p;
  const auto& lt = p.leading_term();
  if (sgn(lt.coeff) < 0) return std::nullopt;
  Poly::Term root{lt.exps, Integer(0)};
  for (auto& e : root.exps) {
    if (e % 2 != 0) return std::nullopt;
    e /= 2;
  }
  if (mpz_perfect_square_p(lt.coeff.get_mpz_t()) == 0) return std::nullopt;
  mpz_sqrt(root.coeff.get_mpz_t(), lt.coeff.get_mpz_t());
  Poly q = Poly::monomial(root.exps, root.coeff);
  const auto lq = q.leading_term();
  Poly r = p - q * q;
  while (!r.is_zero()) {
    const auto& lr = r.leading_term();
    Poly::Term t{Exponents(p.nvars()), Integer(0)};
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (lr.exps[i] < lq.exps[i]) return std::nullopt;
      t.exps[i] = lr.exps[i] - lq.exps[i];
    }
    const Integer twice = 2 * lq.coeff;
    if (mpz_divisible_p(lr.coeff.get_mpz_t(), twice.get_mpz_t()) == 0) return std::nullopt;
    t.coeff = CoeffTraits<Integer>::exact_div(lr.coeff, twice);
    if (grlex_compare(t.exps, lq.exps) != std::strong_ordering::less) return std::nullopt;
    q += Poly::monomial(t.exps, t.coeff);
    r = p - q * q;
  }
  return q;
}

}  // namespace cmwitness
