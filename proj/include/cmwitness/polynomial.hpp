#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmwitness {

using Integer = mpz_class;

/// Element of the field with two elements.
class F2 {
 public:
  constexpr F2() = default;
  constexpr F2(int v) : bit_((v % 2) != 0) {}  // NOLINT: implicit by design of Scalar(0)
  explicit F2(const Integer& v) : bit_(mpz_odd_p(v.get_mpz_t()) != 0) {}

  constexpr bool is_one() const { return bit_; }

  friend constexpr F2 operator+(F2 a, F2 b) { return F2(a.bit_ != b.bit_ ? 1 : 0); }
  friend constexpr F2 operator-(F2 a, F2 b) { return a + b; }
  friend constexpr F2 operator-(F2 a) { return a; }
  friend constexpr F2 operator*(F2 a, F2 b) { return F2(a.bit_ && b.bit_ ? 1 : 0); }
  F2& operator+=(F2 o) { return *this = *this + o; }
  F2& operator-=(F2 o) { return *this = *this - o; }
  F2& operator*=(F2 o) { return *this = *this * o; }
  friend constexpr bool operator==(F2 a, F2 b) = default;

 private:
  bool bit_ = false;
};

/// Coefficient-ring operations needed by the generic polynomial code.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Integer> {
  static constexpr int characteristic = 0;
  static bool is_zero(const Integer& c) { return sgn(c) == 0; }
  static bool is_one(const Integer& c) { return c == 1; }
  static bool divides(const Integer& d, const Integer& n) {
    return sgn(d) != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
  }
  static Integer exact_div(const Integer& n, const Integer& d) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
  }
  static Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static bool is_negative(const Integer& c) { return sgn(c) < 0; }
  static std::string to_string(const Integer& c) { return c.get_str(); }
};

template <>
struct CoeffTraits<F2> {
  static constexpr int characteristic = 2;
  static bool is_zero(F2 c) { return !c.is_one(); }
  static bool is_one(F2 c) { return c.is_one(); }
  static bool divides(F2 d, F2 /*n*/) { return d.is_one(); }
  static F2 exact_div(F2 n, F2 /*d*/) { return n; }
  static F2 gcd(F2 a, F2 b) { return F2(a.is_one() || b.is_one() ? 1 : 0); }
  static bool is_negative(F2) { return false; }
  static std::string to_string(F2 c) { return c.is_one() ? "1" : "0"; }
};

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded lexicographic order; the first variable is the most significant.
inline std::strong_ordering grlex_compare(const Exponents& a, const Exponents& b) {
  if (auto c = total_degree(a) <=> total_degree(b); c != 0) return c;
  return a <=> b;
}

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return grlex_compare(a, b) == std::strong_ordering::greater;
  }
};

/// Raised by exact division when the divisor does not divide.
class NotDivisible : public std::domain_error {
 public:
  NotDivisible() : std::domain_error("polynomial is not divisible") {}
};

/// Sparse multivariate polynomial over the coefficient ring C.
///
/// Terms are kept strictly decreasing in graded lex order with no zero
/// coefficients, so structural equality is equality of polynomials. A
/// constant built without a variable count (e.g. `Poly(0)` inside matrix
/// code) adapts to the variable count of whatever it is combined with.
template <class C>
class Polynomial {
 public:
  using Coeff = C;
  using Traits = CoeffTraits<C>;
  struct Term {
    Exponents exps;
    C coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Polynomial() = default;
  Polynomial(int c) : Polynomial(C(c)) {}  // NOLINT
  explicit Polynomial(C c) {
    if (!Traits::is_zero(c)) terms_.push_back(Term{Exponents{}, std::move(c)});
  }

  static Polynomial zero(std::size_t nvars) {
    Polynomial p;
    p.nvars_ = nvars;
    return p;
  }
  static Polynomial constant(std::size_t nvars, C c) {
    return monomial(Exponents(nvars, 0), std::move(c));
  }
  static Polynomial monomial(Exponents e, C c) {
    Polynomial p;
    p.nvars_ = e.size();
    if (!Traits::is_zero(c)) p.terms_.push_back(Term{std::move(e), std::move(c)});
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t index) {
    Exponents e(nvars, 0);
    e.at(index) = 1;
    return monomial(std::move(e), C(1));
  }
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms) {
    std::map<Exponents, C, GrlexGreater> acc;
    for (auto& t : terms) {
      if (t.exps.size() != nvars) throw std::invalid_argument("exponent length mismatch");
      auto [it, inserted] = acc.try_emplace(std::move(t.exps), t.coeff);
      if (!inserted) it->second += t.coeff;
    }
    return from_map(nvars, std::move(acc));
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const& { return terms_; }
  // Safe in range-for over a temporary.
  std::vector<Term> terms() && { return std::move(terms_); }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && cmwitness::total_degree(terms_[0].exps) == 0);
  }
  const Term& leading_term() const { return terms_.front(); }
  const C& leading_coeff() const { return terms_.front().coeff; }

  C constant_term() const {
    if (!terms_.empty() && cmwitness::total_degree(terms_.back().exps) == 0) return terms_.back().coeff;
    return C(0);
  }

  std::uint64_t total_degree() const {
    return terms_.empty() ? 0 : cmwitness::total_degree(terms_.front().exps);
  }

  std::uint32_t degree_in(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_)
      if (v < t.exps.size()) d = std::max(d, t.exps[v]);
    return d;
  }

  /// Index of the highest-numbered variable occurring, or -1 for constants.
  int highest_variable() const {
    int h = -1;
    for (const auto& t : terms_)
      for (std::size_t i = t.exps.size(); i-- > 0;)
        if (t.exps[i] != 0) {
          h = std::max(h, static_cast<int>(i));
          break;
        }
    return h;
  }

  /// Same polynomial viewed in a ring with `n` variables; only constants may change count.
  Polynomial with_nvars(std::size_t n) const {
    if (n == nvars_) return *this;
    if (!is_constant()) throw std::invalid_argument("variable count mismatch");
    Polynomial p = zero(n);
    if (!terms_.empty()) p.terms_.push_back(Term{Exponents(n, 0), terms_[0].coeff});
    return p;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    const std::size_t n = std::max(a.nvars_, b.nvars_);
    if (a.is_zero() || b.is_zero()) return zero(n);
    const Polynomial x = a.with_nvars(n), y = b.with_nvars(n);
    if (y.terms_.size() == 1) return x.times_term(y.terms_[0]);
    if (x.terms_.size() == 1) return y.times_term(x.terms_[0]);
    std::map<Exponents, C, GrlexGreater> acc;
    Exponents e(n);
    for (const auto& s : x.terms_)
      for (const auto& t : y.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = s.exps[i] + t.exps[i];
        C c = s.coeff * t.coeff;
        auto [it, inserted] = acc.try_emplace(e, c);
        if (!inserted) it->second += c;
      }
    return from_map(n, std::move(acc));
  }

  friend Polynomial operator*(const C& c, const Polynomial& p) {
    if (Traits::is_zero(c)) return zero(p.nvars_);
    Polynomial r = p;
    for (auto& t : r.terms_) t.coeff *= c;
    r.drop_zeros();
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
    if (!a.is_constant() || !b.is_constant()) return false;
    return a.terms_.empty() || a.terms_[0].coeff == b.terms_[0].coeff;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(nvars_, C(1));
    Polynomial base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  /// Multiplies by c·x^e.
  Polynomial times_term(const Term& m) const {
    Polynomial r = zero(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term u{t.exps, t.coeff * m.coeff};
      for (std::size_t i = 0; i < nvars_; ++i) u.exps[i] += m.exps[i];
      if (!Traits::is_zero(u.coeff)) r.terms_.push_back(std::move(u));
    }
    return r;  // multiplying by a monomial preserves the order
  }

  /// Formal partial derivative.
  Polynomial derivative(std::size_t v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.exps[v] == 0) continue;
      Term u = t;
      u.coeff *= C(static_cast<int>(t.exps[v]));
      u.exps[v] -= 1;
      out.push_back(std::move(u));
    }
    return from_terms(nvars_, std::move(out));
  }

  /// Replaces variable v by the polynomial r (in the same ring).
  Polynomial substitute(std::size_t v, const Polynomial& r) const {
    Polynomial out = zero(nvars_);
    const Polynomial rr = r.with_nvars(nvars_);
    std::map<std::uint32_t, Polynomial> powers;
    for (const auto& t : terms_) {
      Term rest = t;
      const std::uint32_t k = rest.exps[v];
      rest.exps[v] = 0;
      auto it = powers.find(k);
      if (it == powers.end()) it = powers.emplace(k, rr.pow(k)).first;
      out += it->second.times_term(rest);
    }
    return out;
  }

 private:
  static Polynomial from_map(std::size_t nvars, std::map<Exponents, C, GrlexGreater>&& acc) {
    Polynomial p = zero(nvars);
    p.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (!Traits::is_zero(c)) p.terms_.push_back(Term{e, std::move(c)});
    return p;
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    const std::size_t n = std::max(a.nvars_, b.nvars_);
    const Polynomial x = a.with_nvars(n), y = b.with_nvars(n);
    Polynomial r = zero(n);
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto i = x.terms_.begin(), j = y.terms_.begin();
    while (i != x.terms_.end() || j != y.terms_.end()) {
      std::strong_ordering ord = std::strong_ordering::equal;
      if (i == x.terms_.end())
        ord = std::strong_ordering::less;
      else if (j == y.terms_.end())
        ord = std::strong_ordering::greater;
      else
        ord = grlex_compare(i->exps, j->exps);
      if (ord == std::strong_ordering::greater) {
        r.terms_.push_back(*i++);
      } else if (ord == std::strong_ordering::less) {
        r.terms_.push_back(Term{j->exps, subtract ? C(-j->coeff) : j->coeff});
        ++j;
      } else {
        C c = subtract ? C(i->coeff - j->coeff) : C(i->coeff + j->coeff);
        if (!Traits::is_zero(c)) r.terms_.push_back(Term{i->exps, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return Traits::is_zero(t.coeff); });
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

using Poly = Polynomial<Integer>;
using F2Poly = Polynomial<F2>;

/// Exact quotient a / b, or NotDivisible.
///
/// Works in any term order: if a = b·q then LT(a) = LT(b)·LT(q), so repeated
/// leading-term division either reaches zero or exposes a non-divisible term.
template <class C>
std::optional<Polynomial<C>> try_divide_exact(const Polynomial<C>& a, const Polynomial<C>& b) {
  using P = Polynomial<C>;
  using Tr = CoeffTraits<C>;
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const std::size_t n = std::max(a.nvars(), b.nvars());
  P rem = a.with_nvars(n);
  const P div = b.with_nvars(n);
  const auto& lb = div.leading_term();
  std::vector<typename P::Term> quotient;
  while (!rem.is_zero()) {
    const auto& lr = rem.leading_term();
    typename P::Term q{Exponents(n), C(0)};
    for (std::size_t i = 0; i < n; ++i) {
      if (lr.exps[i] < lb.exps[i]) return std::nullopt;
      q.exps[i] = lr.exps[i] - lb.exps[i];
    }
    if (!Tr::divides(lb.coeff, lr.coeff)) return std::nullopt;
    q.coeff = Tr::exact_div(lr.coeff, lb.coeff);
    rem -= div.times_term(q);
    quotient.push_back(std::move(q));
  }
  return P::from_terms(n, std::move(quotient));
}

template <class C>
Polynomial<C> divide_exact(const Polynomial<C>& a, const Polynomial<C>& b) {
  auto q = try_divide_exact(a, b);
  if (!q) throw NotDivisible();
  return std::move(*q);
}

template <class C>
bool divides(const Polynomial<C>& d, const Polynomial<C>& n) {
  return try_divide_exact(n, d).has_value();
}

/// Integer content (gcd of coefficients, nonnegative).
inline Integer content(const Poly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) g = CoeffTraits<Integer>::gcd(g, t.coeff);
  return g;
}

/// 2-adic valuation of the content; p must be nonzero.
inline unsigned two_adic_valuation(const Poly& p) {
  Integer c = content(p);
  return static_cast<unsigned>(mpz_scan1(c.get_mpz_t(), 0));
}

/// Every coefficient divisible by 2^k.
inline bool all_coefficients_divisible(const Poly& p, unsigned k) {
  for (const auto& t : p.terms())
    if (mpz_divisible_2exp_p(t.coeff.get_mpz_t(), k) == 0) return false;
  return true;
}

/// p / 2^k where the division is known to be exact.
inline Poly divide_by_power_of_two(const Poly& p, unsigned k) {
  std::vector<Poly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), Integer(Integer(1) << k).get_mpz_t());
    out.push_back({t.exps, q});
  }
  return Poly::from_terms(p.nvars(), std::move(out));
}

inline Poly times_power_of_two(const Poly& p, unsigned k) {
  return Integer(Integer(1) << k) * p;
}

/// Projection S → S/2S.
inline F2Poly reduce_mod2(const Poly& p) {
  std::vector<F2Poly::Term> out;
  for (const auto& t : p.terms())
    if (mpz_odd_p(t.coeff.get_mpz_t()) != 0) out.push_back({t.exps, F2(1)});
  return F2Poly::from_terms(p.nvars(), std::move(out));
}

/// Canonical lift S/2S → S with coefficients in {0, 1}.
inline Poly lift_f2(const F2Poly& p) {
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) out.push_back({t.exps, Integer(1)});
  return Poly::from_terms(p.nvars(), std::move(out));
}

/// Square root in S/2S: halve every exponent, or none if some exponent is odd.
inline std::optional<F2Poly> sqrt_f2(const F2Poly& a) {
  std::vector<F2Poly::Term> out;
  for (const auto& t : a.terms()) {
    F2Poly::Term r{t.exps, F2(1)};
    for (auto& e : r.exps) {
      if (e % 2 != 0) return std::nullopt;
      e /= 2;
    }
    out.push_back(std::move(r));
  }
  return F2Poly::from_terms(a.nvars(), std::move(out));
}

/// Units of the localization at (2, x1..xn): odd constant term.
inline bool is_unit_local(const Poly& a) {
  return mpz_odd_p(a.constant_term().get_mpz_t()) != 0;
}

/// Units of S/2S localized at (x1..xn): constant term 1.
inline bool is_unit_local(const F2Poly& a) { return a.constant_term().is_one(); }

}  // namespace cmwitness
