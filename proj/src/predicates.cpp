#include "cmwitness/predicates.hpp"

#include "cmwitness/poly_gcd.hpp"

namespace cmwitness {

std::string to_string(QTag tag) {
  switch (tag) {
    case QTag::UnitIdeal: return "UnitIdeal";
    case QTag::TwoGenerated: return "TwoGenerated";
    case QTag::Grade3CI_NotTwoGen: return "Grade3CI_NotTwoGen";
    case QTag::Grade2Pd3: return "Grade2Pd3";
  }
  return "?";
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw ZeroInput();
  if (two_adic_valuation(f) > 1) return false;
  const Poly pp = primitive_part(f);
  if (pp.is_constant()) return true;
  // Irreducible factors dividing every partial derivative are exactly the
  // repeated ones; only those outside the maximal ideal are harmless.
  Poly common = pp;
  for (std::size_t v = 0; v < pp.nvars(); ++v) {
    const Poly d = pp.derivative(v);
    if (!d.is_zero()) common = gcd(common, d);
  }
  return is_unit_local(primitive_part(common));
}

bool satisfies_A1(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) throw ZeroInput();
  if (two_adic_valuation(f) > 0 && two_adic_valuation(g) > 0) return false;
  return is_unit_local(gcd_q(f, g));
}

namespace {

enum class Squareness { NotSquare, Square, Undecided };

Squareness square_in_fraction_field(const Poly& x) {
  const Integer c = content(x);
  const Poly pp = divide_exact(x, Poly::constant(x.nvars(), c));
  // pp carries the sign of x; a square needs a positive leading coefficient.
  if (sgn(pp.leading_coeff()) < 0 || !exact_sqrt(pp)) return Squareness::NotSquare;
  if (mpz_perfect_square_p(c.get_mpz_t()) != 0) return Squareness::Square;
  return is_unit_local(x) ? Squareness::Undecided : Squareness::NotSquare;
}

}  // namespace

bool degree_four_check(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) throw ZeroInput();
  for (const Poly* x : {&f, &g}) {
    const auto s = square_in_fraction_field(*x);
    if (s == Squareness::Square) return false;
    if (s == Squareness::Undecided)
      throw Unsupported("cannot decide whether a unit times a square is a square in S");
  }
  const Poly fg = f * g;
  const auto s = square_in_fraction_field(fg);
  if (s == Squareness::Square) return false;
  if (s == Squareness::Undecided) throw Unsupported("cannot decide whether the unit fg is a square in S");
  return true;
}

std::optional<S2Witness> decompose_S2(const Poly& f) {
  auto root = sqrt_f2(reduce_mod2(f));
  if (!root) return std::nullopt;
  Poly h = lift_f2(*root).with_nvars(f.nvars());
  Poly a = divide_by_power_of_two(f - h * h, 1);
  return S2Witness{std::move(h), std::move(a)};
}

std::optional<S2w4Witness> in_S2wedge4(const Poly& f, const S2Witness& w) {
  if (f - w.h * w.h - Integer(2) * w.a != Poly::zero(f.nvars()))
    throw std::invalid_argument("S2 witness does not re-expand to the input");
  if (!all_coefficients_divisible(w.a, 1)) return std::nullopt;
  return S2w4Witness{w.h, divide_by_power_of_two(w.a, 1)};
}

std::optional<S2w4Witness> in_S2wedge4(const Poly& f) {
  auto w = decompose_S2(f);
  if (!w) return std::nullopt;
  return in_S2wedge4(f, *w);
}

bool product_in_S2wedge4(const S2Witness& wf, const S2Witness& wg) {
  return all_coefficients_divisible(wf.a * wg.h * wg.h + wg.a * wf.h * wf.h, 1);
}

QShape ideal_Q_classify(const Poly& h1, const Poly& h2) {
  const std::size_t n = std::max(h1.nvars(), h2.nvars());
  const F2Poly r1 = reduce_mod2(h1).with_nvars(n), r2 = reduce_mod2(h2).with_nvars(n);
  const F2Poly one = F2Poly::constant(n, F2(1));
  if (is_unit_local(r1) || is_unit_local(r2)) return QShape{one, r1, r2, QTag::UnitIdeal};
  // Q = (2): principal, recorded with z = 0 and unit cofactors.
  if (r1.is_zero() && r2.is_zero()) return QShape{F2Poly::zero(n), one, one, QTag::TwoGenerated};
  F2Poly z = gcd_f2(r1, r2);
  F2Poly c = divide_exact(r1, z), e = divide_exact(r2, z);
  QTag tag;
  if (is_unit_local(c) || is_unit_local(e))
    tag = QTag::TwoGenerated;
  else if (is_unit_local(z))
    tag = QTag::Grade3CI_NotTwoGen;
  else
    tag = QTag::Grade2Pd3;
  return QShape{std::move(z), std::move(c), std::move(e), tag};
}

bool regular_sequence_certificate(const std::vector<Poly>& seq) {
  if (seq.size() != 3) throw MalformedSequence("expected a sequence (2, c, e)");
  if (seq[0] != Poly::constant(seq[0].nvars(), Integer(2)))
    throw MalformedSequence("first element of the sequence must be 2");
  const std::size_t n = std::max(seq[1].nvars(), seq[2].nvars());
  const F2Poly c = reduce_mod2(seq[1]).with_nvars(n), e = reduce_mod2(seq[2]).with_nvars(n);
  if (c.is_zero()) return false;
  return is_unit_local(gcd_f2(c, e));
}

}  // namespace cmwitness
