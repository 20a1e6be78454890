#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmwitness/f2_linear.hpp"
#include "cmwitness/poly_io.hpp"
#include "cmwitness/predicates.hpp"

namespace cmwitness {

/// Raised when (f, g) fails one of the standing hypotheses.
class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(std::string predicate, const std::string& detail)
      : std::invalid_argument(predicate + ": " + detail), predicate_(std::move(predicate)) {}
  const std::string& predicate() const { return predicate_; }

 private:
  std::string predicate_;
};

/// A = S[ω, μ] with ω² = f, μ² = g.
struct AlgebraDesc {
  BaseRing ring;
  Poly f;
  Poly g;
  std::optional<S2Witness> wf;
  std::optional<S2Witness> wg;

  std::size_t nvars() const { return f.nvars(); }
};

AlgebraDesc make_algebra(const BaseRing& ring, const Poly& f, const Poly& g);

/// (n0 + n1·ω + n2·μ + n3·ωμ) / 2^k, kept reduced: k = 0 or some coordinate is not even.
class KElement {
 public:
  using Coords = std::array<Poly, 4>;

  KElement() = default;
  KElement(Coords coords, unsigned denom_exp);

  static KElement scalar(const Poly& s);
  static KElement one(std::size_t nvars);
  static KElement omega(std::size_t nvars);
  static KElement mu(std::size_t nvars);
  static KElement omega_mu(std::size_t nvars);

  const Coords& coords() const& { return coords_; }
  Coords coords() && { return std::move(coords_); }
  const Poly& coord(std::size_t i) const { return coords_[i]; }
  unsigned denom_exp() const { return denom_exp_; }
  bool is_zero() const;

  KElement operator-() const;
  friend KElement operator+(const KElement& a, const KElement& b);
  friend KElement operator-(const KElement& a, const KElement& b);
  friend KElement operator*(const Poly& s, const KElement& x);
  /// x / 2^k
  KElement halved(unsigned k = 1) const;

  friend bool operator==(const KElement&, const KElement&) = default;

 private:
  void reduce();

  Coords coords_;
  unsigned denom_exp_ = 0;
};

KElement k_mul(const AlgebraDesc& alg, const KElement& a, const KElement& b);
bool a_membership(const KElement& x);
/// x² − c1·x − c0 = 0 in K.
bool min_poly_check(const AlgebraDesc& alg, const KElement& x, const KElement& c1, const KElement& c0);

/// Element of S as a fraction whose denominator is a unit of S.
struct SElement {
  Poly num;
  Poly den;

  bool is_polynomial() const { return den == Poly::constant(den.nvars(), Integer(1)); }
  friend bool operator==(const SElement&, const SElement&) = default;
};

std::string to_string(const SElement& s, const BaseRing& ring);

struct MultiplicationTable {
  std::vector<KElement> gens;
  /// entries[i][j][k]: coefficient of gens[k] in gens[i]·gens[j].
  std::vector<std::vector<std::vector<SElement>>> entries;
};

class NotClosed : public std::runtime_error {
 public:
  NotClosed(std::size_t i, std::size_t j)
      : std::runtime_error("product of generators " + std::to_string(i) + " and " + std::to_string(j) +
                           " leaves the span"),
        i_(i),
        j_(j) {}
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }

 private:
  std::size_t i_, j_;
};

class SpanNotFree : public std::runtime_error {
 public:
  SpanNotFree() : std::runtime_error("generators are linearly dependent over S") {}
};

/// Expresses x in the S-span of gens; none if x is outside it. Throws SpanNotFree.
std::optional<std::vector<SElement>> solve_in_span(const std::vector<KElement>& gens, const KElement& x);

MultiplicationTable span_closure_check(const AlgebraDesc& alg, const std::vector<KElement>& gens);

struct IdealGens {
  AlgebraDesc algebra;
  std::vector<KElement> gens;
};

IdealGens ideal_product(const IdealGens& a, const IdealGens& b);

/// The dual (A :_K J) of an ideal J, as a membership test: x belongs iff x·J ⊆ A.
/// A itself is the dual of the unit ideal.
struct MembershipOracle {
  std::string name;
  std::vector<KElement> dual_of;

  static MembershipOracle ring_A(std::size_t nvars);
  static MembershipOracle dual(std::string name, const IdealGens& ideal);
  bool contains(const AlgebraDesc& alg, const KElement& x) const;
};

bool colon_membership(const KElement& x, const IdealGens& ideal, const MembershipOracle& target);

class BoundTooLarge : public std::invalid_argument {
 public:
  explicit BoundTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

/// Monomials of total degree at most D, in decreasing graded lex order.
std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned degree);

/// Coordinates of (n0..n3) mod 2 against the basis monomial·{1, ω, μ, ωμ} of degree ≤ D.
F2Vector encode_mod2(const KElement::Coords& n, const std::vector<Exponents>& monomials);

struct ColonSearchResult {
  unsigned denom_bound = 0;
  unsigned degree_bound = 0;
  /// Basis of the solutions beyond A, reduced; denominators divide 2^k.
  std::vector<KElement> new_elements;
  /// For k = 1: reduced echelon basis of the solution numerators mod 2 (see encode_mod2).
  std::vector<F2Vector> span_mod2;
};

ColonSearchResult bounded_colon_search(const IdealGens& ideal, const MembershipOracle& target, unsigned k,
                                       unsigned degree_bound);

}  // namespace cmwitness
