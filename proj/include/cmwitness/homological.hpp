#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmwitness/poly_matrix.hpp"
#include "cmwitness/predicates.hpp"

namespace cmwitness {

/// 0 → F_n → … → F_1 → F_0 over S, stored as maps[i] = d_{i+1}: F_{i+1} → F_i.
///
/// A Cokernel complex resolves coker d_1; an ImageOfFirst complex resolves im d_1
/// (the leftmost map only embeds the module into a free module).
struct FreeComplex {
  enum class Resolves { Cokernel, ImageOfFirst };

  std::vector<PolyMatrix> maps;
  std::vector<std::string> labels;  // one per free module, F_0 first
  Resolves resolves = Resolves::Cokernel;

  std::size_t length() const { return maps.size(); }
};

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch() : std::invalid_argument("adjacent maps are not composable") {}
};

class WitnessMismatch : public std::invalid_argument {
 public:
  explicit WitnessMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class LiftInvalid : public std::invalid_argument {
 public:
  explicit LiftInvalid(const std::string& what) : std::invalid_argument(what) {}
};

class MissingCertificate : public std::invalid_argument {
 public:
  explicit MissingCertificate(const std::string& what) : std::invalid_argument(what) {}
};

class UnverifiedComplex : public std::logic_error {
 public:
  UnverifiedComplex() : std::logic_error("projective dimension requested for an unverified complex") {}
};

/// Claim that the ideal generated by `ideal_generators` has grade ≥ lower_bound,
/// witnessed by a regular sequence of (signed) generators.
struct GradeCertificate {
  std::vector<Poly> ideal_generators;
  int lower_bound = 0;
  std::vector<Poly> witness;
};

/// Whether the witness consists of ± ideal generators forming a regular sequence of
/// the claimed length. Accepted shapes: (x) with x ≠ 0; (±2^j, y) with ȳ ≠ 0;
/// (±2^j, c, e) with c̄ ≠ 0 and gcd(c̄, ē) a unit.
bool verify_grade_certificate(const GradeCertificate& cert);

/// Complex of the submodule C of A spanned by 2ω, 2μ, h2·ω − h1·μ, plus the
/// generating-set identities; `e` receives (fg − h1²h2²)/4.
struct IResolution {
  FreeComplex complex;
  Poly e;
  bool identities_ok = false;
};

IResolution resolution_of_I(const S2Witness& wf, const S2Witness& wg, const Poly& f, const Poly& g);

/// 0 → S → S³ → S³ → S → S/(2, zc, ze) → 0.
FreeComplex resolution_of_S_mod_Q(const Poly& z, const Poly& c, const Poly& e);

bool check_composition_zero(const FreeComplex& cx);

/// Buchsbaum–Eisenbud: rank additivity plus grade(I_{r_i}(d_i)) ≥ i for every map.
/// grades[i] certifies the ideal of rank-size minors of maps[i]; an ideal that
/// contains a unit needs no witness.
bool be_exactness_check(const FreeComplex& cx, const std::vector<GradeCertificate>& grades);

/// Grade certificates for both complexes above, chosen from entries and minors.
std::vector<GradeCertificate> grade_certificates_for_I(const FreeComplex& cx, const Poly& h1, const Poly& h2);
std::vector<GradeCertificate> grade_certificates_for_Q(const FreeComplex& cx, const Poly& c, const Poly& e);

/// Saturation of ker d_1 = im d_2 for a two-map complex whose d_2 is a single column:
/// the generic kernel of d_1 is spanned by d_2 and the entries of d_2 have unit gcd in S.
bool kernel_saturation_check(const FreeComplex& cx);

/// Random-point version of the saturation check: at seeded integer points every
/// integer kernel vector of d_1 is proportional to d_2.
bool kernel_spot_check(const FreeComplex& cx, unsigned seed, int points);

struct PdDepth {
  int pd_bound = 0;
  int depth = 0;
  bool minimal = false;  // all entries non-units, so pd is exact
};

PdDepth pd_depth_report(const FreeComplex& cx, bool verified, int dimension);

}  // namespace cmwitness
