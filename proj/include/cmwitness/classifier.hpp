#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmwitness/homological.hpp"
#include "cmwitness/quartic_algebra.hpp"

namespace cmwitness {

enum class CaseTag {
  OutsideScope_not_S2,
  CaseA_bothHypersurfacesNonNormal,
  CaseA_oneHypersurfaceNonNormal,
  CaseB_productNotS2w4,
  CaseC_CM_twoGenerated,
  CaseC_NonCM_grade3,
  CaseC_NonCM_grade2,
};

std::string to_string(CaseTag tag);
/// Cohen–Macaulayness of R as a function of the case; none outside scope.
std::optional<bool> cm_verdict(CaseTag tag);

/// An identity the constructions rely on failed: an implementation bug, never an input problem.
class ClosureFailure : public std::runtime_error {
 public:
  explicit ClosureFailure(const std::string& what) : std::runtime_error(what) {}
};

class WrongCase : public std::invalid_argument {
 public:
  explicit WrongCase(const std::string& what) : std::invalid_argument(what) {}
};

CaseTag classify(const AlgebraDesc& alg);

/// Integer lifts of the factorization h̄1 = z·c, h̄2 = z·e.
struct QLifts {
  QShape shape;
  Poly z;
  Poly c;
  Poly e;
};

QLifts q_lifts(const AlgebraDesc& alg);

struct MinPolyRecord {
  std::string name;
  KElement c1;  // x² = c1·x + c0
  KElement c0;
  bool ok = false;
};

struct RingPresentation {
  CaseTag case_tag{};
  bool sfree = false;
  bool cm_verdict = false;
  std::vector<std::string> generator_names;
  /// S-basis of R when sfree, otherwise the presentation generators.
  std::vector<KElement> generators;
  std::vector<MinPolyRecord> min_polys;
  std::optional<MultiplicationTable> mult_table;
  /// Relations among the generators, one column each (empty when sfree).
  PolyMatrix relations;
  /// Named checks on the presentation (relation exactness, rank, saturation).
  std::vector<std::pair<std::string, bool>> checks;
};

RingPresentation build_R(const AlgebraDesc& alg, CaseTag tag);

/// Named elements of A and K used throughout the constructions.
struct NamedIdeals {
  IdealGens P;  // (2, ω − h1, μ − h2)
  IdealGens I;  // (2, ωμ − h1h2, h2ω − h1μ)
  IdealGens J;  // (2, ωμ − h1h2)
  KElement eta;  // (ω + h1)(μ + h2)/2
};

NamedIdeals named_ideals(const AlgebraDesc& alg);

struct ConductorReport {
  bool available = false;
  std::string name;
  std::optional<IdealGens> ideal;
  bool verified = false;
  std::string reason;
  /// J with J·R ⊆ A, reported in every case (c).
  std::optional<IdealGens> j_datum;
  bool j_verified = false;
};

ConductorReport conductor(const AlgebraDesc& alg, CaseTag tag, const RingPresentation& r);
ConductorReport conductor(const AlgebraDesc& alg, CaseTag tag);

struct CmModuleCertificate {
  IdealGens ideal_I;
  IdealGens ideal_P;
  IdealGens ideal_IP;
  IdealGens ideal_H;
  std::vector<std::pair<std::string, bool>> checks;
  MembershipOracle module_M_oracle;
  FreeComplex I_resolution;
  FreeComplex Q_resolution;
  PdDepth pd_I;

  bool valid() const;
};

CmModuleCertificate build_small_cm_certificate(const AlgebraDesc& alg, CaseTag tag, unsigned spot_check_seed = 1);

/// V²·g = Y²·f + 4(V² − Y²) over a ring with variables named X, Y, V.
bool outside_scope_identity(const BaseRing& ring, const Poly& f, const Poly& g);

struct OutsideScopeRegression {
  bool predicates_ok = false;
  bool outside_scope = false;
  bool identity_ok = false;
  bool relations_ok = false;
  bool composition_zero = false;
  bool psi_rank_one = false;
  CaseTag substituted_case{};
  bool substituted_cm = false;

  bool passed() const;
};

OutsideScopeRegression outside_scope_regression(const BaseRing& ring);

}  // namespace cmwitness
