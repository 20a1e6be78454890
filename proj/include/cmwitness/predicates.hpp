#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmwitness/polynomial.hpp"

namespace cmwitness {

class ZeroInput : public std::invalid_argument {
 public:
  ZeroInput() : std::invalid_argument("zero polynomial where a nonzero one is required") {}
};

/// Squareness of a unit in the localization could not be decided.
class Unsupported : public std::domain_error {
 public:
  explicit Unsupported(const std::string& what) : std::domain_error(what) {}
};

class MalformedSequence : public std::invalid_argument {
 public:
  explicit MalformedSequence(const std::string& what) : std::invalid_argument(what) {}
};

/// input = h² + 2a
struct S2Witness {
  Poly h;
  Poly a;
};

/// input = h² + 4a′
struct S2w4Witness {
  Poly h;
  Poly a_prime;
};

enum class QTag { UnitIdeal, TwoGenerated, Grade3CI_NotTwoGen, Grade2Pd3 };

std::string to_string(QTag tag);

/// Shape of Q = (2, h1, h2) read off the factorization h̄1 = z·c, h̄2 = z·e in S/2S.
struct QShape {
  F2Poly z;
  F2Poly c;
  F2Poly e;
  QTag tag;
};

bool is_squarefree(const Poly& f);
bool satisfies_A1(const Poly& f, const Poly& g);
/// False when one of f, g, fg is a square of L; throws Unsupported for undecidable unit cases.
bool degree_four_check(const Poly& f, const Poly& g);

std::optional<S2Witness> decompose_S2(const Poly& f);
/// Decides membership in S^{2∧4} from any S² decomposition of f.
std::optional<S2w4Witness> in_S2wedge4(const Poly& f, const S2Witness& w);
std::optional<S2w4Witness> in_S2wedge4(const Poly& f);
/// fg ∈ S^{2∧4} via the parity of a·h2² + b·h1².
bool product_in_S2wedge4(const S2Witness& wf, const S2Witness& wg);

QShape ideal_Q_classify(const Poly& h1, const Poly& h2);
/// Whether the sequence (2, c, e) is regular, judged in S/2S.
bool regular_sequence_certificate(const std::vector<Poly>& seq);

}  // namespace cmwitness
