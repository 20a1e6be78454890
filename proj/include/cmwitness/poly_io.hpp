#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmwitness/polynomial.hpp"

namespace cmwitness {

/// ℤ[x1..xn] localized at (2, x1..xn). The prime is fixed at 2.
struct BaseRing {
  std::vector<std::string> variables;
  static constexpr int prime = 2;

  std::size_t nvars() const { return variables.size(); }
  /// Throws std::invalid_argument on empty, malformed or repeated names.
  void validate() const;
  /// Index of a variable name, or -1.
  int index_of(std::string_view name) const;
  /// Krull dimension of S.
  int dimension() const { return static_cast<int>(variables.size()) + 1; }

  friend bool operator==(const BaseRing&, const BaseRing&) = default;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Poly parse_poly(std::string_view text, const BaseRing& ring);

/// Canonical text: terms in decreasing graded lex order, explicit '*' and '^'.
std::string to_string(const Poly& p, const BaseRing& ring);
std::string to_string(const F2Poly& p, const BaseRing& ring);

}  // namespace cmwitness
