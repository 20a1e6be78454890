#include "cmwitness/poly_io.hpp"

#include <cctype>
#include <set>

namespace cmwitness {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (std::isalpha(static_cast<unsigned char>(s[0])) == 0 && s[0] != '_') return false;
  for (char ch : s)
    if (std::isalnum(static_cast<unsigned char>(ch)) == 0 && ch != '_') return false;
  return true;
}

// Recursive descent over the grammar
//   expr := ['+'|'-'] term (('+'|'-') term)*
//   term := factor ('*' factor)*
//   factor := '-' factor | base ('^' nat)?
//   base := integer | variable | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const BaseRing& ring) : text_(text), ring_(ring) {}

  Poly run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    Poly p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = Poly::zero(ring_.nvars());
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Poly t = term();
    acc = negate ? acc - t : acc + t;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Poly factor() {
    if (accept('-')) return -factor();
    Poly b = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      Integer k = natural();
      if (k > 1024) throw ParseError("exponent too large", start);
      b = b.pow(static_cast<unsigned>(k.get_ui()));
    }
    return b;
  }

  Integer natural() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) throw ParseError("expected a natural number", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Poly base() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) != 0)
      return Poly::constant(ring_.nvars(), natural());
    if (std::isalpha(static_cast<unsigned char>(ch)) != 0 || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const int idx = ring_.index_of(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", start);
      return Poly::variable(ring_.nvars(), static_cast<std::size_t>(idx));
    }
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  std::string_view text_;
  const BaseRing& ring_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Exponents& e, const BaseRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables.at(i);
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

template <class C>
std::string print(const Polynomial<C>& p, const BaseRing& ring) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    std::string coeff = CoeffTraits<C>::to_string(t.coeff);
    const bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    const std::string mono = monomial_text(t.exps, ring);
    if (mono.empty())
      out += coeff;
    else if (coeff == "1")
      out += mono;
    else
      out += coeff + '*' + mono;
  }
  return out;
}

}  // namespace

void BaseRing::validate() const {
  if (variables.empty()) throw std::invalid_argument("base ring needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (!is_identifier(v)) throw std::invalid_argument("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw std::invalid_argument("repeated variable name '" + v + "'");
  }
}

int BaseRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return static_cast<int>(i);
  return -1;
}

Poly parse_poly(std::string_view text, const BaseRing& ring) { return Parser(text, ring).run(); }

std::string to_string(const Poly& p, const BaseRing& ring) { return print(p, ring); }
std::string to_string(const F2Poly& p, const BaseRing& ring) { return print(p, ring); }

}  // namespace cmwitness
