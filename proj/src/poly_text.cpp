#include "gpi/poly_text.hpp"

#include <cctype>
#include <vector>

#include "gpi/errors.hpp"

namespace gpi {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const GroupSpec& spec) : spec_(spec) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  NcPolynomial parse_all() {
    if (text_.empty()) throw ParseError("empty polynomial");
    NcPolynomial p = expr();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                     text_ + "'");
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(text_[pos_++]);
    if (d.empty()) fail("expected digits");
    return d;
  }

  NcPolynomial expr() {
    NcPolynomial acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    NcPolynomial t = term();
    acc += negate ? -t : t;
    while (!at_end() && (peek() == '+' || peek() == '-')) {
      const bool minus = text_[pos_++] == '-';
      t = term();
      acc += minus ? -t : t;
    }
    return acc;
  }

  NcPolynomial term() {
    NcPolynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  NcPolynomial factor() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (accept('/')) num += "/" + digits();
      return NcPolynomial::constant(parse_rational(num));
    }
    if (c == '(') {
      ++pos_;
      NcPolynomial inner = expr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      std::vector<NcPolynomial> args{expr()};
      while (accept(',')) args.push_back(expr());
      expect(']');
      if (args.size() < 2) fail("commutator needs at least two arguments");
      return commutator(args);
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      const VarId id = std::stoull(digits());
      if (id == 0) fail("variable ids start at 1");
      GroupElement degree;
      if (c == 'x') {
        degree = spec_.identity();
        if (accept('^')) degree = bracketed_degree();
      } else {
        if (spec_.cyclic_orders() != std::vector<int>{2}) {
          fail("y/z variables require the group Z2");
        }
        degree = spec_.make({c == 'z' ? 1 : 0});
      }
      return NcPolynomial::variable(id, degree);
    }
    fail("expected a factor");
  }

  GroupElement bracketed_degree() {
    expect('(');
    std::vector<int> residues;
    if (!accept(')')) {
      residues.push_back(std::stoi(digits()));
      while (accept(',')) residues.push_back(std::stoi(digits()));
      expect(')');
    }
    GroupElement g{residues};
    if (!spec_.conforms(g)) fail("degree " + to_string(g) + " not in the group");
    return g;
  }

  std::string text_;
  std::size_t pos_ = 0;
  const GroupSpec& spec_;
};

std::string print_word(const Word& w, const Universe& universe) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += "x" + std::to_string(w[i]) + "^" + to_string(universe.at(w[i]));
  }
  return s;
}

}  // namespace

NcPolynomial parse_polynomial(std::string_view text, const GroupSpec& spec) {
  return Parser(text, spec).parse_all();
}

std::string print_polynomial(const NcPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : f.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += print_word(w, f.universe());
    } else {
      out += to_string(magnitude) + "*" + print_word(w, f.universe());
    }
  }
  return out;
}

GroupElement parse_group_element(std::string_view text, const GroupSpec& spec) {
  std::string body;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') {
      body.push_back(c);
    }
  }
  std::vector<int> residues;
  std::size_t start = 0;
  while (start < body.size()) {
    const auto comma = body.find(',', start);
    const std::string part =
        body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.empty()) throw ParseError("empty residue in '" + std::string(text) + "'");
    try {
      std::size_t used = 0;
      residues.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ParseError("bad residue");
    } catch (const std::logic_error&) {
      throw ParseError("bad residue '" + part + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  GroupElement g{residues};
  if (!spec.conforms(g)) {
    throw ParseError("'" + std::string(text) + "' is not an element of the group");
  }
  return g;
}

}  // namespace gpi
