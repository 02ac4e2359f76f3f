// Canonical text form of FactoredRatFun:
//
//   ratfun := "t^" INT " * (" poly ") / " denom
//   poly   := "0" | term (" + " term)*          terms by increasing exponent
//   term   := coeff "*t^" INT
//   coeff  := RAT | "[" RAT ("," RAT)* "]"      power basis for level > 1
//   denom  := "1" | factor (" * " factor)*      factors in canonical order
//   factor := "(1 - z^" INT "*q^" INT "*t^" INT ")^" INT
#include <cctype>
#include <sstream>

#include "igusa/errors.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  bool peek(std::string_view lit) const { return s_.substr(pos_, lit.size()) == lit; }

  void expect(std::string_view lit) {
    if (!peek(lit)) fail("expected '" + std::string(lit) + "'");
    pos_ += lit.size();
  }

  bool accept(std::string_view lit) {
    if (!peek(lit)) return false;
    pos_ += lit.size();
    return true;
  }

  long integer() {
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty() || tok == "-") fail("expected integer");
    try {
      return std::stol(tok);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }

  Rational rational() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
                                s_[pos_] == '/'))
      ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    Rational r;
    if (tok.empty() || r.set_str(tok, 10) != 0) fail("expected rational");
    if (r.get_den() == 0) fail("zero denominator");
    Rational canon = r;
    canon.canonicalize();
    if (canon.get_str() != tok) fail("non-canonical rational '" + tok + "'");
    return canon;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

CycloRational parse_coeff(Cursor& c, const ScalarField& field) {
  if (c.accept("[")) {
    std::vector<Rational> v;
    v.push_back(c.rational());
    while (c.accept(",")) v.push_back(c.rational());
    c.expect("]");
    try {
      return CycloRational::from_coeffs(field.level, std::move(v));
    } catch (const ConfigError& e) {
      c.fail(e.what());
    }
  }
  return field.embed(c.rational());
}

std::string coeff_text(const CycloRational& c, long level) {
  return c.at_level(level).to_string();
}

}  // namespace

std::string to_text(const FactoredRatFun& r) {
  std::ostringstream os;
  os << "t^" << r.t_power() << " * (";
  if (r.numerator().is_zero()) {
    os << '0';
  } else {
    bool first = true;
    for (const auto& [e, c] : r.numerator().terms()) {
      if (!first) os << " + ";
      first = false;
      os << coeff_text(c, r.field().level) << "*t^" << e;
    }
  }
  os << ") / ";
  if (r.denominator().empty()) {
    os << '1';
  } else {
    bool first = true;
    for (const auto& f : r.denominator()) {
      if (!first) os << " * ";
      first = false;
      os << "(1 - " << to_string(f.base) << "*t^" << f.degree << ")^" << f.multiplicity;
    }
  }
  return os.str();
}

FactoredRatFun parse_ratfun_text(std::string_view text, ScalarField field) {
  field.validate();
  Cursor c(text);
  c.expect("t^");
  long v = c.integer();
  c.expect(" * (");
  Poly num;
  if (!c.accept("0)")) {
    long prev = -1;
    do {
      CycloRational coeff = parse_coeff(c, field);
      c.expect("*t^");
      long e = c.integer();
      if (e <= prev) c.fail("numerator exponents must increase");
      if (coeff.is_zero()) c.fail("zero coefficient");
      prev = e;
      num += Poly::monomial(coeff, e);
    } while (c.accept(" + "));
    c.expect(")");
  }
  c.expect(" / ");
  std::vector<DenomFactor> denom;
  if (!c.accept("1")) {
    do {
      c.expect("(1 - z^");
      DenomFactor f;
      f.base.root = c.integer();
      c.expect("*q^");
      f.base.q_exp = c.integer();
      c.expect("*t^");
      f.degree = c.integer();
      c.expect(")^");
      f.multiplicity = c.integer();
      if (f.degree < 1 || f.multiplicity < 1) c.fail("factor degree and multiplicity must be positive");
      denom.push_back(f);
    } while (c.accept(" * "));
  }
  if (!c.done()) c.fail("trailing input");
  return FactoredRatFun(field, v, std::move(num), std::move(denom));
}

}  // namespace igusa
