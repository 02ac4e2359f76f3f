#include "igusa/character.hpp"

#include <cctype>

#include "igusa/errors.hpp"

namespace igusa {

namespace {

Rational frac_part(Rational r) {
  r.canonicalize();
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational out = r - Rational(fl);
  out.canonicalize();
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

long parse_long(std::string_view s, std::string_view what) {
  std::string_view body = s;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  if (!all_digits(body) || body.size() > 17) throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  return std::stol(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view body = num;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("invalid rational '" + std::string(text) + "'");
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(Integer(std::string(num)));
  } else {
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(den)) throw ParseError("invalid rational '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r = Rational(Integer(std::string(num)), d);
  }
  r.canonicalize();
  return r;
}

KCharacter KCharacter::unramified(const Rational& e) {
  KCharacter c;
  c.exponent_ = e;
  c.exponent_.canonicalize();
  return c;
}

KCharacter KCharacter::with_finite(long m, long j, const Rational& e) {
  if (m < 1) throw DomainError("finite-part order must be >= 1");
  KCharacter c = unramified(e);
  c.finite_ = frac_part(Rational(j, m));
  return c;
}

KCharacter KCharacter::inverse() const {
  KCharacter c;
  c.finite_ = frac_part(-finite_);
  c.exponent_ = -exponent_;
  return c;
}

KCharacter operator*(const KCharacter& a, const KCharacter& b) {
  KCharacter c;
  c.finite_ = frac_part(a.finite_ + b.finite_);
  c.exponent_ = a.exponent_ + b.exponent_;
  c.exponent_.canonicalize();
  return c;
}

KCharacter parse_character(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("character '" + std::string(text) + "' lacks ':exponent'");
  std::string_view head = text.substr(0, colon);
  Rational e = parse_rational(text.substr(colon + 1));
  if (head == "triv") return KCharacter::unramified(e);
  if (head.substr(0, 3) == "fin") {
    auto caret = head.find('^');
    if (caret == std::string_view::npos) throw ParseError("finite part '" + std::string(head) + "' lacks '^j'");
    long m = parse_long(head.substr(3, caret - 3), "finite-part order");
    long j = parse_long(head.substr(caret + 1), "finite-part label");
    if (m < 1) throw ParseError("finite-part order must be >= 1");
    return KCharacter::with_finite(m, j, e);
  }
  throw ParseError("character must start with 'triv' or 'fin<m>^j', got '" + std::string(text) + "'");
}

std::string to_string(const KCharacter& chi) {
  std::string e = chi.exponent().get_str();
  if (chi.finite_trivial()) return "triv:" + e;
  return "fin" + chi.finite_label().get_den().get_str() + "^" + chi.finite_label().get_num().get_str() + ":" + e;
}

}  // namespace igusa
