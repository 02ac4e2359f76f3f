#include "igusa/poly.hpp"

#include "igusa/errors.hpp"

namespace igusa {

Poly::Poly(CycloRational constant) {
  if (!constant.is_zero()) terms_.emplace(0, std::move(constant));
}

Poly Poly::monomial(CycloRational coeff, long exponent) {
  if (exponent < 0) throw DomainError("negative exponent in polynomial");
  Poly p;
  if (!coeff.is_zero()) p.terms_.emplace(exponent, std::move(coeff));
  return p;
}

Poly Poly::from_dense(const std::vector<CycloRational>& coeffs) {
  Poly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) p.terms_.emplace(static_cast<long>(i), coeffs[i]);
  return p;
}

CycloRational Poly::coeff(long exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? CycloRational() : it->second;
}

std::vector<CycloRational> Poly::dense() const {
  std::vector<CycloRational> out(static_cast<std::size_t>(degree() + 1));
  for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(e)] = c;
  return out;
}

void Poly::add_term(long exponent, const CycloRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::scaled(const CycloRational& s) const {
  if (s.is_zero()) return {};
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c *= s;
  return out;
}

Poly Poly::shifted(long k) const {
  if (k < 0 && !terms_.empty() && low_degree() + k < 0)
    throw DomainError("polynomial is not divisible by t^" + std::to_string(-k));
  Poly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

CycloRational Poly::evaluate(const CycloRational& t) const {
  // Horner over the sparse exponents, highest first.
  CycloRational acc;
  long prev = degree();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    acc *= t.pow(prev - it->first);
    acc += it->second;
    prev = it->first;
  }
  if (prev > 0) acc *= t.pow(prev);
  return acc;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  Poly rem = *this;
  Poly quot;
  const long dd = divisor.degree();
  const CycloRational lead_inv = divisor.terms_.rbegin()->second.inverse();
  while (!rem.is_zero() && rem.degree() >= dd) {
    long shift = rem.degree() - dd;
    CycloRational c = rem.terms_.rbegin()->second * lead_inv;
    quot.add_term(shift, c);
    for (const auto& [e, dc] : divisor.terms_) rem.add_term(e + shift, -(c * dc));
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

long Poly::root_multiplicity(const CycloRational& root) const {
  if (is_zero()) throw DomainError("root multiplicity of the zero polynomial");
  std::vector<CycloRational> coeffs = dense();
  long mult = 0;
  while (coeffs.size() > 1) {
    // Synthetic division by (t - root): b_{k-1} = a_k + root * b_k.
    std::vector<CycloRational> quot(coeffs.size() - 1);
    CycloRational carry;
    for (std::size_t i = coeffs.size(); i-- > 1;) {
      carry = coeffs[i] + root * carry;
      quot[i - 1] = carry;
    }
    CycloRational remainder = coeffs[0] + root * carry;
    if (!remainder.is_zero()) break;
    coeffs = std::move(quot);
    ++mult;
  }
  return mult;
}

}  // namespace igusa
