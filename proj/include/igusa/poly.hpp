#pragma once

#include <map>
#include <optional>
#include <vector>

#include "igusa/cyclo.hpp"

namespace igusa {

/// Sparse univariate polynomial in t with cyclotomic-rational coefficients.
/// Zero coefficients are never stored; the empty map is the zero polynomial.
class Poly {
 public:
  Poly() = default;
  Poly(CycloRational constant);  // NOLINT
  static Poly monomial(CycloRational coeff, long exponent);
  /// Dense coefficients, constant term first.
  static Poly from_dense(const std::vector<CycloRational>& coeffs);

  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  /// Smallest exponent with a nonzero coefficient (0 for the zero polynomial).
  long low_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  CycloRational coeff(long exponent) const;
  const std::map<long, CycloRational>& terms() const { return terms_; }
  std::vector<CycloRational> dense() const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const CycloRational& c) const;
  /// Multiplies by t^k (k >= 0) or divides by t^{-k} (must be exact).
  Poly shifted(long k) const;

  CycloRational evaluate(const CycloRational& t) const;

  /// Exact quotient if `divisor` divides this polynomial, nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& divisor) const;
  /// Number of times (t - root) divides this polynomial (repeated synthetic
  /// division). The zero polynomial has no finite multiplicity; throws.
  long root_multiplicity(const CycloRational& root) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(long exponent, const CycloRational& c);

  std::map<long, CycloRational> terms_;
};

}  // namespace igusa
