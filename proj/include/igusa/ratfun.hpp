#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "igusa/cyclo.hpp"
#include "igusa/poly.hpp"

namespace igusa {

/// One denominator factor (1 - base * t^degree)^multiplicity.
struct DenomFactor {
  UnitScalar base;
  long degree = 1;
  long multiplicity = 1;

  friend bool operator==(const DenomFactor&, const DenomFactor&) = default;
};

/// A rational function of t = q^{-s} in the factored form
///
///     t^v * P(t) / prod_i (1 - u_i t^{d_i})^{e_i}
///
/// with the u_i drawn from zeta_m^Z * q^Z. Factors are kept sorted by
/// (degree, q exponent, root) with distinct (base, degree) keys. The zero
/// function has a zero numerator, no factors and t^0.
///
/// Arithmetic normalizes its result; the constructor only canonicalizes the
/// factor list. Equality is decided by cross-multiplication and therefore
/// does not depend on normalization.
class FactoredRatFun {
 public:
  explicit FactoredRatFun(ScalarField field = {});
  FactoredRatFun(ScalarField field, long t_power, Poly numerator, std::vector<DenomFactor> denom);

  static FactoredRatFun constant(ScalarField field, const CycloRational& c);
  /// c * t^v.
  static FactoredRatFun monomial(ScalarField field, const CycloRational& c, long v);
  /// 1 / (1 - u t^d)^e.
  static FactoredRatFun geometric(ScalarField field, UnitScalar u, long d, long e = 1);

  const ScalarField& field() const { return field_; }
  long t_power() const { return t_power_; }
  const Poly& numerator() const { return numerator_; }
  const std::vector<DenomFactor>& denominator() const { return denom_; }
  bool is_zero() const { return numerator_.is_zero(); }

  /// Expanded denominator polynomial prod (1 - u t^d)^e.
  Poly denominator_poly() const;
  /// Removes factors (1 - u t^d) that divide the numerator exactly and moves
  /// powers of t out of the numerator into the prefactor.
  FactoredRatFun normalized() const;

  /// Exact value at a point t != 0 that is not a pole (DomainError otherwise).
  CycloRational evaluate(const CycloRational& t) const;

  FactoredRatFun operator-() const;
  friend FactoredRatFun operator+(const FactoredRatFun& a, const FactoredRatFun& b);
  friend FactoredRatFun operator-(const FactoredRatFun& a, const FactoredRatFun& b) { return a + (-b); }
  friend FactoredRatFun operator*(const FactoredRatFun& a, const FactoredRatFun& b);
  FactoredRatFun scaled(const CycloRational& c) const;

  friend bool operator==(const FactoredRatFun& a, const FactoredRatFun& b);
  /// Same stored representation (not just the same function).
  bool identical(const FactoredRatFun& other) const;

 private:
  void canonicalize();

  ScalarField field_;
  long t_power_ = 0;
  Poly numerator_;
  std::vector<DenomFactor> denom_;
};

enum class ArithOp { add, mul };

/// Exact sum or product; denominators merge by factor-wise lcm (add) or by
/// multiset union (mul). The result is normalized. Throws ConfigError when
/// the operands live over different fields.
FactoredRatFun ratfun_arith(const FactoredRatFun& lhs, const FactoredRatFun& rhs, ArithOp op);

/// Taylor coefficients of t^0..t^order. DomainError on a pole at t = 0.
std::vector<CycloRational> series_coeffs(const FactoredRatFun& r, long order);

/// Laurent expansion in w = 1 - a0 t, i.e. R = sum_i coeff(i) * w^i.
struct LaurentSeries {
  ScalarField field;
  UnitScalar center;
  long min_index = 0;
  long max_index = -1;
  /// Entries for min_index..max_index (empty when the window lies below
  /// min_index or the function is zero).
  std::vector<CycloRational> coeffs;
  bool zero = false;

  /// Zero below min_index; throws std::out_of_range above max_index.
  CycloRational coeff(long i) const;
  bool is_zero() const { return zero; }
};

/// Expands R around t = 1/a0 up to w^max_index. The principal part is always
/// complete.
LaurentSeries laurent_at(const FactoredRatFun& r, UnitScalar a0, long max_index);

/// Pole multiplicity of R at t = 1/a0 (0 when regular).
long pole_order(const FactoredRatFun& r, UnitScalar a0);

/// Substitutes t -> c t.
FactoredRatFun rescale_t(const FactoredRatFun& r, UnitScalar c);

/// Canonical text `t^v * (num) / denom`. See README for the grammar.
std::string to_text(const FactoredRatFun& r);
FactoredRatFun parse_ratfun_text(std::string_view text, ScalarField field);

}  // namespace igusa
