#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace igusa {

using Integer = mpz_class;
using Rational = mpq_class;

/// Euler's totient.
long euler_phi(long m);

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
/// Results are cached; the returned reference stays valid for the program
/// lifetime and the cache is safe to use from several threads.
const std::vector<Integer>& cyclotomic_polynomial(long m);

/// Element of the cyclotomic field Q(zeta_m), stored in the power basis
/// 1, zeta, ..., zeta^(phi(m)-1) and always reduced modulo Phi_m.
///
/// Level-1 elements are plain rationals. Arithmetic requires equal levels,
/// except that a level-1 operand (an element of Q) is accepted against any
/// level since Q sits inside every cyclotomic field.
class CycloRational {
 public:
  CycloRational() : level_(1), coeffs_(1) {}
  CycloRational(long value) : level_(1), coeffs_{Rational(value)} {}  // NOLINT
  CycloRational(Rational value) : level_(1), coeffs_{std::move(value)} { coeffs_[0].canonicalize(); }  // NOLINT
  CycloRational(const Rational& value, long level);

  /// Takes coefficients in the power basis; they must already have length
  /// phi(level). Throws ConfigError otherwise.
  static CycloRational from_coeffs(long level, std::vector<Rational> coeffs);
  static CycloRational root_of_unity(long level, long j);

  long level() const noexcept { return level_; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// The value as an element of Q. Throws DomainError when irrational.
  const Rational& to_rational() const;

  /// Upper bound for the complex modulus: sum of |coefficients|.
  Rational modulus_bound() const;

  CycloRational inverse() const;
  CycloRational pow(long e) const;

  /// Embeds a level-1 value into `level`, or checks that the level matches.
  CycloRational at_level(long level) const;

  CycloRational& operator+=(const CycloRational& rhs);
  CycloRational& operator-=(const CycloRational& rhs);
  CycloRational& operator*=(const CycloRational& rhs);
  CycloRational& operator/=(const CycloRational& rhs);

  friend CycloRational operator+(CycloRational lhs, const CycloRational& rhs) { return lhs += rhs; }
  friend CycloRational operator-(CycloRational lhs, const CycloRational& rhs) { return lhs -= rhs; }
  friend CycloRational operator*(CycloRational lhs, const CycloRational& rhs) { return lhs *= rhs; }
  friend CycloRational operator/(CycloRational lhs, const CycloRational& rhs) { return lhs /= rhs; }
  CycloRational operator-() const;

  friend bool operator==(const CycloRational& a, const CycloRational& b);

  /// "p/q" for rationals, "[c0,c1,...]" in the power basis otherwise.
  std::string to_string() const;

 private:
  static long common_level(const CycloRational& a, const CycloRational& b);

  long level_;
  std::vector<Rational> coeffs_;
};

/// A nonzero scalar zeta_m^root * q^q_exp. The root index is reduced modulo
/// the working level by ScalarField::normalize.
struct UnitScalar {
  long root = 0;
  long q_exp = 0;

  static UnitScalar one() { return {}; }
  static UnitScalar q_power(long a) { return {0, a}; }

  /// |u| = q^q_exp, so |u| < 1 iff q_exp < 0.
  bool magnitude_below_one() const { return q_exp < 0; }

  UnitScalar inverse() const { return {-root, -q_exp}; }
  UnitScalar pow(long e) const { return {root * e, q_exp * e}; }
  friend UnitScalar operator*(UnitScalar a, UnitScalar b) {
    return {a.root + b.root, a.q_exp + b.q_exp};
  }
  friend auto operator<=>(const UnitScalar&, const UnitScalar&) = default;
};

/// The concrete residue cardinality q and cyclotomic level m that every
/// symbolic value is built over.
struct ScalarField {
  long q = 2;
  long level = 1;

  /// Throws ConfigError unless q >= 2 and level >= 1.
  void validate() const;

  UnitScalar normalize(UnitScalar u) const;
  bool is_one(UnitScalar u) const;
  bool same(UnitScalar a, UnitScalar b) const { return normalize(a) == normalize(b); }

  CycloRational embed(UnitScalar u) const;
  CycloRational embed(const Rational& r) const { return CycloRational(r, level); }
  /// q^a as an exact rational.
  Rational q_power(long a) const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;
};

/// Canonical rendering "z^j*q^a".
std::string to_string(UnitScalar u);

/// Binomial coefficient C(x, k) for x >= 0 (zero when k > x).
Integer binomial(long x, long k);

}  // namespace igusa
