#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igusa/cyclo.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

/// One coordinate factor C(x_i, k) * u^{x_i} of a lattice term.
struct LatticeCoord {
  long k = 0;
  UnitScalar u;
};

/// coeff * prod_i C(x_i, k_i) u_i^{x_i}.
struct LatticeTerm {
  CycloRational coeff;
  std::vector<LatticeCoord> coords;

  long order() const;
};

/// A function on N^n that is a finite sum of binomial-times-character terms,
/// i.e. an element of the space of exponential polynomials of order <= k
/// written in the binomial basis.
class LatticeFunction {
 public:
  LatticeFunction() = default;
  /// Throws DomainError if a term has the wrong number of coordinates or a
  /// negative binomial degree.
  LatticeFunction(long dim, std::vector<LatticeTerm> terms);

  /// The constant function c on N^dim.
  static LatticeFunction constant(long dim, const CycloRational& c);

  /// A monomial-basis term c * prod_i x_i^{p_i} u_i^{x_i}, rewritten in the
  /// binomial basis via x^p = sum_j S(p, j) j! C(x, j).
  struct MonomialTerm {
    CycloRational coeff;
    std::vector<long> powers;
    std::vector<UnitScalar> bases;
  };
  static LatticeFunction from_monomials(long dim, std::span<const MonomialTerm> terms);

  long dim() const { return dim_; }
  const std::vector<LatticeTerm>& terms() const { return terms_; }
  /// Maximum total binomial degree over terms (0 for the zero function).
  long order() const;

  CycloRational evaluate(const ScalarField& field, std::span<const long> x) const;

  friend LatticeFunction operator+(const LatticeFunction& a, const LatticeFunction& b);
  /// phi1 (x) phi2 on N^{n1 + n2}.
  friend LatticeFunction tensor(const LatticeFunction& a, const LatticeFunction& b);

 private:
  long dim_ = 0;
  std::vector<LatticeTerm> terms_;
};

/// The character x -> q^{-d . x}; chi(x)^s contributes t^{d . x}.
class ExponentVector {
 public:
  ExponentVector() = default;
  /// Throws DomainError on a negative entry.
  explicit ExponentVector(std::vector<long> d);
  std::size_t size() const { return d_.size(); }
  long operator[](std::size_t i) const { return d_[i]; }
  const std::vector<long>& values() const { return d_; }

 private:
  std::vector<long> d_;
};

/// Stirling number of the second kind S(n, k).
Integer stirling2(long n, long k);

/// sum_{x >= 0} C(x, k) (u t^d)^x = (u t^d)^k / (1 - u t^d)^{k+1}; for d = 0
/// the constant u^k / (1 - u)^{k+1}, which requires |u| < 1.
FactoredRatFun sum_binom_geom(const ScalarField& field, long k, UnitScalar u, long d);

struct SummabilityViolation {
  std::size_t term = 0;
  std::size_t coord = 0;
};

struct SummabilityReport {
  bool ok = true;
  std::vector<SummabilityViolation> violations;
  std::string message() const;
};

/// Per-term test that every coordinate with d_i = 0 has |u_i| < 1.
SummabilityReport check_summability(const LatticeFunction& phi, const ExponentVector& d);

/// Exact rational abscissa of absolute convergence, or -infinity.
struct Abscissa {
  std::optional<Rational> value;  // nullopt means -infinity

  bool is_minus_infinity() const { return !value.has_value(); }
  /// Whether Re(s) = s lies strictly to the right of the abscissa.
  bool admits(const Rational& s) const { return !value || s > *value; }
  std::string to_string() const { return value ? value->get_str() : "-inf"; }
  friend bool operator==(const Abscissa&, const Abscissa&) = default;
};

Abscissa convergence_abscissa(const LatticeFunction& phi, const ExponentVector& d);

/// sum_{x in N^n} phi(x) t^{d . x} as a factored rational function.
/// Throws DivergenceError naming the first offending (term, coordinate).
FactoredRatFun zeta_lattice(const ScalarField& field, const LatticeFunction& phi, const ExponentVector& d);

}  // namespace igusa
