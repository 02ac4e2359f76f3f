#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "igusa/ratfun.hpp"

namespace igusa {

/// Finite combination sum_a c_a * Dilate(a), where Dilate(a) is the indicator
/// of pi^a M_n(R).
class TestFunction {
 public:
  TestFunction() = default;
  static TestFunction dilate(long a, const CycloRational& c = CycloRational(1));

  /// Throws DomainError for a < 0.
  void add(long a, const CycloRational& c);
  const std::map<long, CycloRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend TestFunction operator+(TestFunction a, const TestFunction& b);

 private:
  std::map<long, CycloRational> terms_;
};

/// "c@a,c@a,..." with rational c; "1@0" is Dilate(0).
TestFunction parse_test_function(std::string_view text);
std::string to_string(const TestFunction& phi);

/// The twisted determinant zeta Z(phi, s) = int phi(x) |det x|^{s + r - n} dx
/// on n x n matrices, for chi = |.|^r.
struct ZetaFamily {
  ScalarField field;
  long n = 1;
  long r = 0;
  /// Z(Dilate(0), s) = prod_{i=1}^n (1 - q^{-i}) / (1 - q^{n-r-i} t).
  FactoredRatFun base;
};

ZetaFamily zeta_family_build(long n, long r, long q);

/// Z(Dilate(a), s) = q^{-a n r} t^{a n} Z(Dilate(0), s), extended linearly.
FactoredRatFun zeta_of(const ZetaFamily& family, const TestFunction& phi);

/// Laurent coefficients of Z(phi, s) at t = 1/a0 up to w^max_index.
LaurentSeries laurent_table(const ZetaFamily& family, const TestFunction& phi, UnitScalar a0, long max_index);

/// Effect of g on the symbolic zeta: Z -> c t^v Z.
struct GroupElementAction {
  long v = 0;
  CycloRational c = CycloRational(1);

  friend GroupElementAction compose(const GroupElementAction& a, const GroupElementAction& b) {
    return {a.v + b.v, a.c * b.c};
  }
};

struct RecurrenceEntry {
  std::size_t phi_index = 0;
  long i = 0;
  CycloRational lhs;  // index-i coefficient of (1 - c t^v) Z(phi)
  CycloRational rhs;  // index-(i-1) coefficient of Z(phi)
  bool pass = false;
};

struct RecurrenceReport {
  std::vector<RecurrenceEntry> entries;
  bool passed = true;
};

/// Checks (1 - g) Z_i = Z_{i-1} coefficient-wise for i in [i_lo, i_hi].
/// PreconditionError unless v = 1 and c * a0^{-1} = 1.
RecurrenceReport action_recurrence_check(const ZetaFamily& family, const GroupElementAction& g, UnitScalar a0,
                                         std::span<const TestFunction> phis, long i_lo, long i_hi);

/// Negated pole order of the family at t = 1/a0.
long lowest_index(const ZetaFamily& family, UnitScalar a0);

/// Least j such that (1 - g)^{j+1} annihilates the index-i coefficient on
/// Dilate(0..2), with g = (v = 1, c = a0). PreconditionError if i < i0.
long invariance_order_check(const ZetaFamily& family, UnitScalar a0, long i);

}  // namespace igusa
