#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igusa/matrix.hpp"

namespace igusa {

/// A finite-dimensional representation of Z^n: one invertible matrix per
/// standard generator, pairwise commuting.
class LambdaModule {
 public:
  /// Throws DomainError on shape mismatch, non-commuting or singular gens.
  LambdaModule(long n, long dim, std::vector<Matrix> gens);
  /// The trivial module of dimension dim.
  static LambdaModule trivial(long n, long dim = 1);

  long rank() const { return n_; }
  long dim() const { return dim_; }
  const std::vector<Matrix>& gens() const { return gens_; }

  /// Every generator multiplied by the character value chi(e_j).
  LambdaModule twisted(const ScalarField& field, std::span<const UnitScalar> chi) const;

 private:
  long n_;
  long dim_;
  std::vector<Matrix> gens_;
};

struct ExtProfile {
  std::vector<long> dims;  // dim Ext^i, i = 0..n
  long euler_characteristic() const;
  friend bool operator==(const ExtProfile&, const ExtProfile&) = default;
};

/// Ext^i(chi1, M2) as the cohomology of the Koszul complex with operators
/// A_j = chi1(e_j)^{-1} gens[j] - 1.
ExtProfile koszul_ext_dims(const ScalarField& field, std::span<const UnitScalar> chi1, const LambdaModule& m2);

struct ScanReport {
  long n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t passes = 0;
  std::uint64_t equal_character_trials = 0;
  std::optional<std::string> counterexample;
  bool passed() const { return !counterexample && passes == trials; }
};

/// Random unipotent modules (dim <= 5) twisted by chi2, paired with chi1 equal
/// to chi2 or differing at one generator.
ScanReport vanishing_dichotomy_scan(const ScalarField& field, long n, std::uint64_t trials, std::uint64_t seed);

/// Exact values of f on the box prod_i [0, box[i]], row-major with the last
/// coordinate fastest.
struct FunctionTable {
  std::vector<long> box;
  std::vector<Rational> values;

  long dim() const { return static_cast<long>(box.size()); }
  /// Tabulates f on the box.
  template <typename F>
  static FunctionTable tabulate(std::vector<long> box, F f);
  const Rational& at(std::span<const long> x) const;
};

struct InvarianceVerdict {
  bool difference_test = false;     // all (k+1)-fold differences vanish
  bool interpolation_test = false;  // f equals its degree-k Newton interpolant
  bool agree() const { return difference_test == interpolation_test; }
};

/// Runs both tests. PreconditionError unless box[i] >= k + 1 for all i.
InvarianceVerdict finite_order_invariance_tests(const FunctionTable& f, long k);
/// The common verdict; throws std::logic_error if the two tests disagree.
bool finite_order_invariance_check(const FunctionTable& f, long k);

template <typename F>
FunctionTable FunctionTable::tabulate(std::vector<long> box, F f) {
  FunctionTable t{std::move(box), {}};
  std::vector<long> x(t.box.size(), 0);
  while (true) {
    t.values.push_back(f(std::span<const long>(x)));
    long pos = static_cast<long>(x.size()) - 1;
    while (pos >= 0 && ++x[static_cast<std::size_t>(pos)] > t.box[static_cast<std::size_t>(pos)]) {
      x[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return t;
}

}  // namespace igusa
