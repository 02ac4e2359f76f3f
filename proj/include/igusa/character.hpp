#pragma once

#include <string>
#include <string_view>

#include "igusa/cyclo.hpp"

namespace igusa {

/// chi = chi_f * |.|^exponent with chi_f of finite order. The finite part is
/// stored as its label j/m in Q/Z, reduced into [0, 1); 0 is trivial.
class KCharacter {
 public:
  KCharacter() = default;
  /// The unramified character |.|^e.
  static KCharacter unramified(const Rational& e);
  /// chi_f * |.|^e where chi_f has label j in Z/m.
  static KCharacter with_finite(long m, long j, const Rational& e);

  const Rational& finite_label() const { return finite_; }
  const Rational& exponent() const { return exponent_; }
  bool finite_trivial() const { return finite_ == 0; }
  /// chi == |.|^e exactly.
  bool is_abs_power(const Rational& e) const { return finite_trivial() && exponent_ == e; }
  bool is_trivial() const { return is_abs_power(0); }

  KCharacter inverse() const;
  friend KCharacter operator*(const KCharacter& a, const KCharacter& b);
  friend bool operator==(const KCharacter& a, const KCharacter& b) {
    return a.finite_ == b.finite_ && a.exponent_ == b.exponent_;
  }

 private:
  Rational finite_ = 0;
  Rational exponent_ = 0;
};

struct CharacterPair {
  KCharacter chi1;
  KCharacter chi2;
  friend bool operator==(const CharacterPair&, const CharacterPair&) = default;
};

/// Grammar:  triv:E  |  fin<M>^J:E   with E an integer or p/q and M >= 1.
KCharacter parse_character(std::string_view text);
/// Canonical form of the above ("triv:e" or "fin<m>^j:e" with j/m reduced).
std::string to_string(const KCharacter& chi);

/// Strict parser for a canonical-or-not rational "a" or "a/b" (b > 0).
Rational parse_rational(std::string_view text);

}  // namespace igusa
