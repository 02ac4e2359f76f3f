#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/character.hpp"

namespace igusa {

/// Rank-r orbit of GL_m x GL_n on m x n matrices. The block exponents are
/// those of |Delta_{G_r}|^{-1} on the stabilizer blocks x (r x r), w1
/// ((m-r) x (m-r)) and w2 ((n-r) x (n-r)); empty blocks are absent.
struct OrbitDatum {
  long m = 0;
  long n = 0;
  long r = 0;
  long codim = 0;
  std::optional<long> x_block;
  std::optional<long> w1_block;
  std::optional<long> w2_block;
};

OrbitDatum stabilizer_modular_data(long m, long n, long r);

/// Whether O_r carries a nonzero (chi1, chi2)-equivariant distribution. The
/// stabilizers are connected, so weak and strong admissibility agree.
bool orbit_admissible(long m, long n, long r, const CharacterPair& pair);

enum class SpaceKind { zero, line, zeta_tower };

struct ClassificationReport {
  long m = 0;
  long n = 0;
  CharacterPair pair;
  std::vector<long> admissible_orbits;
  SpaceKind kind = SpaceKind::zero;
  /// "delta" or "haar" for a line.
  std::string generator;
  /// Lowest tower index (-1 or 0) for a zeta tower.
  long i0 = 0;
  long invariant_dim = 0;
  std::vector<std::string> notes;

  /// "Zero", "Line(delta)", "Line(haar)" or "ZetaTower(i0=-1)".
  std::string kind_label() const;
};

ClassificationReport classify_distribution_space(long m, long n, const CharacterPair& pair);

struct PoleAdmissibilityReport {
  long n = 0;
  long r_twist = 0;
  long q = 0;
  long pole = 0;
  std::vector<long> admissible_lower_orbits;
  bool consistent = false;
};

/// pole_order of the twisted determinant zeta at t = 1 versus admissibility
/// of the orbits r < n for (|.|^r_twist, |.|^-r_twist).
PoleAdmissibilityReport cross_check_pole_vs_admissibility(long n, long r_twist, long q);

}  // namespace igusa
