#include "igusa/matrix_orbits.hpp"

#include "igusa/errors.hpp"
#include "igusa/laurent_distributions.hpp"

namespace igusa {

OrbitDatum stabilizer_modular_data(long m, long n, long r) {
  if (m < 1 || n < 1) throw DomainError("matrix dimensions must be >= 1");
  if (r < 0 || r > std::min(m, n))
    throw DomainError("rank " + std::to_string(r) + " outside 0.." + std::to_string(std::min(m, n)));
  OrbitDatum d{m, n, r, (m - r) * (n - r), {}, {}, {}};
  if (r >= 1) d.x_block = n - m;
  if (r < m) d.w1_block = r;
  if (r < n) d.w2_block = -r;
  return d;
}

bool orbit_admissible(long m, long n, long r, const CharacterPair& pair) {
  OrbitDatum d = stabilizer_modular_data(m, n, r);
  if (d.x_block && !(pair.chi1 * pair.chi2).is_abs_power(*d.x_block)) return false;
  if (d.w1_block && !pair.chi1.is_abs_power(*d.w1_block)) return false;
  if (d.w2_block && !pair.chi2.is_abs_power(*d.w2_block)) return false;
  return true;
}

std::string ClassificationReport::kind_label() const {
  switch (kind) {
    case SpaceKind::zero:
      return "Zero";
    case SpaceKind::line:
      return "Line(" + generator + ")";
    case SpaceKind::zeta_tower:
      return "ZetaTower(i0=" + std::to_string(i0) + ")";
  }
  return "?";
}

ClassificationReport classify_distribution_space(long m, long n, const CharacterPair& pair) {
  ClassificationReport rep;
  rep.m = m;
  rep.n = n;
  rep.pair = pair;
  const long top = std::min(m, n);
  for (long r = 0; r <= top; ++r)
    if (orbit_admissible(m, n, r, pair)) rep.admissible_orbits.push_back(r);

  if (rep.admissible_orbits.empty()) {
    rep.kind = SpaceKind::zero;
    rep.notes.push_back("no orbit is admissible");
    return rep;
  }
  if (m != n) {
    // Only the extreme orbits can be admissible, and never both.
    const long r = rep.admissible_orbits.front();
    rep.kind = SpaceKind::line;
    rep.generator = r == 0 ? "delta" : "haar";
    rep.invariant_dim = 1;
    if (rep.admissible_orbits.size() != 1 || (r != 0 && r != top))
      rep.notes.push_back("unexpected admissible orbit set");
    return rep;
  }
  // m == n: the open orbit is admissible here, so chi1 chi2 = 1.
  rep.kind = SpaceKind::zeta_tower;
  rep.invariant_dim = 1;
  const bool lower = rep.admissible_orbits.front() < n;
  rep.i0 = lower ? -1 : 0;
  rep.notes.push_back(lower ? "zeta integral has a simple pole at t = 1" : "zeta integral is regular at t = 1");
  return rep;
}

PoleAdmissibilityReport cross_check_pole_vs_admissibility(long n, long r_twist, long q) {
  PoleAdmissibilityReport rep{n, r_twist, q, 0, {}, false};
  ZetaFamily f = zeta_family_build(n, r_twist, q);
  rep.pole = pole_order(f.base, UnitScalar::one());
  CharacterPair pair{KCharacter::unramified(r_twist), KCharacter::unramified(-r_twist)};
  for (long r = 0; r < n; ++r)
    if (orbit_admissible(n, n, r, pair)) rep.admissible_lower_orbits.push_back(r);
  rep.consistent = (rep.pole == 1) == !rep.admissible_lower_orbits.empty() && rep.pole <= 1;
  return rep;
}

}  // namespace igusa
