#include <random>

#include "igusa/errors.hpp"
#include "igusa/matrix_orbits.hpp"
#include "test_support.hpp"

using namespace igusa;
using namespace igusa::test;

namespace {

KCharacter abs_pow(long e) { return KCharacter::unramified(R(e)); }
CharacterPair pair(long e1, long e2) { return {abs_pow(e1), abs_pow(e2)}; }

KCharacter random_character(std::mt19937_64& rng) {
  const long m = uniform(rng, 1, 3);
  return KCharacter::with_finite(m, uniform(rng, 0, m - 1), R(uniform(rng, -4, 4), uniform(rng, 1, 2)));
}

// Random pairs biased toward the admissible loci.
CharacterPair random_pair(std::mt19937_64& rng, long m, long n) {
  switch (uniform(rng, 0, 3)) {
    case 0: return pair(0, 0);
    case 1: return pair(n, -m);
    case 2: {
      const long r = uniform(rng, -1, n + 1);
      return pair(r, -r);
    }
    default: return {random_character(rng), random_character(rng)};
  }
}

}  // namespace

TEST_SUITE("matrix_orbits") {
  TEST_CASE("stabilizer_modular_data examples") {
    OrbitDatum a = stabilizer_modular_data(2, 3, 1);
    CHECK(a.x_block == 1);
    CHECK(a.w1_block == 1);
    CHECK(a.w2_block == -1);
    CHECK(a.codim == 2);

    OrbitDatum b = stabilizer_modular_data(2, 3, 0);
    CHECK_FALSE(b.x_block.has_value());
    CHECK(b.w1_block == 0);
    CHECK(b.w2_block == 0);
    CHECK(b.codim == 6);

    OrbitDatum c = stabilizer_modular_data(2, 2, 2);
    CHECK(c.x_block == 0);
    CHECK_FALSE(c.w1_block.has_value());
    CHECK_FALSE(c.w2_block.has_value());
    CHECK(c.codim == 0);

    CHECK_THROWS_AS(stabilizer_modular_data(2, 3, 3), DomainError);
    CHECK_THROWS_AS(stabilizer_modular_data(2, 3, -1), DomainError);
  }

  TEST_CASE("orbit_admissible examples") {
    CHECK(orbit_admissible(2, 3, 0, pair(0, 0)));
    CHECK(orbit_admissible(2, 3, 2, pair(3, -2)));
    CHECK_FALSE(orbit_admissible(2, 3, 1, pair(1, -1)));
    CHECK(orbit_admissible(2, 2, 1, pair(1, -1)));
    KCharacter f = KCharacter::with_finite(2, 1, R(0));
    CHECK(orbit_admissible(2, 2, 2, {f, f.inverse()}));
    CHECK_FALSE(orbit_admissible(2, 2, 1, {f, f.inverse()}));
    KCharacter g = KCharacter::with_finite(3, 1, R(0));
    CHECK_FALSE(orbit_admissible(2, 2, 2, {g, g}));
    CHECK_FALSE(orbit_admissible(2, 3, 0, {f, KCharacter()}));
  }

  TEST_CASE("classify_distribution_space examples") {
    ClassificationReport a = classify_distribution_space(2, 3, pair(0, 0));
    CHECK(a.kind == SpaceKind::line);
    CHECK(a.kind_label() == "Line(delta)");
    CHECK(a.admissible_orbits == std::vector<long>{0});
    CHECK(a.invariant_dim == 1);

    ClassificationReport h = classify_distribution_space(2, 3, pair(3, -2));
    CHECK(h.kind_label() == "Line(haar)");
    CHECK(h.admissible_orbits == std::vector<long>{2});

    ClassificationReport b = classify_distribution_space(2, 2, pair(1, -1));
    CHECK(b.kind_label() == "ZetaTower(i0=-1)");
    CHECK(b.invariant_dim == 1);

    KCharacter f = KCharacter::with_finite(2, 1, R(0));
    ClassificationReport c = classify_distribution_space(2, 2, {f, f.inverse()});
    CHECK(c.kind_label() == "ZetaTower(i0=0)");
    CHECK(c.invariant_dim == 1);
    CHECK(c.admissible_orbits == std::vector<long>{2});

    ClassificationReport d = classify_distribution_space(2, 2, pair(1, 1));
    CHECK(d.kind_label() == "Zero");
    CHECK(d.invariant_dim == 0);

    CHECK(classify_distribution_space(3, 3, pair(3, -3)).kind_label() == "ZetaTower(i0=0)");
    CHECK(classify_distribution_space(3, 3, pair(-1, 1)).kind_label() == "ZetaTower(i0=0)");
    CHECK(classify_distribution_space(3, 3, pair(2, -2)).kind_label() == "ZetaTower(i0=-1)");
  }

  TEST_CASE("character syntax") {
    CHECK(parse_character("triv:0").is_trivial());
    CHECK(parse_character("triv:-3/2") == KCharacter::unramified(R(-3, 2)));
    CHECK(parse_character("fin4^2:1") == KCharacter::with_finite(2, 1, R(1)));
    CHECK(parse_character("fin3^3:0").is_trivial());
    CHECK(to_string(parse_character("fin4^6:2/4")) == "fin2^1:1/2");
    CHECK(to_string(parse_character("triv:-2")) == "triv:-2");
    for (const char* bad : {"", "triv", "triv:", "triv:x", "fin0^1:0", "fin2:0", "fin2^:0", "foo:1", "triv:1/0"})
      CHECK_THROWS_AS(parse_character(bad), ParseError);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      KCharacter c = random_character(rng);
      CHECK(parse_character(to_string(c)) == c);
      CHECK((c * c.inverse()).is_trivial());
    }
  }

  TEST_CASE("cross_check_pole_vs_admissibility examples") {
    PoleAdmissibilityReport a = cross_check_pole_vs_admissibility(2, 0, 2);
    CHECK(a.pole == 1);
    CHECK(a.admissible_lower_orbits == std::vector<long>{0});
    CHECK(a.consistent);
    PoleAdmissibilityReport b = cross_check_pole_vs_admissibility(2, 1, 3);
    CHECK(b.pole == 1);
    CHECK(b.admissible_lower_orbits == std::vector<long>{1});
    CHECK(b.consistent);
    PoleAdmissibilityReport c = cross_check_pole_vs_admissibility(2, 2, 2);
    CHECK(c.pole == 0);
    CHECK(c.admissible_lower_orbits.empty());
    CHECK(c.consistent);
    for (long n = 1; n <= 4; ++n)
      for (long r = -2; r <= n + 2; ++r) CHECK(cross_check_pole_vs_admissibility(n, r, 5).consistent);
  }

  TEST_CASE("orbit properties") {
    std::mt19937_64 rng(11);
    for (long m = 1; m <= 4; ++m)
      for (long n = 1; n <= 4; ++n) {
        for (long r = 1; r <= std::min(m, n); ++r)
          CHECK(stabilizer_modular_data(m, n, r).codim < stabilizer_modular_data(m, n, r - 1).codim);
        CHECK(stabilizer_modular_data(m, n, std::min(m, n)).codim == 0);
        for (int trial = 0; trial < 60; ++trial) {
          CharacterPair p = random_pair(rng, m, n);
          CharacterPair twisted{p.chi1 * KCharacter(), p.chi2 * KCharacter()};
          CharacterPair transposed{p.chi2.inverse(), p.chi1.inverse()};
          std::vector<long> adm;
          for (long r = 0; r <= std::min(m, n); ++r) {
            const bool a = orbit_admissible(m, n, r, p);
            if (a) adm.push_back(r);
            CHECK(orbit_admissible(m, n, r, twisted) == a);
            CHECK(orbit_admissible(n, m, r, transposed) == a);
          }
          ClassificationReport rep = classify_distribution_space(m, n, p);
          CHECK(rep.admissible_orbits == adm);
          CHECK((rep.kind == SpaceKind::zero) == adm.empty());
          if (m != n) {
            CHECK(adm.size() <= 1);
            for (long r : adm) CHECK((r == 0 || r == std::min(m, n)));
          } else if (rep.kind == SpaceKind::zeta_tower) {
            // the open orbit always carries the tower; i0 = -1 needs a lower one
            CHECK(adm.back() == n);
            CHECK((rep.i0 == -1) == (adm.size() > 1));
          }
        }
      }
  }
}
