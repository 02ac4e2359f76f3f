#include <random>

#include "igusa/errors.hpp"
#include "igusa/json_io.hpp"
#include "igusa/lattice_zeta.hpp"
#include "igusa/padic_oracle.hpp"
#include "test_support.hpp"

using namespace igusa;
using namespace igusa::test;

namespace {

LatticeFunction single(long k, UnitScalar u, const CycloRational& c = CycloRational(1)) {
  return LatticeFunction(1, {LatticeTerm{c, {{k, u}}}});
}

// Sum of phi(x) over {x : d.x = j} by direct enumeration (all d_i > 0).
std::vector<CycloRational> brute_coefficients(const ScalarField& f, const LatticeFunction& phi,
                                              const std::vector<long>& d, long max_j) {
  std::vector<CycloRational> out(static_cast<std::size_t>(max_j + 1));
  std::vector<long> x(d.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, long weight) -> void {
    if (pos == d.size()) {
      out[static_cast<std::size_t>(weight)] += phi.evaluate(f, x);
      return;
    }
    for (x[pos] = 0; weight + x[pos] * d[pos] <= max_j; ++x[pos]) self(self, pos + 1, weight + x[pos] * d[pos]);
    x[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

LatticeFunction random_phi(std::mt19937_64& rng, const ScalarField& f, long dim, const std::vector<long>& d) {
  std::vector<LatticeTerm> terms;
  for (long t = uniform(rng, 1, 3); t > 0; --t) {
    LatticeTerm term{random_cyclo(rng, f.level), {}};
    long budget = uniform(rng, 0, 3);
    for (long i = 0; i < dim; ++i) {
      long k = uniform(rng, 0, budget);
      budget -= k;
      long a = d[static_cast<std::size_t>(i)] == 0 ? uniform(rng, -3, -1) : uniform(rng, -3, 2);
      term.coords.push_back({k, {uniform(rng, 0, f.level - 1), a}});
    }
    terms.push_back(std::move(term));
  }
  return LatticeFunction(dim, std::move(terms));
}

}  // namespace

TEST_SUITE("lattice_zeta") {
  TEST_CASE("sum_binom_geom examples") {
    ScalarField f{2, 1};
    CHECK(sum_binom_geom(f, 0, UnitScalar::one(), 1).identical(FactoredRatFun::geometric(f, UnitScalar::one(), 1)));
    FactoredRatFun k1 = sum_binom_geom(f, 1, UnitScalar::q_power(-1), 1);
    CHECK(k1 == FactoredRatFun(f, 1, Poly(C(1, 2)), {{UnitScalar::q_power(-1), 1, 2}}));
    CHECK(sum_binom_geom(f, 2, UnitScalar::q_power(-1), 0) == FactoredRatFun::constant(f, C(2)));
    CHECK_THROWS_AS(sum_binom_geom(f, 0, UnitScalar::one(), 0), DivergenceError);
    CHECK_THROWS_AS(sum_binom_geom(f, 0, UnitScalar::q_power(1), 0), DivergenceError);
    CHECK_THROWS_AS(sum_binom_geom(f, -1, UnitScalar::one(), 1), DomainError);
  }

  TEST_CASE("zeta_lattice examples") {
    ScalarField f2{2, 1};
    CHECK(zeta_lattice(f2, single(0, UnitScalar::one()), ExponentVector({1})) ==
          FactoredRatFun::geometric(f2, UnitScalar::one(), 1));
    FactoredRatFun half = zeta_lattice(f2, single(0, UnitScalar::q_power(-1)), ExponentVector({1}));
    CHECK(half == FactoredRatFun::geometric(f2, UnitScalar::q_power(-1), 1));
    auto brute = brute_coefficients(f2, single(0, UnitScalar::q_power(-1)), {1}, 30);
    CHECK(series_coeffs(half, 30) == brute);

    ScalarField f3{3, 1};
    LatticeFunction phi(2, {LatticeTerm{C(1), {{0, UnitScalar::q_power(-1)}, {0, UnitScalar::q_power(-1)}}}});
    FactoredRatFun z = zeta_lattice(f3, phi, ExponentVector({1, 2}));
    CHECK(z == FactoredRatFun::geometric(f3, UnitScalar::q_power(-1), 1) *
                   FactoredRatFun::geometric(f3, UnitScalar::q_power(-1), 2));
    CHECK(series_coeffs(z, 30) == brute_coefficients(f3, phi, {1, 2}, 30));
    CHECK(truncated_lattice_coefficients(f3, phi, ExponentVector({1, 2}), 6) == series_coeffs(z, 6));
  }

  TEST_CASE("check_summability examples") {
    CHECK(check_summability(single(0, UnitScalar::q_power(2)), ExponentVector({1})).ok);
    CHECK(check_summability(single(0, UnitScalar::q_power(-1)), ExponentVector({0})).ok);
    auto rep = check_summability(single(0, UnitScalar{1, 0}), ExponentVector({0}));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].coord == 0);
    CHECK(rep.message().find("coordinate 1") != std::string::npos);
    CHECK_THROWS_AS(check_summability(single(0, UnitScalar::one()), ExponentVector({1, 1})), PreconditionError);
    CHECK_THROWS_AS(zeta_lattice(ScalarField{}, single(0, UnitScalar::one()), ExponentVector({0})), DivergenceError);
    CHECK_THROWS_AS(ExponentVector({-1}), DomainError);
  }

  TEST_CASE("convergence_abscissa examples") {
    CHECK(convergence_abscissa(single(0, UnitScalar::q_power(-1)), ExponentVector({1})).value == R(-1));
    CHECK(convergence_abscissa(single(0, UnitScalar::q_power(-1)), ExponentVector({0})).is_minus_infinity());
    LatticeFunction two(2, {LatticeTerm{C(1), {{0, UnitScalar::q_power(1)}, {0, UnitScalar::q_power(-1)}}}});
    Abscissa a = convergence_abscissa(two, ExponentVector({1, 2}));
    CHECK(a.value == R(1));
    CHECK(a.admits(R(2)));
    CHECK_FALSE(a.admits(R(1, 2)));
    CHECK(a.to_string() == "1");
  }

  TEST_CASE("oracle equivalence on random inputs") {
    std::mt19937_64 rng(23);
    for (long level : {1L, 3L}) {
      ScalarField f{2, level};
      for (int trial = 0; trial < 30; ++trial) {
        const long dim = uniform(rng, 1, 3);
        std::vector<long> d;
        for (long i = 0; i < dim; ++i) d.push_back(uniform(rng, 1, 3));
        LatticeFunction phi = random_phi(rng, f, dim, d);
        CHECK(series_coeffs(zeta_lattice(f, phi, ExponentVector(d)), 15) == brute_coefficients(f, phi, d, 15));
      }
    }
  }

  TEST_CASE("pole multiplicities are bounded by n + order") {
    std::mt19937_64 rng(29);
    ScalarField f{2, 1};
    for (int trial = 0; trial < 40; ++trial) {
      const long dim = uniform(rng, 1, 3);
      std::vector<long> d;
      for (long i = 0; i < dim; ++i) d.push_back(uniform(rng, 0, 3));
      LatticeFunction phi = random_phi(rng, f, dim, d);
      FactoredRatFun z = zeta_lattice(f, phi, ExponentVector(d));
      for (const auto& fac : z.denominator()) CHECK(fac.multiplicity <= dim + phi.order());
    }
  }

  TEST_CASE("linearity and the product rule") {
    std::mt19937_64 rng(31);
    ScalarField f{3, 1};
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<long> d1{uniform(rng, 0, 2)}, d2{uniform(rng, 1, 2), uniform(rng, 0, 2)};
      LatticeFunction a = random_phi(rng, f, 1, d1), b = random_phi(rng, f, 1, d1);
      CHECK(zeta_lattice(f, a + b, ExponentVector(d1)) ==
            zeta_lattice(f, a, ExponentVector(d1)) + zeta_lattice(f, b, ExponentVector(d1)));
      LatticeFunction c = random_phi(rng, f, 2, d2);
      std::vector<long> d12{d1[0], d2[0], d2[1]};
      CHECK(zeta_lattice(f, tensor(a, c), ExponentVector(d12)) ==
            zeta_lattice(f, a, ExponentVector(d1)) * zeta_lattice(f, c, ExponentVector(d2)));
    }
  }

  TEST_CASE("monomial basis conversion") {
    ScalarField f{2, 1};
    std::vector<LatticeFunction::MonomialTerm> terms{{C(3), {2, 1}, {UnitScalar::q_power(-1), UnitScalar::one()}}};
    LatticeFunction phi = LatticeFunction::from_monomials(2, terms);
    for (long x = 0; x <= 5; ++x)
      for (long y = 0; y <= 5; ++y) {
        std::vector<long> pt{x, y};
        CHECK(phi.evaluate(f, pt) == C(3 * x * x * y) * CycloRational(R(1, 1L << x)));
      }
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(3, 0) == 0);
  }

  TEST_CASE("evaluation at a point agrees with bounded partial sums") {
    std::mt19937_64 rng(37);
    ScalarField f{2, 1};
    for (int trial = 0; trial < 15; ++trial) {
      const long dim = uniform(rng, 1, 2);
      std::vector<long> d;
      for (long i = 0; i < dim; ++i) d.push_back(uniform(rng, 0, 2));
      LatticeFunction phi = random_phi(rng, f, dim, d);
      Abscissa a = convergence_abscissa(phi, ExponentVector(d));
      long s0 = 1;
      while (!a.admits(R(s0))) ++s0;
      FactoredRatFun z = zeta_lattice(f, phi, ExponentVector(d));
      CycloRational exact = z.evaluate(f.embed(UnitScalar::q_power(-s0)));
      PointSum ps = truncated_lattice_sum_at(f, phi, ExponentVector(d), s0, R(1, 1000000));
      REQUIRE(exact.is_rational());
      Rational err = exact.to_rational() - ps.partial_sum.to_rational();
      if (err < 0) err = -err;
      CHECK(err <= ps.tail_bound);
      CHECK(ps.tail_bound < R(1, 1000000));
    }
  }

  TEST_CASE("JSON schema round trip") {
    Json j = Json::parse(R"({"dim": 2, "terms": [{"coeff": "1/2", "coords": [{"k": 1, "u": {"j": 0, "a": -1}}, {"k": 0, "u": {"j": 0, "a": 2}}]}]})");
    LatticeFunction phi = lattice_function_from_json(j, 1);
    CHECK(phi.dim() == 2);
    CHECK(phi.order() == 1);
    CHECK(dump_canonical(to_json(phi)) == dump_canonical(to_json(lattice_function_from_json(to_json(phi), 1))));
    CHECK_THROWS_AS(lattice_function_from_json(Json::parse(R"({"dim": 1, "terms": [{"coords": [{"k": 0.5}]}]})"), 1),
                    ParseError);
    CHECK_THROWS_AS(lattice_function_from_json(Json::parse(R"({"dim": 2, "terms": [{"coords": [{}]}]})"), 1),
                    DomainError);
  }
}
