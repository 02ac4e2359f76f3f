#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "igusa/errors.hpp"
#include "igusa/json_io.hpp"
#include "igusa/padic_oracle.hpp"
#include "test_support.hpp"

using namespace igusa;
using namespace igusa::test;

namespace {

// Cofactor expansion; independent of the elimination used by the library.
Integer laplace_det(const std::vector<std::int64_t>& m, long n) {
  if (n == 1) return Integer(static_cast<long>(m[0]));
  Integer det = 0;
  for (long c = 0; c < n; ++c) {
    std::vector<std::int64_t> minor;
    for (long i = 1; i < n; ++i)
      for (long j = 0; j < n; ++j)
        if (j != c) minor.push_back(m[static_cast<std::size_t>(i * n + j)]);
    Integer term = Integer(static_cast<long>(m[static_cast<std::size_t>(c)])) * laplace_det(minor, n - 1);
    det += c % 2 ? Integer(-term) : term;
  }
  return det;
}

long naive_valuation(Integer v, long p, long cap) {
  if (v == 0) return cap;
  long e = 0;
  while (e < cap && v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("igusa_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("padic_oracle") {
  TEST_CASE("histogram examples") {
    ValHistogram a = det_valuation_histogram(1, 2, 3, OracleMode::exhaustive());
    CHECK(a.counts == std::vector<Integer>{4, 2, 1});
    CHECK(a.n_geq_k == 1);
    CHECK(a.total == 8);

    ValHistogram b = det_valuation_histogram(2, 2, 1, OracleMode::exhaustive());
    CHECK(b.counts == std::vector<Integer>{6});
    CHECK(b.n_geq_k == 10);
    // |GL_2(F_2)| = (4 - 1)(4 - 2).
    CHECK(b.counts[0] == (4 - 1) * (4 - 2));

    ValHistogram c = det_valuation_histogram(2, 3, 2, OracleMode::exhaustive());
    CHECK(c.counts == std::vector<Integer>{3888, 1728});
    CHECK(c.n_geq_k == 945);
    CHECK(c.total == 6561);
    CHECK(c.mass(0) == R(16, 27));
    CHECK(c.mass(1) == R(64, 243));
  }

  TEST_CASE("det_zeta_series_check examples") {
    DetZetaReport a = det_zeta_series_check(1, 2, 3);
    CHECK(a.passed);
    REQUIRE(a.entries.size() == 3);
    CHECK(a.entries[0].expected == R(1, 2));
    CHECK(a.entries[1].expected == R(1, 4));
    CHECK(a.entries[2].expected == R(1, 8));

    DetZetaReport b = det_zeta_series_check(2, 2, 1);
    CHECK(b.passed);
    CHECK(b.entries[0].observed == R(6, 16));

    DetZetaReport c = det_zeta_series_check(2, 3, 2);
    CHECK(c.passed);
    CHECK(c.entries[1].expected == R(64, 243));
  }

  TEST_CASE("a tampered histogram fails the check") {
    ValHistogram h = det_valuation_histogram(1, 3, 2, OracleMode::exhaustive());
    h.counts[0] -= 1;
    h.n_geq_k += 1;
    DetZetaReport rep = det_zeta_series_check(h);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(rep.entries[0].pass);
    CHECK(rep.entries[1].pass);
  }

  TEST_CASE("determinant valuation against cofactor expansion") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
      const long n = uniform(rng, 1, 4), p = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(uniform(rng, 0, 3))];
      const long bound = trial < 200 ? 30 : 2000000000L;
      std::vector<std::int64_t> m(static_cast<std::size_t>(n * n));
      for (auto& x : m) x = uniform(rng, 0, bound) * (uniform(rng, 0, 2) ? p : 1);
      CHECK(det_valuation(m, n, p, 12) == naive_valuation(laplace_det(m, n), p, 12));
    }
    CHECK(det_valuation({0, 0, 0, 0}, 2, 2, 5) == 5);
    CHECK(det_valuation({0, 1, 1, 0}, 2, 3, 5) == 0);
  }

  TEST_CASE("n = 1 closed form and consistency") {
    for (long p : {2L, 3L, 5L, 7L})
      for (long k = 1; k <= 4; ++k) {
        ValHistogram h = det_valuation_histogram(1, p, k, OracleMode::exhaustive());
        CHECK(h.consistent());
        for (long j = 0; j < k; ++j) {
          Integer want = 1, pk = 1;
          for (long i = 0; i < k - j; ++i) pk *= p;
          want = pk - pk / p;
          CHECK(h.counts[static_cast<std::size_t>(j)] == want);
        }
      }
  }

  TEST_CASE("scaling law between levels k and k + 1") {
    // Matrices p*y over Z/p^{k+1} correspond to y over Z/p^k, and
    // val(det(p y)) = n + val(det y).
    for (auto [n, p, k] : {std::tuple{1L, 3L, 3L}, std::tuple{2L, 2L, 3L}, std::tuple{2L, 3L, 2L}}) {
      ValHistogram base = det_valuation_histogram(n, p, k, OracleMode::exhaustive());
      long pk = 1;
      for (long i = 0; i < k; ++i) pk *= p;
      std::vector<Integer> scaled(static_cast<std::size_t>(k + 1));
      std::vector<std::int64_t> y(static_cast<std::size_t>(n * n), 0);
      while (true) {
        std::vector<std::int64_t> x = y;
        for (auto& v : x) v *= p;
        long v = det_valuation(x, n, p, k + 1);
        if (v < k + 1) ++scaled[static_cast<std::size_t>(v)];
        std::size_t pos = y.size();
        while (pos > 0 && ++y[pos - 1] == pk) y[--pos] = 0;
        if (pos == 0) break;
      }
      Integer total_next;
      mpz_ui_pow_ui(total_next.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n * n * (k + 1)));
      Integer pn2;
      mpz_ui_pow_ui(pn2.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n * n));
      for (long j = 0; j + n < k + 1 && j < k; ++j) {
        Rational lhs(scaled[static_cast<std::size_t>(j + n)], total_next);
        lhs.canonicalize();
        CHECK(lhs == base.mass(j) / Rational(pn2));
      }
    }
  }

  TEST_CASE("sharded enumeration is order independent") {
    const long n = 2, p = 2, k = 2;
    const long prefix = shard_prefix_length(n, p, k, 16);
    CHECK(prefix == 2);
    const std::uint64_t shards = shard_count(p, k, prefix);
    CHECK(shards == 16);
    std::vector<ValHistogram> parts;
    for (std::uint64_t s = 0; s < shards; ++s) parts.push_back(enumerate_shard(n, p, k, prefix, s));
    ValHistogram reference = det_valuation_histogram(n, p, k, OracleMode::exhaustive());
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(parts.begin(), parts.end(), rng);
      ValHistogram acc = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) acc = merge_histograms(acc, parts[i]);
      CHECK(acc == reference);
    }
    for (unsigned threads : {1u, 2u, 3u, 7u}) {
      HistogramOptions o;
      o.threads = threads;
      o.min_shards = threads * 5;
      CHECK(det_valuation_histogram(2, 3, 2, OracleMode::exhaustive(), o) ==
            det_valuation_histogram(2, 3, 2, OracleMode::exhaustive()));
    }
    CHECK_THROWS_AS(enumerate_shard(n, p, k, prefix, shards), DomainError);
  }

  TEST_CASE("budget and parameter validation") {
    HistogramOptions tight;
    tight.budget = 1000;
    CHECK_THROWS_AS(det_valuation_histogram(2, 3, 2, OracleMode::exhaustive(), tight), ResourceError);
    try {
      det_valuation_histogram(2, 3, 2, OracleMode::exhaustive(), tight);
    } catch (const ResourceError& e) {
      CHECK(std::string(e.what()).find("sampled") != std::string::npos);
    }
    CHECK_THROWS_AS(det_valuation_histogram(2, 4, 1, OracleMode::exhaustive()), PreconditionError);
    CHECK_THROWS_AS(det_valuation_histogram(0, 2, 1, OracleMode::exhaustive()), PreconditionError);
    CHECK_THROWS_AS(det_valuation_histogram(1, 2, 0, OracleMode::exhaustive()), PreconditionError);
    CHECK_THROWS_AS(det_zeta_series_check(det_valuation_histogram(1, 2, 2, OracleMode::sampled(1, 100))),
                    PreconditionError);
  }

  TEST_CASE("sampled mode is seeded and close to exact frequencies") {
    OracleMode mode = OracleMode::sampled(99, 20000);
    ValHistogram a = det_valuation_histogram(2, 3, 2, mode);
    HistogramOptions one_thread;
    one_thread.threads = 1;
    CHECK(a == det_valuation_histogram(2, 3, 2, mode, one_thread));
    CHECK(a.total == 20000);
    CHECK(a.consistent());
    ValHistogram exact = det_valuation_histogram(2, 3, 2, OracleMode::exhaustive());
    for (long j = 0; j < 2; ++j) {
      const double pj = exact.mass(j).get_d();
      const double freq = a.mass(j).get_d();
      const double sigma = std::sqrt(pj * (1 - pj) / 20000.0);
      CHECK(std::fabs(freq - pj) < 5 * sigma);
    }
    CHECK_FALSE(a == det_valuation_histogram(2, 3, 2, OracleMode::sampled(100, 20000)));
  }

  TEST_CASE("cache round trip is byte identical") {
    auto dir = scratch_dir("cache");
    HistogramCache cache(dir);
    ValHistogram fresh = det_valuation_histogram(2, 2, 2, OracleMode::exhaustive());
    CHECK_FALSE(cache.load(2, 2, 2, OracleMode::exhaustive()).has_value());
    ValHistogram first = cached_det_valuation_histogram(cache, 2, 2, 2, OracleMode::exhaustive());
    CHECK(first == fresh);
    auto path = cache.path_for(2, 2, 2, OracleMode::exhaustive());
    REQUIRE(std::filesystem::exists(path));
    std::ifstream in(path);
    std::string stored((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(stored == histogram_to_json_text(fresh));
    ValHistogram hit = cached_det_valuation_histogram(cache, 2, 2, 2, OracleMode::exhaustive());
    CHECK(histogram_to_json_text(hit) == histogram_to_json_text(fresh));

    ValHistogram sampled = cached_det_valuation_histogram(cache, 1, 5, 2, OracleMode::sampled(3, 500));
    CHECK(cache.load(1, 5, 2, OracleMode::sampled(3, 500)) == sampled);
    CHECK_FALSE(cache.load(1, 5, 2, OracleMode::sampled(4, 500)).has_value());

    // A stale schema version forces recomputation.
    std::string stale = stored;
    stale.replace(stale.find("\"schema_version\": 1"), 19, "\"schema_version\": 0");
    std::ofstream(path) << stale;
    CHECK_FALSE(cache.load(2, 2, 2, OracleMode::exhaustive()).has_value());
    CHECK(cached_det_valuation_histogram(cache, 2, 2, 2, OracleMode::exhaustive()) == fresh);
    std::ofstream(path) << "{ not json";
    CHECK_FALSE(cache.load(2, 2, 2, OracleMode::exhaustive()).has_value());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("truncated lattice sums") {
    ScalarField f{2, 1};
    LatticeFunction phi(1, {LatticeTerm{C(1), {{0, UnitScalar::q_power(-1)}}}});
    // sum_x 2^-x t^x at t = 1/4 is sum 8^-x = 8/7.
    PointSum ps = truncated_lattice_sum_at(f, phi, ExponentVector({1}), 2, R(1, 1000000));
    REQUIRE(ps.partial_sum.is_rational());
    Rational err = R(8, 7) - ps.partial_sum.to_rational();
    CHECK(err >= 0);
    CHECK(err <= ps.tail_bound);
    CHECK(ps.tail_bound < R(1, 1000000));

    CHECK(truncated_lattice_coefficients(f, phi, ExponentVector({1}), 5) ==
          Cs({R(1), R(1, 2), R(1, 4), R(1, 8), R(1, 16), R(1, 32)}));

    CHECK_THROWS_AS(truncated_lattice_sum_at(f, phi, ExponentVector({1}), -1, R(1, 10)), DivergenceError);
    LatticeFunction flat(1, {LatticeTerm{C(1), {{2, UnitScalar::one()}}}});
    CHECK_THROWS_AS(truncated_lattice_coefficients(f, flat, ExponentVector({0}), 3), DivergenceError);

    // d = 0 coordinates: sum_x C(x, 2) 2^-x = 2 in every coefficient of the
    // x_2-free direction.
    LatticeFunction mixed(2, {LatticeTerm{C(1), {{0, UnitScalar::one()}, {2, UnitScalar::q_power(-1)}}}});
    CHECK(truncated_lattice_coefficients(f, mixed, ExponentVector({1, 0}), 3) == Cs({R(2), R(2), R(2), R(2)}));
  }
}
