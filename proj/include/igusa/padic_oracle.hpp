#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "igusa/cyclo.hpp"
#include "igusa/lattice_zeta.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

enum class HistogramMode { exhaustive, sampled };

struct OracleMode {
  HistogramMode kind = HistogramMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;

  static OracleMode exhaustive() { return {}; }
  static OracleMode sampled(std::uint64_t seed, std::uint64_t trials) {
    return {HistogramMode::sampled, seed, trials};
  }
  /// "exhaustive" or "sampled-<seed>-<trials>"; used in cache keys.
  std::string label() const;
  friend bool operator==(const OracleMode&, const OracleMode&) = default;
};

/// Counts of n x n matrices over Z/p^k by valuation of the determinant.
/// counts[j] is the number with val(det) = j (j < k); n_geq_k collects the
/// matrices whose determinant vanishes mod p^k. In sampled mode the counts
/// are sample counts and total is the number of trials.
struct ValHistogram {
  long n = 0;
  long p = 0;
  long k = 0;
  OracleMode mode;
  std::vector<Integer> counts;
  Integer n_geq_k;
  Integer total;

  /// sum counts + n_geq_k == total and every count is non-negative.
  bool consistent() const;
  /// counts[j] / total.
  Rational mass(long j) const;
  friend bool operator==(const ValHistogram&, const ValHistogram&) = default;
};

struct HistogramOptions {
  /// Maximum number of matrices an exhaustive run may enumerate.
  Integer budget = Integer(1) << 30;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  /// Lower bound on the number of enumeration shards.
  unsigned min_shards = 16;
};

/// Validates (n, p, k): n >= 1, p prime, k >= 1.
void validate_oracle_params(long n, long p, long k);

/// Number of leading row-major entries fixed per shard.
long shard_prefix_length(long n, long p, long k, unsigned min_shards);
/// Number of shards for a prefix length: (p^k)^prefix_length.
std::uint64_t shard_count(long p, long k, long prefix_length);
/// Exhaustive counts for the matrices whose leading `prefix_length` entries
/// spell `shard` in base p^k.
ValHistogram enumerate_shard(long n, long p, long k, long prefix_length, std::uint64_t shard);
/// Entry-wise sum; both histograms must describe the same (n, p, k, mode).
ValHistogram merge_histograms(const ValHistogram& a, const ValHistogram& b);

/// Exact p-adic valuation of det(m) for an n x n integer matrix, capped at
/// `cap` (returned when det = 0 or p^cap | det).
long det_valuation(std::vector<std::int64_t> m, long n, long p, long cap);

/// Exhaustive (ResourceError above the budget) or seeded sampled histogram.
ValHistogram det_valuation_histogram(long n, long p, long k, OracleMode mode, const HistogramOptions& options = {});

/// prod_{i=1}^n (1 - q^{-i}) / (1 - q^{-i} t).
FactoredRatFun det_zeta_product(const ScalarField& field, long n);

struct SeriesCheckEntry {
  long j = 0;
  Rational expected;  // t^j coefficient of the product formula
  Rational observed;  // N_j / total
  bool pass = false;
};

struct DetZetaReport {
  long n = 0;
  long p = 0;
  long k = 0;
  std::vector<SeriesCheckEntry> entries;
  bool passed = false;
};

/// Compares N_j / total with the series coefficients of the product formula
/// (q = p) for j < k. Requires an exhaustive histogram.
DetZetaReport det_zeta_series_check(const ValHistogram& histogram);
DetZetaReport det_zeta_series_check(long n, long p, long k, const HistogramOptions& options = {});

inline constexpr int kHistogramCacheSchema = 1;

/// Directory of JSON histogram files keyed by (n, p, k, mode). Files with a
/// different schema version or key are ignored.
class HistogramCache {
 public:
  explicit HistogramCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::filesystem::path path_for(long n, long p, long k, const OracleMode& mode) const;
  std::optional<ValHistogram> load(long n, long p, long k, const OracleMode& mode) const;
  void store(const ValHistogram& h) const;

 private:
  std::filesystem::path dir_;
};

ValHistogram cached_det_valuation_histogram(const HistogramCache& cache, long n, long p, long k, OracleMode mode,
                                            const HistogramOptions& options = {});

/// Partial sum of sum_x phi(x) t0^{d.x} at t0 = q^{-s0} over the box
/// [0, box]^n, with an explicit bound on the omitted tail.
struct PointSum {
  CycloRational partial_sum;
  Rational tail_bound;
  long box = 0;
};

/// Grows the box until tail_bound < tolerance. DivergenceError if s0 is not
/// strictly right of the abscissa or a d = 0 coordinate is not summable.
PointSum truncated_lattice_sum_at(const ScalarField& field, const LatticeFunction& phi, const ExponentVector& d,
                                  long s0, const Rational& tolerance);

/// Coefficients of t^0..t^max_j: sums of phi over {x : d.x = j}.
std::vector<CycloRational> truncated_lattice_coefficients(const ScalarField& field, const LatticeFunction& phi,
                                                          const ExponentVector& d, long max_j);

}  // namespace igusa
