#include "igusa/padic_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "igusa/errors.hpp"
#include "igusa/json_io.hpp"

namespace igusa {

namespace {

std::int64_t int_pow(long base, long e) {
  std::int64_t r = 1;
  for (long i = 0; i < e; ++i) {
    if (r > (std::int64_t{1} << 62) / base) throw ResourceError("p^k does not fit in 62 bits");
    r *= base;
  }
  return r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Fraction-free (Bareiss) elimination; every intermediate entry is a minor of
// the input, so T only has to hold the Hadamard bound.
template <typename T>
T bareiss_det(std::vector<T> m, long n) {
  T prev = 1;
  bool negate = false;
  auto at = [&](long i, long j) -> T& { return m[static_cast<std::size_t>(i * n + j)]; };
  for (long kk = 0; kk + 1 < n; ++kk) {
    if (at(kk, kk) == 0) {
      long swap_row = -1;
      for (long i = kk + 1; i < n; ++i)
        if (at(i, kk) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      for (long j = 0; j < n; ++j) std::swap(at(kk, j), at(swap_row, j));
      negate = !negate;
    }
    for (long i = kk + 1; i < n; ++i) {
      for (long j = kk + 1; j < n; ++j) at(i, j) = (at(i, j) * at(kk, kk) - at(i, kk) * at(kk, j)) / prev;
    }
    prev = at(kk, kk);
  }
  T det = at(n - 1, n - 1);
  return negate ? T(-det) : det;
}

template <typename T>
long valuation_capped(T det, long p, long cap) {
  if (det == 0) return cap;
  long v = 0;
  while (v < cap && det % p == 0) {
    det /= p;
    ++v;
  }
  return v;
}

ValHistogram empty_histogram(long n, long p, long k, OracleMode mode) {
  ValHistogram h;
  h.n = n;
  h.p = p;
  h.k = k;
  h.mode = mode;
  h.counts.assign(static_cast<std::size_t>(k), Integer(0));
  h.n_geq_k = 0;
  h.total = 0;
  return h;
}

void record(ValHistogram& h, long v) {
  if (v >= h.k)
    ++h.n_geq_k;
  else
    ++h.counts[static_cast<std::size_t>(v)];
  ++h.total;
}

unsigned worker_count(const HistogramOptions& options, std::uint64_t jobs) {
  unsigned t = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(1, jobs)));
}

// Runs job(i) for i in [0, jobs) on a small pool; each worker folds into its
// own histogram and the results are merged in worker order.
template <typename Job>
ValHistogram run_sharded(ValHistogram empty, std::uint64_t jobs, unsigned workers, Job job) {
  std::vector<ValHistogram> partial(workers, empty);
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = next++; i < jobs; i = next++) partial[w] = merge_histograms(partial[w], job(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  ValHistogram out = empty;
  for (const auto& h : partial) out = merge_histograms(out, h);
  return out;
}

}  // namespace

std::string OracleMode::label() const {
  if (kind == HistogramMode::exhaustive) return "exhaustive";
  return "sampled-" + std::to_string(seed) + "-" + std::to_string(trials);
}

bool ValHistogram::consistent() const {
  Integer s = n_geq_k;
  if (n_geq_k < 0) return false;
  for (const auto& c : counts) {
    if (c < 0) return false;
    s += c;
  }
  return s == total && static_cast<long>(counts.size()) == k;
}

Rational ValHistogram::mass(long j) const {
  if (total == 0) throw DomainError("empty histogram");
  Rational r(counts.at(static_cast<std::size_t>(j)), total);
  r.canonicalize();
  return r;
}

void validate_oracle_params(long n, long p, long k) {
  if (n < 1) throw PreconditionError("matrix size n must be >= 1");
  if (!is_prime(p)) throw PreconditionError("p must be prime, got " + std::to_string(p));
  if (k < 1) throw PreconditionError("level k must be >= 1");
}

long det_valuation(std::vector<std::int64_t> m, long n, long p, long cap) {
  if (static_cast<long>(m.size()) != n * n) throw DomainError("matrix entry count does not match n");
  double max_entry = 1;
  for (auto v : m) max_entry = std::max(max_entry, std::fabs(static_cast<double>(v)));
  // log2 of the Hadamard bound n^{n/2} * max^n. Bareiss multiplies two
  // minors before dividing, so the intermediates need twice that.
  double bits = n * std::log2(max_entry) + 0.5 * n * std::log2(static_cast<double>(n)) + 2;
  if (2 * bits < 124) {
    std::vector<__int128> w(m.begin(), m.end());
    return valuation_capped<__int128>(bareiss_det(std::move(w), n), p, cap);
  }
  std::vector<Integer> w;
  w.reserve(m.size());
  for (auto v : m) w.emplace_back(static_cast<long>(v));
  return valuation_capped<Integer>(bareiss_det(std::move(w), n), p, cap);
}

long shard_prefix_length(long n, long p, long k, unsigned min_shards) {
  const std::int64_t modulus = int_pow(p, k);
  long len = 0;
  std::uint64_t shards = 1;
  while (len < n * n && shards < min_shards) {
    shards *= static_cast<std::uint64_t>(modulus);
    ++len;
  }
  return len;
}

std::uint64_t shard_count(long p, long k, long prefix_length) {
  const std::int64_t modulus = int_pow(p, k);
  std::uint64_t shards = 1;
  for (long i = 0; i < prefix_length; ++i) shards *= static_cast<std::uint64_t>(modulus);
  return shards;
}

ValHistogram enumerate_shard(long n, long p, long k, long prefix_length, std::uint64_t shard) {
  validate_oracle_params(n, p, k);
  const std::int64_t modulus = int_pow(p, k);
  const long entries = n * n;
  if (prefix_length < 0 || prefix_length > entries) throw DomainError("invalid shard prefix length");
  std::vector<std::int64_t> m(static_cast<std::size_t>(entries), 0);
  // Leading entries spell the shard index in base p^k, most significant first.
  for (long i = prefix_length - 1; i >= 0; --i) {
    m[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(shard % static_cast<std::uint64_t>(modulus));
    shard /= static_cast<std::uint64_t>(modulus);
  }
  if (shard != 0) throw DomainError("shard index out of range");

  ValHistogram h = empty_histogram(n, p, k, OracleMode::exhaustive());
  while (true) {
    record(h, det_valuation(m, n, p, k));
    // Row-major odometer over the free (trailing) entries.
    long pos = entries - 1;
    while (pos >= prefix_length && ++m[static_cast<std::size_t>(pos)] == modulus) {
      m[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < prefix_length) break;
  }
  return h;
}

ValHistogram merge_histograms(const ValHistogram& a, const ValHistogram& b) {
  if (a.n != b.n || a.p != b.p || a.k != b.k || !(a.mode == b.mode))
    throw PreconditionError("merging histograms with different keys");
  ValHistogram out = a;
  for (std::size_t j = 0; j < out.counts.size(); ++j) out.counts[j] += b.counts[j];
  out.n_geq_k += b.n_geq_k;
  out.total += b.total;
  return out;
}

ValHistogram det_valuation_histogram(long n, long p, long k, OracleMode mode, const HistogramOptions& options) {
  validate_oracle_params(n, p, k);
  const std::int64_t modulus = int_pow(p, k);

  if (mode.kind == HistogramMode::sampled) {
    if (mode.trials == 0) throw PreconditionError("sampled mode needs trials >= 1");
    constexpr std::uint64_t kChunks = 16;
    ValHistogram empty = empty_histogram(n, p, k, mode);
    auto chunk = [&](std::uint64_t c) {
      ValHistogram h = empty_histogram(n, p, k, mode);
      std::uint64_t count = mode.trials / kChunks + (c < mode.trials % kChunks ? 1 : 0);
      std::seed_seq seq{static_cast<std::uint32_t>(mode.seed), static_cast<std::uint32_t>(mode.seed >> 32),
                        static_cast<std::uint32_t>(c)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::int64_t> entry(0, modulus - 1);
      std::vector<std::int64_t> m(static_cast<std::size_t>(n * n));
      for (std::uint64_t t = 0; t < count; ++t) {
        for (auto& v : m) v = entry(rng);
        record(h, det_valuation(m, n, p, k));
      }
      return h;
    };
    return run_sharded(empty, kChunks, worker_count(options, kChunks), chunk);
  }

  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n * n * k));
  if (total > options.budget) {
    throw ResourceError("exhaustive enumeration of " + total.get_str() + " matrices exceeds the budget of " +
                        options.budget.get_str() + "; use sampled mode or raise --budget");
  }
  const long prefix = shard_prefix_length(n, p, k, options.min_shards);
  const std::uint64_t shards = shard_count(p, k, prefix);
  ValHistogram h = run_sharded(empty_histogram(n, p, k, mode), shards, worker_count(options, shards),
                               [&](std::uint64_t s) { return enumerate_shard(n, p, k, prefix, s); });
  if (h.total != total) throw std::logic_error("enumeration count mismatch");
  return h;
}

FactoredRatFun det_zeta_product(const ScalarField& field, long n) {
  CycloRational c(1);
  std::vector<DenomFactor> denom;
  for (long i = 1; i <= n; ++i) {
    c *= CycloRational(1 - field.q_power(-i));
    denom.push_back({UnitScalar::q_power(-i), 1, 1});
  }
  return FactoredRatFun(field, 0, Poly(c), std::move(denom));
}

DetZetaReport det_zeta_series_check(const ValHistogram& h) {
  if (h.mode.kind != HistogramMode::exhaustive)
    throw PreconditionError("the determinant zeta check needs an exhaustive histogram");
  if (!h.consistent()) throw PreconditionError("inconsistent histogram");
  DetZetaReport report{h.n, h.p, h.k, {}, true};
  ScalarField field{h.p, 1};
  auto coeffs = series_coeffs(det_zeta_product(field, h.n), h.k - 1);
  for (long j = 0; j < h.k; ++j) {
    SeriesCheckEntry e;
    e.j = j;
    e.expected = coeffs[static_cast<std::size_t>(j)].to_rational();
    e.observed = h.mass(j);
    e.pass = e.expected == e.observed;
    report.passed = report.passed && e.pass;
    report.entries.push_back(std::move(e));
  }
  return report;
}

DetZetaReport det_zeta_series_check(long n, long p, long k, const HistogramOptions& options) {
  return det_zeta_series_check(det_valuation_histogram(n, p, k, OracleMode::exhaustive(), options));
}

std::filesystem::path HistogramCache::path_for(long n, long p, long k, const OracleMode& mode) const {
  std::ostringstream name;
  name << "dethist-v" << kHistogramCacheSchema << "-n" << n << "-p" << p << "-k" << k << "-" << mode.label()
       << ".json";
  return dir_ / name.str();
}

std::optional<ValHistogram> HistogramCache::load(long n, long p, long k, const OracleMode& mode) const {
  std::ifstream in(path_for(n, p, k, mode));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    ValHistogram h = histogram_from_json_text(buf.str());
    if (h.n != n || h.p != p || h.k != k || !(h.mode == mode) || !h.consistent()) return std::nullopt;
    return h;
  } catch (const std::exception&) {
    return std::nullopt;  // stale schema or corrupt file: recompute
  }
}

void HistogramCache::store(const ValHistogram& h) const {
  std::filesystem::create_directories(dir_);
  auto path = path_for(h.n, h.p, h.k, h.mode);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out << histogram_to_json_text(h);
  }
  std::filesystem::rename(tmp, path);
}

ValHistogram cached_det_valuation_histogram(const HistogramCache& cache, long n, long p, long k, OracleMode mode,
                                            const HistogramOptions& options) {
  if (auto hit = cache.load(n, p, k, mode)) return *hit;
  ValHistogram h = det_valuation_histogram(n, p, k, mode, options);
  cache.store(h);
  return h;
}

namespace {

void require_lattice_shape(const LatticeFunction& phi, const ExponentVector& d) {
  if (static_cast<long>(d.size()) != phi.dim())
    throw PreconditionError("exponent vector length does not match lattice dimension");
}

// 1-D tail data for sum_x C(x, k) rho^x with 0 < rho < 1 (rho exact).
struct CoordinateBound {
  Rational head;  // sum_{x <= box} C(x,k) rho^x
  Rational tail;  // upper bound on sum_{x > box}
  bool valid = false;
};

CoordinateBound coordinate_bound(long k, const Rational& rho, long box) {
  CoordinateBound b;
  Rational pw = 1;
  for (long x = 0; x <= box; ++x) {
    b.head += Rational(binomial(x, k)) * pw;
    pw *= rho;
  }
  // For x > box >= k the term ratio rho (x+1)/(x+1-k) decreases in x, so the
  // tail is dominated by a geometric series with ratio r.
  if (box < k) return b;
  Rational r = rho * Rational(box + 2, box + 2 - k);
  r.canonicalize();
  if (r >= 1) return b;
  b.tail = Rational(binomial(box + 1, k)) * pw / (1 - r);
  b.valid = true;
  return b;
}

}  // namespace

PointSum truncated_lattice_sum_at(const ScalarField& field, const LatticeFunction& phi, const ExponentVector& d,
                                  long s0, const Rational& tolerance) {
  require_lattice_shape(phi, d);
  if (tolerance <= 0) throw PreconditionError("tolerance must be positive");
  for (std::size_t t = 0; t < phi.terms().size(); ++t) {
    if (phi.terms()[t].coeff.is_zero()) continue;
    for (std::size_t i = 0; i < d.size(); ++i) {
      long e = phi.terms()[t].coords[i].u.q_exp - s0 * d[i];
      if (e >= 0)
        throw DivergenceError("s0 = " + std::to_string(s0) + " is not right of the abscissa (term " +
                              std::to_string(t) + ", coordinate " + std::to_string(i + 1) + ")");
    }
  }

  long box = 1;
  for (const auto& t : phi.terms())
    for (const auto& c : t.coords) box = std::max(box, c.k);
  constexpr long kMaxBox = 1L << 16;
  for (; box <= kMaxBox; box *= 2) {
    PointSum out;
    out.box = box;
    bool all_valid = true;
    for (const auto& term : phi.terms()) {
      if (term.coeff.is_zero()) continue;
      CycloRational partial = term.coeff;
      Rational head_prod = 1, full_prod = 1;
      for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& c = term.coords[i];
        const UnitScalar w = c.u * UnitScalar::q_power(-s0 * d[i]);
        const CycloRational wv = field.embed(w);
        CycloRational head;
        CycloRational pw(1);
        for (long x = 0; x <= box; ++x) {
          head += CycloRational(Rational(binomial(x, c.k))) * pw;
          pw *= wv;
        }
        partial *= head;
        CoordinateBound b = coordinate_bound(c.k, field.q_power(w.q_exp), box);
        all_valid = all_valid && b.valid;
        head_prod *= b.head;
        full_prod *= b.head + b.tail;
      }
      out.partial_sum += partial;
      out.tail_bound += term.coeff.modulus_bound() * (full_prod - head_prod);
    }
    if (all_valid && out.tail_bound < tolerance) return out;
  }
  throw ResourceError("lattice sum needs a box larger than " + std::to_string(kMaxBox));
}

std::vector<CycloRational> truncated_lattice_coefficients(const ScalarField& field, const LatticeFunction& phi,
                                                          const ExponentVector& d, long max_j) {
  require_lattice_shape(phi, d);
  if (max_j < 0) throw PreconditionError("max_j must be non-negative");
  std::vector<CycloRational> out(static_cast<std::size_t>(max_j + 1));

  for (std::size_t t = 0; t < phi.terms().size(); ++t) {
    const auto& term = phi.terms()[t];
    if (term.coeff.is_zero()) continue;
    CycloRational scale = term.coeff;
    std::vector<std::size_t> free_coords;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto& c = term.coords[i];
      if (d[i] > 0) {
        free_coords.push_back(i);
        continue;
      }
      // Coordinates with d = 0 contribute the full sum S_k = sum_x C(x,k) u^x
      // to every coefficient. Shifting x -> x + 1 and Pascal's rule give
      // S_k = [k = 0] + u (S_k + S_{k-1}), solved upward from S_0.
      if (!c.u.magnitude_below_one())
        throw DivergenceError("coordinate " + std::to_string(i + 1) + " of term " + std::to_string(t) +
                              " has d = 0 and |u| >= 1");
      const CycloRational u = field.embed(c.u);
      const CycloRational inv = (CycloRational(1) - u).inverse();
      CycloRational s = inv;
      for (long kk = 1; kk <= c.k; ++kk) s = u * s * inv;
      scale *= s;
    }

    // Enumerate x over the coordinates with d > 0 and d.x <= max_j.
    std::vector<long> x(free_coords.size(), 0);
    auto visit = [&](auto&& self, std::size_t pos, long weight, const CycloRational& value) -> void {
      if (pos == free_coords.size()) {
        out[static_cast<std::size_t>(weight)] += value;
        return;
      }
      const std::size_t i = free_coords[pos];
      const auto& c = term.coords[i];
      for (long xi = 0; weight + xi * d[i] <= max_j; ++xi) {
        Integer b = binomial(xi, c.k);
        if (b == 0) continue;
        self(self, pos + 1, weight + xi * d[i], value * CycloRational(Rational(b)) * field.embed(c.u.pow(xi)));
      }
    };
    visit(visit, 0, 0, scale);
  }
  return out;
}

}  // namespace igusa
