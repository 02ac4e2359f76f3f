#include "igusa/koszul_ext.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "igusa/errors.hpp"

namespace igusa {

LambdaModule::LambdaModule(long n, long dim, std::vector<Matrix> gens) : n_(n), dim_(dim), gens_(std::move(gens)) {
  if (n < 0 || dim < 0) throw DomainError("negative rank or dimension");
  if (static_cast<long>(gens_.size()) != n) throw DomainError("need one matrix per generator");
  for (const auto& g : gens_) {
    if (g.rows() != dim || g.cols() != dim) throw DomainError("generator has the wrong shape");
    if (igusa::rank(g) != dim) throw DomainError("generator is singular");
  }
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i]))
        throw DomainError("generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute");
}

LambdaModule LambdaModule::trivial(long n, long dim) {
  return LambdaModule(n, dim, std::vector<Matrix>(static_cast<std::size_t>(n), Matrix::identity(dim)));
}

LambdaModule LambdaModule::twisted(const ScalarField& field, std::span<const UnitScalar> chi) const {
  if (static_cast<long>(chi.size()) != n_) throw DomainError("character has the wrong number of values");
  std::vector<Matrix> g = gens_;
  for (long j = 0; j < n_; ++j) g[j] = g[j].scaled(field.embed(chi[j]));
  return LambdaModule(n_, dim_, std::move(g));
}

long ExtProfile::euler_characteristic() const {
  long s = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i % 2 ? -1 : 1) * dims[i];
  return s;
}

ExtProfile koszul_ext_dims(const ScalarField& field, std::span<const UnitScalar> chi1, const LambdaModule& m2) {
  const long n = m2.rank(), dim = m2.dim();
  if (static_cast<long>(chi1.size()) != n) throw PreconditionError("chi1 needs one value per generator");
  std::vector<Matrix> ops;
  for (long j = 0; j < n; ++j)
    ops.push_back(m2.gens()[j].scaled(field.embed(chi1[j].inverse())) - Matrix::identity(dim));

  // Basis of Lambda^i: subsets of {0..n-1} as bitmasks, grouped by size.
  std::vector<std::vector<unsigned>> subsets(static_cast<std::size_t>(n + 1));
  for (unsigned s = 0; s < (1u << n); ++s) subsets[static_cast<std::size_t>(__builtin_popcount(s))].push_back(s);
  auto index_of = [&](long deg, unsigned s) {
    const auto& v = subsets[static_cast<std::size_t>(deg)];
    return static_cast<long>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };

  // rank of d^i : C^i -> C^{i+1}, d(e_S (x) v) = sum_{j not in S} sign e_{S+j} (x) A_j v.
  std::vector<long> ranks(static_cast<std::size_t>(n + 1), 0);
  for (long i = 0; i < n; ++i) {
    const auto& src = subsets[static_cast<std::size_t>(i)];
    const auto& dst = subsets[static_cast<std::size_t>(i + 1)];
    Matrix d(static_cast<long>(dst.size()) * dim, static_cast<long>(src.size()) * dim);
    for (std::size_t a = 0; a < src.size(); ++a) {
      for (long j = 0; j < n; ++j) {
        if (src[a] >> j & 1u) continue;
        const unsigned target = src[a] | (1u << j);
        const long row_block = index_of(i + 1, target);
        const bool negative = __builtin_popcount(src[a] & ((1u << j) - 1)) % 2;
        for (long r = 0; r < dim; ++r)
          for (long c = 0; c < dim; ++c) {
            const CycloRational& x = ops[j](r, c);
            if (x.is_zero()) continue;
            d(row_block * dim + r, static_cast<long>(a) * dim + c) = negative ? -x : x;
          }
      }
    }
    ranks[static_cast<std::size_t>(i)] = rank(d);
  }
  ExtProfile out;
  for (long i = 0; i <= n; ++i) {
    const long chain = static_cast<long>(subsets[static_cast<std::size_t>(i)].size()) * dim;
    const long incoming = i > 0 ? ranks[static_cast<std::size_t>(i - 1)] : 0;
    out.dims.push_back(chain - ranks[static_cast<std::size_t>(i)] - incoming);
  }
  return out;
}

namespace {

std::string describe(const std::vector<UnitScalar>& chi) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << to_string(chi[i]);
  os << ")";
  return os.str();
}

}  // namespace

ScanReport vanishing_dichotomy_scan(const ScalarField& field, long n, std::uint64_t trials, std::uint64_t seed) {
  field.validate();
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  if (n < 1) throw PreconditionError("rank n must be >= 1");
  ScanReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
    std::mt19937_64 rng(seq);
    auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

    const long dim = uniform(1, 5);
    Matrix nil(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = i + 1; j < dim; ++j) nil(i, j) = CycloRational(uniform(-2, 2));
    std::vector<Matrix> powers{Matrix::identity(dim)};
    for (long l = 1; l < dim; ++l) powers.push_back(powers.back() * nil);

    std::vector<UnitScalar> chi2(static_cast<std::size_t>(n));
    for (auto& u : chi2) u = field.normalize({uniform(0, field.level - 1), uniform(-2, 2)});
    std::vector<Matrix> gens;
    for (long j = 0; j < n; ++j) {
      Matrix g = Matrix::identity(dim);
      for (long l = 1; l < dim; ++l) g = g + powers[static_cast<std::size_t>(l)].scaled(CycloRational(uniform(-2, 2)));
      gens.push_back(std::move(g));
    }
    LambdaModule m2 = LambdaModule(n, dim, std::move(gens)).twisted(field, chi2);

    std::vector<UnitScalar> chi1 = chi2;
    const bool equal = uniform(0, 1) == 0;
    if (!equal) {
      // Differ at one generator by a unit that is not 1.
      const long j = uniform(0, n - 1);
      UnitScalar shift;
      do {
        shift = field.normalize({uniform(0, field.level - 1), uniform(-1, 1)});
      } while (field.is_one(shift));
      chi1[static_cast<std::size_t>(j)] = field.normalize(chi1[static_cast<std::size_t>(j)] * shift);
    } else {
      ++rep.equal_character_trials;
    }

    ExtProfile prof = koszul_ext_dims(field, chi1, m2);
    bool ok = prof.euler_characteristic() == 0;
    if (equal)
      ok = ok && prof.dims[0] >= 1;
    else
      ok = ok && std::all_of(prof.dims.begin(), prof.dims.end(), [](long d) { return d == 0; });
    if (ok) {
      ++rep.passes;
    } else if (!rep.counterexample) {
      std::ostringstream os;
      os << "trial " << t << ": dim " << dim << ", chi1 " << describe(chi1) << ", chi2 " << describe(chi2)
         << ", dims [";
      for (std::size_t i = 0; i < prof.dims.size(); ++i) os << (i ? "," : "") << prof.dims[i];
      os << "]";
      rep.counterexample = os.str();
    }
  }
  return rep;
}

const Rational& FunctionTable::at(std::span<const long> x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (x[i] < 0 || x[i] > box[i]) throw DomainError("point outside the box");
    idx = idx * static_cast<std::size_t>(box[i] + 1) + static_cast<std::size_t>(x[i]);
  }
  return values.at(idx);
}

namespace {

// Delta^alpha f(x) = sum_{beta <= alpha} (-1)^{|alpha - beta|} prod C(alpha_i, beta_i) f(x + beta).
Rational mixed_difference(const FunctionTable& f, std::span<const long> x, std::span<const long> alpha) {
  const std::size_t n = alpha.size();
  std::vector<long> beta(n, 0), point(n);
  long total = 0;
  for (long a : alpha) total += a;
  Rational sum = 0;
  while (true) {
    Integer weight = 1;
    long b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      weight *= binomial(alpha[i], beta[i]);
      point[i] = x[i] + beta[i];
      b += beta[i];
    }
    Rational term = Rational(weight) * f.at(point);
    if ((total - b) % 2) sum -= term; else sum += term;
    std::size_t pos = n;
    while (pos > 0 && ++beta[pos - 1] > alpha[pos - 1]) {
      beta[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return sum;
}

// Calls visit(alpha) for every alpha in N^n with |alpha| == order (or <= order).
template <typename Visit>
void for_each_multi_index(std::size_t n, long order, bool exact, Visit visit) {
  std::vector<long> alpha(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, long left) -> void {
    if (pos + 1 == n || n == 0) {
      if (n > 0) {
        for (long a = exact ? left : 0; a <= left; ++a) {
          alpha[pos] = a;
          visit(alpha);
        }
      } else if (!exact || left == 0) {
        visit(alpha);
      }
      return;
    }
    for (long a = 0; a <= left; ++a) {
      alpha[pos] = a;
      self(self, pos + 1, left - a);
    }
    alpha[pos] = 0;
  };
  rec(rec, 0, order);
}

template <typename Visit>
void for_each_point(const std::vector<long>& hi, Visit visit) {
  std::vector<long> x(hi.size(), 0);
  for (long h : hi)
    if (h < 0) return;
  while (true) {
    visit(x);
    long pos = static_cast<long>(x.size()) - 1;
    while (pos >= 0 && ++x[static_cast<std::size_t>(pos)] > hi[static_cast<std::size_t>(pos)]) {
      x[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

}  // namespace

InvarianceVerdict finite_order_invariance_tests(const FunctionTable& f, long k) {
  if (k < 0) throw PreconditionError("order k must be non-negative");
  const std::size_t n = f.box.size();
  std::size_t expected = 1;
  for (long b : f.box) {
    if (b < k + 1)
      throw PreconditionError("box side " + std::to_string(b) + " is too small for order " + std::to_string(k) +
                              "; the test is inconclusive");
    expected *= static_cast<std::size_t>(b + 1);
  }
  if (f.values.size() != expected) throw DomainError("function table size does not match the box");

  InvarianceVerdict v{true, true};
  for_each_multi_index(n, k + 1, true, [&](const std::vector<long>& alpha) {
    if (!v.difference_test) return;
    std::vector<long> hi(n);
    for (std::size_t i = 0; i < n; ++i) hi[i] = f.box[i] - alpha[i];
    for_each_point(hi, [&](const std::vector<long>& x) {
      if (v.difference_test && mixed_difference(f, x, alpha) != 0) v.difference_test = false;
    });
  });

  // Newton interpolant from the differences at the origin.
  std::vector<std::pair<std::vector<long>, Rational>> newton;
  const std::vector<long> origin(n, 0);
  for_each_multi_index(n, k, false, [&](const std::vector<long>& alpha) {
    Rational c = mixed_difference(f, origin, alpha);
    if (c != 0) newton.emplace_back(alpha, c);
  });
  for_each_point(f.box, [&](const std::vector<long>& x) {
    if (!v.interpolation_test) return;
    Rational p = 0;
    for (const auto& [alpha, c] : newton) {
      Integer w = 1;
      for (std::size_t i = 0; i < n; ++i) w *= binomial(x[i], alpha[i]);
      p += c * Rational(w);
    }
    if (p != f.at(x)) v.interpolation_test = false;
  });
  return v;
}

bool finite_order_invariance_check(const FunctionTable& f, long k) {
  InvarianceVerdict v = finite_order_invariance_tests(f, k);
  if (!v.agree()) throw std::logic_error("difference and interpolation tests disagree");
  return v.difference_test;
}

}  // namespace igusa
