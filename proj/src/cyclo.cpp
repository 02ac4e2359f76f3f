#include "igusa/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "igusa/errors.hpp"

namespace igusa {

namespace {

using QPoly = std::vector<Rational>;  // dense, constant term first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Euclidean division in Q[x]; divisor must be nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
  trim(num);
  if (num.size() < den.size()) return {QPoly{}, num};
  QPoly quot(num.size() - den.size() + 1);
  const Rational& lead = den.back();
  for (std::size_t i = num.size(); i-- >= den.size();) {
    if (num[i] == 0) continue;
    Rational c = num[i] / lead;
    std::size_t shift = i - (den.size() - 1);
    quot[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
  }
  trim(num);
  trim(quot);
  return {quot, num};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Reduces a dense coefficient vector modulo the monic Phi_m in place and
// resizes it to phi(m).
void reduce_mod_cyclotomic(std::vector<Rational>& v, long level) {
  const auto& phi_poly = cyclotomic_polynomial(level);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = v.size(); i-- > deg;) {
    if (v[i] == 0) continue;
    Rational c = v[i];
    std::size_t shift = i - deg;
    for (std::size_t j = 0; j <= deg; ++j) v[shift + j] -= c * Rational(phi_poly[j]);
  }
  v.resize(deg);
}

std::vector<Integer> exact_monic_quotient(std::vector<Integer> num, const std::vector<Integer>& den) {
  std::vector<Integer> quot(num.size() - den.size() + 1);
  for (std::size_t i = num.size(); i-- >= den.size();) {
    Integer c = num[i];
    std::size_t shift = i - (den.size() - 1);
    quot[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

long euler_phi(long m) {
  long result = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Integer>& cyclotomic_polynomial(long m) {
  static std::mutex mutex;
  static std::map<long, std::vector<Integer>> cache;
  if (m < 1) throw ConfigError("cyclotomic level must be >= 1, got " + std::to_string(m));
  std::lock_guard lock(mutex);
  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, filled for every divisor
  // of m in increasing order so the smaller factors are always cached.
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0 || cache.count(d)) continue;
    std::vector<Integer> num(static_cast<std::size_t>(d + 1));
    num[0] = -1;
    num[static_cast<std::size_t>(d)] = 1;
    for (long e = 1; e < d; ++e) {
      if (d % e == 0) num = exact_monic_quotient(std::move(num), cache.at(e));
    }
    cache.emplace(d, std::move(num));
  }
  return cache.at(m);
}

CycloRational::CycloRational(const Rational& value, long level) : level_(level) {
  if (level < 1) throw ConfigError("cyclotomic level must be >= 1");
  coeffs_.assign(static_cast<std::size_t>(euler_phi(level)), Rational(0));
  coeffs_[0] = value;
  coeffs_[0].canonicalize();
}

CycloRational CycloRational::from_coeffs(long level, std::vector<Rational> coeffs) {
  if (level < 1) throw ConfigError("cyclotomic level must be >= 1");
  if (static_cast<long>(coeffs.size()) != euler_phi(level)) {
    throw ConfigError("level-" + std::to_string(level) + " element needs " +
                      std::to_string(euler_phi(level)) + " coefficients, got " +
                      std::to_string(coeffs.size()));
  }
  for (auto& c : coeffs) c.canonicalize();
  CycloRational out;
  out.level_ = level;
  out.coeffs_ = std::move(coeffs);
  return out;
}

CycloRational CycloRational::root_of_unity(long level, long j) {
  j %= level;
  if (j < 0) j += level;
  std::vector<Rational> v(static_cast<std::size_t>(std::max<long>(j + 1, euler_phi(level))));
  v[static_cast<std::size_t>(j)] = 1;
  reduce_mod_cyclotomic(v, level);
  return from_coeffs(level, std::move(v));
}

bool CycloRational::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloRational::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

const Rational& CycloRational::to_rational() const {
  if (!is_rational()) throw DomainError("value " + to_string() + " is not rational");
  return coeffs_[0];
}

Rational CycloRational::modulus_bound() const {
  Rational s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

long CycloRational::common_level(const CycloRational& a, const CycloRational& b) {
  if (a.level_ == b.level_) return a.level_;
  if (a.level_ == 1 && a.is_rational()) return b.level_;
  if (b.level_ == 1 && b.is_rational()) return a.level_;
  throw ConfigError("cyclotomic level mismatch: " + std::to_string(a.level_) + " vs " +
                    std::to_string(b.level_));
}

CycloRational CycloRational::at_level(long level) const {
  if (level == level_) return *this;
  if (level_ != 1) {
    throw ConfigError("cannot move a level-" + std::to_string(level_) + " value to level " +
                      std::to_string(level));
  }
  return CycloRational(coeffs_[0], level);
}

CycloRational& CycloRational::operator+=(const CycloRational& rhs) {
  long lvl = common_level(*this, rhs);
  if (level_ != lvl) *this = at_level(lvl);
  if (rhs.level_ != lvl) {
    coeffs_[0] += rhs.coeffs_[0];
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  }
  return *this;
}

CycloRational& CycloRational::operator-=(const CycloRational& rhs) { return *this += -rhs; }

CycloRational& CycloRational::operator*=(const CycloRational& rhs) {
  long lvl = common_level(*this, rhs);
  if (level_ == 1 && rhs.level_ == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  if (rhs.level_ != lvl) {
    for (auto& c : coeffs_) c *= rhs.coeffs_[0];
    return *this;
  }
  if (level_ != lvl) {
    Rational s = coeffs_[0];
    *this = rhs;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  std::vector<Rational> prod(2 * coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  reduce_mod_cyclotomic(prod, lvl);
  coeffs_ = std::move(prod);
  return *this;
}

CycloRational& CycloRational::operator/=(const CycloRational& rhs) { return *this *= rhs.inverse(); }

CycloRational CycloRational::operator-() const {
  CycloRational out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CycloRational& a, const CycloRational& b) {
  if (a.level_ == b.level_) return a.coeffs_ == b.coeffs_;
  if (a.is_rational() && b.is_rational()) return a.coeffs_[0] == b.coeffs_[0];
  return false;
}

CycloRational CycloRational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (coeffs_.size() == 1) return CycloRational(1 / coeffs_[0], level_);

  // Extended Euclid in Q[x] against Phi_m, which is irreducible, so the gcd
  // is a nonzero constant.
  QPoly r0;
  for (const auto& c : cyclotomic_polynomial(level_)) r0.emplace_back(c);
  QPoly r1(coeffs_.begin(), coeffs_.end());
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [quot, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QPoly next = sub(s0, mul(quot, s1));
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  Rational g = r0.at(0);
  for (auto& c : s0) c /= g;
  reduce_mod_cyclotomic(s0, level_);
  return from_coeffs(level_, std::move(s0));
}

CycloRational CycloRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloRational result(Rational(1), level_);
  CycloRational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::string CycloRational::to_string() const {
  if (level_ == 1) return coeffs_[0].get_str();
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i].get_str();
  }
  os << ']';
  return os.str();
}

void ScalarField::validate() const {
  if (q < 2) throw ConfigError("q must be >= 2, got " + std::to_string(q));
  if (level < 1) throw ConfigError("cyclotomic level must be >= 1, got " + std::to_string(level));
}

UnitScalar ScalarField::normalize(UnitScalar u) const {
  u.root %= level;
  if (u.root < 0) u.root += level;
  return u;
}

bool ScalarField::is_one(UnitScalar u) const {
  u = normalize(u);
  return u.root == 0 && u.q_exp == 0;
}

Rational ScalarField::q_power(long a) const {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(a < 0 ? -a : a));
  return a >= 0 ? Rational(p) : Rational(Integer(1), p);
}

CycloRational ScalarField::embed(UnitScalar u) const {
  u = normalize(u);
  Rational scale = q_power(u.q_exp);
  if (u.root == 0) return CycloRational(scale, level);
  CycloRational z = CycloRational::root_of_unity(level, u.root);
  return z * CycloRational(scale);
}

std::string to_string(UnitScalar u) {
  return "z^" + std::to_string(u.root) + "*q^" + std::to_string(u.q_exp);
}

Integer binomial(long x, long k) {
  if (k < 0 || x < 0 || k > x) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(k));
  return r;
}

}  // namespace igusa
