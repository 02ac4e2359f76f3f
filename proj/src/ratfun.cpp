#include "igusa/ratfun.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "igusa/errors.hpp"

namespace igusa {

namespace {

using Series = std::vector<CycloRational>;

Poly factor_poly(const ScalarField& field, const DenomFactor& f) {
  return Poly(CycloRational(1)) - Poly::monomial(field.embed(f.base), f.degree);
}

Poly poly_pow(const Poly& p, long e) {
  Poly out(CycloRational(1));
  for (long i = 0; i < e; ++i) out = out * p;
  return out;
}

void require_same_field(const FactoredRatFun& a, const FactoredRatFun& b) {
  if (!(a.field() == b.field())) {
    throw ConfigError("rational functions over different fields: q=" + std::to_string(a.field().q) +
                      " m=" + std::to_string(a.field().level) + " vs q=" +
                      std::to_string(b.field().q) + " m=" + std::to_string(b.field().level));
  }
}

using FactorKey = std::pair<UnitScalar, long>;  // (base, degree)

std::map<FactorKey, long> factor_map(const FactoredRatFun& r) {
  std::map<FactorKey, long> out;
  for (const auto& f : r.denominator()) out[{f.base, f.degree}] += f.multiplicity;
  return out;
}

Series ps_mul(const Series& a, const Series& b, std::size_t len) {
  Series out(len);
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series ps_inv(const Series& a, std::size_t len) {
  Series out(len);
  if (len == 0) return out;
  CycloRational inv0 = a.at(0).inverse();
  out[0] = inv0;
  for (std::size_t n = 1; n < len; ++n) {
    CycloRational acc;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * out[n - k];
    out[n] = -(acc * inv0);
  }
  return out;
}

Series ps_pow(const Series& a, long e, std::size_t len) {
  Series out(len);
  if (len == 0) return out;
  out[0] = CycloRational(1);
  for (long i = 0; i < e; ++i) out = ps_mul(out, a, len);
  return out;
}

// (1 - w)^e as a truncated series; e may be negative.
Series one_minus_w_pow(long e, std::size_t len) {
  Series out(len);
  for (std::size_t j = 0; j < len; ++j) {
    long jj = static_cast<long>(j);
    if (e >= 0) {
      Integer b = binomial(e, jj);
      out[j] = CycloRational(Rational(jj % 2 == 0 ? b : Integer(-b)));
    } else {
      out[j] = CycloRational(Rational(binomial(-e + jj - 1, jj)));
    }
  }
  return out;
}

}  // namespace

FactoredRatFun::FactoredRatFun(ScalarField field) : field_(field) { field_.validate(); }

FactoredRatFun::FactoredRatFun(ScalarField field, long t_power, Poly numerator,
                               std::vector<DenomFactor> denom)
    : field_(field), t_power_(t_power), numerator_(std::move(numerator)), denom_(std::move(denom)) {
  field_.validate();
  canonicalize();
}

void FactoredRatFun::canonicalize() {
  if (numerator_.is_zero()) {
    t_power_ = 0;
    denom_.clear();
    return;
  }
  if (long low = numerator_.low_degree(); low > 0) {
    numerator_ = numerator_.shifted(-low);
    t_power_ += low;
  }
  std::map<std::tuple<long, long, long>, long> merged;  // (degree, q_exp, root)
  for (const auto& f : denom_) {
    if (f.degree < 1) throw DomainError("denominator factor degree must be >= 1");
    if (f.multiplicity < 0) throw DomainError("negative denominator multiplicity");
    if (f.multiplicity == 0) continue;
    UnitScalar u = field_.normalize(f.base);
    merged[{f.degree, u.q_exp, u.root}] += f.multiplicity;
  }
  denom_.clear();
  for (const auto& [key, mult] : merged) {
    auto [degree, q_exp, root] = key;
    denom_.push_back({UnitScalar{root, q_exp}, degree, mult});
  }
}

FactoredRatFun FactoredRatFun::constant(ScalarField field, const CycloRational& c) {
  return FactoredRatFun(field, 0, Poly(c), {});
}

FactoredRatFun FactoredRatFun::monomial(ScalarField field, const CycloRational& c, long v) {
  return FactoredRatFun(field, v, Poly(c), {});
}

FactoredRatFun FactoredRatFun::geometric(ScalarField field, UnitScalar u, long d, long e) {
  return FactoredRatFun(field, 0, Poly(CycloRational(1)), {{u, d, e}});
}

Poly FactoredRatFun::denominator_poly() const {
  Poly out(CycloRational(1));
  for (const auto& f : denom_) out = out * poly_pow(factor_poly(field_, f), f.multiplicity);
  return out;
}

FactoredRatFun FactoredRatFun::normalized() const {
  FactoredRatFun out = *this;
  if (out.is_zero()) return out;
  for (auto& f : out.denom_) {
    Poly fp = factor_poly(field_, f);
    while (f.multiplicity > 0) {
      auto quot = out.numerator_.divide_exact(fp);
      if (!quot) break;
      out.numerator_ = std::move(*quot);
      --f.multiplicity;
    }
  }
  out.canonicalize();
  return out;
}

CycloRational FactoredRatFun::evaluate(const CycloRational& t) const {
  if (is_zero()) return CycloRational();
  FactoredRatFun r = normalized();
  if (t.is_zero()) {
    if (r.t_power_ < 0) throw DomainError("pole at t = 0");
    if (r.t_power_ > 0) return CycloRational();
  }
  CycloRational den = r.denominator_poly().evaluate(t);
  if (den.is_zero()) throw DomainError("evaluation at a pole");
  CycloRational num = r.numerator_.evaluate(t);
  if (r.t_power_ != 0) num *= t.pow(r.t_power_);
  return num / den;
}

FactoredRatFun FactoredRatFun::operator-() const {
  FactoredRatFun out = *this;
  out.numerator_ = -out.numerator_;
  return out;
}

FactoredRatFun FactoredRatFun::scaled(const CycloRational& c) const {
  FactoredRatFun out = *this;
  out.numerator_ = out.numerator_.scaled(c);
  out.canonicalize();
  return out;
}

FactoredRatFun operator+(const FactoredRatFun& a, const FactoredRatFun& b) {
  require_same_field(a, b);
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();

  auto fa = factor_map(a);
  auto fb = factor_map(b);
  std::map<FactorKey, long> lcm = fa;
  for (const auto& [k, e] : fb) lcm[k] = std::max(lcm[k], e);

  auto cofactor = [&](const std::map<FactorKey, long>& own) {
    Poly out(CycloRational(1));
    for (const auto& [k, e] : lcm) {
      auto it = own.find(k);
      long missing = e - (it == own.end() ? 0 : it->second);
      if (missing > 0) out = out * poly_pow(factor_poly(a.field_, {k.first, k.second, 1}), missing);
    }
    return out;
  };

  long v = std::min(a.t_power_, b.t_power_);
  Poly num = a.numerator_.shifted(a.t_power_ - v) * cofactor(fa) +
             b.numerator_.shifted(b.t_power_ - v) * cofactor(fb);
  std::vector<DenomFactor> denom;
  for (const auto& [k, e] : lcm) denom.push_back({k.first, k.second, e});
  return FactoredRatFun(a.field_, v, std::move(num), std::move(denom)).normalized();
}

FactoredRatFun operator*(const FactoredRatFun& a, const FactoredRatFun& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return FactoredRatFun(a.field_);
  std::vector<DenomFactor> denom = a.denom_;
  denom.insert(denom.end(), b.denom_.begin(), b.denom_.end());
  return FactoredRatFun(a.field_, a.t_power_ + b.t_power_, a.numerator_ * b.numerator_, std::move(denom))
      .normalized();
}

bool operator==(const FactoredRatFun& a, const FactoredRatFun& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  long v = std::min(a.t_power_, b.t_power_);
  return a.numerator_.shifted(a.t_power_ - v) * b.denominator_poly() ==
         b.numerator_.shifted(b.t_power_ - v) * a.denominator_poly();
}

bool FactoredRatFun::identical(const FactoredRatFun& other) const {
  return field_ == other.field_ && t_power_ == other.t_power_ && numerator_ == other.numerator_ &&
         denom_ == other.denom_;
}

FactoredRatFun ratfun_arith(const FactoredRatFun& lhs, const FactoredRatFun& rhs, ArithOp op) {
  return op == ArithOp::add ? lhs + rhs : lhs * rhs;
}

std::vector<CycloRational> series_coeffs(const FactoredRatFun& r, long order) {
  if (order < 0) throw DomainError("series order must be non-negative");
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  Series out(len);
  if (r.is_zero()) return out;
  if (r.t_power() < 0) throw DomainError("pole at t = 0: t-power " + std::to_string(r.t_power()));

  for (const auto& [e, c] : r.numerator().terms()) {
    long idx = e + r.t_power();
    if (idx < static_cast<long>(len)) out[static_cast<std::size_t>(idx)] = c;
  }
  // Multiply by each (1 - U t^d)^{-e} = sum_j C(j+e-1, e-1) U^j t^{dj}.
  for (const auto& f : r.denominator()) {
    const CycloRational u = r.field().embed(f.base);
    const std::size_t d = static_cast<std::size_t>(f.degree);
    std::vector<CycloRational> geo;
    CycloRational upow(1);
    for (std::size_t j = 0; j * d < len; ++j) {
      geo.push_back(upow * CycloRational(Rational(binomial(static_cast<long>(j) + f.multiplicity - 1,
                                                           f.multiplicity - 1))));
      upow *= u;
    }
    Series next(len);
    for (std::size_t n = 0; n < len; ++n) {
      if (out[n].is_zero()) continue;
      for (std::size_t j = 0; n + j * d < len; ++j) next[n + j * d] += out[n] * geo[j];
    }
    out = std::move(next);
  }
  return out;
}

CycloRational LaurentSeries::coeff(long i) const {
  if (i > max_index) throw std::out_of_range("Laurent index " + std::to_string(i) + " above window");
  if (zero || i < min_index) return CycloRational();
  return coeffs.at(static_cast<std::size_t>(i - min_index));
}

LaurentSeries laurent_at(const FactoredRatFun& r, UnitScalar a0, long max_index) {
  const ScalarField& field = r.field();
  LaurentSeries out{field, field.normalize(a0), max_index + 1, max_index, {}, false};
  if (r.is_zero()) {
    out.zero = true;
    return out;
  }
  const CycloRational a_inv = field.embed(a0.inverse());

  // Numerator N(t) at t = a0^{-1}(1 - w), as a dense polynomial in w.
  long deg = r.numerator().degree();
  Series num_w(static_cast<std::size_t>(deg + 1));
  for (const auto& [e, c] : r.numerator().terms()) {
    CycloRational scale = c * a_inv.pow(e);
    for (long j = 0; j <= e; ++j) {
      Integer b = binomial(e, j);
      num_w[static_cast<std::size_t>(j)] += scale * CycloRational(Rational(j % 2 == 0 ? b : Integer(-b)));
    }
  }
  long zeros = 0;
  while (zeros <= deg && num_w[static_cast<std::size_t>(zeros)].is_zero()) ++zeros;

  long vanishing = 0;
  for (const auto& f : r.denominator())
    if (field.is_one(f.base * a0.pow(-f.degree))) vanishing += f.multiplicity;

  out.min_index = zeros - vanishing;
  if (max_index < out.min_index) return out;

  const std::size_t len = static_cast<std::size_t>(max_index + vanishing + 1);
  Series g = num_w;
  g.resize(len);

  Series prefactor = one_minus_w_pow(r.t_power(), len);
  CycloRational pre_scale = a_inv.pow(r.t_power());
  for (auto& c : prefactor) c *= pre_scale;
  g = ps_mul(g, prefactor, len);

  for (const auto& f : r.denominator()) {
    const UnitScalar beta_u = f.base * a0.pow(-f.degree);
    Series factor;
    if (field.is_one(beta_u)) {
      // 1 - (1-w)^d = w * h(w), h(w) = sum_{j=1}^{d} (-1)^{j+1} C(d,j) w^{j-1}.
      for (long j = 1; j <= f.degree; ++j) {
        Integer b = binomial(f.degree, j);
        factor.emplace_back(Rational(j % 2 == 1 ? b : Integer(-b)));
      }
    } else {
      factor = one_minus_w_pow(f.degree, std::min<std::size_t>(len, static_cast<std::size_t>(f.degree) + 1));
      CycloRational beta = field.embed(beta_u);
      for (auto& c : factor) c = -(c * beta);
      factor[0] += CycloRational(1);
    }
    g = ps_mul(g, ps_inv(ps_pow(factor, f.multiplicity, len), len), len);
  }

  for (long i = out.min_index; i <= max_index; ++i)
    out.coeffs.push_back(g[static_cast<std::size_t>(i + vanishing)]);
  return out;
}

long pole_order(const FactoredRatFun& r, UnitScalar a0) {
  if (r.is_zero()) return 0;
  const ScalarField& field = r.field();
  long vanishing = 0;
  for (const auto& f : r.denominator())
    if (field.is_one(f.base * a0.pow(-f.degree))) vanishing += f.multiplicity;
  if (vanishing == 0) return 0;
  long zeros = r.numerator().root_multiplicity(field.embed(a0.inverse()));
  return std::max<long>(0, vanishing - zeros);
}

FactoredRatFun rescale_t(const FactoredRatFun& r, UnitScalar c) {
  if (r.is_zero()) return r;
  const ScalarField& field = r.field();
  const CycloRational cval = field.embed(c);
  Poly num;
  for (const auto& [e, coeff] : r.numerator().terms()) num += Poly::monomial(coeff * cval.pow(e), e);
  num = num.scaled(cval.pow(r.t_power()));
  std::vector<DenomFactor> denom;
  for (const auto& f : r.denominator()) denom.push_back({f.base * c.pow(f.degree), f.degree, f.multiplicity});
  return FactoredRatFun(field, r.t_power(), std::move(num), std::move(denom));
}

}  // namespace igusa
