#pragma once

#include <doctest.h>

#include <random>
#include <vector>

#include "igusa/ratfun.hpp"

namespace igusa::test {

inline Rational R(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline CycloRational C(long a, long b = 1) { return CycloRational(R(a, b)); }

inline std::vector<CycloRational> Cs(std::initializer_list<Rational> xs) {
  std::vector<CycloRational> out;
  for (const auto& x : xs) out.emplace_back(x);
  return out;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Random element of Q(zeta_level) with small coefficients.
inline CycloRational random_cyclo(std::mt19937_64& rng, long level, bool nonzero = true) {
  while (true) {
    std::vector<Rational> c;
    for (long i = 0; i < euler_phi(level); ++i) c.push_back(R(uniform(rng, -3, 3), uniform(rng, 1, 3)));
    CycloRational x = CycloRational::from_coeffs(level, c);
    if (!nonzero || !x.is_zero()) return x;
  }
}

/// Random factored rational function regular at t = 0.
inline FactoredRatFun random_ratfun(std::mt19937_64& rng, const ScalarField& field) {
  Poly num;
  const long terms = uniform(rng, 1, 3);
  for (long i = 0; i < terms; ++i) num += Poly::monomial(random_cyclo(rng, field.level), uniform(rng, 0, 3));
  std::vector<DenomFactor> den;
  const long factors = uniform(rng, 0, 3);
  for (long i = 0; i < factors; ++i)
    den.push_back({{uniform(rng, 0, field.level - 1), uniform(rng, -2, 2)}, uniform(rng, 1, 2), uniform(rng, 1, 2)});
  return FactoredRatFun(field, uniform(rng, 0, 2), num, den);
}

/// Dense polynomial helpers used by the independent Laurent oracle.
using Dense = std::vector<CycloRational>;

inline Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// p(t) with t = s0 (1 - w), as a dense polynomial in w.
inline Dense substitute(const Dense& p, const CycloRational& s0) {
  Dense out;
  const Dense lin{s0, -s0};
  for (std::size_t i = p.size(); i-- > 0;) {
    out = dense_mul(out, lin);
    if (out.empty()) out.resize(1);
    out[0] += p[i];
  }
  return out;
}

/// Laurent coefficients of R at t = 1/a0 by expanding N(w)/D(w) from the
/// fully multiplied-out numerator and denominator.
inline std::pair<long, Dense> laurent_oracle(const FactoredRatFun& r, UnitScalar a0, long max_index) {
  const ScalarField& f = r.field();
  Dense num = r.numerator().dense();
  Dense den = r.denominator_poly().dense();
  if (r.t_power() >= 0)
    num.insert(num.begin(), static_cast<std::size_t>(r.t_power()), CycloRational());
  else
    den.insert(den.begin(), static_cast<std::size_t>(-r.t_power()), CycloRational());
  const CycloRational s0 = f.embed(a0.inverse());
  Dense nw = substitute(num, s0), dw = substitute(den, s0);
  long zn = 0, zd = 0;
  while (zn < static_cast<long>(nw.size()) && nw[static_cast<std::size_t>(zn)].is_zero()) ++zn;
  while (dw[static_cast<std::size_t>(zd)].is_zero()) ++zd;
  const long lo = zn - zd;
  Dense out;
  for (long i = lo; i <= max_index; ++i) {
    // coefficient of w^{i - lo} in (nw / w^zn) / (dw / w^zd)
    const long m = i - lo;
    CycloRational acc = zn + m < static_cast<long>(nw.size()) ? nw[static_cast<std::size_t>(zn + m)] : CycloRational();
    for (long l = 1; l <= m; ++l) {
      const long di = zd + l;
      if (di < static_cast<long>(dw.size())) acc -= dw[static_cast<std::size_t>(di)] * out[static_cast<std::size_t>(m - l)];
    }
    out.push_back(acc / dw[static_cast<std::size_t>(zd)]);
  }
  return {lo, out};
}

}  // namespace igusa::test
