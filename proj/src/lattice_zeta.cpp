#include "igusa/lattice_zeta.hpp"

#include <algorithm>
#include <sstream>

#include "igusa/errors.hpp"

namespace igusa {

long LatticeTerm::order() const {
  long s = 0;
  for (const auto& c : coords) s += c.k;
  return s;
}

LatticeFunction::LatticeFunction(long dim, std::vector<LatticeTerm> terms) : dim_(dim), terms_(std::move(terms)) {
  if (dim < 0) throw DomainError("lattice dimension must be non-negative");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (static_cast<long>(terms_[i].coords.size()) != dim_) {
      throw DomainError("term " + std::to_string(i) + " has " + std::to_string(terms_[i].coords.size()) +
                        " coordinates, expected " + std::to_string(dim_));
    }
    for (const auto& c : terms_[i].coords)
      if (c.k < 0) throw DomainError("binomial degree must be non-negative");
  }
}

LatticeFunction LatticeFunction::constant(long dim, const CycloRational& c) {
  return LatticeFunction(dim, {LatticeTerm{c, std::vector<LatticeCoord>(static_cast<std::size_t>(dim))}});
}

Integer stirling2(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  // Row recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1).
  std::vector<Integer> row(static_cast<std::size_t>(n + 1));
  row[0] = 1;
  for (long i = 1; i <= n; ++i) {
    for (long j = i; j >= 1; --j) row[j] = Integer(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

LatticeFunction LatticeFunction::from_monomials(long dim, std::span<const MonomialTerm> terms) {
  std::vector<LatticeTerm> out;
  for (const auto& m : terms) {
    if (static_cast<long>(m.powers.size()) != dim || static_cast<long>(m.bases.size()) != dim)
      throw DomainError("monomial term arity does not match dimension");
    // Expand prod_i sum_{j_i} S(p_i, j_i) j_i! C(x_i, j_i) over all choices.
    std::vector<LatticeTerm> partial{LatticeTerm{m.coeff, {}}};
    for (long i = 0; i < dim; ++i) {
      long p = m.powers[static_cast<std::size_t>(i)];
      if (p < 0) throw DomainError("monomial power must be non-negative");
      std::vector<LatticeTerm> next;
      for (const auto& t : partial) {
        for (long j = 0; j <= p; ++j) {
          Integer s = stirling2(p, j);
          if (s == 0) continue;
          Integer fact;
          mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(j));
          LatticeTerm nt = t;
          nt.coeff *= CycloRational(Rational(s * fact));
          nt.coords.push_back({j, m.bases[static_cast<std::size_t>(i)]});
          next.push_back(std::move(nt));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return LatticeFunction(dim, std::move(out));
}

long LatticeFunction::order() const {
  long k = 0;
  for (const auto& t : terms_) k = std::max(k, t.order());
  return k;
}

CycloRational LatticeFunction::evaluate(const ScalarField& field, std::span<const long> x) const {
  if (static_cast<long>(x.size()) != dim_) throw DomainError("evaluation point has wrong dimension");
  CycloRational total;
  for (const auto& t : terms_) {
    CycloRational v = t.coeff;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto& c = t.coords[i];
      v *= CycloRational(Rational(binomial(x[i], c.k)));
      if (v.is_zero()) break;
      v *= field.embed(c.u.pow(x[i]));
    }
    total += v;
  }
  return total;
}

LatticeFunction operator+(const LatticeFunction& a, const LatticeFunction& b) {
  if (a.dim_ != b.dim_) throw DomainError("adding lattice functions of different dimensions");
  std::vector<LatticeTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return LatticeFunction(a.dim_, std::move(terms));
}

LatticeFunction tensor(const LatticeFunction& a, const LatticeFunction& b) {
  std::vector<LatticeTerm> terms;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      LatticeTerm t{ta.coeff * tb.coeff, ta.coords};
      t.coords.insert(t.coords.end(), tb.coords.begin(), tb.coords.end());
      terms.push_back(std::move(t));
    }
  }
  return LatticeFunction(a.dim_ + b.dim_, std::move(terms));
}

ExponentVector::ExponentVector(std::vector<long> d) : d_(std::move(d)) {
  for (long v : d_)
    if (v < 0) throw DomainError("exponent vector entries must be non-negative");
}

FactoredRatFun sum_binom_geom(const ScalarField& field, long k, UnitScalar u, long d) {
  if (k < 0) throw DomainError("binomial degree must be non-negative");
  if (d < 0) throw DomainError("t-degree must be non-negative");
  if (d == 0) {
    if (!u.magnitude_below_one()) {
      throw DivergenceError("sum of C(x," + std::to_string(k) + ")*(" + to_string(u) +
                            ")^x diverges: |u| = q^" + std::to_string(u.q_exp) + " >= 1");
    }
    CycloRational uval = field.embed(u);
    CycloRational value = uval.pow(k) / (CycloRational(1) - uval).pow(k + 1);
    return FactoredRatFun::constant(field, value);
  }
  return FactoredRatFun(field, d * k, Poly(field.embed(u.pow(k))), {{u, d, k + 1}});
}

std::string SummabilityReport::message() const {
  if (ok) return "summable";
  std::ostringstream os;
  os << "not summable:";
  for (const auto& v : violations)
    os << " (term " << v.term << ", coordinate " << v.coord + 1 << ": d = 0 and |u| >= 1)";
  return os.str();
}

SummabilityReport check_summability(const LatticeFunction& phi, const ExponentVector& d) {
  if (static_cast<long>(d.size()) != phi.dim())
    throw PreconditionError("exponent vector length " + std::to_string(d.size()) + " does not match dimension " +
                            std::to_string(phi.dim()));
  SummabilityReport report;
  for (std::size_t t = 0; t < phi.terms().size(); ++t) {
    if (phi.terms()[t].coeff.is_zero()) continue;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0 && !phi.terms()[t].coords[i].u.magnitude_below_one()) {
        report.ok = false;
        report.violations.push_back({t, i});
      }
    }
  }
  return report;
}

Abscissa convergence_abscissa(const LatticeFunction& phi, const ExponentVector& d) {
  auto report = check_summability(phi, d);
  if (!report.ok) throw DivergenceError(report.message());
  Abscissa out;
  for (const auto& t : phi.terms()) {
    if (t.coeff.is_zero()) continue;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      Rational ratio(t.coords[i].u.q_exp, d[i]);
      ratio.canonicalize();
      if (!out.value || ratio > *out.value) out.value = ratio;
    }
  }
  return out;
}

FactoredRatFun zeta_lattice(const ScalarField& field, const LatticeFunction& phi, const ExponentVector& d) {
  auto report = check_summability(phi, d);
  if (!report.ok) throw DivergenceError(report.message());
  FactoredRatFun total(field);
  for (const auto& t : phi.terms()) {
    if (t.coeff.is_zero()) continue;
    FactoredRatFun term = FactoredRatFun::constant(field, t.coeff);
    for (std::size_t i = 0; i < d.size(); ++i)
      term = term * sum_binom_geom(field, t.coords[i].k, t.coords[i].u, d[i]);
    total = total + term;
  }
  return total;
}

}  // namespace igusa
