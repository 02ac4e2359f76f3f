#include "igusa/laurent_distributions.hpp"

#include <sstream>

#include "igusa/character.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic_oracle.hpp"

namespace igusa {

TestFunction TestFunction::dilate(long a, const CycloRational& c) {
  TestFunction phi;
  phi.add(a, c);
  return phi;
}

void TestFunction::add(long a, const CycloRational& c) {
  if (a < 0) throw DomainError("Dilate(a) needs a >= 0, got " + std::to_string(a));
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(a, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TestFunction operator+(TestFunction a, const TestFunction& b) {
  for (const auto& [k, c] : b.terms_) a.add(k, c);
  return a;
}

TestFunction parse_test_function(std::string_view text) {
  TestFunction phi;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    auto at = item.find('@');
    if (at == std::string_view::npos) throw ParseError("test function item '" + std::string(item) + "' lacks '@a'");
    Rational c = parse_rational(item.substr(0, at));
    Rational a = parse_rational(item.substr(at + 1));
    if (a.get_den() != 1 || a < 0) throw ParseError("dilation index must be a non-negative integer");
    phi.add(a.get_num().get_si(), CycloRational(c));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw ParseError("trailing ',' in test function");
  }
  return phi;
}

std::string to_string(const TestFunction& phi) {
  if (phi.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : phi.terms()) {
    if (!first) os << ",";
    first = false;
    os << c.to_string() << "@" << a;
  }
  return os.str();
}

ZetaFamily zeta_family_build(long n, long r, long q) {
  if (n < 1) throw DomainError("matrix size must be >= 1");
  ScalarField field{q, 1};
  field.validate();
  ZetaFamily f{field, n, r, FactoredRatFun(field)};
  f.base = rescale_t(det_zeta_product(field, n), UnitScalar::q_power(n - r));
  return f;
}

FactoredRatFun zeta_of(const ZetaFamily& family, const TestFunction& phi) {
  const ScalarField& field = family.field;
  Poly num;
  for (const auto& [a, c] : phi.terms()) {
    const long an = a * family.n;
    num += Poly::monomial(c * field.embed(field.q_power(-an * family.r)), an);
  }
  return FactoredRatFun(field, 0, num, {}) * family.base;
}

LaurentSeries laurent_table(const ZetaFamily& family, const TestFunction& phi, UnitScalar a0, long max_index) {
  return laurent_at(zeta_of(family, phi), a0, max_index);
}

RecurrenceReport action_recurrence_check(const ZetaFamily& family, const GroupElementAction& g, UnitScalar a0,
                                         std::span<const TestFunction> phis, long i_lo, long i_hi) {
  const ScalarField& field = family.field;
  if (g.v != 1) throw PreconditionError("the recurrence needs v = 1 (det(g) a uniformizer), got v = " + std::to_string(g.v));
  if (!(g.c * field.embed(a0.inverse()) == CycloRational(1)))
    throw PreconditionError("the recurrence needs c * a0^{-v} = 1");
  FactoredRatFun one_minus_g(field, 0, Poly(CycloRational(1)) - Poly::monomial(g.c, g.v), {});
  RecurrenceReport report;
  for (std::size_t p = 0; p < phis.size(); ++p) {
    FactoredRatFun z = zeta_of(family, phis[p]);
    LaurentSeries before = laurent_at(z, a0, i_hi);
    LaurentSeries after = laurent_at(one_minus_g * z, a0, i_hi);
    for (long i = i_lo; i <= i_hi; ++i) {
      RecurrenceEntry e{p, i, after.coeff(i), before.coeff(i - 1), false};
      e.pass = e.lhs == e.rhs;
      report.passed = report.passed && e.pass;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

long lowest_index(const ZetaFamily& family, UnitScalar a0) { return -pole_order(family.base, a0); }

long invariance_order_check(const ZetaFamily& family, UnitScalar a0, long i) {
  const long i0 = lowest_index(family, a0);
  if (i < i0) throw PreconditionError("index " + std::to_string(i) + " lies below i0 = " + std::to_string(i0));
  const ScalarField& field = family.field;
  const Poly one_minus_g = Poly(CycloRational(1)) - Poly::monomial(field.embed(a0), 1);
  std::vector<FactoredRatFun> zs;
  for (long a = 0; a <= 2; ++a) zs.push_back(zeta_of(family, TestFunction::dilate(a)));
  for (long j = 0; j <= i - i0 + 2; ++j) {
    bool killed = true;
    for (auto& z : zs) {
      z = FactoredRatFun(field, 0, one_minus_g, {}) * z;
      if (!laurent_at(z, a0, i).coeff(i).is_zero()) killed = false;
    }
    if (killed) return j;
  }
  throw std::logic_error("invariance order search did not terminate");
}

}  // namespace igusa
