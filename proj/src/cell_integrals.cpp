#include "igusa/cell_integrals.hpp"

#include "igusa/errors.hpp"

namespace igusa {

namespace {

void check_shapes(const SimpleMeasure& mu, const OrderMonomial& f) {
  mu.cell.validate();
  if (mu.density.dim() != mu.cell.dim)
    throw DomainError("density dimension " + std::to_string(mu.density.dim()) + " does not match cell dimension " +
                      std::to_string(mu.cell.dim));
  if (static_cast<long>(f.d.size()) != mu.cell.dim)
    throw DomainError("order-monomial exponent count does not match cell dimension");
  for (long di : f.d)
    if (di < 0) throw DomainError("order-monomial exponents must be non-negative");
}

}  // namespace

void RectilinearCell::validate() const {
  if (level < 1) throw DomainError("cell level must be >= 1");
  if (dim < 0) throw DomainError("cell dimension must be non-negative");
}

LatticeFunction fold_haar(const LatticeFunction& density) {
  std::vector<LatticeTerm> terms = density.terms();
  for (auto& t : terms)
    for (auto& c : t.coords) c.u = c.u * UnitScalar::q_power(-1);
  return LatticeFunction(density.dim(), std::move(terms));
}

FactoredRatFun zeta_cell(const ScalarField& field, const SimpleMeasure& mu, const OrderMonomial& f,
                         Boundedness mode) {
  check_shapes(mu, f);
  // sup |f| is attained at val(x) = 0 since every d_i >= 0.
  if (mode == Boundedness::require_bounded && f.c > 0)
    throw DomainError("order monomial is not bounded by 1 on the cell: sup |f| = q^" + std::to_string(f.c));
  FactoredRatFun sum = zeta_lattice(field, fold_haar(mu.density), ExponentVector(f.d));
  const long mn = mu.cell.level * mu.cell.dim;
  return sum * FactoredRatFun::monomial(field, field.embed(field.q_power(-mn)), -f.c);
}

Abscissa cell_abscissa(const SimpleMeasure& mu, const OrderMonomial& f) {
  check_shapes(mu, f);
  return convergence_abscissa(fold_haar(mu.density), ExponentVector(f.d));
}

CycloRational cell_total_mass(const ScalarField& field, const SimpleMeasure& mu) {
  mu.cell.validate();
  if (mu.density.dim() != mu.cell.dim) throw DomainError("density dimension does not match cell dimension");
  LatticeFunction folded = fold_haar(mu.density);
  ExponentVector none(std::vector<long>(static_cast<std::size_t>(mu.cell.dim), 0));
  auto report = check_summability(folded, none);
  if (!report.ok) throw DivergenceError("cell mass diverges: " + report.message());
  FactoredRatFun mass = zeta_lattice(field, folded, none);
  const long mn = mu.cell.level * mu.cell.dim;
  CycloRational value = mass.is_zero() ? CycloRational() : mass.numerator().coeff(0);
  return value * field.embed(field.q_power(-mn));
}

FactoredRatFun zeta_cells(const ScalarField& field, std::span<const CellIntegrand> cells, Boundedness mode) {
  FactoredRatFun total(field);
  for (const auto& c : cells) total = total + zeta_cell(field, c.measure, c.f, mode);
  return total;
}

}  // namespace igusa
