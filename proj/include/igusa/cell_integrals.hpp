#pragma once

#include <span>
#include <vector>

#include "igusa/lattice_zeta.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

/// The cell (R_m)^n, where R_m is the disjoint union over r >= 0 of the
/// shells pi^r (1 + pi^m R), each of Haar mass q^{-r-m}.
struct RectilinearCell {
  long level = 1;
  long dim = 0;

  /// Throws DomainError unless level >= 1 and dim >= 0.
  void validate() const;
};

/// density(val(x_1), ..., val(x_n)) times the restricted normalized Haar
/// measure (R^n has mass 1).
struct SimpleMeasure {
  RectilinearCell cell;
  LatticeFunction density;
};

/// |f(x)| = q^{c - sum_i d_i val(x_i)} on the cell.
struct OrderMonomial {
  long c = 0;
  std::vector<long> d;
};

enum class Boundedness { any, require_bounded };

/// Haar weights folded into the density: every base gains a factor q^{-1}.
LatticeFunction fold_haar(const LatticeFunction& density);

/// Integral of |f|^s against mu over the cell, as a rational function of t.
/// With Boundedness::require_bounded, f must satisfy |f| <= 1 on the cell.
FactoredRatFun zeta_cell(const ScalarField& field, const SimpleMeasure& mu, const OrderMonomial& f,
                         Boundedness mode = Boundedness::any);

/// Abscissa of convergence of zeta_cell (that of the folded lattice sum).
Abscissa cell_abscissa(const SimpleMeasure& mu, const OrderMonomial& f);

/// Total mass mu(cell) = q^{-mn} sum_x q^{-|x|} density(x). DivergenceError
/// if some folded base has magnitude >= 1.
CycloRational cell_total_mass(const ScalarField& field, const SimpleMeasure& mu);

struct CellIntegrand {
  SimpleMeasure measure;
  OrderMonomial f;
};

/// Sum of zeta_cell over a caller-supplied list of disjoint cells.
FactoredRatFun zeta_cells(const ScalarField& field, std::span<const CellIntegrand> cells,
                          Boundedness mode = Boundedness::any);

}  // namespace igusa
