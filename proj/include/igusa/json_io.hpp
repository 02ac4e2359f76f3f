#pragma once

#include <json.hpp>
#include <string>

#include "igusa/cell_integrals.hpp"
#include "igusa/koszul_ext.hpp"
#include "igusa/lattice_zeta.hpp"
#include "igusa/matrix_orbits.hpp"
#include "igusa/padic_oracle.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

using Json = nlohmann::ordered_json;

/// Canonical serialization: two-space indent and a trailing newline.
std::string dump_canonical(const Json& j);

/// "p/q" for rationals, an array of "p/q" strings in the power basis otherwise.
Json to_json(const CycloRational& c);
CycloRational cyclo_from_json(const Json& j, long level);

/// {"j": root index, "a": q exponent}.
Json to_json(UnitScalar u);
Json to_json(const FactoredRatFun& r);
/// Inverse of to_json(FactoredRatFun); the "text" field is ignored.
FactoredRatFun ratfun_from_json(const Json& j);
Json to_json(const LatticeFunction& phi);
Json to_json(const LaurentSeries& s);
Json to_json(const Abscissa& a);
Json to_json(const ClassificationReport& r);
Json to_json(const OrbitDatum& d);
Json to_json(const ExtProfile& p);
Json to_json(const ScanReport& r);
Json to_json(const DetZetaReport& r);
Json to_json(const ValHistogram& h);

/// {"dim": n, "terms": [{"coeff": "1", "coords": [{"k": 0, "u": {"j": 0, "a": -1}}]}]}
/// Omitted coeff, k, j or a default to 1, 0, 0, 0.
LatticeFunction lattice_function_from_json(const Json& j, long level);

/// {"level": m, "dim": n, "density": <lattice function>, "c": c, "d": [...]}
CellIntegrand cell_integrand_from_json(const Json& j, long level);

/// Cache file contents; counts are decimal strings.
std::string histogram_to_json_text(const ValHistogram& h);
ValHistogram histogram_from_json_text(const std::string& text);

}  // namespace igusa
