#include "igusa/json_io.hpp"

#include "igusa/character.hpp"
#include "igusa/errors.hpp"

namespace igusa {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

long require_long(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

Integer parse_integer(const Json& v) {
  if (!v.is_string()) throw ParseError("expected a decimal string");
  Rational r = parse_rational(v.get<std::string>());
  if (r.get_den() != 1) throw ParseError("expected an integer");
  return r.get_num();
}

}  // namespace

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const CycloRational& c) {
  if (c.is_rational()) return c.to_rational().get_str();
  Json arr = Json::array();
  for (const auto& x : c.coeffs()) arr.push_back(x.get_str());
  return arr;
}

CycloRational cyclo_from_json(const Json& j, long level) {
  if (j.is_number_integer()) return CycloRational(Rational(j.get<long>()));
  if (j.is_string()) return CycloRational(parse_rational(j.get<std::string>()));
  if (j.is_array()) {
    std::vector<Rational> coeffs;
    for (const auto& x : j) {
      if (!x.is_string()) throw ParseError("cyclotomic coefficients must be strings");
      coeffs.push_back(parse_rational(x.get<std::string>()));
    }
    return CycloRational::from_coeffs(level, std::move(coeffs));
  }
  throw ParseError("expected a rational string or an array of them");
}

Json to_json(UnitScalar u) { return Json{{"j", u.root}, {"a", u.q_exp}}; }

Json to_json(const FactoredRatFun& r) {
  Json num = Json::array();
  for (const auto& [e, c] : r.numerator().terms()) num.push_back(Json{{"exp", e}, {"coeff", to_json(c)}});
  Json den = Json::array();
  for (const auto& f : r.denominator())
    den.push_back(Json{{"u", to_json(f.base)}, {"d", f.degree}, {"e", f.multiplicity}});
  return Json{{"q", r.field().q},           {"level", r.field().level}, {"t_power", r.t_power()},
              {"numerator", num},           {"denominator", den},       {"text", to_text(r)}};
}

FactoredRatFun ratfun_from_json(const Json& j) {
  ScalarField field{require_long(j, "q"), require_long(j, "level")};
  field.validate();
  Poly num;
  for (const auto& term : require(j, "numerator"))
    num += Poly::monomial(cyclo_from_json(require(term, "coeff"), field.level), require_long(term, "exp"));
  std::vector<DenomFactor> den;
  for (const auto& f : require(j, "denominator")) {
    const Json& u = require(f, "u");
    den.push_back({{require_long(u, "j"), require_long(u, "a")}, require_long(f, "d"), require_long(f, "e")});
  }
  return FactoredRatFun(field, require_long(j, "t_power"), num, std::move(den));
}

Json to_json(const LatticeFunction& phi) {
  Json terms = Json::array();
  for (const auto& t : phi.terms()) {
    Json coords = Json::array();
    for (const auto& c : t.coords) coords.push_back(Json{{"k", c.k}, {"u", to_json(c.u)}});
    terms.push_back(Json{{"coeff", to_json(t.coeff)}, {"coords", coords}});
  }
  return Json{{"dim", phi.dim()}, {"terms", terms}};
}

Json to_json(const LaurentSeries& s) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    coeffs.push_back(Json{{"index", s.min_index + static_cast<long>(i)}, {"value", to_json(s.coeffs[i])}});
  return Json{{"center", to_json(s.center)}, {"zero", s.zero},        {"min_index", s.min_index},
              {"max_index", s.max_index},    {"coeffs", coeffs}};
}

Json to_json(const Abscissa& a) { return a.to_string(); }

Json to_json(const OrbitDatum& d) {
  auto opt = [](const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"r", d.r},
              {"codim", d.codim},
              {"x_block", opt(d.x_block)},
              {"w1_block", opt(d.w1_block)},
              {"w2_block", opt(d.w2_block)}};
}

Json to_json(const ClassificationReport& r) {
  Json orbits = Json::array();
  for (long rank = 0; rank <= std::min(r.m, r.n); ++rank) {
    Json o = to_json(stabilizer_modular_data(r.m, r.n, rank));
    o["admissible"] = orbit_admissible(r.m, r.n, rank, r.pair);
    orbits.push_back(o);
  }
  Json space{{"kind", r.kind == SpaceKind::zero ? "Zero" : r.kind == SpaceKind::line ? "Line" : "ZetaTower"}};
  if (r.kind == SpaceKind::line) space["generator"] = r.generator;
  if (r.kind == SpaceKind::zeta_tower) space["i0"] = r.i0;
  return Json{{"m", r.m},
              {"n", r.n},
              {"chi1", to_string(r.pair.chi1)},
              {"chi2", to_string(r.pair.chi2)},
              {"admissible_orbits", r.admissible_orbits},
              {"space", space},
              {"label", r.kind_label()},
              {"invariant_dim", r.invariant_dim},
              {"orbits", orbits},
              {"notes", r.notes}};
}

Json to_json(const ExtProfile& p) { return Json(p.dims); }

Json to_json(const ScanReport& r) {
  return Json{{"n", r.n},
              {"trials", r.trials},
              {"seed", r.seed},
              {"passes", r.passes},
              {"equal_character_trials", r.equal_character_trials},
              {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)},
              {"passed", r.passed()}};
}

Json to_json(const DetZetaReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"j", e.j},
                           {"expected", e.expected.get_str()},
                           {"observed", e.observed.get_str()},
                           {"pass", e.pass}});
  return Json{{"n", r.n}, {"p", r.p}, {"k", r.k}, {"entries", entries}, {"passed", r.passed}};
}

Json to_json(const ValHistogram& h) {
  Json counts = Json::array();
  for (const auto& c : h.counts) counts.push_back(c.get_str());
  return Json{{"schema_version", kHistogramCacheSchema},
              {"n", h.n},
              {"p", h.p},
              {"k", h.k},
              {"mode", h.mode.label()},
              {"seed", h.mode.seed},
              {"trials", h.mode.trials},
              {"counts", counts},
              {"n_geq_k", h.n_geq_k.get_str()},
              {"total", h.total.get_str()}};
}

std::string histogram_to_json_text(const ValHistogram& h) { return dump_canonical(to_json(h)); }

ValHistogram histogram_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid histogram JSON: ") + e.what());
  }
  if (require_long(j, "schema_version") != kHistogramCacheSchema) throw ParseError("histogram schema mismatch");
  ValHistogram h;
  h.n = require_long(j, "n");
  h.p = require_long(j, "p");
  h.k = require_long(j, "k");
  const Json& mode = require(j, "mode");
  if (!mode.is_string()) throw ParseError("mode must be a string");
  if (mode.get<std::string>() == "exhaustive") {
    h.mode = OracleMode::exhaustive();
  } else {
    h.mode = OracleMode::sampled(require(j, "seed").get<std::uint64_t>(), require(j, "trials").get<std::uint64_t>());
    if (h.mode.label() != mode.get<std::string>()) throw ParseError("mode label does not match seed and trials");
  }
  for (const auto& c : require(j, "counts")) h.counts.push_back(parse_integer(c));
  h.n_geq_k = parse_integer(require(j, "n_geq_k"));
  h.total = parse_integer(require(j, "total"));
  return h;
}

LatticeFunction lattice_function_from_json(const Json& j, long level) {
  const long dim = require_long(j, "dim");
  std::vector<LatticeTerm> terms;
  const Json& ts = require(j, "terms");
  if (!ts.is_array()) throw ParseError("'terms' must be an array");
  for (const auto& t : ts) {
    LatticeTerm term;
    term.coeff = t.contains("coeff") ? cyclo_from_json(t.at("coeff"), level) : CycloRational(1);
    const Json& coords = require(t, "coords");
    if (!coords.is_array()) throw ParseError("'coords' must be an array");
    for (const auto& c : coords) {
      LatticeCoord lc;
      lc.k = c.contains("k") ? require_long(c, "k") : 0;
      if (c.contains("u")) {
        const Json& u = c.at("u");
        lc.u.root = u.contains("j") ? require_long(u, "j") : 0;
        lc.u.q_exp = u.contains("a") ? require_long(u, "a") : 0;
      }
      term.coords.push_back(lc);
    }
    terms.push_back(std::move(term));
  }
  return LatticeFunction(dim, std::move(terms));
}

CellIntegrand cell_integrand_from_json(const Json& j, long level) {
  CellIntegrand ci;
  ci.measure.cell.level = require_long(j, "level");
  ci.measure.cell.dim = require_long(j, "dim");
  ci.measure.density = lattice_function_from_json(require(j, "density"), level);
  ci.f.c = j.contains("c") ? require_long(j, "c") : 0;
  for (const auto& x : require(j, "d")) {
    if (!x.is_number_integer()) throw ParseError("'d' entries must be integers");
    ci.f.d.push_back(x.get<long>());
  }
  return ci;
}

}  // namespace igusa
