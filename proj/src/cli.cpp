#include "igusa/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "igusa/acceptance.hpp"
#include "igusa/cell_integrals.hpp"
#include "igusa/character.hpp"
#include "igusa/errors.hpp"
#include "igusa/json_io.hpp"
#include "igusa/koszul_ext.hpp"
#include "igusa/laurent_distributions.hpp"
#include "igusa/lattice_zeta.hpp"
#include "igusa/matrix_orbits.hpp"
#include "igusa/padic_oracle.hpp"

namespace igusa::cli {

namespace {

struct Config {
  long q = 2;
  long level = 1;
  std::string format = "text";
  unsigned threads = 0;

  bool json() const { return format == "json"; }
  ScalarField field() const {
    ScalarField f{q, level};
    f.validate();
    return f;
  }
};

struct OracleArgs {
  long n = 1;
  long p = 2;
  long k = 1;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  std::string budget = "1073741824";
  std::string cache_dir;
};

// A failed check: the report is printed but the exit code is 1.
struct CheckFailed {};

long parse_signed(std::string_view s) {
  Rational r = parse_rational(s);
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw ParseError("expected an integer, got '" + std::string(s) + "'");
  return r.get_num().get_si();
}

Json read_json_input(const std::string& path) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON input: ") + e.what());
  }
}

std::vector<long> json_long_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("missing array '") + key + "'");
  std::vector<long> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number_integer()) throw ParseError(std::string("'") + key + "' entries must be integers");
    out.push_back(x.get<long>());
  }
  return out;
}

void print_series(std::ostream& out, const std::vector<CycloRational>& coeffs) {
  for (std::size_t j = 0; j < coeffs.size(); ++j) out << "  t^" << j << ": " << coeffs[j].to_string() << "\n";
}

Json series_json(const std::vector<CycloRational>& coeffs) {
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(to_json(c));
  return arr;
}

void cmd_lattice_zeta(const Config& cfg, const std::string& input, long series, std::ostream& out) {
  const ScalarField field = cfg.field();
  Json in = read_json_input(input);
  LatticeFunction phi = lattice_function_from_json(in, field.level);
  ExponentVector d(json_long_array(in, "d"));
  FactoredRatFun z = zeta_lattice(field, phi, d);
  Abscissa a = convergence_abscissa(phi, d);
  std::vector<CycloRational> coeffs;
  if (series >= 0) coeffs = series_coeffs(z, series);
  if (cfg.json()) {
    Json j{{"zeta", to_json(z)}, {"abscissa", to_json(a)}};
    if (series >= 0) j["series"] = series_json(coeffs);
    out << dump_canonical(j);
    return;
  }
  out << "zeta: " << to_text(z) << "\n";
  out << "abscissa: " << a.to_string() << "\n";
  if (series >= 0) {
    out << "series:\n";
    print_series(out, coeffs);
  }
}

void cmd_cell_zeta(const Config& cfg, const std::string& input, bool bounded, std::ostream& out) {
  const ScalarField field = cfg.field();
  Json in = read_json_input(input);
  std::vector<CellIntegrand> cells;
  if (in.is_array()) {
    for (const auto& c : in) cells.push_back(cell_integrand_from_json(c, field.level));
  } else {
    cells.push_back(cell_integrand_from_json(in, field.level));
  }
  const Boundedness mode = bounded ? Boundedness::require_bounded : Boundedness::any;
  FactoredRatFun z = zeta_cells(field, cells, mode);
  Json abscissae = Json::array();
  std::vector<std::string> texts;
  for (const auto& c : cells) {
    Abscissa a = cell_abscissa(c.measure, c.f);
    abscissae.push_back(to_json(a));
    texts.push_back(a.to_string());
  }
  if (cfg.json()) {
    out << dump_canonical(Json{{"zeta", to_json(z)}, {"cell_abscissae", abscissae}});
    return;
  }
  out << "zeta: " << to_text(z) << "\n";
  for (std::size_t i = 0; i < texts.size(); ++i) out << "cell " << i << " abscissa: " << texts[i] << "\n";
}

void cmd_laurent(const Config& cfg, long n, long r, const std::string& center, long window, const std::string& phi_text,
                 std::ostream& out) {
  ZetaFamily family = zeta_family_build(n, r, cfg.q);
  UnitScalar a0 = parse_unit_scalar(center);
  if (a0.root != 0) throw DomainError("the zeta family is defined over Q; the center must be a power of q");
  TestFunction phi = parse_test_function(phi_text);
  LaurentSeries s = laurent_table(family, phi, a0, window);
  const long pole = pole_order(zeta_of(family, phi), a0);
  if (cfg.json()) {
    out << dump_canonical(Json{{"n", n},
                               {"r", r},
                               {"q", cfg.q},
                               {"phi", to_string(phi)},
                               {"zeta", to_json(zeta_of(family, phi))},
                               {"pole_order", pole},
                               {"laurent", to_json(s)}});
    return;
  }
  out << "Z(" << to_string(phi) << ") = " << to_text(zeta_of(family, phi)) << "\n";
  out << "center t = 1/(" << to_string(a0) << "), pole order " << pole << "\n";
  out << "index  coefficient\n";
  for (long i = std::min(s.min_index, window); i <= window; ++i) out << std::setw(5) << i << "  " << s.coeff(i).to_string() << "\n";
}

void cmd_orbits_classify(const Config& cfg, long m, long n, const std::string& chi1, const std::string& chi2,
                         std::ostream& out) {
  CharacterPair pair{parse_character(chi1), parse_character(chi2)};
  ClassificationReport rep = classify_distribution_space(m, n, pair);
  if (cfg.json()) {
    out << dump_canonical(to_json(rep));
    return;
  }
  out << "space: " << rep.kind_label() << ", invariant_dim " << rep.invariant_dim << "\n";
  out << "    r  codim  admissible\n";
  for (long r = 0; r <= std::min(m, n); ++r) {
    OrbitDatum d = stabilizer_modular_data(m, n, r);
    out << std::setw(5) << r << std::setw(7) << d.codim << "  " << (orbit_admissible(m, n, r, pair) ? "yes" : "no")
        << "\n";
  }
  for (const auto& note : rep.notes) out << "note: " << note << "\n";
}

OracleMode oracle_mode(const OracleArgs& a) {
  if (a.mode == "exhaustive") return OracleMode::exhaustive();
  if (a.mode == "sampled") return OracleMode::sampled(a.seed, a.trials);
  throw ConfigError("--mode must be 'exhaustive' or 'sampled'");
}

HistogramOptions oracle_options(const Config& cfg, const OracleArgs& a) {
  HistogramOptions o;
  Rational b = parse_rational(a.budget);
  if (b.get_den() != 1 || b < 0) throw ConfigError("--budget must be a non-negative integer");
  o.budget = b.get_num();
  o.threads = cfg.threads;
  return o;
}

std::optional<HistogramCache> oracle_cache(const OracleArgs& a) {
  if (!a.cache_dir.empty()) return HistogramCache(a.cache_dir);
  if (const char* env = std::getenv("IGUSA_CACHE_DIR"); env && *env) return HistogramCache(env);
  return std::nullopt;
}

ValHistogram oracle_histogram(const Config& cfg, const OracleArgs& a) {
  const OracleMode mode = oracle_mode(a);
  const HistogramOptions options = oracle_options(cfg, a);
  if (auto cache = oracle_cache(a)) return cached_det_valuation_histogram(*cache, a.n, a.p, a.k, mode, options);
  return det_valuation_histogram(a.n, a.p, a.k, mode, options);
}

void cmd_det_hist(const Config& cfg, const OracleArgs& a, std::ostream& out) {
  ValHistogram h = oracle_histogram(cfg, a);
  if (cfg.json()) {
    out << histogram_to_json_text(h);
    return;
  }
  out << "n=" << h.n << " p=" << h.p << " k=" << h.k << " mode=" << h.mode.label() << "\n";
  for (std::size_t j = 0; j < h.counts.size(); ++j) out << "  val=" << j << ": " << h.counts[j] << "\n";
  out << "  val>=" << h.k << ": " << h.n_geq_k << "\n";
  out << "  total: " << h.total << "\n";
}

void cmd_check_det_zeta(const Config& cfg, OracleArgs a, std::ostream& out) {
  if (a.mode != "exhaustive") throw PreconditionError("check-det-zeta needs --mode exhaustive");
  DetZetaReport rep = det_zeta_series_check(oracle_histogram(cfg, a));
  if (cfg.json()) {
    out << dump_canonical(to_json(rep));
  } else {
    for (const auto& e : rep.entries)
      out << "j=" << e.j << " expected " << e.expected << " observed " << e.observed << " "
          << (e.pass ? "pass" : "FAIL") << "\n";
    out << (rep.passed ? "pass" : "FAIL") << "\n";
  }
  if (!rep.passed) throw CheckFailed{};
}

void cmd_ext_scan(const Config& cfg, long n, std::uint64_t trials, std::uint64_t seed, std::ostream& out) {
  const ScalarField field = cfg.field();
  ScanReport rep = vanishing_dichotomy_scan(field, n, trials, seed);
  std::vector<UnitScalar> triv(static_cast<std::size_t>(n));
  ExtProfile trivial = koszul_ext_dims(field, triv, LambdaModule::trivial(n));
  if (cfg.json()) {
    Json j = to_json(rep);
    j["trivial_profile"] = to_json(trivial);
    out << dump_canonical(j);
  } else {
    out << "n=" << n << " trials=" << trials << " seed=" << seed << ": " << rep.passes << " passed ("
        << rep.equal_character_trials << " with equal characters)\n";
    out << "trivial profile: " << to_json(trivial).dump() << "\n";
    if (rep.counterexample) out << "counterexample: " << *rep.counterexample << "\n";
  }
  if (!rep.passed()) throw CheckFailed{};
}

void cmd_selftest(const Config& cfg, std::uint64_t seed, const std::vector<int>& only, std::ostream& out) {
  AcceptanceConfig ac;
  ac.seed = seed;
  ac.threads = cfg.threads;
  ac.only = only;
  auto results = run_acceptance(ac);
  if (cfg.json()) {
    Json arr = Json::array();
    for (const auto& r : results)
      arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    out << dump_canonical(Json{{"criteria", arr}, {"passed", all_passed(results)}});
  } else {
    print_acceptance(out, results);
  }
  if (!all_passed(results)) throw CheckFailed{};
}

}  // namespace

UnitScalar parse_unit_scalar(std::string_view text) {
  if (text == "1") return UnitScalar::one();
  UnitScalar u;
  bool any = false;
  if (text.substr(0, 2) == "z^") {
    auto star = text.find('*');
    u.root = parse_signed(text.substr(2, star == std::string_view::npos ? std::string_view::npos : star - 2));
    any = true;
    if (star == std::string_view::npos) return u;
    text.remove_prefix(star + 1);
  }
  if (text.substr(0, 2) == "q^") {
    u.q_exp = parse_signed(text.substr(2));
    return u;
  }
  throw ParseError(any ? "expected 'q^a' after '*'" : "scalar must look like 1, q^a, z^j or z^j*q^a");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Igusa zeta integrals, Laurent coefficients and orbit classification", "igusa"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--q", cfg.q, "Residue field cardinality q >= 2")->capture_default_str();
  app.add_option("--level", cfg.level, "Cyclotomic level of the scalar field")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--threads", cfg.threads, "Oracle worker threads (0 = all cores)");

  std::function<void()> action;

  std::string input;
  long series = -1;
  auto* lz = app.add_subcommand("lattice-zeta", "Sum a lattice function against t^{d.x} (JSON input)");
  lz->add_option("--input", input, "JSON file, '-' for stdin");
  lz->add_option("--series", series, "Also print Taylor coefficients up to this order");
  lz->callback([&] { action = [&] { cmd_lattice_zeta(cfg, input, series, out); }; });

  bool bounded = false;
  auto* cz = app.add_subcommand("cell-zeta", "Integrate an order monomial over rectilinear cells (JSON input)");
  cz->add_option("--input", input, "JSON file, '-' for stdin");
  cz->add_flag("--bounded", bounded, "Require |f| <= 1 on every cell");
  cz->callback([&] { action = [&] { cmd_cell_zeta(cfg, input, bounded, out); }; });

  long ln = 1, lr = 0, window = 3;
  std::string center = "1", phi = "1@0";
  auto* la = app.add_subcommand("laurent", "Laurent coefficients of the twisted determinant zeta");
  la->add_option("--n", ln, "Matrix size")->capture_default_str();
  la->add_option("--r", lr, "Twist exponent r (chi = |.|^r)")->capture_default_str();
  la->add_option("--center", center, "a0 as 1, q^a, z^j*q^a; expansion at t = 1/a0")->capture_default_str();
  la->add_option("--window", window, "Highest Laurent index")->capture_default_str();
  la->add_option("--phi", phi, "Test function c@a,... (c * Dilate(a))")->capture_default_str();
  la->callback([&] { action = [&] { cmd_laurent(cfg, ln, lr, center, window, phi, out); }; });

  long om = 1, on = 1;
  std::string chi1 = "triv:0", chi2 = "triv:0";
  auto* orb = app.add_subcommand("orbits", "Rank orbits of GL_m x GL_n");
  orb->require_subcommand(1);
  auto* cls = orb->add_subcommand("classify", "Classify semi-invariant distributions");
  cls->add_option("--m", om)->required();
  cls->add_option("--n", on)->required();
  cls->add_option("--chi1", chi1, "triv:e or fin<m>^j:e")->capture_default_str();
  cls->add_option("--chi2", chi2, "triv:e or fin<m>^j:e")->capture_default_str();
  cls->callback([&] { action = [&] { cmd_orbits_classify(cfg, om, on, chi1, chi2, out); }; });

  OracleArgs oa;
  auto* ora = app.add_subcommand("oracle", "Brute-force determinant valuation oracle");
  ora->require_subcommand(1);
  auto add_oracle_flags = [&](CLI::App* sub) {
    sub->add_option("--n", oa.n, "Matrix size")->required();
    sub->add_option("--p", oa.p, "Prime")->required();
    sub->add_option("--k", oa.k, "Level (entries mod p^k)")->required();
    sub->add_option("--mode", oa.mode, "exhaustive or sampled")->capture_default_str();
    sub->add_option("--seed", oa.seed, "Sampled-mode seed")->capture_default_str();
    sub->add_option("--trials", oa.trials, "Sampled-mode trials")->capture_default_str();
    sub->add_option("--budget", oa.budget, "Exhaustive enumeration budget")->capture_default_str();
    sub->add_option("--cache-dir", oa.cache_dir, "Histogram cache directory (env IGUSA_CACHE_DIR)");
  };
  auto* dh = ora->add_subcommand("det-hist", "Histogram of val(det) over Z/p^k");
  add_oracle_flags(dh);
  dh->callback([&] { action = [&] { cmd_det_hist(cfg, oa, out); }; });
  auto* cd = ora->add_subcommand("check-det-zeta", "Compare the histogram with the product formula");
  add_oracle_flags(cd);
  cd->callback([&] { action = [&] { cmd_check_det_zeta(cfg, oa, out); }; });

  long en = 1;
  std::uint64_t etrials = 100, eseed = 1;
  auto* ext = app.add_subcommand("ext", "Koszul Ext computations over Z^n");
  ext->require_subcommand(1);
  auto* scan = ext->add_subcommand("scan", "Random scan of the Ext vanishing dichotomy");
  scan->add_option("--n", en)->required();
  scan->add_option("--trials", etrials)->capture_default_str();
  scan->add_option("--seed", eseed)->capture_default_str();
  scan->callback([&] { action = [&] { cmd_ext_scan(cfg, en, etrials, eseed, out); }; });

  std::uint64_t st_seed = AcceptanceConfig{}.seed;
  std::vector<int> only;
  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  st->add_option("--seed", st_seed)->capture_default_str();
  st->add_option("--criterion", only, "Run only these criteria (1..8)");
  st->callback([&] { action = [&] { cmd_selftest(cfg, st_seed, only, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!action) throw ConfigError("no command given");
    action();
    return kExitOk;
  } catch (const CheckFailed&) {
    return kExitCheckFailed;
  } catch (const igusa::Error& e) {
    err << Json{{"error", {{"kind", std::string(e.kind())}, {"message", e.what()}}}}.dump() << "\n";
    return kExitError;
  }
}

}  // namespace igusa::cli
