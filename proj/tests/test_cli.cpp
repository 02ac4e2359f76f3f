#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "igusa/cli.hpp"
#include "igusa/errors.hpp"
#include "igusa/json_io.hpp"
#include "igusa/padic_oracle.hpp"
#include "test_support.hpp"

using namespace igusa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("igusa-cli-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

std::size_t count_files(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("orbits classify") {
    Outcome o = invoke({"orbits", "classify", "--m", "2", "--n", "3", "--chi1", "triv:0", "--chi2", "triv:0", "--format",
                        "json"});
    REQUIRE(o.code == 0);
    Json j = Json::parse(o.out);
    CHECK(j["label"] == "Line(delta)");
    CHECK(j["space"]["kind"] == "Line");
    CHECK(j["admissible_orbits"] == Json::array({0}));
    CHECK(j["orbits"].size() == 3);
    CHECK(dump_canonical(j) == o.out);

    Outcome t = invoke({"--format", "text", "orbits", "classify", "--m", "2", "--n", "2", "--chi1", "triv:1", "--chi2",
                        "triv:-1"});
    CHECK(t.code == 0);
    CHECK(t.out.find("ZetaTower(i0=-1)") != std::string::npos);
    CHECK(invoke({"orbits", "classify", "--m", "2", "--n", "2", "--chi1", "bogus"}).code == 2);
  }

  TEST_CASE("oracle check-det-zeta and det-hist") {
    Outcome o = invoke({"oracle", "check-det-zeta", "--n", "2", "--p", "2", "--k", "1", "--format", "json"});
    REQUIRE(o.code == 0);
    Json j = Json::parse(o.out);
    CHECK(j["passed"] == true);
    CHECK(j["entries"].size() == 1);

    Outcome h = invoke({"oracle", "det-hist", "--n", "2", "--p", "3", "--k", "2", "--format", "json"});
    REQUIRE(h.code == 0);
    ValHistogram v = histogram_from_json_text(h.out);
    CHECK(v.total == 6561);
    CHECK(v.counts[0] == 3888);
    CHECK(histogram_to_json_text(v) == h.out);

    CHECK(invoke({"oracle", "det-hist", "--n", "2", "--p", "4", "--k", "1"}).code == 2);
    Outcome big = invoke({"oracle", "det-hist", "--n", "3", "--p", "3", "--k", "3", "--budget", "1000"});
    CHECK(big.code == 2);
    CHECK(Json::parse(big.err)["error"]["kind"] == "resource");
    CHECK(invoke({"oracle", "check-det-zeta", "--n", "2", "--p", "2", "--k", "1", "--mode", "sampled"}).code == 2);
    Outcome s = invoke({"oracle", "det-hist", "--n", "2", "--p", "2", "--k", "2", "--mode", "sampled", "--seed", "5",
                        "--trials", "1000", "--format", "json"});
    REQUIRE(s.code == 0);
    CHECK(Json::parse(s.out)["mode"] == "sampled-5-1000");
    CHECK(invoke({"oracle", "det-hist", "--n", "2", "--p", "2", "--k", "2", "--mode", "sampled", "--seed", "5",
                  "--trials", "1000", "--format", "json"})
              .out == s.out);
  }

  TEST_CASE("oracle cache directory") {
    TempDir flag("flag"), env("env");
    std::vector<std::string> args{"oracle", "det-hist", "--n", "2", "--p", "2", "--k", "2", "--format", "json"};
    auto with_flag = args;
    with_flag.insert(with_flag.end(), {"--cache-dir", flag.path.string()});
    Outcome a = invoke(with_flag);
    REQUIRE(a.code == 0);
    CHECK(count_files(flag.path) == 1);
    Outcome b = invoke(with_flag);
    CHECK(b.out == a.out);

    ::setenv("IGUSA_CACHE_DIR", env.path.c_str(), 1);
    Outcome c = invoke(args);
    ::unsetenv("IGUSA_CACHE_DIR");
    CHECK(c.out == a.out);
    CHECK(count_files(env.path) == 1);
  }

  TEST_CASE("lattice-zeta") {
    TempDir dir("lz");
    const std::string good = dir.write("good.json", R"({"dim":1,"terms":[{"coeff":"1","coords":[{"k":0,"u":{"j":0,"a":0}}]}],"d":[1]})");
    Outcome o = invoke({"--format", "json", "lattice-zeta", "--input", good, "--series", "3"});
    REQUIRE(o.code == 0);
    Json j = Json::parse(o.out);
    FactoredRatFun z = ratfun_from_json(j["zeta"]);
    CHECK(z == FactoredRatFun::geometric(ScalarField{2, 1}, UnitScalar::one(), 1));
    CHECK(dump_canonical(to_json(z)) == dump_canonical(j["zeta"]));
    CHECK(j["series"] == Json::array({"1", "1", "1", "1"}));

    const std::string divergent =
        dir.write("div.json", R"({"dim":1,"terms":[{"coords":[{"k":0,"u":{"j":0,"a":0}}]}],"d":[0]})");
    Outcome d = invoke({"lattice-zeta", "--input", divergent});
    CHECK(d.code == 2);
    CHECK(d.out.empty());
    Json e = Json::parse(d.err);
    CHECK(e["error"]["kind"] == "divergence");
    CHECK(e["error"]["message"].get<std::string>().size() > 0);

    CHECK(invoke({"lattice-zeta", "--input", dir.write("bad.json", "{")}).code == 2);
    CHECK(invoke({"lattice-zeta", "--input", (dir.path / "missing.json").string()}).code == 2);
  }

  TEST_CASE("cell-zeta") {
    TempDir dir("cz");
    const std::string cell = dir.write(
        "cell.json", R"({"level":1,"dim":1,"density":{"dim":1,"terms":[{"coords":[{"k":0}]}]},"c":0,"d":[1]})");
    Outcome o = invoke({"cell-zeta", "--input", cell, "--format", "json"});
    REQUIRE(o.code == 0);
    FactoredRatFun z = ratfun_from_json(Json::parse(o.out)["zeta"]);
    // q^{-1} / (1 - q^{-1} t) at q = 2
    CHECK(z == FactoredRatFun::geometric(ScalarField{2, 1}, UnitScalar::q_power(-1), 1).scaled(test::C(1, 2)));
    const std::string unbounded = dir.write(
        "ub.json", R"({"level":1,"dim":1,"density":{"dim":1,"terms":[{"coords":[{"k":0}]}]},"c":1,"d":[1]})");
    CHECK(invoke({"cell-zeta", "--input", unbounded}).code == 0);
    CHECK(invoke({"cell-zeta", "--input", unbounded, "--bounded"}).code == 2);
  }

  TEST_CASE("laurent") {
    Outcome o = invoke({"laurent", "--n", "1", "--r", "0", "--center", "1", "--window", "2", "--phi", "1@1", "--format",
                        "json"});
    REQUIRE(o.code == 0);
    Json j = Json::parse(o.out);
    CHECK(j["pole_order"] == 1);
    CHECK(invoke({"laurent", "--n", "1", "--center", "z^1*q^0"}).code == 2);
    CHECK(invoke({"laurent", "--n", "1", "--phi", "1@-1"}).code == 2);
    CHECK(cli::parse_unit_scalar("z^2*q^-3") == UnitScalar{2, -3});
    CHECK(cli::parse_unit_scalar("q^4") == UnitScalar::q_power(4));
    CHECK(cli::parse_unit_scalar("z^1") == UnitScalar{1, 0});
    CHECK_THROWS_AS(cli::parse_unit_scalar("q"), ParseError);
    CHECK_THROWS_AS(cli::parse_unit_scalar("z^1*"), ParseError);
  }

  TEST_CASE("ext scan") {
    Outcome o = invoke({"ext", "scan", "--n", "2", "--trials", "20", "--seed", "3", "--format", "json"});
    REQUIRE(o.code == 0);
    Json j = Json::parse(o.out);
    CHECK(j["passed"] == true);
    CHECK(j["trivial_profile"] == Json::array({1, 2, 1}));
  }

  TEST_CASE("exit codes and usage") {
    CHECK(invoke({"no-such-command"}).code == 64);
    CHECK(invoke({}).code == 64);
    CHECK(invoke({"orbits", "classify", "--m", "2"}).code == 64);
    CHECK(invoke({"--format", "yaml", "ext", "scan", "--n", "1"}).code == 64);
    Outcome h = invoke({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("selftest") != std::string::npos);
    CHECK(invoke({"--q", "1", "ext", "scan", "--n", "1"}).code == 2);
    Outcome s = invoke({"selftest", "--criterion", "6", "--format", "json"});
    CHECK(s.code == 0);
    CHECK(Json::parse(s.out)["passed"] == true);
  }
}
