#include "bicon/cli.hpp"
#include "bicon/parse.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace bicon;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bicon");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

} // namespace

TEST_CASE("family specs", "[parse]") {
  CHECK(parse_family("identity").describe() == "identity,n=2");
  CHECK(parse_family("power:eps=0.5").describe() == "power:eps=0.5,n=2");
  const auto il = parse_family("iterlog:k=2,alpha=1.0,n=3");
  CHECK(il.describe() == "iterlog:k=2,alpha=1,n=3");
  CHECK(il.dimension() == 3);
  CHECK(parse_family("iterlog:k=1").describe() == "iterlog:k=1,alpha=1,n=2");
  CHECK_THROWS_AS(parse_family("iterlog:alpha=1"), UsageError);
  CHECK_THROWS_AS(parse_family("power:eps=abc"), UsageError);
  CHECK_THROWS_AS(parse_family("power:eps=2"), UsageError);
  CHECK_THROWS_AS(parse_family("power:eps=0.5,zeta=1"), UsageError);
  CHECK_THROWS_AS(parse_family("spline"), UsageError);
  CHECK_THROWS_AS(parse_family("iterlog:k=9"), UsageError);
}

TEST_CASE("map specs", "[parse]") {
  const auto c = parse_map("cone:phi=iterlog:k=2,alpha=1,n=3");
  REQUIRE(std::holds_alternative<ConeMap>(c));
  CHECK(map_dimension(c) == 3);
  CHECK(std::get<ConeMap>(c).phi.dimension() == 3);

  const auto c2 = parse_map("cone:phi=power:eps=0.5,n=2,n=3");
  CHECK(std::get<ConeMap>(c2).phi.dimension() == 2);
  CHECK(map_dimension(c2) == 3);
  CHECK(describe(c2) == "cone:phi=power:eps=0.5,n=2,n=3");
  CHECK(describe(parse_map(describe(c2))) == describe(c2));

  const auto g = parse_map("glued:phi=identity,n=3");
  REQUIRE(std::holds_alternative<GluedMap>(g));
  CHECK(map_dimension(g) == 3);

  const auto r = parse_map("radial:power:eps=0.5");
  REQUIRE(std::holds_alternative<RadialMap>(r));
  CHECK(describe(r) == "radial:power:eps=0.5,n=2");
  const auto l = parse_map("radial:logexample:beta=1,n=2");
  CHECK(describe(l) == "radial:logexample:beta=1,n=2");
  CHECK(describe(parse_map("identity,n=4")) == "identity,n=4");

  CHECK_THROWS_AS(parse_map("cone:psi=identity"), UsageError);
  CHECK_THROWS_AS(parse_map("radial:spiral"), UsageError);
  CHECK_THROWS_AS(parse_map("cone:phi=identity,n=1"), UsageError);
  CHECK_THROWS_AS(parse_map("torus"), UsageError);
}

TEST_CASE("radii grammar", "[parse]") {
  const auto r = parse_radii("log:1e-6..1");
  REQUIRE(r.size() == 24);
  CHECK(r.front() == 1e-6);
  CHECK(r.back() == 1.0);
  CHECK_THAT(r[1] / r[0], WithinRel(r[23] / r[22], 1e-12));
  CHECK(parse_radii("log:1e-3..1e-1:3").size() == 3);
  CHECK_THAT(parse_radii("log:1e-3..1e-1:3")[1], WithinRel(1e-2, 1e-14));
  CHECK(parse_radii("0.1,0.2") == std::vector<double>{0.1, 0.2});
  CHECK_THROWS_AS(parse_radii("log:1..1e-3"), UsageError);
  CHECK_THROWS_AS(parse_radii("log:0..1"), UsageError);
  CHECK_THROWS_AS(parse_radii("lin:0..1"), UsageError);
  CHECK_THROWS_AS(parse_radii("0.1,-1"), UsageError);
}

TEST_CASE("centers", "[parse]") {
  CHECK(cone_norm(parse_center("0", 3)) == 0.0);
  const auto c = parse_center("0.1,0.2,-0.3", 3);
  CHECK(c.x(1) == 0.2);
  CHECK(c.t == -0.3);
  CHECK_THROWS_AS(parse_center("0.1,0.2", 3), UsageError);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run_cli({"energy", "--map", "cone:phi=identity,n=2", "--method", "quad"}).status == 0);
  CHECK(run_cli({"modulus", "--map", "cone:phi=identity", "--frobnicate"}).status == 2);
  CHECK(run_cli({"modulus"}).status == 2);
  CHECK(run_cli({}).status == 2);
  CHECK(run_cli({"modulus", "--map", "cone:phi=nonsense"}).status == 2);
  CHECK(run_cli({"modulus", "--map", "cone:phi=identity", "--radii", "log:1..0.1"}).status == 2);
  CHECK(run_cli({"verify", "no-such-suite", "--phi", "identity"}).status == 2);
  CHECK(run_cli({"energy", "--map", "cone:phi=identity", "--method", "simpson"}).status == 2);
  CHECK(run_cli({"verify", "conditions", "--phi", "iterlog:k=1,alpha=0.4,n=2"}).status == 1);
  CHECK(run_cli({"verify", "conditions", "--phi", "iterlog:k=2,alpha=1,n=2"}).status == 0);
  CHECK(run_cli({"modulus", "--help"}).status == 0);
}

TEST_CASE("usage errors name the flag", "[cli]") {
  const auto r = run_cli({"modulus", "--map", "cone:phi=identity", "--frobnicate"});
  CHECK_THAT(r.err, ContainsSubstring("--frobnicate"));
  const auto s = run_cli({"modulus", "--map", "cone:phi=power:eps=x"});
  CHECK_THAT(s.err, ContainsSubstring("eps"));
}

TEST_CASE("numerical failures embed the report", "[cli]") {
  // A point outside the upper cone is rejected by the bare cone map.
  const auto r = run_cli({"eval", "--map", "cone:phi=identity,n=2", "--at", "0.9,0.5"});
  CHECK(r.status == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("error"));
  CHECK(j["schema_version"] == kSchemaVersion);
}

TEST_CASE("json output carries schema version and resolved config", "[cli]") {
  const auto r = run_cli({"modulus", "--map", "glued:phi=iterlog:k=2,alpha=1.0,n=2", "--radii",
                          "log:1e-4..1:5", "--count", "64"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["config"]["map"] == "glued:phi=iterlog:k=2,alpha=1,n=2");
  CHECK(j["config"]["norm"] == "cone");
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["config"]["radii_points"] == 5);
  REQUIRE(j["values"].size() == 5);
  const auto phi = ModulusFunction::iterlog(2, 1.0, 2);
  CHECK_THAT(j["values"][0]["value"].get<double>(), WithinRel(phi(1e-4), 1e-12));
}

TEST_CASE("csv output", "[cli]") {
  const auto r = run_cli({"modulus", "--map", "radial:power:eps=0.5", "--radii", "0.25,0.01",
                          "--count", "32", "--out", "csv"});
  REQUIRE(r.status == 0);
  CHECK_THAT(r.out, ContainsSubstring("# schema_version=1\n"));
  CHECK_THAT(r.out, ContainsSubstring("# norm=euclid\n"));
  const auto pos = r.out.find("radius,value\n");
  REQUIRE(pos != std::string::npos);
  std::istringstream rows(r.out.substr(pos + 13));
  std::string line;
  std::vector<double> expected{0.1, 0.5};
  for (double e : expected) {
    REQUIRE(std::getline(rows, line));
    const auto comma = line.find(',');
    CHECK_THAT(std::stod(line.substr(comma + 1)), WithinRel(e, 1e-14));
  }
  CHECK_FALSE(std::getline(rows, line));
}

TEST_CASE("eval and invert", "[cli]") {
  const auto e = run_cli({"eval", "--phi", "power:eps=0.5", "--values", "0.25", "--out", "csv"});
  CHECK_THAT(e.out, ContainsSubstring("s,phi,derivative,lambda,elasticity\n0.25,0.5,1,2,0.5\n"));
  const auto i = run_cli({"invert", "--phi", "power:eps=0.5", "--values", "0.5", "--out", "csv"});
  CHECK_THAT(i.out, ContainsSubstring("v,psi\n0.5,0.25"));
  const auto m = run_cli({"invert", "--map", "glued:phi=iterlog:k=1,n=2", "--at", "0,0.5", "--at",
                          "0,-0.5", "--out", "json"});
  REQUIRE(m.status == 0);
  const auto j = nlohmann::json::parse(m.out);
  const auto phi = ModulusFunction::iterlog(1, 1.0, 2);
  CHECK_THAT(j["points"][0]["out"][1].get<double>(), WithinRel(invert(phi, 0.5), 1e-12));
  CHECK_THAT(j["points"][1]["out"][1].get<double>(), WithinRel(-phi(0.5), 1e-15));
}

TEST_CASE("replay is byte identical", "[cli]") {
  const std::vector<std::vector<std::string>> runs{
      {"modulus", "--map", "glued:phi=iterlog:k=2,alpha=1,n=3", "--radii", "log:1e-5..1:6",
       "--count", "256", "--seed", "5", "--out", "csv"},
      {"dilatation", "--map", "glued:phi=iterlog:k=1,n=2", "--radii", "log:1e-6..0.5:6", "--count",
       "128", "--seed", "3"},
      {"energy", "--map", "cone:phi=iterlog:k=1,alpha=1,n=2", "--method", "mc", "--samples",
       "20000", "--seed", "42"},
      {"energy", "--map", "glued:phi=iterlog:k=2,n=2", "--tol", "1e-5"},
      {"verify", "global-modulus-f", "--phi", "iterlog:k=1,n=2", "--pairs", "2000", "--seed", "9"},
      {"verify", "averaging-lemma", "--phi", "iterlog:k=2,n=2", "--pairs", "10", "--out", "csv"},
  };
  for (const auto &args : runs) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    INFO(args[0] << " " << args[1]);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("different seeds change sampled output", "[cli]") {
  const auto a = run_cli({"energy", "--map", "cone:phi=iterlog:k=1,n=2", "--method", "mc",
                          "--samples", "5000", "--seed", "1"});
  const auto b = run_cli({"energy", "--map", "cone:phi=iterlog:k=1,n=2", "--method", "mc",
                          "--samples", "5000", "--seed", "2"});
  CHECK(a.out != b.out);
}
