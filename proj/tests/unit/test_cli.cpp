#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "fgsg/cli.hpp"
#include "support.hpp"

using namespace fgsg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("validate") {
  const auto ok = run({"validate", fixtures::path("g2m1.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("g = 2") != std::string::npos);
  CHECK(ok.out.find("m = 1") != std::string::npos);
  CHECK(ok.out.find("curve_sha256 = ") != std::string::npos);

  const auto bad = run({"validate", fixtures::path("positive_real.json")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("PositiveRealPoint") != std::string::npos);
  CHECK(run({"validate", fixtures::path("malformed.json")}).code == 1);
  CHECK(run({"validate", fixtures::path("missing.json")}).code == 1);
  CHECK(run({"validate"}).code == 1);
}

TEST_CASE("periods") {
  const auto r = run({"periods", fixtures::path("g1r.json")});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.contains("curve_sha256"));
  CHECK(doc.contains("tolerances"));
  CHECK(doc["periods"]["B"][0][0][1].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  const auto broken = run({"periods", fixtures::path("g2m1.json"), "--inject-fault"});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("BasisSelfCheckFailed") != std::string::npos);
}

TEST_CASE("charge") {
  const auto r = run({"charge", fixtures::path("g2m2.json"), "--s", "++"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["n"] == nlohmann::json::array({1, -1}));
  CHECK(run({"charge", fixtures::path("g2m2.json"), "--s", "+"}).code == 1);
}

TEST_CASE("grid echoes provenance") {
  const auto r = run({"grid", fixtures::path("g1r.json"), "--s", "-", "--x", "0:1:0.5", "--t", "0:0:1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# curve_sha256 ", 0) == 0);
  CHECK(r.out.find("# tolerances ") != std::string::npos);
  CHECK(r.out.find("x,t,re_eiu,im_eiu,u") != std::string::npos);
}
