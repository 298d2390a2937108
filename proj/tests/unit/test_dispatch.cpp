#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "netput/dual.hpp"

using namespace netput;

namespace {

nlohmann::json load_tables() {
  std::ifstream f(NETPUT_FIXTURES "/dispatch_tables.json");
  REQUIRE(f.good());
  return nlohmann::json::parse(f);
}

}  // namespace

TEST_SUITE("dispatch") {

TEST_CASE("distance families follow the fixture") {
  auto tables = load_tables();
  REQUIRE(tables["distance_families"].size() > 0);
  for (const auto& row : tables["distance_families"]) {
    PParam p = PParam::parse(row["p"].get<std::string>());
    INFO("p = " << row["p"].get<std::string>());
    CHECK(std::string(distance_family_name(distance_family(p))) == row["family"].get<std::string>());
  }
}

TEST_CASE("dual regimes follow the fixture") {
  auto tables = load_tables();
  REQUIRE(tables["dual_regimes"].size() > 0);
  for (const auto& row : tables["dual_regimes"]) {
    PParam p = PParam::parse(row["p"].get<std::string>());
    INFO("p = " << row["p"].get<std::string>());
    DualRegime r = dual_regime(p);
    CHECK(std::string(dual_criterion_name(r.criterion)) == row["criterion"].get<std::string>());
    CHECK(std::string(normalization_rule_name(r.normalization)) == row["normalization"].get<std::string>());
    CHECK(r.convexity_required == row["convexity_required"].get<bool>());
    CHECK(NormalizationRule::for_order(p).kind == r.normalization);
  }
}

}
