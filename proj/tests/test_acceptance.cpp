// Release gate: every acceptance criterion at its pinned tolerance, one
// pass/fail line per criterion.

#include <catch2/catch_amalgamated.hpp>

#include "rfchain/acceptance.hpp"

#include <cstdio>

using namespace rfchain;

TEST_CASE("acceptance criteria", "[acceptance]") {
  const config::ScenarioConfig sc = config::load_scenario(config::Config{});
  const auto results = acceptance::run_acceptance(sc, 1);
  REQUIRE(results.size() == 12);
  for (const auto& r : results) {
    std::printf("[%s] %2d %-45s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    INFO("criterion " << r.id << " (" << r.name << "): " << r.detail);
    CHECK(r.pass);
  }
}
