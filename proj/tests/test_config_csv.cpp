#include <catch2/catch_amalgamated.hpp>

#include "rfchain/config.hpp"
#include "rfchain/csv.hpp"
#include "rfchain/scenarios.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace rfchain;
using Catch::Approx;

TEST_CASE("number formatting contract", "[csv]") {
  CHECK(csv::format_number(0.0) == "0");
  CHECK(csv::format_number(1e-6) == "1e-6");
  CHECK(csv::format_number(-1e-6) == "-1e-6");
  CHECK(csv::format_number(2.5e7) == "2.5e7");
  CHECK(csv::format_number(1234.5) == "1234.5");
  CHECK(csv::format_number(0.001) == "0.001");
  CHECK(csv::format_number(0.0009) == "9e-4");
}

TEST_CASE("formatted numbers parse back to 1e-12 relative", "[csv][property]") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> mag(-18.0, 18.0), mant(-1.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = mant(rng) * std::pow(10.0, mag(rng));
    const double back = std::stod(csv::format_number(x));
    if (x == 0.0) {
      REQUIRE(back == 0.0);
    } else {
      REQUIRE(std::abs(back - x) <= 1e-12 * std::abs(x));
    }
  }
}

TEST_CASE("csv emission and parse-back", "[csv]") {
  csv::Table t;
  t.header = {"a", "b"};
  t.rows = {{1e-6, 2.0}, {3.5, 4.000001e9}};

  const std::string path = (std::filesystem::temp_directory_path() / "rfchain_csv_test.csv").string();
  csv::emit_csv(t, path);

  std::ifstream is(path);
  std::string first;
  std::getline(is, first);
  CHECK(first == "a,b");
  is.seekg(0);
  const csv::Table back = csv::parse_csv(is);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      REQUIRE(back.rows[r][c] == Approx(t.rows[r][c]).epsilon(1e-12));
    }
  }
  std::remove(path.c_str());

  csv::Table empty;
  empty.header = {"x", "y", "z"};
  std::ostringstream os;
  csv::write_csv(empty, os);
  CHECK(os.str() == "x,y,z\n");

  CHECK_THROWS_AS(csv::emit_csv(t, "/nonexistent_dir_zz/file.csv"), std::runtime_error);
}

TEST_CASE("ragged tables are rejected", "[csv]") {
  csv::Table bad;
  bad.header = {"a", "b"};
  bad.rows = {{1.0}};
  std::ostringstream os;
  CHECK_THROWS_AS(csv::write_csv(bad, os), std::invalid_argument);
}

TEST_CASE("config parsing", "[config]") {
  std::istringstream src(
      "# top comment\n"
      "[general]\n"
      "seed = 42\n"
      "output_dir = results  # trailing comment\n"
      "\n"
      "[dcdc]\n"
      "l = 100e-6\n"
      "quiescent = 1e-9\n");
  const config::Config c = config::Config::parse(src);
  CHECK(c.get_double("general.seed", 0.0) == 42.0);
  CHECK(c.get_string("general.output_dir", "") == "results");
  CHECK(c.get_double("dcdc.l", 0.0) == Approx(100e-6));
  CHECK(c.get_double("dcdc.missing", 7.0) == 7.0);
  CHECK_FALSE(c.has("dcdc.missing"));
}

TEST_CASE("config syntax errors carry line numbers", "[config]") {
  std::istringstream bad1("[unterminated\n");
  CHECK_THROWS_AS(config::Config::parse(bad1), config::ConfigError);
  std::istringstream bad2("keyvalue\n");
  CHECK_THROWS_AS(config::Config::parse(bad2), config::ConfigError);
}

TEST_CASE("scenario defaults validate", "[config]") {
  const config::Config empty;
  const config::ScenarioConfig sc = config::load_scenario(empty);
  CHECK(sc.converter.inductance == Approx(220e-6));
  CHECK(sc.rectifier_model.surface.peak_pce == Approx(0.60));
  CHECK(sc.lput.r_s > 0.0);
}

TEST_CASE("invalid values are reported with their key path", "[config]") {
  config::Config c;
  c.set("dcdc.l", "-1");
  try {
    config::load_scenario(c);
    FAIL("expected ConfigError");
  } catch (const config::ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("dcdc") != std::string::npos);
  }

  config::Config notnum;
  notnum.set("lna.g_m", "abc");
  CHECK_THROWS_AS(config::load_scenario(notnum), config::ConfigError);
}

TEST_CASE("dotted overrides replace file values", "[config]") {
  std::istringstream src("[dcdc]\nl = 220e-6\n");
  config::Config c = config::Config::parse(src);
  c.set("dcdc.l", "110e-6");
  const config::ScenarioConfig sc = config::load_scenario(c);
  CHECK(sc.converter.inductance == Approx(110e-6));
}

TEST_CASE("dcdc-eff table round-trips through csv with its anchor row", "[scenario]") {
  const config::ScenarioConfig sc = config::load_scenario(config::Config{});
  const auto out = scenarios::run_dcdc_eff(sc);
  const std::string path =
      (std::filesystem::temp_directory_path() / "rfchain_dcdc_eff.csv").string();
  csv::emit_csv(out.tables.at(0).second, path);
  const csv::Table back = csv::parse_csv_file(path);
  std::remove(path.c_str());

  bool anchor = false;
  for (const auto& row : back.rows) {
    anchor = anchor || (row.at(0) == 1e-6 && row.at(2) == 1.4 && row.at(3) == 0.763);
  }
  CHECK(anchor);
  CHECK(back.rows.size() == 20);
}
