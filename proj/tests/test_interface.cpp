#include <catch2/catch_amalgamated.hpp>

#include "rfchain/interface.hpp"

#include <cmath>
#include <random>

using namespace rfchain;
using namespace rfchain::antenna;
using Catch::Approx;

TEST_CASE("boosted load voltage anchors", "[interface]") {
  CHECK(boosted_load_voltage({1.0, 100.0, 0.0}).volts == 0.0);

  const BoostedVoltage v = boosted_load_voltage({1.0, 100.0, 1e-5});
  CHECK(v.volts == Approx(0.44721).epsilon(1e-4));
  CHECK(v.approximation_valid);

  // doubling X_A doubles the output
  const BoostedVoltage v2 = boosted_load_voltage({1.0, 200.0, 1e-5});
  CHECK(v2.volts == Approx(2.0 * v.volts).epsilon(1e-12));

  CHECK_THROWS_AS(boosted_load_voltage({0.0, 100.0, 1e-5}), std::domain_error);
}

TEST_CASE("boosted voltage against the full divider solve", "[interface]") {
  // The closed form drops the R_A^2 term; at R_A = X_A/10 that is a 0.5% gap.
  const AntennaPort near_limit{10.0, 100.0, 1e-5};
  const double approx = boosted_load_voltage(near_limit).volts;
  const double exact = conjugate_match_load_voltage_exact(near_limit);
  CHECK(std::abs(exact - approx) / exact < 5.1e-3);
  CHECK_FALSE(boosted_load_voltage(near_limit).approximation_valid);

  const AntennaPort high_q{1.0, 100.0, 1e-5};
  CHECK(std::abs(conjugate_match_load_voltage_exact(high_q) - boosted_load_voltage(high_q).volts) /
            conjugate_match_load_voltage_exact(high_q) <
        1e-4);
}

TEST_CASE("boosted voltage scales as sqrt of available power", "[interface][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.1, 50.0), x(10.0, 500.0), p(1e-9, 1e-3);
  for (int i = 0; i < 500; ++i) {
    const AntennaPort port{r(rng), x(rng), p(rng)};
    const AntennaPort port4{port.r_a, port.x_a, 4.0 * port.p_avail};
    REQUIRE(boosted_load_voltage(port4).volts ==
            Approx(2.0 * boosted_load_voltage(port).volts).epsilon(1e-12));
  }
}

TEST_CASE("resonance and required inductance", "[interface]") {
  BoostNetwork unit{1.0, 1.0, 0.5, 0.3, 0.2, 1.0};
  CHECK(unit.c_vt() == Approx(1.0));
  CHECK(resonance(unit) == Approx(1.0 / (2.0 * pi)).epsilon(1e-12));

  // 44 pF total tuning capacitance resonated at 13.56 MHz
  const double c_vt = 19.5e-12 + 7.5e-12 + 17e-12;
  CHECK(c_vt == Approx(44e-12));
  CHECK(required_inductance(13.56e6, c_vt) == Approx(3.13e-6).epsilon(5e-3));
}

TEST_CASE("resonance inversion round trip", "[interface][property]") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> lg(-7.0, -4.0), cg(-12.0, -9.0);
  for (int i = 0; i < 500; ++i) {
    BoostNetwork net;
    net.l_a = std::pow(10.0, lg(rng));
    net.r_a = 1.0;
    net.c_d = std::pow(10.0, cg(rng));
    net.c_b = std::pow(10.0, cg(rng));
    net.c_rt = std::pow(10.0, cg(rng));
    net.l_c = 1e-3;
    const double f0 = resonance(net);
    REQUIRE(required_inductance(f0, net.c_vt()) == Approx(net.l_a).epsilon(1e-9));
  }
}

TEST_CASE("resonance decreases in both inductance and capacitance", "[interface][property]") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> scale(1.01, 8.0);
  BoostNetwork net{3.13e-6, 1.0, 19.5e-12, 7.5e-12, 17e-12, 1e-3};
  const double base = resonance(net);
  for (int i = 0; i < 200; ++i) {
    BoostNetwork bigger_l = net;
    bigger_l.l_a *= scale(rng);
    REQUIRE(resonance(bigger_l) < base);
    BoostNetwork bigger_c = net;
    bigger_c.c_d *= scale(rng);
    REQUIRE(resonance(bigger_c) < base);
  }
}

TEST_CASE("power transfer factor anchors", "[interface]") {
  CHECK(power_transfer_factor({50.0, 20.0}, {50.0, -20.0}) == Approx(1.0).epsilon(1e-12));
  CHECK(power_transfer_factor({50.0, 0.0}, {100.0, 0.0}) == Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(power_transfer_factor({50.0, 0.0}, {0.0, 75.0}) == 0.0);
  CHECK_THROWS_AS(power_transfer_factor({0.0, 0.0}, {50.0, 0.0}), std::invalid_argument);
}

TEST_CASE("power transfer factor matches the two-port power ratio", "[interface][property]") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> r(0.1, 200.0), x(-300.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    const ComplexImpedance zs{r(rng), x(rng)};
    const ComplexImpedance zl{r(rng), x(rng)};
    const double factor = power_transfer_factor(zs, zl);
    REQUIRE(factor >= 0.0);
    REQUIRE(factor <= 1.0 + 1e-12);

    // independent route: unit source, load power over available power
    const Complex i_branch = 1.0 / (zs.value() + zl.value());
    const double p_load = 0.5 * std::norm(i_branch) * zl.resistance;
    const double p_avail = 1.0 / (8.0 * zs.resistance);
    REQUIRE(factor == Approx(p_load / p_avail).epsilon(1e-9));
  }
}
