#include <catch2/catch_amalgamated.hpp>

#include "rfchain/dcdc.hpp"

#include <cmath>
#include <random>

using namespace rfchain;
using namespace rfchain::dcdc;
using Catch::Approx;

namespace {

ConverterState dcm_state(double v_in, double v_out) {
  ConverterState st;
  st.v_in = v_in;
  st.v_out = v_out;
  st.v_dd = 1.8;
  st.target = OutputTarget::store;
  return st;
}

}  // namespace

TEST_CASE("buck-boost input resistance closed form", "[dcdc]") {
  CHECK(input_resistance_buckboost(220e-6, 0.1, 50e-6) == Approx(880.0).epsilon(1e-12));
  // halving the duty cycle quadruples the input resistance
  const double base = input_resistance_buckboost(220e-6, 0.2, 50e-6);
  CHECK(input_resistance_buckboost(220e-6, 0.1, 50e-6) == Approx(4.0 * base).epsilon(1e-12));
  CHECK_THROWS_AS(input_resistance_buckboost(220e-6, 0.0, 50e-6), std::invalid_argument);
  CHECK_THROWS_AS(input_resistance_buckboost(220e-6, 1.0, 50e-6), std::invalid_argument);
}

TEST_CASE("boost input resistance depends on the output voltage", "[dcdc]") {
  const double base = input_resistance_buckboost(220e-6, 0.1, 50e-6);
  // V_out -> infinity recovers the buck-boost value
  CHECK(input_resistance_boost(220e-6, 0.1, 50e-6, 0.4, 4e6).ohms ==
        Approx(base).epsilon(1e-6));
  // V_out = 2 V_in halves it
  CHECK(input_resistance_boost(220e-6, 0.1, 50e-6, 0.4, 0.8).ohms ==
        Approx(0.5 * base).epsilon(1e-12));
  const BoostInputResistance at_boundary = input_resistance_boost(220e-6, 0.1, 50e-6, 0.4, 0.4);
  CHECK(at_boundary.ohms == 0.0);
  CHECK(at_boundary.at_boundary);
  CHECK_THROWS_AS(input_resistance_boost(220e-6, 0.1, 50e-6, 0.5, 0.4), std::invalid_argument);
}

TEST_CASE("dcm input power anchors", "[dcdc]") {
  CHECK(dcm_input_power(0.38, 20e3, 0.0, 220e-6) == 0.0);
  // on-time solved for exactly 1 uW at the 20 kHz / 0.38 V operating point
  const double t_on = std::sqrt(2.0 * 220e-6 * 1e-6 / (0.38 * 0.38 * 20e3));
  CHECK(t_on == Approx(390.33e-9).epsilon(1e-4));
  CHECK(dcm_input_power(0.38, 20e3, t_on, 220e-6) == Approx(1e-6).epsilon(1e-9));
  // the rounded 390 ns from the same operating point sits within 0.2%
  CHECK(dcm_input_power(0.38, 20e3, 390e-9, 220e-6) == Approx(1e-6).epsilon(2.5e-3));
}

TEST_CASE("dcm power equals V^2/R_in for random operating points", "[dcdc][property]") {
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> v(0.1, 1.5), f(20e3, 1e6), d(0.02, 0.4);
  for (int i = 0; i < 1000; ++i) {
    const double v_in = v(rng), f_s = f(rng), duty = d(rng);
    const double t_on = duty / f_s;
    const double r_in = input_resistance_buckboost(220e-6, duty, 1.0 / f_s);
    REQUIRE(dcm_input_power(v_in, f_s, t_on, 220e-6) ==
            Approx(v_in * v_in / r_in).epsilon(1e-12));
  }
}

TEST_CASE("lossless cycle delivers the inductor energy", "[dcdc]") {
  const ConverterConfig cfg = ConverterConfig::lossless();
  const double f_s = 20e3, t_on = 390.33e-9, v_in = 0.38;
  const SimResult r = cycle_simulate(cfg, dcm_state(v_in, 1.4), f_s, t_on, 1);
  const double i_pk = v_in * t_on / cfg.inductance;
  const double e_l = 0.5 * cfg.inductance * i_pk * i_pk;
  CHECK(r.ledger.delivered_energy == Approx(e_l).epsilon(1e-9));
  CHECK(r.ledger.source_energy == Approx(e_l).epsilon(1e-9));
  CHECK(r.ledger.conduction_loss == Approx(0.0).margin(1e-20));
  CHECK(r.ledger.dcm_violations == 0);
}

TEST_CASE("lossless simulated input resistance matches the closed form", "[dcdc][oracle]") {
  const ConverterConfig cfg = ConverterConfig::lossless();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> v(0.2, 1.3), f(20e3, 1e6), d(0.02, 0.25);
  std::uniform_real_distribution<double> vo(0.2, 1.8);
  for (int i = 0; i < 50; ++i) {
    const double v_in = v(rng), f_s = f(rng), duty = d(rng), v_out = vo(rng);
    const double t_on = duty / f_s;
    if (!dcm_feasible(v_in, v_out, t_on, 1.0 / f_s)) continue;
    const SimResult r = cycle_simulate(cfg, dcm_state(v_in, v_out), f_s, t_on, 20,
                                       {true, false, false, true});
    const double p_in = r.ledger.source_energy / r.ledger.sim_time;
    const double r_sim = v_in * v_in / p_in;
    const double r_eq = input_resistance_buckboost(cfg.inductance, duty, 1.0 / f_s);
    REQUIRE(std::abs(r_sim / r_eq - 1.0) < 0.01);
  }
}

TEST_CASE("simulated buck-boost input resistance ignores the output voltage", "[dcdc]") {
  const ConverterConfig cfg = ConverterConfig::lossless();
  const double f_s = 100e3, t_on = 0.1 / f_s, v_in = 0.12;
  double r_min = 1e30, r_max = 0.0;
  for (double v_out = 0.2; v_out <= 1.81; v_out += 0.2) {
    const SimResult r =
        cycle_simulate(cfg, dcm_state(v_in, v_out), f_s, t_on, 10, {true, false, false, true});
    const double r_sim = v_in * v_in / (r.ledger.source_energy / r.ledger.sim_time);
    r_min = std::min(r_min, r_sim);
    r_max = std::max(r_max, r_sim);
  }
  CHECK(r_max / r_min - 1.0 < 0.01);

  // while the boost formula spreads by 2x or more over the same range
  const double boost_lo = input_resistance_boost(220e-6, 0.1, 1.0 / f_s, v_in, 0.2).ohms;
  const double boost_hi = input_resistance_boost(220e-6, 0.1, 1.0 / f_s, v_in, 1.8).ohms;
  CHECK(boost_hi / boost_lo >= 2.0);
}

TEST_CASE("ledger conserves energy with losses enabled", "[dcdc][property]") {
  ConverterConfig cfg;  // shipped loss calibration
  cfg.zcd_delay_s = 10e-9;
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> v(0.3, 1.3), vo(0.2, 1.8), f(20e3, 500e3);
  for (int i = 0; i < 200; ++i) {
    const double f_s = f(rng);
    const double t_on = 0.08 / f_s;
    const SimResult r = cycle_simulate(cfg, dcm_state(v(rng), vo(rng)), f_s, t_on, 3,
                                       {true, false, true, true});
    for (const auto& c : r.cycles) {
      const double input = c.source_energy + c.switching_loss + c.quiescent_loss;
      const double spent = c.delivered_energy + c.conduction_loss + c.switching_loss +
                           c.quiescent_loss + c.inductor_energy_delta;
      REQUIRE(spent == Approx(input).epsilon(1e-9));
    }
  }
}

TEST_CASE("ccm carry-over keeps the ledger balanced", "[dcdc]") {
  ConverterConfig cfg;
  // overload: discharge cannot complete at this output voltage
  SimOptions opt;
  opt.hold_output_voltage = true;
  opt.record_cycles = true;
  opt.zcd_interlock = false;
  const SimResult r = cycle_simulate(cfg, dcm_state(1.3, 0.2), 1e6, 510e-9, 50, opt);
  CHECK(r.ledger.dcm_violations > 0);
  CHECK(r.state.inductor_current > 0.0);
  for (const auto& c : r.cycles) {
    const double input = c.source_energy + c.switching_loss + c.quiescent_loss;
    const double spent = c.delivered_energy + c.conduction_loss + c.switching_loss +
                         c.quiescent_loss + c.inductor_energy_delta;
    REQUIRE(spent == Approx(input).epsilon(1e-9));
  }
}

TEST_CASE("reference efficiency dataset lookups", "[dcdc]") {
  CHECK(lookup_efficiency(1e-6, 1.4) == Approx(0.763));
  CHECK(lookup_efficiency(1e-3, 0.2) == Approx(0.241));
  CHECK(lookup_efficiency(1e-5, 1.0) == Approx(0.787));
  CHECK(lookup_efficiency(1e-4, 1.8) == Approx(0.849));
  CHECK(efficiency_table().size() == 20);
  CHECK_THROWS_AS(lookup_efficiency(2e-6, 1.4), std::invalid_argument);
}

TEST_CASE("calibrated model reproduces the peak efficiency point", "[dcdc][calibration]") {
  ConverterConfig cfg;  // shipped calibration
  const OperatingPoint op = select_operating_point(cfg, 1e-6, 0.38);
  CHECK(op.f_s == Approx(20e3).epsilon(1e-3));
  CHECK(op.mode == PowerMode::low);
  const double eta = simulate_efficiency(cfg, 0.38, 1.4, op);
  CHECK(eta == Approx(0.763).margin(0.02));
}

TEST_CASE("calibrated model tracks the full reference dataset", "[dcdc][calibration]") {
  const EfficiencyModel model = EfficiencyModel::calibrated();
  for (const auto& pt : efficiency_table()) {
    const double eta = model.efficiency(pt.p_in_w, pt.v_out_v);
    INFO("P_in=" << pt.p_in_w << " V_out=" << pt.v_out_v << " model=" << eta
                 << " ref=" << pt.eta);
    CHECK(std::abs(eta - pt.eta) < 0.03);
  }
  // interpolated powers stay inside the calibrated envelope
  CHECK(model.efficiency(3e-5, 1.4) > 0.7);
  CHECK(model.efficiency(3e-5, 1.4) < 0.9);
  CHECK_THROWS_AS(model.efficiency(1e-5, 5.0), std::invalid_argument);
}

TEST_CASE("mode economics reverse between 1 uW and 1 mW", "[dcdc][calibration]") {
  ConverterConfig cfg;
  OperatingPoint low_op = select_operating_point(cfg, 1e-6, 0.38);
  OperatingPoint low_op_hp = low_op;
  low_op_hp.mode = PowerMode::high;
  CHECK(simulate_efficiency(cfg, 0.38, 1.4, low_op) >
        simulate_efficiency(cfg, 0.38, 1.4, low_op_hp));

  OperatingPoint high_op = select_operating_point(cfg, 1e-3, 1.3);
  OperatingPoint high_op_lp = high_op;
  high_op_lp.mode = PowerMode::low;
  CHECK(simulate_efficiency(cfg, 1.3, 1.4, high_op) >
        simulate_efficiency(cfg, 1.3, 1.4, high_op_lp));
}

TEST_CASE("zcd comparator offset ends the discharge early", "[dcdc]") {
  ConverterConfig cfg = ConverterConfig::lossless();
  cfg.zcd_offset_a = 100e-6;
  const double f_s = 20e3, t_on = 390.33e-9, v_in = 0.38;
  const SimResult r = cycle_simulate(cfg, dcm_state(v_in, 1.4), f_s, t_on, 1, {true, false, true, true});
  const double i_pk = v_in * t_on / cfg.inductance;
  const double e_l = 0.5 * cfg.inductance * i_pk * i_pk;
  const double stranded = 0.5 * cfg.inductance * cfg.zcd_offset_a * cfg.zcd_offset_a;
  CHECK(r.ledger.delivered_energy == Approx(e_l - stranded).epsilon(1e-9));
  CHECK(r.ledger.conduction_loss == Approx(stranded).epsilon(1e-9));
  CHECK(r.state.inductor_current == 0.0);
}

TEST_CASE("storage capacitor charges by the delivered energy", "[dcdc]") {
  const ConverterConfig cfg = ConverterConfig::lossless();
  ConverterState st = dcm_state(0.38, 0.5);
  SimOptions opt;
  opt.record_cycles = true;
  const SimResult r = cycle_simulate(cfg, st, 20e3, 390e-9, 100, opt);
  CHECK(r.state.v_out > 0.5);
  const double expected =
      std::sqrt(0.5 * 0.5 + 2.0 * r.ledger.delivered_energy / cfg.c_store);
  CHECK(r.state.v_out == Approx(expected).epsilon(1e-9));
}

TEST_CASE("housekeeping state machine follows the voltage monitor", "[dcdc]") {
  ConverterConfig cfg;
  ConverterState st;
  st.target = OutputTarget::store;

  // below the operating floor with the converter unable: start-up runs
  st = housekeeping_step(cfg, st, {1.0, false});
  CHECK(st.startup_active);

  // supply reaches the upper threshold: discharge routes to storage
  st = housekeeping_step(cfg, st, {1.8, true});
  CHECK_FALSE(st.startup_active);
  CHECK(st.target == OutputTarget::store);

  // supply droops below the lower limit mid-run: recharge C_supply
  st = housekeeping_step(cfg, st, {1.19, true});
  CHECK(st.target == OutputTarget::supply);

  // hysteresis band: between the thresholds the target holds
  st = housekeeping_step(cfg, st, {1.5, true});
  CHECK(st.target == OutputTarget::supply);
  st = housekeeping_step(cfg, st, {1.8, true});
  CHECK(st.target == OutputTarget::store);
}

TEST_CASE("supply drain and housekeeping close the loop", "[dcdc]") {
  ConverterConfig cfg;
  cfg.quiescent_power = 2e-7;
  ConverterState st = dcm_state(0.52, 1.0);
  st.v_dd = 1.25;
  SimOptions opt;
  opt.update_supply = true;
  bool recharged_supply = false;
  for (int i = 0; i < 4000; ++i) {
    st = housekeeping_step(cfg, st, {st.v_dd, true});
    if (st.target == OutputTarget::supply) recharged_supply = true;
    const SimResult r = cycle_simulate(cfg, st, 107e3, 390e-9, 1, opt);
    st = r.state;
    if (recharged_supply && st.target == OutputTarget::store) break;
  }
  CHECK(recharged_supply);
  CHECK(st.v_dd >= cfg.v_supply_min);
}
