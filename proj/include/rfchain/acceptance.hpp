#pragma once

// The toolkit's acceptance suite: every release-gating check with its
// tolerance pinned in code. Shared by the test binary and the CLI selftest
// so both always run the same criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rfchain/config.hpp"
#include "rfchain/scenarios.hpp"

namespace rfchain::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

}  // namespace detail

/// 1. Closed-form DCM input resistance against the lossless cycle oracle.
inline CriterionResult criterion_dcm_oracle(std::mt19937_64& rng) {
  CriterionResult r{1, "dcm closed form vs cycle oracle", true, "", 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  const dcdc::ConverterConfig cfg = dcdc::ConverterConfig::lossless();
  std::uniform_real_distribution<double> v(0.2, 1.3), f(20e3, 1e6), d(0.02, 0.25), vo(0.2, 1.8);
  double worst = 0.0;
  int tested = 0;
  while (tested < 100) {
    const double v_in = v(rng), f_s = f(rng), duty = d(rng), v_out = vo(rng);
    const double t_on = duty / f_s;
    if (!dcdc::dcm_feasible(v_in, v_out, t_on, 1.0 / f_s)) continue;
    ++tested;
    dcdc::ConverterState st;
    st.v_in = v_in;
    st.v_out = v_out;
    st.v_dd = 1.8;
    const auto sim = dcdc::cycle_simulate(cfg, st, f_s, t_on, 20, {true, false, false, true});
    const double r_sim = v_in * v_in / (sim.ledger.source_energy / sim.ledger.sim_time);
    const double r_eq = dcdc::input_resistance_buckboost(cfg.inductance, duty, 1.0 / f_s);
    worst = std::max(worst, std::abs(r_sim / r_eq - 1.0));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = worst < 0.01 && elapsed < 10.0;
  r.detail = detail::fmt("100 random DCM points, worst |R_sim/R_eq - 1| = %.2e (< 1e-2) in %.2f s (< 10)",
                         worst, elapsed);
  return r;
}

/// 2. Buck-boost input resistance ignores V_out while the boost form spreads.
inline CriterionResult criterion_output_independence() {
  CriterionResult r{2, "buck-boost output independence", true, "", 0.0};
  const dcdc::ConverterConfig cfg = dcdc::ConverterConfig::lossless();
  const double v_in = 0.12, f_s = 100e3, duty = 0.1, t_on = duty / f_s;
  double r_min = 1e30, r_max = 0.0;
  for (double v_out = 0.2; v_out <= 1.8 + 1e-9; v_out += 0.1) {
    dcdc::ConverterState st;
    st.v_in = v_in;
    st.v_out = v_out;
    st.v_dd = 1.8;
    const auto sim = dcdc::cycle_simulate(cfg, st, f_s, t_on, 10, {true, false, false, true});
    const double r_sim = v_in * v_in / (sim.ledger.source_energy / sim.ledger.sim_time);
    r_min = std::min(r_min, r_sim);
    r_max = std::max(r_max, r_sim);
  }
  const double spread = r_max / r_min - 1.0;
  const double boost_lo = dcdc::input_resistance_boost(220e-6, duty, 1.0 / f_s, v_in, 0.2).ohms;
  const double boost_hi = dcdc::input_resistance_boost(220e-6, duty, 1.0 / f_s, v_in, 1.8).ohms;
  const double boost_spread = boost_hi / boost_lo;
  r.pass = spread < 0.01 && boost_spread >= 2.0;
  r.detail = detail::fmt("simulated spread %.2e (< 1e-2), boost formula spread %.2fx (>= 2x)",
                         spread, boost_spread);
  return r;
}

/// 3. Reference efficiency dataset emitted exactly; calibrated model within
///    3 efficiency points everywhere.
inline CriterionResult criterion_efficiency_table(const config::ScenarioConfig& sc) {
  CriterionResult r{3, "efficiency reference data and calibrated model", true, "", 0.0};
  const auto out = scenarios::run_dcdc_eff(sc);
  const auto& table = out.tables.at(0).second;
  bool exact = table.rows.size() == 20;
  double worst = 0.0;
  std::size_t row = 0;
  for (const auto& pt : dcdc::efficiency_table()) {
    if (!exact) break;
    const auto& row_v = table.rows.at(row++);
    exact = exact && row_v.at(0) == pt.p_in_w && row_v.at(2) == pt.v_out_v &&
            row_v.at(3) == pt.eta;
    worst = std::max(worst, std::abs(row_v.at(4) - pt.eta));
  }
  r.pass = exact && worst < 0.03;
  r.detail = detail::fmt("dataset emitted %s, worst model deviation %.2f pts (< 3)",
                         exact ? "exactly" : "WRONG", worst * 100.0);
  return r;
}

/// 4. P&O convergence on random unimodal profiles plus controller power anchors.
inline CriterionResult criterion_mppt_convergence(std::mt19937_64& rng) {
  CriterionResult r{4, "mppt convergence and controller power anchors", true, "", 0.0};
  const int span = mppt::default_code_max - mppt::default_code_min + 1;
  const int budget = 2 * span;
  std::uniform_real_distribution<double> inc(0.05, 1.0);
  std::uniform_int_distribution<int> opt_pick(mppt::default_code_min, mppt::default_code_max);
  std::uniform_int_distribution<int> start_pick(mppt::default_code_min, mppt::default_code_max);
  int converged = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int opt = opt_pick(rng);
    std::vector<double> profile(static_cast<std::size_t>(span));
    double val = 1.0;
    for (int i = opt; i >= mppt::default_code_min; --i) {
      profile[static_cast<std::size_t>(i - 1)] = val;
      val -= inc(rng);
    }
    val = 1.0;
    for (int i = opt; i <= mppt::default_code_max; ++i) {
      profile[static_cast<std::size_t>(i - 1)] = val;
      val -= inc(rng);
    }
    const auto metric = [&](int code) { return profile[static_cast<std::size_t>(code - 1)]; };
    int oracle = mppt::default_code_min;
    for (int c = mppt::default_code_min; c <= mppt::default_code_max; ++c) {
      if (metric(c) > metric(oracle)) oracle = c;
    }
    const auto track = mppt::run_po_tracking(metric, mppt::default_code_min,
                                             mppt::default_code_max, start_pick(rng), budget + 8);
    bool ok = true;
    for (std::size_t e = static_cast<std::size_t>(budget); e < track.size(); ++e) {
      ok = ok && std::abs(track[e].code - oracle) <= 1;
    }
    if (ok) ++converged;
  }
  const double p_lo = mppt::controller_power(20e3).watts;
  const double p_hi = mppt::controller_power(1e6).watts;
  const bool anchors =
      std::abs(p_lo - 17.4e-9) <= 1e-12 * 17.4e-9 && std::abs(p_hi - 278.5e-9) <= 1e-12 * 278.5e-9;
  r.pass = converged == 50 && anchors;
  r.detail = detail::fmt("%d/50 profiles converged within %d epochs, anchors %s", converged,
                         budget, anchors ? "exact" : "WRONG");
  return r;
}

/// 5. Estimator square-root/linearity laws and argmax equivalence.
inline CriterionResult criterion_estimator(std::mt19937_64& rng) {
  CriterionResult r{5, "estimator laws and argmax equivalence", true, "", 0.0};
  mppt::EstimatorParams p;
  const double ratio =
      mppt::power_metric(0.4, 100e-9, p) / mppt::power_metric(0.4, 2e-9, p);
  const bool sqrt_law = std::abs(ratio / std::sqrt(50.0) - 1.0) < 1e-9;
  mppt::EstimatorParams unity = p;
  unity.divider_ratio = 1.0;
  const double lin =
      mppt::power_metric(60e-3, 5e-9, unity) / mppt::power_metric(20e-3, 5e-9, unity);
  const bool linear = std::abs(lin / 3.0 - 1.0) < 1e-9;

  std::uniform_real_distribution<double> v(0.05, 1.5), i(1e-9, 150e-9);
  int mismatches = 0;
  for (int grid = 0; grid < 1000; ++grid) {
    std::size_t best_m = 0, best_p = 0;
    double m_max = -1.0, p_max = -1.0;
    for (std::size_t k = 0; k < 12; ++k) {
      const double v_in = v(rng), i_b = i(rng);
      const double m = mppt::power_metric(v_in, i_b, p);
      const double proxy = v_in * v_in * i_b;
      if (m > m_max) {
        m_max = m;
        best_m = k;
      }
      if (proxy > p_max) {
        p_max = proxy;
        best_p = k;
      }
    }
    if (best_m != best_p) ++mismatches;
  }
  r.pass = sqrt_law && linear && mismatches == 0;
  r.detail = detail::fmt("sqrt(50) ratio %s, linearity %s, %d/1000 argmax mismatches",
                         sqrt_law ? "ok" : "WRONG", linear ? "ok" : "WRONG", mismatches);
  return r;
}

/// 6. Rectifier surface anchors, accounting ordering, voltage monotonicity.
inline CriterionResult criterion_rectifier(const config::ScenarioConfig& sc,
                                           std::mt19937_64& rng) {
  CriterionResult r{6, "rectifier anchors and accounting ordering", true, "", 0.0};
  const auto& m = sc.rectifier_model;
  const bool peak = rectifier::pce(m, 1e-5, m.surface.r_opt_ohm).pce == 0.60;

  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double p_theor = 1e-6 * std::pow(10.0, 3.0 * u(rng));
    const double p_ant = p_theor * (0.3 + 0.7 * u(rng));
    const double p_circ = p_ant * (0.3 + 0.7 * u(rng));
    const double delivered = p_circ * (0.05 + 0.9 * u(rng));
    const double v_a = std::sqrt(2.0 * 50.0 * p_theor);
    const auto acc = rectifier::pce_accounting(delivered, v_a, {50.0, 0.0}, p_ant, p_circ);
    if (!(acc.pce_theoretical <= acc.pce_antenna + 1e-15 &&
          acc.pce_antenna <= acc.pce_circuit + 1e-15)) {
      ++violations;
    }
  }

  bool monotone = true;
  for (double r_l : {100e3, 300e3, 850e3}) {
    double prev = -1.0;
    for (double lp = std::log10(1e-5); lp <= std::log10(3.98e-4); lp += 0.01) {
      const double v = rectifier::output_voltage(m, std::pow(10.0, lp), r_l);
      monotone = monotone && v >= prev;
      prev = v;
    }
  }
  for (double p : {1e-5, 1e-4, 3.9e-4}) {
    double prev = -1.0;
    for (double lr = std::log10(100e3); lr <= std::log10(850e3); lr += 0.01) {
      const double v = rectifier::output_voltage(m, p, std::pow(10.0, lr));
      monotone = monotone && v >= prev;
      prev = v;
    }
  }
  r.pass = peak && violations == 0 && monotone;
  r.detail = detail::fmt("peak anchor %s, %d/1000 ordering violations, monotonicity %s",
                         peak ? "0.60 exact" : "WRONG", violations, monotone ? "ok" : "WRONG");
  return r;
}

/// 7. Interface math anchors.
inline CriterionResult criterion_interface(std::mt19937_64& rng) {
  CriterionResult r{7, "interface math anchors", true, "", 0.0};
  const double v = antenna::boosted_load_voltage({1.0, 100.0, 1e-5}).volts;
  const bool boost_ok = std::abs(v / 0.44721 - 1.0) < 1e-4;

  std::uniform_real_distribution<double> lg(-7.0, -4.0), cg(-12.0, -9.0);
  bool roundtrip = true;
  for (int i = 0; i < 200; ++i) {
    antenna::BoostNetwork net;
    net.l_a = std::pow(10.0, lg(rng));
    net.r_a = 1.0;
    net.c_d = std::pow(10.0, cg(rng));
    net.c_b = std::pow(10.0, cg(rng));
    net.c_rt = std::pow(10.0, cg(rng));
    net.l_c = 1e-3;
    const double f0 = antenna::resonance(net);
    roundtrip = roundtrip &&
                std::abs(antenna::required_inductance(f0, net.c_vt()) / net.l_a - 1.0) < 1e-9;
  }
  const double l_a = antenna::required_inductance(13.56e6, 44e-12);
  const bool anchor = std::abs(l_a / 3.13e-6 - 1.0) < 5e-3;
  r.pass = boost_ok && roundtrip && anchor;
  r.detail = detail::fmt("boost %.5f V (0.44721), roundtrip %s, L_A %.3f uH (3.13 +- 0.5%%)", v,
                         roundtrip ? "ok" : "WRONG", l_a * 1e6);
  return r;
}

/// 8. Noise-figure formula anchor and monotonicity grid.
inline CriterionResult criterion_lna(const config::ScenarioConfig& sc) {
  CriterionResult r{8, "noise figure anchor and monotonicity", true, "", 0.0};
  const auto nf = lna::min_noise_factor(sc.lna_params, {10.0, 282.7});
  const bool anchor = std::abs(nf.nf_db - 2.43) <= 0.01;
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double r_a = 1.0 + 2.0 * i;
      const double x_a = 20.0 + 15.0 * j;
      const double f0 = lna::min_noise_factor(sc.lna_params, {r_a, x_a}).factor;
      if (!(lna::min_noise_factor(sc.lna_params, {r_a, x_a + 5.0}).factor < f0)) ++violations;
      if (!(lna::min_noise_factor(sc.lna_params, {r_a + 1.0, x_a}).factor > f0)) ++violations;
    }
  }
  r.pass = anchor && violations == 0;
  r.detail =
      detail::fmt("NF %.4f dB (2.43 +- 0.01), %d monotonicity violations on the 50x50 grid",
                  nf.nf_db, violations);
  return r;
}

/// 9. UWB pipeline: assembly vs nodal oracle, synthesis paths, shipped targets.
inline CriterionResult criterion_uwb(const config::ScenarioConfig& sc, std::mt19937_64& rng) {
  CriterionResult r{9, "uwb pipeline", true, "", 0.0};
  std::uniform_real_distribution<double> u(0.0, 1.0), f(10e6, 3e9);
  const auto pick = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };

  double worst_tf = 0.0;
  for (int net_i = 0; net_i < 20; ++net_i) {
    uwb::LputNetwork net;
    net.r_s = pick(2.0, 20.0);
    net.l = pick(5e-9, 30e-9);
    net.c = pick(3e-12, 30e-12);
    net.c_f = pick(5e-12, 50e-12);
    net.c_l = pick(3e-12, 20e-12);
    net.antenna.r_a = pick(20.0, 200.0);
    net.antenna.c_a = pick(1e-12, 10e-12);
    net.antenna.l_a = pick(5e-9, 50e-9);
    const RationalTF tf = uwb::antenna_voltage_tf(net);
    for (int k = 0; k < 20; ++k) {
      const double f_hz = f(rng);
      const Complex a = tf.eval(f_hz);
      const Complex b = uwb::antenna_voltage(net, f_hz);
      worst_tf = std::max(worst_tf, std::abs(a - b) / std::abs(b));
    }
  }
  const bool oracle_ok = worst_tf < 1e-9;

  const double fs = sc.uwb_prf * static_cast<double>(sc.uwb_samples_per_period);
  const Waveform fast = uwb::synth_pulse(sc.lput, sc.stimulus, fs, 1.0 / sc.uwb_prf);
  const Waveform slow = uwb::synth_pulse_state_space(sc.lput, sc.stimulus, fs, 1.0 / sc.uwb_prf);
  double peak = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < fast.size(); ++i) {
    peak = std::max(peak, std::abs(fast.samples[i]));
    const double d = fast.samples[i] - slow.samples[i];
    acc += d * d;
  }
  const double rms_frac = std::sqrt(acc / static_cast<double>(fast.size())) / peak;
  const bool synth_ok = rms_frac < 0.02;

  const scenarios::UwbRun run = scenarios::run_uwb_pipeline(sc, uwb::default_sub_ghz_mask());
  const bool band_ok = run.band_fraction >= 0.5;
  const bool roll_ok = run.rolloff.drop_db >= 25.0;
  const bool mask_ok = run.verdict.pass;
  const double epp = uwb::energy_per_pulse(0.28e-3, 3.3e6);
  const bool energy_ok = std::abs(epp / 84.85e-12 - 1.0) < 5e-3;

  r.pass = oracle_ok && synth_ok && band_ok && roll_ok && mask_ok && energy_ok;
  r.detail = detail::fmt(
      "tf-vs-nodal worst %.1e (<1e-9), synth rms/peak %.3f (<0.02), band %.2f (>=0.5), "
      "roll-off %.1f dB (>=25), mask %s, energy %.2f pJ",
      worst_tf, rms_frac, run.band_fraction, run.rolloff.drop_db, mask_ok ? "pass" : "FAIL",
      epp * 1e12);
  return r;
}

/// 10. Link study: Friis recovery and the geometry orderings.
inline CriterionResult criterion_link(const config::ScenarioConfig& sc, std::mt19937_64& rng) {
  CriterionResult r{10, "link study", true, "", 0.0};
  std::uniform_real_distribution<double> d(0.1, 50.0), h(0.1, 20.0), f(100e6, 2e9);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const link::LinkGeometry g{d(rng), h(rng), 0.0};
    const double f_hz = f(rng);
    worst = std::max(worst, std::abs(link::two_ray_gain(g, f_hz) /
                                         link::friis_gain(g.distance, f_hz) -
                                     1.0));
  }
  const bool friis_ok = worst < 1e-12;

  const scenarios::UwbRun run = scenarios::run_uwb_pipeline(sc, uwb::default_sub_ghz_mask());
  bool ordering = true;
  for (double height : {0.1, 10.0}) {
    double prev = 1e9;
    for (double dist : {0.1, 1.0, 10.0}) {
      const double pk =
          link::peak(link::received_psd(run.psd, {dist, height, -1.0})).dbm;
      ordering = ordering && pk < prev;
      prev = pk;
    }
  }
  for (double dist : {1.0, 10.0}) {
    const double lo = link::peak(link::received_psd(run.psd, {dist, 0.1, -1.0})).dbm;
    const double hi = link::peak(link::received_psd(run.psd, {dist, 10.0, -1.0})).dbm;
    ordering = ordering && hi > lo;
  }
  r.pass = friis_ok && ordering;
  r.detail = detail::fmt("Friis worst %.1e (<1e-12), geometry orderings %s", worst,
                         ordering ? "ok" : "WRONG");
  return r;
}

/// 11. LC-ADC round trip, exact widths, envelope energy ratio.
inline CriterionResult criterion_lcadc(std::mt19937_64& rng) {
  CriterionResult r{11, "lc-adc round trip and pdm widths", true, "", 0.0};
  lcadc::PdmConfig cfg;
  std::uniform_real_distribution<double> gap(90e-9, 5e-6);
  std::bernoulli_distribution updown(0.5);
  int errors = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<lcadc::CrossingEvent> events;
    double t = 0.0;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      t += gap(rng);
      events.push_back({t, updown(rng) ? lcadc::Direction::up : lcadc::Direction::down});
    }
    const auto decoded = lcadc::pdm_decode(lcadc::pdm_encode(events, cfg), cfg);
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (decoded[i] != events[i].direction) ++errors;
    }
  }
  const bool widths = cfg.width_for(lcadc::Direction::up) == 40e-9 &&
                      cfg.width_for(lcadc::Direction::down) == 80e-9;
  const auto up = lcadc::pdm_encode({{0.0, lcadc::Direction::up}}, cfg);
  const auto down = lcadc::pdm_encode({{0.0, lcadc::Direction::down}}, cfg);
  const double ratio = lcadc::envelope_energy(down) / lcadc::envelope_energy(up);
  const bool energy_ok = std::abs(ratio - 2.0) <= 1e-6;
  r.pass = errors == 0 && widths && energy_ok;
  r.detail = detail::fmt("%d decode errors over 1000 streams, widths %s, energy ratio %.9f",
                         errors, widths ? "40/80 ns exact" : "WRONG", ratio);
  return r;
}

/// Run criteria 1-11 and close with the end-to-end runtime criterion.
inline std::vector<CriterionResult> run_acceptance(const config::ScenarioConfig& sc,
                                                   unsigned long long seed = 1) {
  std::mt19937_64 rng(seed);
  std::vector<CriterionResult> results;
  const auto timed = [&results](std::function<CriterionResult()> fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  };

  const auto total0 = std::chrono::steady_clock::now();
  timed([&] { return criterion_dcm_oracle(rng); });
  timed([&] { return criterion_output_independence(); });
  timed([&] { return criterion_efficiency_table(sc); });
  timed([&] { return criterion_mppt_convergence(rng); });
  timed([&] { return criterion_estimator(rng); });
  timed([&] { return criterion_rectifier(sc, rng); });
  timed([&] { return criterion_interface(rng); });
  timed([&] { return criterion_lna(sc); });
  timed([&] { return criterion_uwb(sc, rng); });
  timed([&] { return criterion_link(sc, rng); });
  timed([&] { return criterion_lcadc(rng); });

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - total0).count();
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  CriterionResult last{12, "end-to-end selftest", all && total < 300.0,
                       detail::fmt("criteria 1-11 %s, total runtime %.1f s (< 300)",
                                   all ? "pass" : "FAIL", total),
                       total};
  results.push_back(std::move(last));
  return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace rfchain::acceptance
