#pragma once

// Named scenario runners behind the CLI subcommands. Each produces a set of
// named tables plus a human-readable summary; the CLI writes the tables as
// CSV files into the output directory.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "rfchain/config.hpp"
#include "rfchain/csv.hpp"

namespace rfchain::scenarios {

struct ScenarioOutput {
  std::vector<std::pair<std::string, csv::Table>> tables;
  std::string summary;
  bool pass = true;  // scenario-level verdict (mask checks and the like)
};

/// (P_in, R_L) grid of rectifier efficiency and output voltage, logarithmic
/// in input power.
inline ScenarioOutput run_harvest_sweep(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  csv::Table t;
  t.header = {"p_in_w", "p_in_dbm", "r_l_ohm", "pce", "in_range", "v_out_v"};
  const double decades = std::log10(sc.harvest_p_max_w / sc.harvest_p_min_w);
  const int n_steps = static_cast<int>(std::ceil(decades * sc.harvest_points_per_decade));
  for (int i = 0; i <= n_steps; ++i) {
    const double p = sc.harvest_p_min_w *
                     std::pow(10.0, decades * static_cast<double>(i) / n_steps);
    const double dbm = watts_to_dbm({p}).value;
    for (double r : sc.harvest_loads) {
      const auto e = rectifier::pce(sc.rectifier_model, p, r);
      t.rows.push_back({p, dbm, r, e.pce, e.in_range ? 1.0 : 0.0,
                        rectifier::output_voltage(sc.rectifier_model, p, r)});
    }
  }
  out.tables.emplace_back("harvest_sweep.csv", std::move(t));

  const double f0 = antenna::resonance(sc.boost_network);
  out.summary = "harvest-sweep: " + std::to_string(out.tables[0].second.rows.size()) +
                " grid points, boosting network resonance " + std::to_string(f0 / 1e6) + " MHz";
  return out;
}

/// Reference efficiency dataset next to the calibrated model, plus the
/// per-cycle ledger at the peak-efficiency operating point.
inline ScenarioOutput run_dcdc_eff(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  csv::Table t;
  t.header = {"p_in_w", "v_in_v", "v_out_v", "eta_ref", "eta_model"};
  const dcdc::EfficiencyModel model = dcdc::EfficiencyModel::calibrated();
  double worst = 0.0;
  for (const auto& pt : dcdc::efficiency_table()) {
    const double eta = model.efficiency(pt.p_in_w, pt.v_out_v);
    worst = std::max(worst, std::abs(eta - pt.eta));
    t.rows.push_back({pt.p_in_w, pt.v_in_v, pt.v_out_v, pt.eta, eta});
  }
  out.tables.emplace_back("dcdc_efficiency.csv", std::move(t));

  // per-cycle ledger at the 1 uW / 1.4 V reference point
  const dcdc::OperatingPoint op = dcdc::select_operating_point(sc.converter, 1e-6, 0.38);
  dcdc::ConverterState st;
  st.v_in = 0.38;
  st.v_out = 1.4;
  st.v_dd = sc.converter.v_supply_max;
  st.mode = op.mode;
  dcdc::SimOptions opt;
  opt.hold_output_voltage = true;
  opt.record_cycles = true;
  const auto sim = dcdc::cycle_simulate(sc.converter, st, op.f_s, op.t_on, 20, opt);
  csv::Table ledger;
  ledger.header = {"cycle",         "i_peak_a",        "source_j",   "delivered_j",
                   "conduction_j",  "switching_j",     "quiescent_j", "dcm_ok"};
  for (const auto& c : sim.cycles) {
    ledger.rows.push_back({static_cast<double>(c.index), c.i_peak, c.source_energy,
                           c.delivered_energy, c.conduction_loss, c.switching_loss,
                           c.quiescent_loss, c.dcm_ok ? 1.0 : 0.0});
  }
  out.tables.emplace_back("dcdc_ledger.csv", std::move(ledger));

  char buf[128];
  std::snprintf(buf, sizeof(buf), "dcdc-eff: 20 reference points, worst model deviation %.2f pts",
                worst * 100.0);
  out.summary = buf;
  return out;
}

/// Closed-loop tracking trajectory.
inline ScenarioOutput run_mppt(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  const auto traj =
      mppt::closed_loop_run(sc.rectifier_model, sc.converter, sc.estimator, sc.mppt_code0,
                            sc.mppt_epochs, sc.mppt_p_rf, sc.mppt_t_on);
  csv::Table t;
  t.header = {"epoch", "code", "i_b_a", "f_s_hz", "r_in_ohm", "delivered_w",
              "metric", "controller_w", "net_w"};
  for (const auto& r : traj) {
    t.rows.push_back({static_cast<double>(r.epoch), static_cast<double>(r.code), r.i_b, r.f_s,
                      r.r_in, r.delivered_w, r.metric, r.controller_w, r.net_w});
  }
  const int final_code = traj.empty() ? sc.mppt_code0 : traj.back().code;
  out.tables.emplace_back("mppt_trajectory.csv", std::move(t));
  out.summary = "mppt-run: " + std::to_string(sc.mppt_epochs) + " epochs, final code " +
                std::to_string(final_code);
  return out;
}

/// Noise-figure grid over the configured interface impedances.
inline ScenarioOutput run_lna_sweep(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  std::vector<lna::InterfaceImpedance> grid;
  for (double r : sc.lna_ra_grid) {
    for (double x : sc.lna_xa_grid) grid.push_back({r, x});
  }
  const auto sweep = lna::nf_sweep(sc.lna_params, grid, sc.lna_sweep);
  csv::Table t;
  t.header = {"r_a_ohm", "x_a_ohm", "l_deg_h", "nf_db", "practical"};
  double best = 1e9;
  for (const auto& p : sweep) {
    best = std::min(best, p.nf_db);
    t.rows.push_back({p.r_a, p.x_a, p.l_deg_implied, p.nf_db, p.practical ? 1.0 : 0.0});
  }
  out.tables.emplace_back("lna_sweep.csv", std::move(t));
  char buf[96];
  std::snprintf(buf, sizeof(buf), "lna-sweep: %zu points, best NF %.2f dB", sweep.size(), best);
  out.summary = buf;
  return out;
}

struct UwbRun {
  Waveform waveform;
  Spectrum psd;
  uwb::MaskVerdict verdict;
  uwb::Rolloff rolloff;
  double vpp = 0.0;
  double energy_per_pulse_j = 0.0;
  double band_fraction = 0.0;
};

inline UwbRun run_uwb_pipeline(const config::ScenarioConfig& sc, const uwb::MaskSpec& mask) {
  UwbRun run;
  const double fs = sc.uwb_prf * static_cast<double>(sc.uwb_samples_per_period);
  run.waveform = uwb::synth_pulse(sc.lput, sc.stimulus, fs, 1.0 / sc.uwb_prf);
  run.psd = psd_estimate(run.waveform, sc.uwb_prf);
  run.verdict = uwb::mask_check(mask, run.psd);
  run.rolloff = uwb::rolloff(run.psd, 500e6, 1e9);
  run.vpp = uwb::peak_to_peak(run.waveform);
  run.energy_per_pulse_j = uwb::energy_per_pulse(sc.uwb_power_w, sc.uwb_prf);
  run.band_fraction = uwb::band_power_fraction(run.psd, 0.25e9, 0.75e9);
  return run;
}

/// Pulse synthesis, PSD, roll-off and mask verdict.
inline ScenarioOutput run_uwb_pulse(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  const uwb::MaskSpec mask = sc.uwb_mask_file.empty()
                                 ? uwb::default_sub_ghz_mask()
                                 : [&] {
                                     uwb::MaskSpec m;
                                     const csv::Table t = csv::parse_csv_file(sc.uwb_mask_file);
                                     m.name = sc.uwb_mask_file;
                                     for (const auto& row : t.rows) {
                                       m.points.emplace_back(row.at(0), row.at(1));
                                     }
                                     m.validate();
                                     return m;
                                   }();
  const UwbRun run = run_uwb_pipeline(sc, mask);

  csv::Table wave;
  wave.header = {"t_s", "v_a_v"};
  for (std::size_t i = 0; i < run.waveform.size(); ++i) {
    wave.rows.push_back({run.waveform.time_at(i), run.waveform.samples[i]});
  }
  out.tables.emplace_back("uwb_waveform.csv", std::move(wave));

  csv::Table psd;
  psd.header = {"f_hz", "psd_dbm_per_mhz"};
  for (std::size_t k = 0; k < run.psd.size(); ++k) {
    psd.rows.push_back({run.psd.frequency_at(k), run.psd.bins_dbm[k]});
  }
  out.tables.emplace_back("uwb_psd.csv", std::move(psd));

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "uwb-pulse: vpp %.3f V, band fraction %.2f, roll-off %.1f dB (500 MHz to 1 GHz), "
                "energy/pulse %.2f pJ, mask %s (worst margin %.1f dB at %.0f MHz)",
                run.vpp, run.band_fraction, run.rolloff.drop_db, run.energy_per_pulse_j * 1e12,
                run.verdict.pass ? "pass" : "FAIL", run.verdict.worst_margin_db,
                run.verdict.worst_frequency / 1e6);
  out.summary = buf;
  out.pass = run.verdict.pass;
  return out;
}

/// Received PSD at each configured (distance, height) pair.
inline ScenarioOutput run_link_psd(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  const UwbRun run = run_uwb_pipeline(sc, uwb::default_sub_ghz_mask());
  std::string summary = "link-psd:";
  for (double h : sc.link_heights) {
    for (double d : sc.link_distances) {
      const link::LinkGeometry g{d, h, sc.link_geometry.reflection};
      const Spectrum rx = link::received_psd(run.psd, g);
      csv::Table t;
      t.header = {"f_hz", "rx_psd_dbm_per_mhz"};
      for (std::size_t k = 0; k < rx.size(); ++k) {
        t.rows.push_back({rx.frequency_at(k), rx.bins_dbm[k]});
      }
      char name[64];
      std::snprintf(name, sizeof(name), "link_psd_d%g_h%g.csv", d, h);
      out.tables.emplace_back(name, std::move(t));
      char line[96];
      std::snprintf(line, sizeof(line), " (d=%g m, h=%g m, peak %.1f dBm/MHz)", d, h,
                    link::peak(rx).dbm);
      summary += line;
    }
  }
  out.summary = std::move(summary);
  return out;
}

/// Level-crossing encode of the configured test tone.
inline ScenarioOutput run_lcadc_encode(const config::ScenarioConfig& sc) {
  ScenarioOutput out;
  Waveform input;
  input.sample_period = 1.0 / sc.lcadc_input_rate;
  const auto n = static_cast<std::size_t>(sc.lcadc_input_cycles * sc.lcadc_input_rate /
                                          sc.lcadc_input_freq);
  input.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    input.samples[i] =
        sc.lcadc_input_amplitude * std::sin(2.0 * pi * sc.lcadc_input_freq * input.time_at(i));
  }

  const auto events = lcadc::lc_sample(input, sc.level_crossing);
  csv::Table ev;
  ev.header = {"time_s", "direction_up"};
  for (const auto& e : events) {
    ev.rows.push_back({e.time, e.direction == lcadc::Direction::up ? 1.0 : 0.0});
  }
  out.tables.emplace_back("lcadc_events.csv", std::move(ev));

  const auto pulses = lcadc::pdm_encode(events, sc.pdm);
  csv::Table pl;
  pl.header = {"start_s", "width_s"};
  for (const auto& p : pulses) pl.rows.push_back({p.start, p.width});
  out.tables.emplace_back("lcadc_pulses.csv", std::move(pl));

  if (!pulses.empty()) {
    // carrier burst of the first encoded pulse only; the full stream is
    // sparse and the burst is the interesting waveform
    const std::vector<lcadc::PdmPulse> first{{0.0, pulses.front().width}};
    const Waveform env = lcadc::backscatter_envelope(first, sc.pdm, 8.0 * sc.pdm.carrier);
    csv::Table bs;
    bs.header = {"t_s", "v"};
    for (std::size_t i = 0; i < env.size(); ++i) {
      bs.rows.push_back({env.time_at(i), env.samples[i]});
    }
    out.tables.emplace_back("lcadc_backscatter.csv", std::move(bs));
  }

  out.summary = "lcadc-encode: " + std::to_string(events.size()) + " events, " +
                std::to_string(pulses.size()) + " pulses";
  return out;
}

}  // namespace rfchain::scenarios
