#pragma once

// Shared configuration: an INI-style structured-text file with one section
// per module, flattened to dotted key paths. CLI flag overrides use the same
// dotted paths. All physical quantities are SI base units.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfchain/dcdc.hpp"
#include "rfchain/interface.hpp"
#include "rfchain/lcadc.hpp"
#include "rfchain/link.hpp"
#include "rfchain/lna.hpp"
#include "rfchain/mppt.hpp"
#include "rfchain/rectifier.hpp"
#include "rfchain/uwb.hpp"

namespace rfchain::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

class Config {
 public:
  Config() = default;

  static Config parse(std::istream& is) {
    Config cfg;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
        }
        section = detail::trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      }
      const std::string key = detail::trim(line.substr(0, eq));
      const std::string value = detail::trim(line.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      }
      cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    return parse(is);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0') {
      throw ConfigError(key + ": not a number: '" + it->second + "'");
    }
    return v;
  }

  int get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    return static_cast<int>(v);
  }

  bool get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError(key + ": not a boolean: '" + it->second + "'");
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Everything a scenario run needs, validated up front so a bad config never
/// produces partial outputs.
struct ScenarioConfig {
  // general
  std::string output_dir = "out";
  unsigned long long seed = 1;

  antenna::BoostNetwork boost_network;
  double antenna_p_avail = 1e-5;  // W, available power for interface reporting

  rectifier::RectifierModel rectifier_model;
  double harvest_p_min_w = 6.31e-6;  // sweep grid, logarithmic in power
  double harvest_p_max_w = 6.31e-4;
  int harvest_points_per_decade = 20;
  std::vector<double> harvest_loads{110e3, 220e3, 430e3, 820e3};

  dcdc::ConverterConfig converter;

  mppt::EstimatorParams estimator;
  int mppt_code0 = 5;
  int mppt_epochs = 120;
  double mppt_p_rf = 5e-5;
  double mppt_t_on = 60e-9;

  lna::LnaParams lna_params;
  lna::NfSweepOptions lna_sweep;
  std::vector<double> lna_ra_grid{2, 5, 10, 20, 50};
  std::vector<double> lna_xa_grid{50, 100, 200, 283, 400, 565};

  uwb::LputNetwork lput;
  uwb::Stimulus stimulus;
  double uwb_prf = 3.3e6;
  double uwb_power_w = 0.28e-3;
  int uwb_samples_per_period = 8192;
  std::string uwb_mask_file;  // empty -> shipped default mask

  link::LinkGeometry link_geometry;  // reflection coefficient shared by the study
  std::vector<double> link_distances{0.1, 1.0, 10.0};
  std::vector<double> link_heights{0.1, 10.0};

  lcadc::LevelCrossingConfig level_crossing;
  lcadc::PdmConfig pdm;
  double lcadc_input_freq = 500.0;
  double lcadc_input_amplitude = 0.45;
  double lcadc_input_cycles = 2.0;
  double lcadc_input_rate = 1e6;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
      throw ConfigError(key + ": bad list element '" + cell + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

}  // namespace detail

/// Build a validated scenario configuration; missing keys fall back to the
/// shipped defaults. Validation failures report the offending key path.
inline ScenarioConfig load_scenario(const Config& c) {
  ScenarioConfig sc;
  std::vector<std::string> errors;
  const auto guard = [&errors](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back(key + ": " + e.what());
    }
  };

  sc.output_dir = c.get_string("general.output_dir", sc.output_dir);
  sc.seed = static_cast<unsigned long long>(c.get_double("general.seed", 1.0));

  guard("interface", [&] {
    auto& b = sc.boost_network;
    b.l_a = c.get_double("interface.l_a", 3.13e-6);
    b.r_a = c.get_double("interface.r_a", 1.0);
    b.c_d = c.get_double("interface.c_d", 19.5e-12);
    b.c_b = c.get_double("interface.c_b", 7.5e-12);
    b.c_rt = c.get_double("interface.c_rt", 17e-12);
    b.l_c = c.get_double("interface.l_c", 1e-3);
    b.validate();
    sc.antenna_p_avail = c.get_double("interface.p_avail", sc.antenna_p_avail);
  });

  guard("rectifier", [&] {
    auto& m = sc.rectifier_model;
    m.n_stages = c.get_int("rectifier.n_stages", 5);
    m.c_rt = c.get_double("rectifier.c_rt", 17e-12);
    m.input_mismatch = c.get_double("rectifier.input_mismatch", 1.0);
    m.surface.peak_pce = c.get_double("rectifier.peak_pce", 0.60);
    m.surface.p_opt_w = c.get_double("rectifier.p_opt", 1e-5);
    m.surface.r_opt_ohm = c.get_double("rectifier.r_opt", 820e3);
    m.surface.width_p_decades = c.get_double("rectifier.width_p_decades", 2.2);
    m.surface.width_r_decades = c.get_double("rectifier.width_r_decades", 1.5);
    m.surface.p_min_w = c.get_double("rectifier.p_min", 1e-5);
    m.surface.p_max_w = c.get_double("rectifier.p_max", 3.981071705534972e-4);
    m.validate();
    sc.harvest_p_min_w = c.get_double("rectifier.sweep_p_min", sc.harvest_p_min_w);
    sc.harvest_p_max_w = c.get_double("rectifier.sweep_p_max", sc.harvest_p_max_w);
    sc.harvest_points_per_decade =
        c.get_int("rectifier.sweep_points_per_decade", sc.harvest_points_per_decade);
    if (!(sc.harvest_p_min_w > 0.0 && sc.harvest_p_max_w > sc.harvest_p_min_w)) {
      throw std::invalid_argument("sweep power range must satisfy 0 < min < max");
    }
    if (sc.harvest_points_per_decade < 1) {
      throw std::invalid_argument("sweep_points_per_decade must be >= 1");
    }
    if (c.has("rectifier.sweep_loads")) {
      sc.harvest_loads =
          detail::parse_list(c.get_string("rectifier.sweep_loads", ""), "rectifier.sweep_loads");
    }
  });

  guard("dcdc", [&] {
    auto& d = sc.converter;
    d.inductance = c.get_double("dcdc.l", d.inductance);
    d.inductor_esr = c.get_double("dcdc.l_esr", d.inductor_esr);
    d.c_rec = c.get_double("dcdc.c_rec", d.c_rec);
    d.c_store = c.get_double("dcdc.c_store", d.c_store);
    d.c_supply = c.get_double("dcdc.c_supply", d.c_supply);
    d.v_supply_max = c.get_double("dcdc.v_supply_max", d.v_supply_max);
    d.v_supply_min = c.get_double("dcdc.v_supply_min", d.v_supply_min);
    d.r_s1.low_power = c.get_double("dcdc.r_s1_lp", d.r_s1.low_power);
    d.r_s1.high_power = c.get_double("dcdc.r_s1_hp", d.r_s1.high_power);
    d.r_s2.low_power = c.get_double("dcdc.r_s2_lp", d.r_s2.low_power);
    d.r_s2.high_power = c.get_double("dcdc.r_s2_hp", d.r_s2.high_power);
    d.r_s3.low_power = c.get_double("dcdc.r_s3_lp", d.r_s3.low_power);
    d.r_s3.high_power = c.get_double("dcdc.r_s3_hp", d.r_s3.high_power);
    d.s4.pmos_lp_ohm_v = c.get_double("dcdc.s4_pmos_lp", d.s4.pmos_lp_ohm_v);
    d.s4.pmos_hp_ohm_v = c.get_double("dcdc.s4_pmos_hp", d.s4.pmos_hp_ohm_v);
    d.s4.nmos_lp_ohm_v = c.get_double("dcdc.s4_nmos_lp", d.s4.nmos_lp_ohm_v);
    d.s4.pmos_vth = c.get_double("dcdc.s4_pmos_vth", d.s4.pmos_vth);
    d.s4.nmos_vdrive = c.get_double("dcdc.s4_nmos_vdrive", d.s4.nmos_vdrive);
    d.r_s5 = c.get_double("dcdc.r_s5", d.r_s5);
    d.drive_energy_low = c.get_double("dcdc.drive_energy_lp", d.drive_energy_low);
    d.drive_energy_high = c.get_double("dcdc.drive_energy_hp", d.drive_energy_high);
    d.quiescent_power = c.get_double("dcdc.quiescent", d.quiescent_power);
    d.zcd_offset_a = c.get_double("dcdc.zcd_offset", d.zcd_offset_a);
    d.zcd_delay_s = c.get_double("dcdc.zcd_delay", d.zcd_delay_s);
    d.t_on_ref = c.get_double("dcdc.t_on_ref", d.t_on_ref);
    d.mode_threshold_w = c.get_double("dcdc.mode_threshold", d.mode_threshold_w);
    d.validate();
  });

  guard("mppt", [&] {
    auto& e = sc.estimator;
    e.k_a_per_v2 = c.get_double("mppt.k", e.k_a_per_v2);
    e.divider_ratio = c.get_double("mppt.divider_ratio", e.divider_ratio);
    e.tail_gain = c.get_double("mppt.tail_gain", e.tail_gain);
    e.validate();
    sc.mppt_code0 = c.get_int("mppt.code0", sc.mppt_code0);
    sc.mppt_epochs = c.get_int("mppt.epochs", sc.mppt_epochs);
    sc.mppt_p_rf = c.get_double("mppt.p_rf", sc.mppt_p_rf);
    sc.mppt_t_on = c.get_double("mppt.t_on", sc.mppt_t_on);
    if (sc.mppt_epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (!(sc.mppt_p_rf > 0.0)) throw std::invalid_argument("p_rf must be > 0");
    if (sc.mppt_code0 < mppt::default_code_min || sc.mppt_code0 > mppt::default_code_max) {
      throw std::invalid_argument("code0 out of range");
    }
  });

  guard("lna", [&] {
    auto& p = sc.lna_params;
    p.g_m = c.get_double("lna.g_m", p.g_m);
    p.r_g = c.get_double("lna.r_g", p.r_g);
    p.r_l = c.get_double("lna.r_l", p.r_l);
    p.gamma = c.get_double("lna.gamma", p.gamma);
    p.delta = c.get_double("lna.delta", p.delta);
    p.c_gs = c.get_double("lna.c_gs", p.c_gs);
    p.validate();
    sc.lna_sweep.f_design = c.get_double("lna.f_design", sc.lna_sweep.f_design);
    sc.lna_sweep.l_deg_ceiling = c.get_double("lna.l_deg_ceiling", sc.lna_sweep.l_deg_ceiling);
    sc.lna_sweep.l_antenna = c.get_double("lna.l_antenna", sc.lna_sweep.l_antenna);
    sc.lna_sweep.r_a_floor = c.get_double("lna.r_a_floor", sc.lna_sweep.r_a_floor);
    if (c.has("lna.ra_grid")) {
      sc.lna_ra_grid = detail::parse_list(c.get_string("lna.ra_grid", ""), "lna.ra_grid");
    }
    if (c.has("lna.xa_grid")) {
      sc.lna_xa_grid = detail::parse_list(c.get_string("lna.xa_grid", ""), "lna.xa_grid");
    }
  });

  guard("uwb", [&] {
    auto& n = sc.lput;
    n.r_s = c.get_double("uwb.r_s", n.r_s);
    n.l = c.get_double("uwb.l", n.l);
    n.c = c.get_double("uwb.c", n.c);
    n.c_f = c.get_double("uwb.c_f", n.c_f);
    n.c_l = c.get_double("uwb.c_l", n.c_l);
    n.antenna.r_a = c.get_double("uwb.ant_r_a", n.antenna.r_a);
    n.antenna.c_a = c.get_double("uwb.ant_c_a", n.antenna.c_a);
    n.antenna.l_a = c.get_double("uwb.ant_l_a", n.antenna.l_a);
    n.branch_mismatch = c.get_double("uwb.branch_mismatch", n.branch_mismatch);
    n.validate();
    sc.stimulus.amplitude = c.get_double("uwb.amplitude", sc.stimulus.amplitude);
    sc.stimulus.rise_time = c.get_double("uwb.rise_time", sc.stimulus.rise_time);
    sc.stimulus.skew = c.get_double("uwb.skew", sc.stimulus.skew);
    sc.stimulus.validate();
    sc.uwb_prf = c.get_double("uwb.prf", sc.uwb_prf);
    sc.uwb_power_w = c.get_double("uwb.power", sc.uwb_power_w);
    sc.uwb_samples_per_period = c.get_int("uwb.samples_per_period", sc.uwb_samples_per_period);
    sc.uwb_mask_file = c.get_string("uwb.mask_file", sc.uwb_mask_file);
    if (!(sc.uwb_prf > 0.0)) throw std::invalid_argument("prf must be > 0");
    if (sc.uwb_samples_per_period < 1024) {
      throw std::invalid_argument("samples_per_period must be >= 1024");
    }
  });

  guard("link", [&] {
    sc.link_geometry.reflection = c.get_double("link.reflection", sc.link_geometry.reflection);
    if (c.has("link.distances")) {
      sc.link_distances = detail::parse_list(c.get_string("link.distances", ""), "link.distances");
    }
    if (c.has("link.heights")) {
      sc.link_heights = detail::parse_list(c.get_string("link.heights", ""), "link.heights");
    }
    for (double d : sc.link_distances) {
      for (double h : sc.link_heights) {
        link::LinkGeometry g{d, h, sc.link_geometry.reflection};
        g.validate();
      }
    }
  });

  guard("lcadc", [&] {
    auto& l = sc.level_crossing;
    l.lsb = c.get_double("lcadc.lsb", l.lsb);
    l.origin = c.get_double("lcadc.origin", l.origin);
    l.hysteresis = c.get_double("lcadc.hysteresis", l.hysteresis);
    l.validate();
    auto& p = sc.pdm;
    p.t_up = c.get_double("lcadc.t_up", p.t_up);
    p.t_down = c.get_double("lcadc.t_down", p.t_down);
    p.carrier = c.get_double("lcadc.carrier", p.carrier);
    p.l_s = c.get_double("lcadc.l_s", p.l_s);
    p.c_s = c.get_double("lcadc.c_s", p.c_s);
    p.invert_polarity = c.get_bool("lcadc.invert_polarity", p.invert_polarity);
    p.validate();
    sc.lcadc_input_freq = c.get_double("lcadc.input_freq", sc.lcadc_input_freq);
    sc.lcadc_input_amplitude = c.get_double("lcadc.input_amplitude", sc.lcadc_input_amplitude);
    sc.lcadc_input_cycles = c.get_double("lcadc.input_cycles", sc.lcadc_input_cycles);
    sc.lcadc_input_rate = c.get_double("lcadc.input_rate", sc.lcadc_input_rate);
    if (!(sc.lcadc_input_rate > 0.0 && sc.lcadc_input_freq > 0.0)) {
      throw std::invalid_argument("input rate and frequency must be > 0");
    }
  });

  if (!errors.empty()) {
    std::string msg = "configuration invalid:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return sc;
}

}  // namespace rfchain::config
