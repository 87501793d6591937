#pragma once

// Behavioral model of the 5-stage orthogonally switching charge-pump
// rectifier: a parametric power-conversion-efficiency surface over
// (input power, load resistance) plus the three input-power accountings.

#include <cmath>
#include <stdexcept>
#include <string>

#include "rfchain/quantities.hpp"

namespace rfchain::rectifier {

/// Separable log-domain efficiency surface. The measured behaviour is only
/// published as curves, so the surface anchors the quoted numbers (peak 60%
/// at -20 dBm, valid range -20..-4 dBm, best load 820 kohm) and decays
/// quadratically in decades away from the peak along each axis. The defaults
/// are repo calibrations, not measured ground truth.
struct PceSurface {
  double peak_pce = 0.60;
  double p_opt_w = 1e-5;
  double r_opt_ohm = 820e3;
  double width_p_decades = 2.2;
  double width_r_decades = 1.5;
  double p_min_w = 1e-5;
  double p_max_w = 3.981071705534972e-4;  // -4 dBm

  void validate() const {
    if (!(peak_pce > 0.0 && peak_pce <= 1.0)) {
      throw std::invalid_argument("PceSurface: peak_pce must be in (0, 1]");
    }
    if (!(p_opt_w > 0.0 && r_opt_ohm > 0.0)) {
      throw std::invalid_argument("PceSurface: p_opt and r_opt must be > 0");
    }
    if (!(width_p_decades > 0.0 && width_r_decades > 0.0)) {
      throw std::invalid_argument("PceSurface: widths must be > 0");
    }
    if (!(p_min_w > 0.0 && p_max_w > p_min_w)) {
      throw std::invalid_argument("PceSurface: need 0 < p_min < p_max");
    }
  }
};

/// Fixed component values carried for config fidelity; the behavioral model
/// itself only consumes the surface and the input capacitance.
struct ComponentTable {
  double c_c = 9e-12;
  double c_r1 = 9.7e-12;
  double c_r2 = 9.7e-12;
  double c_dc = 90e-15;
  double r_dc = 350e3;
  std::string transistor_wl = "750u/0.2u";
};

struct RectifierModel {
  int n_stages = 5;
  PceSurface surface;
  double c_rt = 17e-12;          // input capacitance, F
  double input_mismatch = 1.0;   // optional power-transfer derating, (0, 1]
  ComponentTable components;

  void validate() const {
    if (n_stages < 1) throw std::invalid_argument("RectifierModel: n_stages must be >= 1");
    if (!(c_rt > 0.0)) throw std::invalid_argument("RectifierModel: c_rt must be > 0");
    if (!(input_mismatch > 0.0 && input_mismatch <= 1.0)) {
      throw std::invalid_argument("RectifierModel: input_mismatch must be in (0, 1]");
    }
    surface.validate();
  }
};

struct PceResult {
  double pce = 0.0;
  bool in_range = true;
};

/// Efficiency at (input power, load). Outside the calibrated power range the
/// model returns zero with the out-of-range flag set.
inline PceResult pce(const RectifierModel& model, double p_in_w, double r_l_ohm) {
  if (!(p_in_w > 0.0)) throw std::invalid_argument("pce: input power must be > 0");
  if (!(r_l_ohm > 0.0)) throw std::invalid_argument("pce: load must be > 0");
  const PceSurface& s = model.surface;
  const double p_eff = p_in_w * model.input_mismatch;
  if (p_eff < s.p_min_w || p_eff > s.p_max_w) return {0.0, false};
  const double up = std::log10(p_eff / s.p_opt_w) / s.width_p_decades;
  const double ur = std::log10(r_l_ohm / s.r_opt_ohm) / s.width_r_decades;
  const double gp = std::max(0.0, 1.0 - up * up);
  const double gr = std::max(0.0, 1.0 - ur * ur);
  return {s.peak_pce * gp * gr, true};
}

/// DC output voltage from energy balance: V_out = sqrt(pce * P_in * R_L), so
/// V_out^2 / R_L = pce * P_in holds exactly by construction.
inline double output_voltage(const RectifierModel& model, double p_in_w, double r_l_ohm) {
  const PceResult r = pce(model, p_in_w, r_l_ohm);
  return std::sqrt(r.pce * p_in_w * r_l_ohm);
}

struct PceAccounting {
  double pce_theoretical = 0.0;  // against V_A^2 / (2 Re{Z_A})
  double pce_antenna = 0.0;      // against measured power at the antenna
  double pce_circuit = 0.0;      // against estimated power at the circuit
};

/// Theoretical input power V_A^2 / (2 Re{Z_A}) for a peak antenna voltage.
inline double theoretical_input_power(double v_a, const ComplexImpedance& z_a) {
  if (!(z_a.resistance > 0.0)) {
    throw std::invalid_argument("theoretical_input_power: Re{Z_A} must be > 0");
  }
  return v_a * v_a / (2.0 * z_a.resistance);
}

/// Three efficiency accountings for one delivered power. The input powers
/// must be consistent (circuit <= antenna <= theoretical and delivered not
/// above the circuit-level power); inconsistent measurements are rejected.
inline PceAccounting pce_accounting(double delivered_w, double v_a, const ComplexImpedance& z_a,
                                    double p_antenna_w, double p_circuit_w) {
  const double p_theor = theoretical_input_power(v_a, z_a);
  if (!(delivered_w > 0.0 && p_antenna_w > 0.0 && p_circuit_w > 0.0)) {
    throw std::invalid_argument("pce_accounting: powers must be > 0");
  }
  if (p_circuit_w > p_antenna_w || p_antenna_w > p_theor) {
    throw std::invalid_argument(
        "pce_accounting: inconsistent inputs, need P_circuit <= P_antenna <= P_theoretical");
  }
  if (delivered_w > p_circuit_w) {
    throw std::invalid_argument("pce_accounting: delivered power exceeds circuit input power");
  }
  return {delivered_w / p_theor, delivered_w / p_antenna_w, delivered_w / p_circuit_w};
}

}  // namespace rfchain::rectifier
