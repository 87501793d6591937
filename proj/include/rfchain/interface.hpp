#pragma once

// Antenna-electronics co-design math: conjugate matching, passive voltage
// boost from a reactive antenna, boosting-network resonance and mismatch
// power-transfer accounting.

#include <cmath>
#include <stdexcept>

#include "rfchain/quantities.hpp"

namespace rfchain::antenna {

struct AntennaPort {
  double r_a = 0.0;      // series resistance, ohm
  double x_a = 0.0;      // series reactance, ohm
  double p_avail = 0.0;  // available power, W
};

/// Boosting-network elements. c_vt() is the total tuning capacitance seen by
/// the antenna self-inductance. The choke l_c only provides a DC return path
/// and does not enter the resonance calculation.
struct BoostNetwork {
  double l_a = 0.0;   // antenna self-inductance, H
  double r_a = 0.0;   // antenna series resistance, ohm
  double c_d = 0.0;   // on-chip tuning capacitance, F
  double c_b = 0.0;   // on-chip tuning capacitance, F
  double c_rt = 0.0;  // rectifier input capacitance, F
  double l_c = 0.0;   // choke, H

  double c_vt() const { return c_d + c_b + c_rt; }

  void validate() const {
    if (!(l_a > 0.0 && r_a > 0.0 && c_d > 0.0 && c_b > 0.0 && c_rt > 0.0 && l_c > 0.0)) {
      throw std::invalid_argument("BoostNetwork: all element values must be > 0");
    }
  }
};

struct BoostedVoltage {
  double volts = 0.0;
  /// False when r_a >= x_a / ratio_threshold, i.e. the high-Q approximation
  /// the closed form relies on does not hold.
  bool approximation_valid = true;
};

/// Peak load voltage under conjugate match for a high-Q reactive antenna:
/// sqrt(2*P_av) * X_A / sqrt(R_A).
inline BoostedVoltage boosted_load_voltage(const AntennaPort& port,
                                           double ratio_threshold = 10.0) {
  if (!(port.r_a > 0.0)) throw std::domain_error("boosted_load_voltage: R_A must be > 0");
  if (!(port.p_avail >= 0.0)) throw std::domain_error("boosted_load_voltage: P_av must be >= 0");
  BoostedVoltage out;
  out.volts = std::sqrt(2.0 * port.p_avail) * port.x_a / std::sqrt(port.r_a);
  out.approximation_valid = port.r_a < std::abs(port.x_a) / ratio_threshold;
  return out;
}

/// Exact conjugate-matched load voltage from the full series divider,
/// sqrt(2*P_av*(R_A^2 + X_A^2)/R_A). Used as the oracle for the closed form
/// and exposes the voltage-gain limit from finite R_A.
inline double conjugate_match_load_voltage_exact(const AntennaPort& port) {
  if (!(port.r_a > 0.0)) throw std::domain_error("conjugate_match_load_voltage_exact: R_A must be > 0");
  return std::sqrt(2.0 * port.p_avail * (port.r_a * port.r_a + port.x_a * port.x_a) / port.r_a);
}

/// Resonance frequency of the boosting network, 1/(2*pi*sqrt(L_A*C_VT)).
inline double resonance(const BoostNetwork& net) {
  net.validate();
  return 1.0 / (2.0 * pi * std::sqrt(net.l_a * net.c_vt()));
}

/// Antenna self-inductance required to resonate c_vt at f0.
inline double required_inductance(double f0_hz, double c_vt) {
  if (!(f0_hz > 0.0) || !(c_vt > 0.0)) {
    throw std::invalid_argument("required_inductance: f0 and C_VT must be > 0");
  }
  const double w0 = 2.0 * pi * f0_hz;
  return 1.0 / (w0 * w0 * c_vt);
}

/// Fraction of the available source power delivered into the load:
/// 4*R_src*R_load / |Z_src + Z_load|^2. Equals 1 iff Z_load = conj(Z_src).
inline double power_transfer_factor(const ComplexImpedance& z_src,
                                    const ComplexImpedance& z_load) {
  if (!(z_src.resistance > 0.0)) {
    throw std::invalid_argument("power_transfer_factor: source resistance must be > 0");
  }
  if (!(z_load.resistance >= 0.0)) {
    throw std::invalid_argument("power_transfer_factor: load resistance must be >= 0");
  }
  const double rr = z_src.resistance + z_load.resistance;
  const double xx = z_src.reactance + z_load.reactance;
  return 4.0 * z_src.resistance * z_load.resistance / (rr * rr + xx * xx);
}

}  // namespace rfchain::antenna
