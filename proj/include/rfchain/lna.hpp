#pragma once

// Noise-figure calculator for the inductively degenerated cascode LNA
// co-designed with its antenna: minimum-noise-factor evaluation with the
// co-design and LNA terms separated, interface-impedance sweeps, and the
// transconductance inversion used for the power-saving argument.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rfchain/quantities.hpp"

namespace rfchain::lna {

struct LnaParams {
  double g_m = 366e-6;   // S
  double r_g = 18.0;     // ohm, gate resistance
  double r_l = 10e3;     // ohm, load equivalent noise resistance
  double gamma = 1.1;    // channel noise coefficient
  double delta = 0.0;    // induced gate noise coefficient
  double c_gs = 4e-15;   // F (interface construction metadata)
  double c_ext = 0.0;    // F
  double l_deg = 0.0;    // H

  void validate() const {
    if (!(g_m > 0.0)) throw std::invalid_argument("LnaParams: g_m must be > 0");
    if (!(r_g >= 0.0 && r_l > 0.0)) throw std::invalid_argument("LnaParams: bad resistances");
    if (!(gamma > 0.0 && delta >= 0.0)) throw std::invalid_argument("LnaParams: bad noise coefficients");
  }

  // gamma is typically between 2/3 and 2.
  bool gamma_in_typical_band() const { return gamma >= 2.0 / 3.0 && gamma <= 2.0; }
};

struct InterfaceImpedance {
  double r_a = 0.0;  // ohm
  double x_a = 0.0;  // ohm, omega * (L_A + L_deg)
};

struct NoiseFigure {
  double factor = 1.0;
  double nf_db = 0.0;
  double gate_term = 0.0;        // delta * R_g / R_A
  double codesign_factor = 0.0;  // R_A / X_A^2, 1/ohm
  double lna_term_ohms = 0.0;    // gamma/g_m + 4/(g_m^2 R_L)
};

/// F = 1 + delta*R_g/R_A + (R_A/X_A^2) * (gamma/g_m + 4/(g_m^2 R_L)).
inline NoiseFigure min_noise_factor(const LnaParams& p, const InterfaceImpedance& z) {
  p.validate();
  if (!(z.r_a > 0.0)) throw std::domain_error("min_noise_factor: R_A must be > 0");
  if (z.x_a == 0.0) throw std::domain_error("min_noise_factor: X_A must be nonzero");
  NoiseFigure out;
  out.gate_term = p.delta * p.r_g / z.r_a;
  out.codesign_factor = z.r_a / (z.x_a * z.x_a);
  out.lna_term_ohms = p.gamma / p.g_m + 4.0 / (p.g_m * p.g_m * p.r_l);
  out.factor = 1.0 + out.gate_term + out.codesign_factor * out.lna_term_ohms;
  out.nf_db = 10.0 * std::log10(out.factor);
  return out;
}

struct NfSweepOptions {
  double f_design = 900e6;     // Hz
  double l_deg_ceiling = 50e-9;  // implied degeneration inductances above this are impractical
  double l_antenna = 0.0;      // H, subtracted when inferring L_deg from X_A
  double r_a_floor = 0.0;      // ohm, antennas below this lose radiation efficiency
};

struct NfSweepPoint {
  double r_a = 0.0;
  double x_a = 0.0;
  double l_deg_implied = 0.0;
  double nf_db = 0.0;
  bool practical = true;
};

inline std::vector<NfSweepPoint> nf_sweep(const LnaParams& p,
                                          const std::vector<InterfaceImpedance>& grid,
                                          const NfSweepOptions& opt = {}) {
  if (!(opt.f_design > 0.0)) throw std::invalid_argument("nf_sweep: design frequency must be > 0");
  std::vector<NfSweepPoint> out;
  out.reserve(grid.size());
  const double w = 2.0 * pi * opt.f_design;
  for (const auto& z : grid) {
    NfSweepPoint pt;
    pt.r_a = z.r_a;
    pt.x_a = z.x_a;
    pt.l_deg_implied = z.x_a / w - opt.l_antenna;
    pt.nf_db = min_noise_factor(p, z).nf_db;
    pt.practical = pt.l_deg_implied <= opt.l_deg_ceiling && z.r_a >= opt.r_a_floor;
    out.push_back(pt);
  }
  return out;
}

/// Transconductance required to reach a target noise factor at the given
/// interface, from the quadratic in 1/g_m. Drops as X_A^2/R_A grows, which is
/// the co-design power saving.
inline double required_transconductance(const LnaParams& p, const InterfaceImpedance& z,
                                        double target_factor) {
  p.validate();
  if (!(z.r_a > 0.0) || z.x_a == 0.0) {
    throw std::domain_error("required_transconductance: bad interface impedance");
  }
  const double c = (target_factor - 1.0 - p.delta * p.r_g / z.r_a) * z.x_a * z.x_a / z.r_a;
  if (!(c > 0.0)) {
    throw std::invalid_argument("required_transconductance: target not reachable at this interface");
  }
  const double u = p.r_l * (-p.gamma + std::sqrt(p.gamma * p.gamma + 16.0 * c / p.r_l)) / 8.0;
  return 1.0 / u;
}

}  // namespace rfchain::lna
