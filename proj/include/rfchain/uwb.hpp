#pragma once

// Low-power sub-GHz UWB transmitter model. The core is a pseudo-differential
// T-network: each branch is a series R-L feeding a shunt C, the two branch
// nodes are tied through C_F, and the antenna (parallel RLC) hangs off the
// positive node through C_L. The model covers the differential drive mode;
// a common-mode pair carries no differential content and produces zero
// output by construction.
//
// Three independent evaluation routes are provided and cross-checked by the
// tests: the symbolic rational-function assembly, a per-frequency nodal
// solve (which also supports branch mismatch), and a time-domain state-space
// integrator.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rfchain/quantities.hpp"

namespace rfchain::uwb {

struct AntennaModel {
  double r_a = 36.0;   // ohm, radiation resistance
  double c_a = 3e-12;  // F, parallel
  double l_a = 30e-9;  // H, parallel
};

/// Default element values are a repo calibration: the antenna resonance sits
/// mid-band near 0.53 GHz, the tank notch just below 1 GHz for the steep
/// roll-off, and the coupling chosen so a 0.15 V edge pair lands the 0.14 V
/// peak-to-peak target.
struct LputNetwork {
  double r_s = 3.0;     // ohm, source + tank series resistance
  double l = 5.6e-9;    // H, tank inductance
  double c = 4.7e-12;   // F, tank shunt capacitance
  double c_f = 8.2e-12; // F, node-tying capacitance (high-frequency suppression)
  double c_l = 11e-12;  // F, antenna coupling capacitance
  AntennaModel antenna;
  // Relative element mismatch applied to the second branch (L and C scale by
  // 1 + branch_mismatch). Zero means perfectly matched branches.
  double branch_mismatch = 0.0;

  void validate() const {
    if (!(r_s > 0.0 && l > 0.0 && c > 0.0 && c_f > 0.0 && c_l > 0.0)) {
      throw std::invalid_argument("LputNetwork: element values must be > 0");
    }
    if (!(antenna.r_a > 0.0 && antenna.c_a > 0.0 && antenna.l_a > 0.0)) {
      throw std::invalid_argument("LputNetwork: antenna element values must be > 0");
    }
    if (!(std::abs(branch_mismatch) < 0.5)) {
      throw std::invalid_argument("LputNetwork: |branch_mismatch| must be < 0.5");
    }
  }
};

// ---------------------------------------------------------------------------
// Impedances

/// Branch tank seen from its node to ground: (R_S + sL) || 1/(sC).
inline RationalTF tank_impedance_tf(double r_s, double l, double c) {
  return RationalTF({r_s, l}, {1.0, r_s * c, l * c});
}

/// Parallel-RLC antenna: s L_A R_A / (s^2 L_A C_A R_A + s L_A + R_A).
inline RationalTF antenna_impedance_tf(const AntennaModel& a) {
  return RationalTF({0.0, a.l_a * a.r_a}, {a.r_a, a.l_a, a.l_a * a.c_a * a.r_a});
}

inline RationalTF capacitor_impedance_tf(double c) { return RationalTF({1.0}, {0.0, c}); }

struct BranchImpedances {
  Complex z_pga{};
  std::optional<Complex> z_pgb;  // open circuit at DC
  std::optional<Complex> z_pgc;  // open circuit at DC
};

/// The three T-network arm impedances at one frequency. At DC the arms that
/// contain a series capacitor are open circuits, signalled by nullopt.
inline BranchImpedances branch_impedances(const LputNetwork& net, double f_hz) {
  net.validate();
  if (!(f_hz >= 0.0)) throw std::invalid_argument("branch_impedances: f must be >= 0");
  BranchImpedances out;
  const RationalTF za = tank_impedance_tf(net.r_s, net.l, net.c);
  out.z_pga = za.eval(f_hz);
  if (f_hz > 0.0) {
    const Complex zf = capacitor_impedance_tf(net.c_f).eval(f_hz);
    const Complex zl = capacitor_impedance_tf(net.c_l).eval(f_hz);
    out.z_pgb = out.z_pga + zf;
    out.z_pgc = antenna_impedance_tf(net.antenna).eval(f_hz) + zl;
  }
  return out;
}

/// Full rational antenna-voltage transfer function V_A / V_ip for matched
/// branches under differential drive.
///
/// Starting from
///   V_A = [Vip / (s^2 LC + s R_S C + 1)]
///         * Zf Zant / (Zc Zf + 2 Za Zc + Za Zf + Za^2)
/// with Za = na/t (tank), Zf = 1/(s C_F), Zant = nant/dant and
/// Zc = nc/(dant * s C_L), every shared polynomial factor cancels exactly,
/// leaving the reduced [4/6] form
///   V_A / Vip = t * (s C_L) * nant / N
///   N = nc t^2 + 2 na nc t (s C_F) + na t dant (s C_L) + na^2 dant (s C_L)(s C_F).
/// Assembling the reduced form directly keeps the expanded coefficients well
/// conditioned; the unreduced product loses digits near the tank resonance.
inline RationalTF antenna_voltage_tf(const LputNetwork& net) {
  net.validate();
  if (net.branch_mismatch != 0.0) {
    throw std::invalid_argument(
        "antenna_voltage_tf: closed form requires matched branches, use antenna_voltage()");
  }
  using rfchain::detail::poly_add;
  using rfchain::detail::poly_mul;
  const AntennaModel& a = net.antenna;
  const std::vector<double> t{1.0, net.r_s * net.c, net.l * net.c};
  const std::vector<double> na{net.r_s, net.l};
  const std::vector<double> nant{0.0, a.l_a * a.r_a};
  const std::vector<double> dant{a.r_a, a.l_a, a.l_a * a.c_a * a.r_a};
  const std::vector<double> df{0.0, net.c_f};
  const std::vector<double> dl{0.0, net.c_l};

  const std::vector<double> dc = poly_mul(dant, dl);
  const std::vector<double> nc = poly_add(poly_mul(nant, dl), dant);

  std::vector<double> den = poly_mul(nc, poly_mul(t, t));
  std::vector<double> cross = poly_mul(poly_mul(na, nc), poly_mul(t, df));
  for (double& v : cross) v *= 2.0;
  den = poly_add(den, cross);
  den = poly_add(den, poly_mul(na, poly_mul(t, dc)));
  den = poly_add(den, poly_mul(poly_mul(na, na), poly_mul(dc, df)));

  return RationalTF(poly_mul(t, poly_mul(dl, nant)), std::move(den));
}

/// Per-frequency nodal solve of the two-node network under differential
/// drive +-v_ip. Supports branch mismatch; this is the independent oracle
/// for the rational assembly.
inline Complex antenna_voltage(const LputNetwork& net, double f_hz, double v_ip = 1.0) {
  net.validate();
  if (!(f_hz >= 0.0)) throw std::invalid_argument("antenna_voltage: f must be >= 0");
  if (f_hz == 0.0) return {0.0, 0.0};  // series coupling capacitor blocks DC

  const double l2 = net.l * (1.0 + net.branch_mismatch);
  const double c2 = net.c * (1.0 + net.branch_mismatch);

  const Complex za1 = tank_impedance_tf(net.r_s, net.l, net.c).eval(f_hz);
  const Complex za2 = tank_impedance_tf(net.r_s, l2, c2).eval(f_hz);
  const Complex zf = capacitor_impedance_tf(net.c_f).eval(f_hz);
  const Complex zant = antenna_impedance_tf(net.antenna).eval(f_hz);
  const Complex zc = zant + capacitor_impedance_tf(net.c_l).eval(f_hz);

  // Thevenin sources behind each branch tank.
  const Complex th1 = RationalTF({1.0}, {1.0, net.r_s * net.c, net.l * net.c}).eval(f_hz) * v_ip;
  const Complex th2 = RationalTF({1.0}, {1.0, net.r_s * c2, l2 * c2}).eval(f_hz) * (-v_ip);

  // Nodal equations at the two branch nodes.
  const Complex a11 = 1.0 / za1 + 1.0 / zf + 1.0 / zc;
  const Complex a12 = -1.0 / zf;
  const Complex a21 = -1.0 / zf;
  const Complex a22 = 1.0 / za2 + 1.0 / zf;
  const Complex b1 = th1 / za1;
  const Complex b2 = th2 / za2;
  const Complex det = a11 * a22 - a12 * a21;
  if (std::abs(det) == 0.0) throw NonFiniteResultError("antenna_voltage: singular network");
  const Complex vp = (b1 * a22 - b2 * a12) / det;
  return vp * zant / zc;
}

// ---------------------------------------------------------------------------
// Stimulus

enum class StimulusShape { step_edge, rect_pulse };
enum class DriveMode { differential, common };

/// Drive pair: differential means vip-(t) = -vip+(t - skew), common means
/// vip-(t) = +vip+(t - skew). The model responds to the anti-symmetric
/// component d(t) = (vip+(t) - vip-(t)) / 2, so a skew-free common pair
/// carries no excitation at all.
struct Stimulus {
  StimulusShape shape = StimulusShape::step_edge;
  DriveMode mode = DriveMode::differential;
  double amplitude = 0.15;  // V, the RF driver supply
  double rise_time = 1e-9;  // s, raised-cosine edge
  double skew = 0.0;        // s, timing mismatch between the two sources
  double start = 10e-9;     // s, edge location inside the window
  double width = 20e-9;     // s, rect_pulse high time

  void validate() const {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("Stimulus: amplitude must be >= 0");
    if (!(rise_time > 0.0)) throw std::invalid_argument("Stimulus: rise time must be > 0");
    if (!(start >= 0.0 && width > 0.0)) throw std::invalid_argument("Stimulus: bad timing");
  }
};

namespace detail {

inline double raised_cos_edge(double t, double tau) {
  if (t <= 0.0) return 0.0;
  if (t >= tau) return 1.0;
  return 0.5 * (1.0 - std::cos(pi * t / tau));
}

}  // namespace detail

/// Single-source waveform as a function of time over one repetition window.
/// The step edge returns to zero through a slow linear ramp across the rest
/// of the window so the periodic continuation stays continuous; the ramp's
/// spectral content sits far below the radiated band.
inline std::function<double(double)> stimulus_fn(const Stimulus& stim, double window) {
  stim.validate();
  if (!(window > stim.start + stim.rise_time)) {
    throw std::invalid_argument("stimulus_fn: window too short for the stimulus");
  }
  if (stim.shape == StimulusShape::step_edge) {
    const double hold_end = stim.start + stim.rise_time;
    const double ramp = window - hold_end;
    return [stim, hold_end, ramp](double t) {
      const double e = detail::raised_cos_edge(t - stim.start, stim.rise_time) * stim.amplitude;
      if (t <= hold_end) return e;
      return stim.amplitude * std::max(0.0, 1.0 - (t - hold_end) / ramp);
    };
  }
  return [stim](double t) {
    const double up = detail::raised_cos_edge(t - stim.start, stim.rise_time);
    const double dn = detail::raised_cos_edge(t - stim.start - stim.width, stim.rise_time);
    return stim.amplitude * (up - dn);
  };
}

/// Anti-symmetric drive component (vip+ - vip-)/2 of the skewed pair.
inline std::function<double(double)> differential_fn(const Stimulus& stim, double window) {
  auto base = stimulus_fn(stim, window);
  const double skew = stim.skew;
  const double second = stim.mode == DriveMode::differential ? 1.0 : -1.0;
  return [base, skew, second](double t) { return 0.5 * (base(t) + second * base(t - skew)); };
}

// ---------------------------------------------------------------------------
// Pulse synthesis

/// Frequency-domain synthesis: FFT of the differential stimulus multiplied
/// by the antenna transfer function, inverse transformed. The sample rate
/// must be at least 4x the stimulus content bandwidth (taken as 2/rise_time).
inline Waveform synth_pulse(const LputNetwork& net, const Stimulus& stim, double sample_rate,
                            double duration) {
  net.validate();
  stim.validate();
  if (!(sample_rate > 0.0 && duration > 0.0)) {
    throw std::invalid_argument("synth_pulse: bad sample rate or duration");
  }
  const double f_content = 2.0 / stim.rise_time;
  if (sample_rate < 4.0 * f_content) {
    throw std::invalid_argument("synth_pulse: aliasing guard, need sample_rate >= 8/rise_time");
  }
  const auto n = static_cast<std::size_t>(std::llround(sample_rate * duration));
  if (n < 16) throw std::invalid_argument("synth_pulse: window too short");

  const auto d = differential_fn(stim, duration);
  std::vector<Complex> x(n);
  const double dt = 1.0 / sample_rate;
  for (std::size_t i = 0; i < n; ++i) x[i] = Complex(d(dt * static_cast<double>(i)), 0.0);
  rfchain::detail::fourier(x, false);

  const bool symmetric = net.branch_mismatch == 0.0;
  RationalTF tf = symmetric ? antenna_voltage_tf(net) : RationalTF();
  const double df = sample_rate / static_cast<double>(n);
  const std::size_t n_half = n / 2;
  for (std::size_t k = 0; k <= n_half; ++k) {
    const double f = df * static_cast<double>(k);
    const Complex h = k == 0 ? Complex{0.0, 0.0}
                             : (symmetric ? tf.eval(f) : antenna_voltage(net, f));
    x[k] *= h;
    if (k != 0 && k != n - k) x[n - k] = std::conj(x[k]);
  }
  rfchain::detail::fourier(x, true);

  Waveform w;
  w.sample_period = dt;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.samples[i] = x[i].real();
  return w;
}

/// Independent time-domain oracle: RK4 integration of the six-state network
/// (two tank capacitor voltages, the antenna node voltage, two tank inductor
/// currents and the antenna inductor current). C_F and C_L enter through the
/// node capacitance matrix.
inline Waveform synth_pulse_state_space(const LputNetwork& net, const Stimulus& stim,
                                        double sample_rate, double duration,
                                        int substeps = 8) {
  net.validate();
  stim.validate();
  if (!(sample_rate > 0.0 && duration > 0.0)) {
    throw std::invalid_argument("synth_pulse_state_space: bad sample rate or duration");
  }
  if (substeps < 1) throw std::invalid_argument("synth_pulse_state_space: substeps must be >= 1");

  const double l1 = net.l;
  const double c1 = net.c;
  const double l2 = net.l * (1.0 + net.branch_mismatch);
  const double c2 = net.c * (1.0 + net.branch_mismatch);
  const AntennaModel& a = net.antenna;

  // Node capacitance matrix for [v1, v2, v3] and its inverse.
  const double m[3][3] = {{c1 + net.c_f + net.c_l, -net.c_f, -net.c_l},
                          {-net.c_f, c2 + net.c_f, 0.0},
                          {-net.c_l, 0.0, a.c_a + net.c_l}};
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det == 0.0) throw std::invalid_argument("synth_pulse_state_space: singular capacitance matrix");
  double inv[3][3];
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;

  const auto drive = differential_fn(stim, duration);

  using State = std::array<double, 6>;  // v1 v2 v3 iL1 iL2 iLA
  const auto deriv = [&](const State& s, double t, State& ds) {
    const double vd = drive(t);
    const double rhs0 = s[3];
    const double rhs1 = s[4];
    const double rhs2 = -s[2] / a.r_a - s[5];
    ds[0] = inv[0][0] * rhs0 + inv[0][1] * rhs1 + inv[0][2] * rhs2;
    ds[1] = inv[1][0] * rhs0 + inv[1][1] * rhs1 + inv[1][2] * rhs2;
    ds[2] = inv[2][0] * rhs0 + inv[2][1] * rhs1 + inv[2][2] * rhs2;
    ds[3] = (vd - net.r_s * s[3] - s[0]) / l1;
    ds[4] = (-vd - net.r_s * s[4] - s[1]) / l2;
    ds[5] = s[2] / a.l_a;
  };

  const auto n = static_cast<std::size_t>(std::llround(sample_rate * duration));
  const double dt = 1.0 / (sample_rate * static_cast<double>(substeps));

  Waveform w;
  w.sample_period = 1.0 / sample_rate;
  w.samples.resize(n);

  State s{};
  State k1, k2, k3, k4, tmp;
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = s[2];
    for (int sub = 0; sub < substeps; ++sub) {
      deriv(s, t, k1);
      for (int j = 0; j < 6; ++j) tmp[j] = s[j] + 0.5 * dt * k1[j];
      deriv(tmp, t + 0.5 * dt, k2);
      for (int j = 0; j < 6; ++j) tmp[j] = s[j] + 0.5 * dt * k2[j];
      deriv(tmp, t + 0.5 * dt, k3);
      for (int j = 0; j < 6; ++j) tmp[j] = s[j] + dt * k3[j];
      deriv(tmp, t + dt, k4);
      for (int j = 0; j < 6; ++j) {
        s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
      t += dt;
    }
    if (!std::isfinite(s[2])) {
      throw std::runtime_error("synth_pulse_state_space: integration diverged");
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Spectral mask

struct MaskSpec {
  std::string name;
  // (frequency Hz, limit dBm per reference bandwidth), strictly increasing.
  std::vector<std::pair<double, double>> points;

  void validate() const {
    if (points.size() < 2) throw std::invalid_argument("MaskSpec: need at least two breakpoints");
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (!(points[i].first > points[i - 1].first)) {
        throw std::invalid_argument("MaskSpec: breakpoints must be strictly increasing");
      }
    }
  }

  bool covers(double f_hz) const {
    return f_hz >= points.front().first && f_hz <= points.back().first;
  }

  double limit_at(double f_hz) const {
    if (!covers(f_hz)) throw std::invalid_argument("MaskSpec: frequency outside mask");
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (f_hz <= points[i].first) {
        const auto& [f0, l0] = points[i - 1];
        const auto& [f1, l1] = points[i];
        const double frac = (f_hz - f0) / (f1 - f0);
        return l0 + (l1 - l0) * frac;
      }
    }
    return points.back().second;
  }
};

/// Shipped regulatory-style emission mask for the sub-GHz band in dBm/MHz:
/// a general field-strength limit up to 960 MHz, a deep protected notch up
/// to 1.61 GHz and the standard UWB levels above. Stored as data; replace
/// with a mask file for other regions.
inline MaskSpec default_sub_ghz_mask() {
  MaskSpec m;
  m.name = "sub-ghz-uwb";
  m.points = {{1e6, -49.2},     {959.9e6, -49.2}, {960.1e6, -75.3}, {1610e6, -75.3},
              {1610.1e6, -53.3}, {1990e6, -53.3},  {1990.1e6, -51.3}, {3100e6, -51.3},
              {3100.1e6, -41.3}, {10600e6, -41.3}};
  return m;
}

struct MaskVerdict {
  bool pass = false;
  double worst_margin_db = 0.0;  // limit - psd at the tightest bin
  double worst_frequency = 0.0;
};

inline MaskVerdict mask_check(const MaskSpec& mask, const Spectrum& psd) {
  mask.validate();
  psd.validate();
  MaskVerdict v;
  v.worst_margin_db = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t k = 0; k < psd.size(); ++k) {
    const double f = psd.frequency_at(k);
    if (!mask.covers(f)) continue;
    any = true;
    const double margin = mask.limit_at(f) - psd.bins_dbm[k];
    if (margin < v.worst_margin_db) {
      v.worst_margin_db = margin;
      v.worst_frequency = f;
    }
  }
  if (!any) throw std::invalid_argument("mask_check: no band overlap between mask and spectrum");
  v.pass = v.worst_margin_db >= 0.0;
  return v;
}

// ---------------------------------------------------------------------------
// Spectral metrics

struct Rolloff {
  double drop_db = 0.0;
  double db_per_octave = 0.0;
};

inline Rolloff rolloff(const Spectrum& psd, double f1, double f2) {
  if (!(f2 > f1 && f1 > 0.0)) throw std::invalid_argument("rolloff: need 0 < f1 < f2");
  const double drop = psd.value_at(f1) - psd.value_at(f2);
  return {drop, drop / std::log2(f2 / f1)};
}

inline double energy_per_pulse(double power_w, double prf) {
  if (!(power_w >= 0.0 && prf > 0.0)) throw std::invalid_argument("energy_per_pulse: bad inputs");
  return power_w / prf;
}

/// Waveform route: integrate v^2/R over one repetition period.
inline double energy_per_pulse(const Waveform& w, double prf,
                               double r_load = psd_reference_load_ohm) {
  w.validate();
  if (!(prf > 0.0)) throw std::invalid_argument("energy_per_pulse: prf must be > 0");
  const auto n_per = static_cast<std::size_t>(std::llround(1.0 / (prf * w.sample_period)));
  if (n_per < 1 || n_per > w.size()) {
    throw std::invalid_argument("energy_per_pulse: waveform shorter than one period");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < n_per; ++i) {
    e += w.samples[i] * w.samples[i] / r_load * w.sample_period;
  }
  return e;
}

/// Fraction of the spectrum's total power between f_lo and f_hi.
inline double band_power_fraction(const Spectrum& s, double f_lo, double f_hi) {
  double total = 0.0, band = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double p = std::pow(10.0, s.bins_dbm[k] / 10.0);
    total += p;
    const double f = s.frequency_at(k);
    if (f >= f_lo && f <= f_hi) band += p;
  }
  return total > 0.0 ? band / total : 0.0;
}

inline double peak_to_peak(const Waveform& w) {
  if (w.samples.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(w.samples.begin(), w.samples.end());
  return *hi - *lo;
}

}  // namespace rfchain::uwb
