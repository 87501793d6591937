#pragma once

// Perturb-and-observe maximum-power-point tracking: the square-root power
// metric estimator, the oscillator code -> (bias current, frequency) map,
// the sample/perturb/compare epoch protocol and a closed-loop harness
// against the rectifier and converter models.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rfchain/dcdc.hpp"
#include "rfchain/rectifier.hpp"

namespace rfchain::mppt {

struct EstimatorParams {
  double k_a_per_v2 = 200e-6;  // device transconductance factor, A/V^2
  double divider_ratio = 0.05; // V_d = ratio * V_in
  double tail_gain = 1.0;      // tail current per unit oscillator bias

  void validate() const {
    if (!(k_a_per_v2 > 0.0)) throw std::invalid_argument("EstimatorParams: K must be > 0");
    if (!(divider_ratio > 0.0 && divider_ratio <= 1.0)) {
      throw std::invalid_argument("EstimatorParams: divider ratio must be in (0, 1]");
    }
    if (!(tail_gain > 0.0)) throw std::invalid_argument("EstimatorParams: tail gain must be > 0");
  }
};

/// Differential-pair output current sqrt(2K) * sqrt(I_T) * V_d. Strictly
/// monotone in V_in^2 * I_B, so its argmax matches the input-power argmax.
inline double power_metric(double v_in, double i_b, const EstimatorParams& p) {
  p.validate();
  if (!(v_in >= 0.0 && i_b >= 0.0)) {
    throw std::invalid_argument("power_metric: inputs must be >= 0");
  }
  return std::sqrt(2.0 * p.k_a_per_v2) * std::sqrt(p.tail_gain * i_b) *
         (p.divider_ratio * v_in);
}

// Oscillator anchors: 2 nA of bias gives 20 kHz, 100 nA gives 1 MHz.
inline constexpr double bias_per_code = 2e-9;     // A per code step
inline constexpr double freq_per_bias = 1e13;     // Hz per A (10 kHz per nA)
inline constexpr int default_code_min = 1;
inline constexpr int default_code_max = 50;

struct FrequencyPoint {
  double i_b = 0.0;
  double f_s = 0.0;
  bool clamped = false;
};

inline FrequencyPoint frequency_map(int code, int code_min = default_code_min,
                                    int code_max = default_code_max) {
  FrequencyPoint out;
  int c = code;
  if (c < code_min) {
    c = code_min;
    out.clamped = true;
  } else if (c > code_max) {
    c = code_max;
    out.clamped = true;
  }
  out.i_b = bias_per_code * static_cast<double>(c);
  out.f_s = freq_per_bias * out.i_b;
  return out;
}

struct ControllerPower {
  double watts = 0.0;
  bool clamped = false;
};

/// Controller dissipation, interpolated linearly between the 17.4 nW at
/// 20 kHz and 278.5 nW at 1 MHz anchor points.
inline ControllerPower controller_power(double f_s) {
  constexpr double f_lo = 20e3, p_lo = 17.4e-9;
  constexpr double f_hi = 1e6, p_hi = 278.5e-9;
  ControllerPower out;
  double f = f_s;
  if (f < f_lo) {
    f = f_lo;
    out.clamped = true;
  } else if (f > f_hi) {
    f = f_hi;
    out.clamped = true;
  }
  out.watts = p_lo + (p_hi - p_lo) * (f - f_lo) / (f_hi - f_lo);
  return out;
}

class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Analog non-idealities of the sample-and-hold and comparator. Defaults are
/// ideal; real parts leak and need an input overdrive to flip.
struct AnalogOptions {
  double comparator_offset = 0.0;  // the new sample must undershoot by this to count as a drop
  double hold_droop = 0.0;         // fraction of the held metric lost over the settling wait
};

enum class MpptPhase { idle, sample1, perturb, wait32, sample2, decide };

inline constexpr int epoch_clock_cycles = 4096;  // 12-bit master counter
inline constexpr int settle_clock_cycles = 32;   // gap between the two samples

struct MpptState {
  int code = default_code_min;
  int code_min = default_code_min;
  int code_max = default_code_max;
  int direction = +1;          // the D flip-flop
  double held_metric = 0.0;    // sample-and-hold
  double last_metric = 0.0;
  int counter = 0;             // master clock counter, wraps at 4096
  int epoch = 0;
  MpptPhase phase = MpptPhase::idle;
  bool analog_on = false;      // estimator/S&H/comparator powered
  bool clamped = false;        // last perturbation hit a code rail
};

/// Advance the controller one protocol phase. Sampling phases consume a
/// metric measured at the *current* code; the other phases must not be given
/// one. Out-of-order metric passing is a protocol error.
///
/// Epoch sequence: wake -> hold the metric -> perturb the code in the stored
/// direction -> wait 32 clocks -> re-sample -> keep the direction if the
/// metric did not decrease, otherwise invert it -> sleep until the master
/// counter wraps at 4096. Exactly one perturbation is issued per epoch.
inline MpptState po_step(MpptState state, std::optional<double> metric,
                         const AnalogOptions& analog = {}) {
  const auto need_metric = [&](bool needed) {
    if (needed && !metric.has_value()) {
      throw ProtocolError("po_step: phase requires a measured metric");
    }
    if (!needed && metric.has_value()) {
      throw ProtocolError("po_step: phase does not consume a metric");
    }
  };
  switch (state.phase) {
    case MpptPhase::idle:
      need_metric(false);
      state.analog_on = true;
      state.counter = 0;
      state.phase = MpptPhase::sample1;
      break;
    case MpptPhase::sample1:
      need_metric(true);
      state.held_metric = *metric;
      state.phase = MpptPhase::perturb;
      break;
    case MpptPhase::perturb: {
      need_metric(false);
      const int next = state.code + state.direction;
      state.clamped = next < state.code_min || next > state.code_max;
      state.code = std::clamp(next, state.code_min, state.code_max);
      state.phase = MpptPhase::wait32;
      break;
    }
    case MpptPhase::wait32:
      need_metric(false);
      state.counter = settle_clock_cycles;
      state.held_metric *= 1.0 - analog.hold_droop;
      state.phase = MpptPhase::sample2;
      break;
    case MpptPhase::sample2:
      need_metric(true);
      state.last_metric = *metric;
      state.phase = MpptPhase::decide;
      break;
    case MpptPhase::decide:
      need_metric(false);
      // Ties keep the stored direction; a perturbation absorbed by the code
      // rail reverses it, otherwise the controller would park against the
      // clamp on equal samples.
      if (state.last_metric < state.held_metric - analog.comparator_offset || state.clamped) {
        state.direction = -state.direction;
      }
      state.analog_on = false;
      state.counter = 0;  // sleep until the 4096-cycle wrap
      state.epoch += 1;
      state.phase = MpptPhase::idle;
      break;
  }
  return state;
}

/// Drive one full epoch against a metric source evaluated at the current code.
inline MpptState run_epoch(MpptState state, const std::function<double(int)>& metric_at_code,
                           const AnalogOptions& analog = {}) {
  state = po_step(state, std::nullopt, analog);                // idle -> sample1
  state = po_step(state, metric_at_code(state.code), analog);  // hold
  state = po_step(state, std::nullopt, analog);                // perturb
  state = po_step(state, std::nullopt, analog);                // wait 32 clocks
  state = po_step(state, metric_at_code(state.code), analog);  // re-sample
  state = po_step(state, std::nullopt, analog);                // decide + sleep
  return state;
}

struct TrackRecord {
  int epoch = 0;
  int code = 0;       // code at the end of the epoch
  int direction = 0;
  double metric = 0.0;
  bool clamped = false;
};

/// P&O tracking over an arbitrary power profile (test oracle entry point).
inline std::vector<TrackRecord> run_po_tracking(const std::function<double(int)>& metric_at_code,
                                                int code_min, int code_max, int code0,
                                                int epochs) {
  if (code_min > code_max || code0 < code_min || code0 > code_max) {
    throw std::invalid_argument("run_po_tracking: bad code range");
  }
  MpptState st;
  st.code = code0;
  st.code_min = code_min;
  st.code_max = code_max;
  std::vector<TrackRecord> out;
  out.reserve(static_cast<std::size_t>(epochs));
  for (int e = 0; e < epochs; ++e) {
    st = run_epoch(st, metric_at_code);
    out.push_back({st.epoch, st.code, st.direction, st.last_metric, st.clamped});
  }
  return out;
}

struct EpochRecord {
  int epoch = 0;
  int code = 0;
  double i_b = 0.0;
  double f_s = 0.0;
  double r_in = 0.0;
  double delivered_w = 0.0;
  double metric = 0.0;
  double controller_w = 0.0;
  double net_w = 0.0;
};

/// Closed loop against the rectifier surface and the converter input
/// resistance: each epoch the oscillator code sets f_s, hence the load the
/// converter presents to the rectifier, hence the harvested power the
/// estimator sees. The rectifier surface settles instantaneously, which
/// stands in for the 32-cycle settling window of the real hardware.
inline std::vector<EpochRecord> closed_loop_run(const rectifier::RectifierModel& rect,
                                                const dcdc::ConverterConfig& conv,
                                                const EstimatorParams& est, int code0,
                                                int epochs, double p_rf_w, double t_on) {
  rect.validate();
  conv.validate();
  est.validate();
  if (!(p_rf_w > 0.0)) throw std::invalid_argument("closed_loop_run: p_rf must be > 0");
  if (!(t_on > 0.0)) throw std::invalid_argument("closed_loop_run: t_on must be > 0");

  const auto loop_point = [&](int code) {
    EpochRecord r;
    const FrequencyPoint fp = frequency_map(code);
    r.code = code;
    r.i_b = fp.i_b;
    r.f_s = fp.f_s;
    const double period = 1.0 / fp.f_s;
    r.r_in = dcdc::input_resistance_buckboost(conv.inductance, t_on / period, period);
    r.delivered_w = rectifier::pce(rect, p_rf_w, r.r_in).pce * p_rf_w;
    const double v_in = std::sqrt(r.delivered_w * r.r_in);
    r.metric = power_metric(v_in, fp.i_b, est);
    r.controller_w = controller_power(fp.f_s).watts;
    r.net_w = r.delivered_w - r.controller_w;
    return r;
  };

  MpptState st;
  st.code = code0;
  std::vector<EpochRecord> out;
  out.reserve(static_cast<std::size_t>(epochs));
  for (int e = 0; e < epochs; ++e) {
    st = run_epoch(st, [&](int code) { return loop_point(code).metric; });
    EpochRecord r = loop_point(st.code);
    r.epoch = st.epoch;
    out.push_back(r);
  }
  return out;
}

}  // namespace rfchain::mppt
