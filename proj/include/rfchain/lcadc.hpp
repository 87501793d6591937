#pragma once

// Level-crossing sampler and pulse-duration-modulation encoder: crossing
// events with direction, PDM pulses whose width encodes the direction, and
// the on-off-keyed backscatter envelope.

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rfchain/quantities.hpp"

namespace rfchain::lcadc {

struct LevelCrossingConfig {
  double lsb = 0.1;        // V between threshold levels
  double origin = 0.0;     // V of level 0
  double hysteresis = 0.0; // V, pushes the reversing threshold after an event

  void validate() const {
    if (!(lsb > 0.0)) throw std::invalid_argument("LevelCrossingConfig: lsb must be > 0");
    if (!(hysteresis >= 0.0 && hysteresis < lsb)) {
      throw std::invalid_argument("LevelCrossingConfig: hysteresis must be in [0, lsb)");
    }
  }
};

enum class Direction { up, down };

struct CrossingEvent {
  double time = 0.0;
  Direction direction = Direction::up;
};

/// One event per threshold crossing, with sub-sample timing by linear
/// interpolation. The quantizer tracks the band the signal currently sits
/// in; hysteresis moves the threshold that would immediately undo the last
/// event, suppressing chatter at a level.
inline std::vector<CrossingEvent> lc_sample(const Waveform& input,
                                            const LevelCrossingConfig& cfg) {
  input.validate();
  cfg.validate();
  std::vector<CrossingEvent> events;
  if (input.samples.size() < 2) return events;

  long q = static_cast<long>(std::floor((input.samples[0] - cfg.origin) / cfg.lsb));
  int last_dir = 0;  // +1 after an up event, -1 after down, 0 initially

  for (std::size_t i = 0; i + 1 < input.samples.size(); ++i) {
    const double x0 = input.samples[i];
    const double x1 = input.samples[i + 1];
    const double t0 = input.time_at(i);

    // A steep segment can cross several levels; walk them in order.
    for (;;) {
      double up_thr = cfg.origin + static_cast<double>(q + 1) * cfg.lsb;
      double down_thr = cfg.origin + static_cast<double>(q) * cfg.lsb;
      if (last_dir > 0) down_thr -= cfg.hysteresis;
      if (last_dir < 0) up_thr += cfg.hysteresis;

      if (x1 >= up_thr && x1 > x0) {
        const double frac = (up_thr - x0) / (x1 - x0);
        if (frac >= 0.0 && frac <= 1.0) {
          events.push_back({t0 + frac * input.sample_period, Direction::up});
          ++q;
          last_dir = +1;
          continue;
        }
      }
      if (x1 < down_thr && x1 < x0) {
        const double frac = (down_thr - x0) / (x1 - x0);
        if (frac >= 0.0 && frac <= 1.0) {
          events.push_back({t0 + frac * input.sample_period, Direction::down});
          --q;
          last_dir = -1;
          continue;
        }
      }
      break;
    }
  }
  return events;
}

struct PdmConfig {
  double t_up = 40e-9;      // s, pulse width for an upward crossing
  double t_down = 80e-9;    // s, pulse width for a downward crossing
  double carrier = 402e6;   // Hz, backscattered RF carrier
  double l_s = 32e-9;       // H, backscatter network (metadata)
  double c_s = 4.9e-12;     // F, backscatter network (metadata)
  // The measured hardware emits the short pulse for upward crossings; set
  // this to swap the mapping.
  bool invert_polarity = false;

  void validate() const {
    if (!(t_up > 0.0 && t_down > 0.0)) throw std::invalid_argument("PdmConfig: widths must be > 0");
    if (t_up == t_down) throw std::invalid_argument("PdmConfig: widths must differ");
    if (!(carrier > 0.0)) throw std::invalid_argument("PdmConfig: carrier must be > 0");
  }

  double width_for(Direction d) const {
    const bool up = d == Direction::up;
    return (up != invert_polarity) ? t_up : t_down;
  }
};

struct PdmPulse {
  double start = 0.0;
  double width = 0.0;
};

class PdmOverflowError : public std::runtime_error {
 public:
  PdmOverflowError(std::string msg, std::vector<std::size_t> dropped)
      : std::runtime_error(std::move(msg)), dropped_(std::move(dropped)) {}
  const std::vector<std::size_t>& dropped_events() const { return dropped_; }

 private:
  std::vector<std::size_t> dropped_;
};

/// One pulse per event. Events arriving before the previous pulse has ended
/// cannot be encoded; the error lists them.
inline std::vector<PdmPulse> pdm_encode(const std::vector<CrossingEvent>& events,
                                        const PdmConfig& cfg) {
  cfg.validate();
  std::vector<PdmPulse> pulses;
  pulses.reserve(events.size());
  std::vector<std::size_t> dropped;
  double busy_until = -1.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0 && events[i].time < events[i - 1].time) {
      throw std::invalid_argument("pdm_encode: events must be time ordered");
    }
    if (events[i].time < busy_until) {
      dropped.push_back(i);
      continue;
    }
    const double w = cfg.width_for(events[i].direction);
    pulses.push_back({events[i].time, w});
    busy_until = events[i].time + w;
  }
  if (!dropped.empty()) {
    std::ostringstream os;
    os << "pdm_encode: " << dropped.size() << " event(s) overlap the previous pulse";
    throw PdmOverflowError(os.str(), std::move(dropped));
  }
  return pulses;
}

/// Width-threshold decoder: the midpoint between the two pulse widths
/// recovers the direction exactly for every non-overflowing stream.
inline std::vector<Direction> pdm_decode(const std::vector<PdmPulse>& pulses,
                                         const PdmConfig& cfg) {
  cfg.validate();
  const double mid = 0.5 * (cfg.t_up + cfg.t_down);
  const bool short_is_up = (cfg.t_up < cfg.t_down) != cfg.invert_polarity;
  std::vector<Direction> out;
  out.reserve(pulses.size());
  for (const auto& p : pulses) {
    const bool is_short = p.width < mid;
    out.push_back(is_short == short_is_up ? Direction::up : Direction::down);
  }
  return out;
}

/// Unit-amplitude carrier gated by the pulse train (behavioral OOK).
inline Waveform backscatter_envelope(const std::vector<PdmPulse>& pulses, const PdmConfig& cfg,
                                     double sample_rate) {
  cfg.validate();
  if (sample_rate < 8.0 * cfg.carrier) {
    throw std::invalid_argument("backscatter_envelope: need sample_rate >= 8x carrier");
  }
  double t_end = 0.0;
  for (const auto& p : pulses) t_end = std::max(t_end, p.start + p.width);
  t_end += cfg.t_down;  // trailing margin

  Waveform w;
  w.sample_period = 1.0 / sample_rate;
  const auto n = static_cast<std::size_t>(std::llround(t_end * sample_rate)) + 1;
  w.samples.assign(n, 0.0);
  for (const auto& p : pulses) {
    const auto i0 = static_cast<std::size_t>(std::ceil(p.start * sample_rate));
    const auto i1 = std::min(n, static_cast<std::size_t>(std::ceil((p.start + p.width) * sample_rate)));
    for (std::size_t i = i0; i < i1; ++i) {
      const double t = w.time_at(i);
      w.samples[i] = std::sin(2.0 * pi * cfg.carrier * t);
    }
  }
  return w;
}

/// Exact (continuous-time) energy of the unit-amplitude envelope itself.
inline double envelope_energy(const std::vector<PdmPulse>& pulses) {
  double e = 0.0;
  for (const auto& p : pulses) e += p.width;
  return e;
}

}  // namespace rfchain::lcadc
