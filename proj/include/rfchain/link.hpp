#pragma once

// Two-ray propagation: free-space path plus a single ground reflection with
// a real reflection coefficient, applied per-bin to a transmitted PSD.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "rfchain/quantities.hpp"

namespace rfchain::link {

struct LinkGeometry {
  double distance = 1.0;    // m, horizontal separation
  double height = 1.0;      // m, common antenna height
  double reflection = -1.0; // real ground reflection coefficient

  void validate() const {
    if (!(distance > 0.0 && height > 0.0)) {
      throw std::invalid_argument("LinkGeometry: distance and height must be > 0");
    }
    if (!(std::abs(reflection) <= 1.0)) {
      throw std::invalid_argument("LinkGeometry: |reflection| must be <= 1");
    }
  }
};

inline double friis_gain(double distance, double f_hz) {
  const double lambda = speed_of_light / f_hz;
  const double a = lambda / (4.0 * pi * distance);
  return a * a;
}

/// |H|^2 with H = (lambda/4pi)(e^{-jk r1}/r1 + G e^{-jk r2}/r2); equal
/// transmitter/receiver heights, unity-gain isotropic antennas.
inline double two_ray_gain(const LinkGeometry& g, double f_hz) {
  g.validate();
  if (!(f_hz > 0.0)) throw std::invalid_argument("two_ray_gain: frequency must be > 0");
  const double lambda = speed_of_light / f_hz;
  const double k = 2.0 * pi / lambda;
  const double r1 = g.distance;
  const double r2 = std::sqrt(g.distance * g.distance + 4.0 * g.height * g.height);
  const Complex direct = std::polar(1.0 / r1, -k * r1);
  const Complex ground = std::polar(g.reflection / r2, -k * r2);
  const double scale = lambda / (4.0 * pi);
  return std::norm(scale * (direct + ground));
}

/// Phasor-magnitude ceiling on the two-ray gain (triangle inequality).
inline double two_ray_gain_bound(const LinkGeometry& g, double f_hz) {
  const double lambda = speed_of_light / f_hz;
  const double r2 = std::sqrt(g.distance * g.distance + 4.0 * g.height * g.height);
  const double a = lambda / (4.0 * pi) * (1.0 / g.distance + std::abs(g.reflection) / r2);
  return a * a;
}

/// Apply the two-ray gain bin by bin. The optional matching spectrum is a
/// multiplicative correction in dB and must share the grid exactly.
inline Spectrum received_psd(const Spectrum& tx, const LinkGeometry& g,
                             const Spectrum* matching = nullptr) {
  tx.validate();
  g.validate();
  if (matching != nullptr) {
    if (matching->size() != tx.size() || matching->frequency_step != tx.frequency_step ||
        matching->reference_bandwidth != tx.reference_bandwidth) {
      throw std::invalid_argument("received_psd: matching spectrum grid mismatch");
    }
  }
  Spectrum out = tx;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double f = out.frequency_at(k);
    double v = psd_floor_dbm;
    if (f > 0.0) {
      const double gain = two_ray_gain(g, f);
      v = tx.bins_dbm[k] + 10.0 * std::log10(gain);
      if (matching != nullptr) v += matching->bins_dbm[k];
    }
    out.bins_dbm[k] = std::max(v, psd_floor_dbm);
  }
  return out;
}

struct SpectrumPeak {
  double dbm = psd_floor_dbm;
  double frequency = 0.0;
};

inline SpectrumPeak peak(const Spectrum& s) {
  SpectrumPeak p;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.bins_dbm[k] > p.dbm) {
      p.dbm = s.bins_dbm[k];
      p.frequency = s.frequency_at(k);
    }
  }
  return p;
}

}  // namespace rfchain::link
