#pragma once

// Shared semantic types used across the toolkit: power units, complex
// impedances, rational transfer functions in the complex frequency variable,
// sampled waveforms and one-sided power spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfchain {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0;

/// Spectra are expressed in dBm per reference bandwidth across this load.
inline constexpr double psd_reference_load_ohm = 50.0;
/// Floor clamp keeps log-domain spectra finite and plottable.
inline constexpr double psd_floor_dbm = -200.0;

struct PowerDbm {
  double value = 0.0;  // dBm
};

struct PowerWatts {
  double value = 0.0;  // W, >= 0
};

inline PowerWatts dbm_to_watts(PowerDbm p) {
  if (!std::isfinite(p.value)) {
    throw std::invalid_argument("dbm_to_watts: non-finite input");
  }
  return {1e-3 * std::pow(10.0, p.value / 10.0)};
}

/// Zero watts maps to -inf dBm.
inline PowerDbm watts_to_dbm(PowerWatts p) {
  if (!(p.value >= 0.0)) {
    throw std::invalid_argument("watts_to_dbm: power must be >= 0");
  }
  return {10.0 * std::log10(p.value / 1e-3)};
}

struct ComplexImpedance {
  double resistance = 0.0;  // ohm
  double reactance = 0.0;   // ohm

  Complex value() const { return {resistance, reactance}; }
};

/// Signals evaluation hitting a pole on the jw axis (or any non-finite result).
class NonFiniteResultError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Drop exactly-zero leading powers only: coefficients of physical networks
// span many orders of magnitude, so magnitude-based trimming is unsafe.
inline void trim_trailing(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::vector<double> poly_add(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Complex poly_eval(const std::vector<double>& c, Complex s) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
  return acc;
}

}  // namespace detail

/// Rational transfer function with real coefficients stored in ascending
/// powers of the complex frequency variable. Complex arithmetic happens at
/// evaluation time only.
class RationalTF {
 public:
  RationalTF() : num_{0.0}, den_{1.0} {}

  RationalTF(std::vector<double> num, std::vector<double> den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty() || den_.empty()) {
      throw std::invalid_argument("RationalTF: empty coefficient vector");
    }
    detail::trim_trailing(num_);
    detail::trim_trailing(den_);
    bool den_zero = true;
    for (double v : den_) den_zero = den_zero && v == 0.0;
    if (den_zero) throw std::invalid_argument("RationalTF: zero denominator");
  }

  static RationalTF constant(double c) { return RationalTF({c}, {1.0}); }

  const std::vector<double>& numerator() const { return num_; }
  const std::vector<double>& denominator() const { return den_; }

  /// Evaluate at s = j*2*pi*f. Throws NonFiniteResultError on axis poles.
  Complex eval(double f_hz) const {
    const Complex s{0.0, 2.0 * pi * f_hz};
    const Complex n = detail::poly_eval(num_, s);
    const Complex d = detail::poly_eval(den_, s);
    if (std::abs(d) == 0.0) {
      throw NonFiniteResultError("RationalTF: pole at f = " + std::to_string(f_hz) + " Hz");
    }
    const Complex r = n / d;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
      throw NonFiniteResultError("RationalTF: non-finite value at f = " + std::to_string(f_hz));
    }
    return r;
  }

  RationalTF operator*(const RationalTF& o) const {
    return RationalTF(detail::poly_mul(num_, o.num_), detail::poly_mul(den_, o.den_));
  }

  RationalTF operator+(const RationalTF& o) const {
    auto n = detail::poly_add(detail::poly_mul(num_, o.den_), detail::poly_mul(o.num_, den_));
    return RationalTF(std::move(n), detail::poly_mul(den_, o.den_));
  }

  RationalTF reciprocal() const {
    bool num_zero = true;
    for (double v : num_) num_zero = num_zero && v == 0.0;
    if (num_zero) throw std::invalid_argument("RationalTF: reciprocal of zero");
    return RationalTF(den_, num_);
  }

  RationalTF scaled(double k) const {
    std::vector<double> n = num_;
    for (double& v : n) v *= k;
    return RationalTF(std::move(n), den_);
  }

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

inline Complex tf_eval(const RationalTF& tf, double f_hz) { return tf.eval(f_hz); }

/// Uniformly sampled real-valued signal (volts or amperes).
struct Waveform {
  double sample_period = 0.0;  // s
  std::vector<double> samples;
  double t0 = 0.0;

  std::size_t size() const { return samples.size(); }
  double duration() const { return sample_period * static_cast<double>(samples.size()); }
  double time_at(std::size_t i) const { return t0 + sample_period * static_cast<double>(i); }

  void validate() const {
    if (!(sample_period > 0.0)) throw std::invalid_argument("Waveform: sample period must be > 0");
    for (double v : samples) {
      if (!std::isfinite(v)) throw std::invalid_argument("Waveform: non-finite sample");
    }
  }
};

/// One-sided power spectral density, dBm per reference bandwidth.
struct Spectrum {
  double frequency_step = 0.0;       // Hz between bins
  std::vector<double> bins_dbm;      // bins_dbm[k] is density at k*frequency_step
  double reference_bandwidth = 1e6;  // Hz

  std::size_t size() const { return bins_dbm.size(); }
  double frequency_at(std::size_t k) const { return frequency_step * static_cast<double>(k); }
  double max_frequency() const {
    return bins_dbm.empty() ? 0.0 : frequency_at(bins_dbm.size() - 1);
  }

  /// Linear interpolation in dB between surrounding bins.
  double value_at(double f_hz) const {
    if (bins_dbm.empty()) throw std::invalid_argument("Spectrum: empty");
    if (f_hz < 0.0 || f_hz > max_frequency()) {
      throw std::invalid_argument("Spectrum: frequency out of range");
    }
    const double x = f_hz / frequency_step;
    const std::size_t k = std::min(static_cast<std::size_t>(x), bins_dbm.size() - 2);
    const double frac = x - static_cast<double>(k);
    if (bins_dbm.size() == 1) return bins_dbm[0];
    return bins_dbm[k] * (1.0 - frac) + bins_dbm[k + 1] * frac;
  }

  void validate() const {
    if (!(frequency_step > 0.0)) throw std::invalid_argument("Spectrum: frequency step must be > 0");
    if (!(reference_bandwidth > 0.0)) {
      throw std::invalid_argument("Spectrum: reference bandwidth must be > 0");
    }
  }
};

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_radix2(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (Complex& x : a) x /= static_cast<double>(n);
  }
}

inline void dft_naive(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n > 16384) {
    throw std::invalid_argument("dft: non power-of-two length > 16384, resample the waveform");
  }
  std::vector<Complex> out(n, Complex{0.0, 0.0});
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = sgn * 2.0 * pi * static_cast<double>(k) * static_cast<double>(t) /
                         static_cast<double>(n);
      out[k] += a[t] * Complex(std::cos(ang), std::sin(ang));
    }
  }
  if (inverse) {
    for (Complex& x : out) x /= static_cast<double>(n);
  }
  a = std::move(out);
}

inline void fourier(std::vector<Complex>& a, bool inverse) {
  if (is_pow2(a.size())) {
    fft_radix2(a, inverse);
  } else {
    dft_naive(a, inverse);
  }
}

}  // namespace detail

/// PSD of a periodic pulse train at repetition frequency `prf`.
///
/// The waveform must span at least one repetition period; the analysis
/// truncates to a whole number of periods so the windowless transform is
/// exactly Parseval-consistent. Bin values are power densities referred to
/// `ref_bw` across `r_load`, clamped at the -200 dBm floor.
inline Spectrum psd_estimate(const Waveform& w, double prf, double ref_bw = 1e6,
                             double r_load = psd_reference_load_ohm) {
  w.validate();
  if (!(prf > 0.0)) throw std::invalid_argument("psd_estimate: prf must be > 0");
  if (!(ref_bw > 0.0)) throw std::invalid_argument("psd_estimate: ref_bw must be > 0");
  if (!(r_load > 0.0)) throw std::invalid_argument("psd_estimate: r_load must be > 0");

  const double periods = w.duration() * prf;
  const auto whole = static_cast<std::size_t>(periods + 1e-9);
  if (whole < 1) {
    throw std::invalid_argument("psd_estimate: waveform shorter than one repetition period");
  }
  const auto n_use = static_cast<std::size_t>(
      std::llround(static_cast<double>(whole) / (prf * w.sample_period)));
  if (n_use < 2 || n_use > w.size()) {
    throw std::invalid_argument("psd_estimate: sample rate incommensurate with prf");
  }

  std::vector<Complex> x(n_use);
  for (std::size_t i = 0; i < n_use; ++i) x[i] = Complex(w.samples[i], 0.0);
  detail::fourier(x, false);

  const double df = 1.0 / (static_cast<double>(n_use) * w.sample_period);
  const std::size_t n_half = n_use / 2;
  const double n_sq = static_cast<double>(n_use) * static_cast<double>(n_use);

  Spectrum s;
  s.frequency_step = df;
  s.reference_bandwidth = ref_bw;
  s.bins_dbm.resize(n_half + 1);
  for (std::size_t k = 0; k <= n_half; ++k) {
    const double amp2 = std::norm(x[k]) / n_sq;
    const bool single = (k == 0) || (n_use % 2 == 0 && k == n_half);
    const double power_w = (single ? 1.0 : 2.0) * amp2 / r_load;
    const double density_per_refbw = power_w / df * ref_bw;
    const double dbm = 10.0 * std::log10(density_per_refbw / 1e-3);
    s.bins_dbm[k] = std::max(dbm, psd_floor_dbm);
  }
  return s;
}

/// Total power implied by a spectrum (inverse of the density normalization).
inline double integrate_spectrum_power(const Spectrum& s) {
  double total = 0.0;
  for (double b : s.bins_dbm) {
    total += 1e-3 * std::pow(10.0, b / 10.0) * s.frequency_step / s.reference_bandwidth;
  }
  return total;
}

inline double mean_square(const Waveform& w) {
  double acc = 0.0;
  for (double v : w.samples) acc += v * v;
  return w.samples.empty() ? 0.0 : acc / static_cast<double>(w.samples.size());
}

}  // namespace rfchain
