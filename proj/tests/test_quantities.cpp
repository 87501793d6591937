#include <catch2/catch_amalgamated.hpp>

#include "rfchain/quantities.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace rfchain;
using Catch::Approx;

TEST_CASE("dbm to watts anchors", "[quantities]") {
  CHECK(dbm_to_watts({0.0}).value == Approx(1e-3).epsilon(1e-12));
  CHECK(dbm_to_watts({-20.0}).value == Approx(1e-5).epsilon(1e-12));
  // 10^(-0.4) mW evaluated with high-precision arithmetic
  CHECK(dbm_to_watts({-4.0}).value == Approx(3.981071705534972e-4).epsilon(1e-12));
  CHECK_THROWS_AS(dbm_to_watts({std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
}

TEST_CASE("dbm/watts round trip is the identity", "[quantities][property]") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> dbm(-60.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const double p = dbm(rng);
    const double back = watts_to_dbm(dbm_to_watts({p})).value;
    REQUIRE(back == Approx(p).epsilon(1e-12));
  }
  CHECK(watts_to_dbm({0.0}).value == -std::numeric_limits<double>::infinity());
}

TEST_CASE("tf_eval constants and dc behaviour", "[quantities]") {
  const double r_s = 5.0;
  const RationalTF constant = RationalTF::constant(r_s);
  CHECK(tf_eval(constant, 0.0).real() == Approx(r_s));
  CHECK(tf_eval(constant, 1e9).real() == Approx(r_s));

  // (R + sL) / (s^2 LC + s R C + 1) evaluates to R at dc
  const double l = 10e-9, c = 10e-12;
  const RationalTF tank({r_s, l}, {1.0, r_s * c, l * c});
  const Complex at_dc = tf_eval(tank, 0.0);
  CHECK(at_dc.real() == Approx(r_s).epsilon(1e-12));
  CHECK(at_dc.imag() == Approx(0.0).margin(1e-12));
}

TEST_CASE("tf_eval matches direct complex arithmetic", "[quantities]") {
  const double r_s = 5.0, l = 10e-9, c = 10e-12, f = 100e6;
  const RationalTF tank({r_s, l}, {1.0, r_s * c, l * c});
  const Complex s{0.0, 2.0 * pi * f};
  const Complex direct = (r_s + s * l) / (Complex{1.0, 0.0} -
      Complex{(2.0 * pi * f) * (2.0 * pi * f) * l * c, 0.0} + s * r_s * c);
  const Complex via_tf = tf_eval(tank, f);
  CHECK(std::abs(via_tf - direct) / std::abs(direct) < 1e-12);
}

TEST_CASE("tf_eval signals axis poles", "[quantities]") {
  const RationalTF integrator({1.0}, {0.0, 1.0});  // 1/s
  CHECK_THROWS_AS(tf_eval(integrator, 0.0), NonFiniteResultError);
  CHECK(std::abs(tf_eval(integrator, 1.0)) == Approx(1.0 / (2.0 * pi)));
}

TEST_CASE("tf product evaluates as product of evaluations", "[quantities][property]") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> coeff(0.1, 3.0);
  std::uniform_real_distribution<double> freq(0.01, 10.0);
  for (int i = 0; i < 300; ++i) {
    const RationalTF a({coeff(rng), coeff(rng)}, {coeff(rng), coeff(rng), coeff(rng)});
    const RationalTF b({coeff(rng), coeff(rng), coeff(rng)}, {coeff(rng), coeff(rng)});
    const double f = freq(rng);
    const Complex da = tf_eval(a, f);
    const Complex db = tf_eval(b, f);
    if (std::abs(da) < 1e-9 || std::abs(db) < 1e-9) continue;
    const Complex prod = tf_eval(a * b, f);
    REQUIRE(std::abs(prod - da * db) / std::abs(da * db) < 1e-9);
  }
}

TEST_CASE("psd of the zero waveform sits at the floor", "[quantities]") {
  Waveform w;
  w.sample_period = 1e-9;
  w.samples.assign(1024, 0.0);
  const Spectrum s = psd_estimate(w, 1.0 / w.duration());
  for (double b : s.bins_dbm) REQUIRE(b == psd_floor_dbm);
}

TEST_CASE("psd of a pure tone concentrates the analytic power", "[quantities]") {
  // 500 MHz tone, amplitude 0.25 V, bin-aligned sampling.
  const double fs = 16e9;
  const std::size_t n = 4096;
  const double df = fs / static_cast<double>(n);
  const double f_tone = 128.0 * df;  // 500 MHz
  REQUIRE(f_tone == Approx(500e6));
  const double amp = 0.25;
  Waveform w;
  w.sample_period = 1.0 / fs;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amp * std::sin(2.0 * pi * f_tone * w.time_at(i));
  }
  const Spectrum s = psd_estimate(w, 1.0 / w.duration());

  // dominant bin carries A^2 / (2*50)
  const double expected_w = amp * amp / (2.0 * 50.0);
  const double bin_power_w =
      1e-3 * std::pow(10.0, s.bins_dbm[128] / 10.0) * s.frequency_step / s.reference_bandwidth;
  const double err_db = std::abs(10.0 * std::log10(bin_power_w / expected_w));
  CHECK(err_db < 0.5);
}

TEST_CASE("psd is Parseval-consistent for band-limited waveforms", "[quantities][property]") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> amp(0.01, 1.0);
  std::uniform_int_distribution<int> bin(1, 200);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  const double fs = 4e9;
  const std::size_t n = 2048;
  for (int trial = 0; trial < 20; ++trial) {
    Waveform w;
    w.sample_period = 1.0 / fs;
    w.samples.assign(n, 0.0);
    for (int tone = 0; tone < 6; ++tone) {
      const double f = bin(rng) * fs / static_cast<double>(n);
      const double a = amp(rng);
      const double ph = phase(rng);
      for (std::size_t i = 0; i < n; ++i) {
        w.samples[i] += a * std::sin(2.0 * pi * f * w.time_at(i) + ph);
      }
    }
    const Spectrum s = psd_estimate(w, 1.0 / w.duration());
    const double direct = mean_square(w) / 50.0;
    const double integrated = integrate_spectrum_power(s);
    const double err_db = std::abs(10.0 * std::log10(integrated / direct));
    REQUIRE(err_db < 0.5);
  }
}

TEST_CASE("psd rejects waveforms shorter than one period", "[quantities]") {
  Waveform w;
  w.sample_period = 1e-9;
  w.samples.assign(100, 0.0);
  CHECK_THROWS_AS(psd_estimate(w, 1e6), std::invalid_argument);  // period 1 us > 100 ns
}
