#include "seisgan/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seisgan/rng.hpp"

namespace seisgan {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Mirror an out-of-range index about the edges (period 2*(n-1)), never
// duplicating the edge sample.
int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i = ((i % period) + period) % period;
  return i < n ? i : period - i;
}

}  // namespace

std::vector<double> lowpass_taps(double cutoff_hz, double dt_ms, int tap_count) {
  if (!(dt_ms > 0.0)) {
    throw ParamError("dt_ms must be positive");
  }
  const double nyquist_hz = 500.0 / dt_ms;
  if (!(cutoff_hz > 0.0) || cutoff_hz >= nyquist_hz) {
    throw ParamError("cutoff " + std::to_string(cutoff_hz) + " Hz must lie in (0, " +
                     std::to_string(nyquist_hz) + ") Hz (Nyquist for dt " +
                     std::to_string(dt_ms) + " ms)");
  }
  if (tap_count < 3 || tap_count % 2 == 0) {
    throw ParamError("tap count must be odd and >= 3, got " + std::to_string(tap_count));
  }
  const double fc = cutoff_hz / (1000.0 / dt_ms);  // cycles per sample
  const int mid = (tap_count - 1) / 2;
  std::vector<double> taps(tap_count);
  double sum = 0.0;
  for (int n = 0; n < tap_count; ++n) {
    const double hamming = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (tap_count - 1));
    taps[n] = 2.0 * fc * sinc(2.0 * fc * (n - mid)) * hamming;
    sum += taps[n];
  }
  for (double& t : taps) t /= sum;  // exact unit gain at DC
  return taps;
}

Volume lowpass_filter(const Volume& volume, double cutoff_hz, double dt_ms, int tap_count) {
  volume.check();
  const std::vector<double> taps = lowpass_taps(cutoff_hz, dt_ms, tap_count);
  const int mid = (tap_count - 1) / 2;

  const int depth = static_cast<int>(volume.dims[0]);
  std::size_t traces = 1;
  for (std::size_t a = 1; a < volume.dims.size(); ++a) traces *= volume.dims[a];

  Volume out = volume;
  std::vector<double> trace(depth);
  for (std::size_t t = 0; t < traces; ++t) {
    for (int i = 0; i < depth; ++i) {
      trace[i] = volume.samples[static_cast<std::size_t>(i) * traces + t];
    }
    for (int i = 0; i < depth; ++i) {
      double acc = 0.0;
      for (int k = 0; k < tap_count; ++k) {
        acc += taps[k] * trace[reflect_index(i + k - mid, depth)];
      }
      out.samples[static_cast<std::size_t>(i) * traces + t] = static_cast<float>(acc);
    }
  }
  return out;
}

Volume add_uniform_noise(const Volume& volume, double noise_fraction, std::uint64_t seed,
                         NoiseMode mode) {
  volume.check();
  if (noise_fraction < 0.0 || noise_fraction > 1.0) {
    throw ParamError("noise fraction must be in [0, 1], got " + std::to_string(noise_fraction));
  }
  Volume out = volume;
  if (noise_fraction == 0.0) return out;

  float peak = 0.0f;
  for (float v : volume.samples) peak = std::max(peak, std::abs(v));
  Rng rng(seed);
  if (mode == NoiseMode::Amplitude) {
    const double amp = noise_fraction * peak;
    for (float& v : out.samples) {
      v = std::clamp(v + static_cast<float>(rng.uniform(-amp, amp)), -1.0f, 1.0f);
    }
  } else {
    // A fraction of samples corrupted with full-amplitude uniform noise.
    const double amp = peak;
    for (float& v : out.samples) {
      const bool corrupt = rng.uniform() < noise_fraction;
      const double u = rng.uniform(-amp, amp);
      if (corrupt) {
        v = std::clamp(v + static_cast<float>(u), -1.0f, 1.0f);
      }
    }
  }
  return out;
}

Volume degrade(const Volume& volume, double cutoff_hz, double dt_ms, double noise_fraction,
               std::uint64_t seed, NoiseMode mode) {
  return add_uniform_noise(lowpass_filter(volume, cutoff_hz, dt_ms), noise_fraction, seed, mode);
}

}  // namespace seisgan
