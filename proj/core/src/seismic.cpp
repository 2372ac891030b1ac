#include "seisgan/seismic.hpp"

#include <cmath>
#include <numbers>

namespace seisgan {

std::vector<float> ricker_wavelet(double peak_hz, double dt_ms) {
  if (!(peak_hz > 0.0) || !(dt_ms > 0.0)) {
    throw ParamError("ricker wavelet needs positive peak frequency and sampling interval");
  }
  const double dt_s = dt_ms * 1e-3;
  // Envelope exp(-pi^2 f^2 t^2) falls below 1e-6 at |t| = sqrt(ln 1e6)/(pi f).
  const double half_span_s = std::sqrt(std::log(1e6)) / (std::numbers::pi * peak_hz);
  const int half_taps = std::max(1, static_cast<int>(std::ceil(half_span_s / dt_s)));
  std::vector<float> wavelet(2 * half_taps + 1);
  for (int i = -half_taps; i <= half_taps; ++i) {
    const double t = i * dt_s;
    const double arg = std::numbers::pi * peak_hz * t;
    const double a2 = arg * arg;
    wavelet[i + half_taps] = static_cast<float>((1.0 - 2.0 * a2) * std::exp(-a2));
  }
  return wavelet;
}

Volume synthesize_seismic(const EarthModel& model, double wavelet_peak_hz, double dt_ms) {
  model.check();
  if (!(dt_ms > 0.0)) {
    throw ParamError("dt_ms must be positive");
  }
  const double nyquist_hz = 500.0 / dt_ms;
  if (!(wavelet_peak_hz > 0.0) || wavelet_peak_hz >= nyquist_hz) {
    throw ParamError("wavelet peak " + std::to_string(wavelet_peak_hz) +
                     " Hz must lie in (0, " + std::to_string(nyquist_hz) + ") Hz");
  }

  const int depth = static_cast<int>(model.dims[0]);
  std::size_t traces = 1;
  for (std::size_t a = 1; a < model.dims.size(); ++a) traces *= model.dims[a];

  Volume out = Volume::zeros(model.dims, static_cast<float>(dt_ms));
  const std::vector<float> wavelet = ricker_wavelet(wavelet_peak_hz, dt_ms);
  const int half = (static_cast<int>(wavelet.size()) - 1) / 2;

  // The depth axis is the slow axis: trace t lives at stride `traces`.
  std::vector<double> reflectivity(depth);
  for (std::size_t t = 0; t < traces; ++t) {
    for (int i = 0; i < depth; ++i) {
      if (i + 1 < depth) {
        const double z0 = model.impedance[static_cast<std::size_t>(i) * traces + t];
        const double z1 = model.impedance[static_cast<std::size_t>(i + 1) * traces + t];
        reflectivity[i] = (z1 - z0) / (z1 + z0);
      } else {
        reflectivity[i] = 0.0;
      }
    }
    for (int i = 0; i < depth; ++i) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        const int j = i - k;
        if (j >= 0 && j < depth) {
          acc += reflectivity[j] * wavelet[k + half];
        }
      }
      out.samples[static_cast<std::size_t>(i) * traces + t] = static_cast<float>(acc);
    }
  }

  float peak = 0.0f;
  for (float v : out.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0f) {
    const float inv = 1.0f / peak;
    for (float& v : out.samples) v *= inv;
  }
  return out;
}

}  // namespace seisgan
