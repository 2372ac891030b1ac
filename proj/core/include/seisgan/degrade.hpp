#pragma once

#include <cstdint>
#include <vector>

#include "seisgan/volume.hpp"

namespace seisgan {

enum class NoiseMode {
  Amplitude,      // every sample gets additive uniform noise of fraction * peak amplitude
  PixelFraction,  // a fraction of samples gets additive uniform noise of full peak amplitude
};

// Symmetric Hamming-windowed sinc taps, normalized to unit DC gain.
// Cutoff is in Hz against the sampling rate 1000 / dt_ms.
std::vector<double> lowpass_taps(double cutoff_hz, double dt_ms, int tap_count = 257);

// Zero-phase FIR low-pass along the depth axis with reflected edges.
Volume lowpass_filter(const Volume& volume, double cutoff_hz, double dt_ms, int tap_count = 257);

// out[i] = clip(in[i] + u[i], -1, 1) with u ~ Uniform(-f*A, f*A), A = max |in|.
Volume add_uniform_noise(const Volume& volume, double noise_fraction, std::uint64_t seed,
                         NoiseMode mode = NoiseMode::Amplitude);

// The degradation recipe: low-pass then additive uniform noise.
Volume degrade(const Volume& volume, double cutoff_hz, double dt_ms, double noise_fraction,
               std::uint64_t seed, NoiseMode mode = NoiseMode::Amplitude);

}  // namespace seisgan
