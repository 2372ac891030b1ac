#pragma once

#include <vector>

#include "seisgan/earth.hpp"
#include "seisgan/volume.hpp"

namespace seisgan {

// Zero-phase Ricker wavelet (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2) sampled
// at dt_ms, centered, odd length, unit peak at t = 0.
std::vector<float> ricker_wavelet(double peak_hz, double dt_ms);

// Convolves the impedance-contrast reflectivity along the depth axis with a
// Ricker wavelet and normalizes the result to unit peak amplitude. Plays the
// role of the ground-truth volume x.
Volume synthesize_seismic(const EarthModel& model, double wavelet_peak_hz, double dt_ms);

}  // namespace seisgan
