#pragma once

#include <optional>
#include <string>

#include "seisgan/volume.hpp"

namespace seisgan {

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
};

// Window defaults per rank: 11x11 sigma 1.5 for rank 2, 7x7x7 sigma 1.5 for rank 3.
SsimOptions default_ssim_options(int rank);

// 10 log10(R^2 / MSE); +infinity when the volumes are identical.
double psnr(const Volume& ref, const Volume& test, double data_range = 2.0);

// Mean of the Gaussian-windowed SSIM map over all valid window positions,
// C1 = (0.01 R)^2, C2 = (0.03 R)^2.
double ssim(const Volume& ref, const Volume& test, double data_range = 2.0,
            std::optional<SsimOptions> options = std::nullopt);

// Rank-3 alternative: mean of 2D SSIM over depth-axis slices.
double ssim_slice_averaged(const Volume& ref, const Volume& test, double data_range = 2.0);

// Five-scale MS-SSIM with weights (0.0448, 0.2856, 0.3001, 0.2363, 0.1333),
// 2x average-pool downsampling, contrast-structure at every scale and
// luminance at the coarsest. When fewer than five scales fit the window
// constraint, the weights truncate and renormalize to sum 1. Throws
// ParamError when fewer than two scales fit.
double ms_ssim(const Volume& ref, const Volume& test, double data_range = 2.0);

// Number of feasible MS-SSIM scales for a volume (capped at 5).
int ms_ssim_scales(const Volume& v);

// 100 * (value - baseline) / baseline.
double percent_gain(double baseline, double value);

struct MetricsReport {
  double psnr_db = 0.0;  // +infinity when inputs are identical
  double ssim = 0.0;
  std::optional<double> ms_ssim;
  std::string ms_ssim_reason;  // set when ms_ssim is absent
  double data_range = 2.0;
};

MetricsReport evaluate(const Volume& ref, const Volume& test, double data_range = 2.0,
                       bool slice_averaged_3d = false);

// JSON schema: {"psnr_db": number|"inf", "ssim": number,
//               "ms_ssim": number|null, "data_range": number}
std::string report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const std::string& text);

}  // namespace seisgan
