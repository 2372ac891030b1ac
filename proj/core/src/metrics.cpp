#include "seisgan/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "json.hpp"

namespace seisgan {

SsimOptions default_ssim_options(int rank) {
  if (rank == 3) return {7, 1.5};
  return {11, 1.5};
}

double psnr(const Volume& ref, const Volume& test, double data_range) {
  ref.check();
  test.check();
  if (ref.dims != test.dims) {
    throw ShapeError("psnr: dims differ, " + dims_str(ref.dims) + " vs " + dims_str(test.dims));
  }
  if (!(data_range > 0.0)) {
    throw ParamError("data range must be positive");
  }
  double mse = 0.0;
  for (std::size_t i = 0; i < ref.samples.size(); ++i) {
    const double d = static_cast<double>(ref.samples[i]) - test.samples[i];
    mse += d * d;
  }
  mse /= static_cast<double>(ref.samples.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(data_range * data_range / mse);
}

namespace {

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(size);
  const double mid = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = (i - mid) / sigma;
    k[i] = std::exp(-0.5 * d * d);
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// 'valid' correlation along one axis of a dense C-order grid.
std::vector<double> filter_axis_valid(const std::vector<double>& grid,
                                      const std::vector<int>& dims, std::size_t axis,
                                      const std::vector<double>& kernel,
                                      std::vector<int>& out_dims) {
  const int extent = dims[axis];
  const int ksize = static_cast<int>(kernel.size());
  const int out_extent = extent - ksize + 1;
  out_dims = dims;
  out_dims[axis] = out_extent;

  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  std::size_t outer = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= dims[a];

  std::vector<double> out(outer * static_cast<std::size_t>(out_extent) * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* src = grid.data() + o * extent * inner;
    double* dst = out.data() + o * out_extent * inner;
    for (int p = 0; p < out_extent; ++p) {
      for (std::size_t i = 0; i < inner; ++i) {
        double acc = 0.0;
        for (int k = 0; k < ksize; ++k) {
          acc += kernel[k] * src[(static_cast<std::size_t>(p + k)) * inner + i];
        }
        dst[static_cast<std::size_t>(p) * inner + i] = acc;
      }
    }
  }
  return out;
}

std::vector<double> filter_valid(const std::vector<double>& grid, std::vector<int> dims,
                                 const std::vector<double>& kernel, std::vector<int>& out_dims) {
  std::vector<double> cur = grid;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    std::vector<int> next_dims;
    cur = filter_axis_valid(cur, dims, axis, kernel, next_dims);
    dims = next_dims;
  }
  out_dims = dims;
  return cur;
}

struct SsimMeans {
  double ssim = 0.0;       // mean of l * cs over window positions
  double contrast = 0.0;   // mean of cs
  double luminance = 0.0;  // mean of l
};

SsimMeans ssim_means(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<int>& dims, const SsimOptions& opt, double data_range) {
  for (int d : dims) {
    if (d < opt.window) {
      throw ParamError("image extent " + std::to_string(d) + " smaller than SSIM window " +
                       std::to_string(opt.window));
    }
  }
  const std::vector<double> kernel = gaussian_kernel(opt.window, opt.sigma);
  const double c1 = 0.01 * data_range * 0.01 * data_range;
  const double c2 = 0.03 * data_range * 0.03 * data_range;

  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  std::vector<int> out_dims;
  const std::vector<double> mu_x = filter_valid(x, dims, kernel, out_dims);
  const std::vector<double> mu_y = filter_valid(y, dims, kernel, out_dims);
  const std::vector<double> e_xx = filter_valid(xx, dims, kernel, out_dims);
  const std::vector<double> e_yy = filter_valid(yy, dims, kernel, out_dims);
  const std::vector<double> e_xy = filter_valid(xy, dims, kernel, out_dims);

  SsimMeans means;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i], my = mu_y[i];
    const double vx = e_xx[i] - mx * mx;
    const double vy = e_yy[i] - my * my;
    const double cov = e_xy[i] - mx * my;
    const double l = (2.0 * mx * my + c1) / (mx * mx + my * my + c1);
    const double cs = (2.0 * cov + c2) / (vx + vy + c2);
    means.ssim += l * cs;
    means.contrast += cs;
    means.luminance += l;
  }
  const double n = static_cast<double>(mu_x.size());
  means.ssim /= n;
  means.contrast /= n;
  means.luminance /= n;
  return means;
}

std::vector<double> to_double(const std::vector<float>& v) {
  return std::vector<double>(v.begin(), v.end());
}

std::vector<int> to_int_dims(const Dims& dims) {
  return std::vector<int>(dims.begin(), dims.end());
}

// 2x average pooling along every axis, truncating odd remainders.
std::vector<double> downsample2(const std::vector<double>& grid, const std::vector<int>& dims,
                                std::vector<int>& out_dims) {
  out_dims.resize(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a) out_dims[a] = dims[a] / 2;
  std::vector<double> out(
      static_cast<std::size_t>(std::max(1, out_dims[0])) *
      (dims.size() > 1 ? static_cast<std::size_t>(std::max(1, out_dims[1])) : 1) *
      (dims.size() > 2 ? static_cast<std::size_t>(std::max(1, out_dims[2])) : 1));
  if (dims.size() == 2) {
    const int oh = out_dims[0], ow = out_dims[1];
    const int w = dims[1];
    for (int i = 0; i < oh; ++i) {
      for (int j = 0; j < ow; ++j) {
        const std::size_t s = static_cast<std::size_t>(2 * i) * w + 2 * j;
        out[static_cast<std::size_t>(i) * ow + j] =
            0.25 * (grid[s] + grid[s + 1] + grid[s + w] + grid[s + w + 1]);
      }
    }
  } else {
    const int od = out_dims[0], oh = out_dims[1], ow = out_dims[2];
    const int h = dims[1], w = dims[2];
    for (int i = 0; i < od; ++i) {
      for (int j = 0; j < oh; ++j) {
        for (int k = 0; k < ow; ++k) {
          double acc = 0.0;
          for (int di = 0; di < 2; ++di) {
            for (int dj = 0; dj < 2; ++dj) {
              for (int dk = 0; dk < 2; ++dk) {
                acc += grid[((static_cast<std::size_t>(2 * i + di) * h) + 2 * j + dj) * w + 2 * k +
                            dk];
              }
            }
          }
          out[(static_cast<std::size_t>(i) * oh + j) * ow + k] = acc / 8.0;
        }
      }
    }
  }
  return out;
}

constexpr std::array<double, 5> kMsSsimWeights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

int feasible_scales(const Dims& dims, int window) {
  int min_dim = static_cast<int>(*std::min_element(dims.begin(), dims.end()));
  int scales = 0;
  while (scales < 5 && min_dim >= window) {
    ++scales;
    min_dim /= 2;
  }
  return scales;
}

}  // namespace

double ssim(const Volume& ref, const Volume& test, double data_range,
            std::optional<SsimOptions> options) {
  ref.check();
  test.check();
  if (ref.dims != test.dims) {
    throw ShapeError("ssim: dims differ, " + dims_str(ref.dims) + " vs " + dims_str(test.dims));
  }
  const SsimOptions opt = options.value_or(default_ssim_options(ref.rank()));
  return ssim_means(to_double(ref.samples), to_double(test.samples), to_int_dims(ref.dims), opt,
                    data_range)
      .ssim;
}

double ssim_slice_averaged(const Volume& ref, const Volume& test, double data_range) {
  ref.check();
  test.check();
  if (ref.dims != test.dims) {
    throw ShapeError("ssim: dims differ, " + dims_str(ref.dims) + " vs " + dims_str(test.dims));
  }
  if (ref.rank() != 3) {
    throw ParamError("slice-averaged SSIM requires a rank-3 volume");
  }
  const SsimOptions opt = default_ssim_options(2);
  const std::size_t slice_cells = static_cast<std::size_t>(ref.dims[1]) * ref.dims[2];
  const std::vector<int> slice_dims{static_cast<int>(ref.dims[1]), static_cast<int>(ref.dims[2])};
  double acc = 0.0;
  for (std::uint32_t s = 0; s < ref.dims[0]; ++s) {
    std::vector<double> a(ref.samples.begin() + s * slice_cells,
                          ref.samples.begin() + (s + 1) * slice_cells);
    std::vector<double> b(test.samples.begin() + s * slice_cells,
                          test.samples.begin() + (s + 1) * slice_cells);
    acc += ssim_means(a, b, slice_dims, opt, data_range).ssim;
  }
  return acc / ref.dims[0];
}

int ms_ssim_scales(const Volume& v) {
  v.check();
  return feasible_scales(v.dims, default_ssim_options(v.rank()).window);
}

double ms_ssim(const Volume& ref, const Volume& test, double data_range) {
  ref.check();
  test.check();
  if (ref.dims != test.dims) {
    throw ShapeError("ms_ssim: dims differ, " + dims_str(ref.dims) + " vs " +
                     dims_str(test.dims));
  }
  const SsimOptions opt = default_ssim_options(ref.rank());
  const int scales = feasible_scales(ref.dims, opt.window);
  if (scales < 2) {
    throw ParamError("ms_ssim needs at least 2 feasible scales for dims " + dims_str(ref.dims) +
                     " (window " + std::to_string(opt.window) + "); use ssim instead");
  }

  double weight_sum = 0.0;
  for (int s = 0; s < scales; ++s) weight_sum += kMsSsimWeights[s];

  std::vector<double> x = to_double(ref.samples);
  std::vector<double> y = to_double(test.samples);
  std::vector<int> dims = to_int_dims(ref.dims);

  double result = 1.0;
  for (int s = 0; s < scales; ++s) {
    const SsimMeans means = ssim_means(x, y, dims, opt, data_range);
    const double w = kMsSsimWeights[s] / weight_sum;
    if (s + 1 < scales) {
      result *= std::pow(std::max(means.contrast, 0.0), w);
      std::vector<int> next_dims;
      x = downsample2(x, dims, next_dims);
      y = downsample2(y, dims, next_dims);
      dims = next_dims;
    } else {
      result *= std::pow(std::max(means.contrast, 0.0), w) *
                std::pow(std::max(means.luminance, 0.0), w);
    }
  }
  return result;
}

double percent_gain(double baseline, double value) {
  if (baseline == 0.0) {
    throw ParamError("percent gain is undefined for a zero baseline");
  }
  return 100.0 * (value - baseline) / baseline;
}

MetricsReport evaluate(const Volume& ref, const Volume& test, double data_range,
                       bool slice_averaged_3d) {
  MetricsReport report;
  report.data_range = data_range;
  report.psnr_db = psnr(ref, test, data_range);
  report.ssim = (slice_averaged_3d && ref.rank() == 3)
                    ? ssim_slice_averaged(ref, test, data_range)
                    : ssim(ref, test, data_range);
  try {
    report.ms_ssim = ms_ssim(ref, test, data_range);
  } catch (const ParamError& e) {
    report.ms_ssim_reason = e.what();
  }
  return report;
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::json j;
  if (std::isinf(report.psnr_db)) {
    j["psnr_db"] = "inf";
  } else {
    j["psnr_db"] = report.psnr_db;
  }
  j["ssim"] = report.ssim;
  if (report.ms_ssim) {
    j["ms_ssim"] = *report.ms_ssim;
  } else {
    j["ms_ssim"] = nullptr;
  }
  j["data_range"] = report.data_range;
  return j.dump(2) + "\n";
}

MetricsReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid metrics report JSON: ") + e.what());
  }
  MetricsReport report;
  try {
    if (j.at("psnr_db").is_string()) {
      if (j.at("psnr_db").get<std::string>() != "inf") {
        throw ConfigError("psnr_db must be a number or \"inf\"");
      }
      report.psnr_db = std::numeric_limits<double>::infinity();
    } else {
      report.psnr_db = j.at("psnr_db").get<double>();
    }
    report.ssim = j.at("ssim").get<double>();
    if (!j.at("ms_ssim").is_null()) {
      report.ms_ssim = j.at("ms_ssim").get<double>();
    }
    report.data_range = j.at("data_range").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid metrics report JSON: ") + e.what());
  }
  return report;
}

}  // namespace seisgan
