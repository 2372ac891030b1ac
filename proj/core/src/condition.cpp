#include "seisgan/condition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seisgan {

namespace {

// Separable Gaussian blur along one axis with edge reflection.
void blur_axis(std::vector<float>& grid, const Dims& dims, std::size_t axis, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * (k / sigma) * (k / sigma));
    sum += kernel[k + radius];
  }
  for (double& k : kernel) k /= sum;

  const int extent = static_cast<int>(dims[axis]);
  std::size_t inner = 1;  // stride of the blurred axis
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  std::size_t outer = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= dims[a];

  std::vector<double> line(extent);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * extent * inner + i;
      for (int p = 0; p < extent; ++p) line[p] = grid[base + static_cast<std::size_t>(p) * inner];
      for (int p = 0; p < extent; ++p) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          int q = p + k;
          if (extent > 1) {
            const int period = 2 * (extent - 1);
            q = ((q % period) + period) % period;
            if (q >= extent) q = period - q;
          } else {
            q = 0;
          }
          acc += kernel[k + radius] * line[q];
        }
        grid[base + static_cast<std::size_t>(p) * inner] = static_cast<float>(acc);
      }
    }
  }
}

}  // namespace

ConditionField encode_condition(const EarthModel& model, ConditionField::Mode mode,
                                double blur_sigma) {
  model.check();
  if (blur_sigma < 0.0) {
    throw ParamError("blur sigma must be non-negative");
  }
  ConditionField field;
  field.mode = mode;
  field.dims = model.dims;
  const std::size_t cells = model.size();

  if (mode == ConditionField::Mode::Deterministic) {
    field.channels = model.class_count;
    field.values.assign(static_cast<std::size_t>(model.class_count) * cells, 0.0f);
    for (std::size_t p = 0; p < cells; ++p) {
      field.values[static_cast<std::size_t>(model.classes[p]) * cells + p] = 1.0f;
    }
  } else {
    field.channels = 1;
    field.values.assign(cells, 0.0f);
    for (std::size_t p = 0; p < cells; ++p) {
      if (model.classes[p] == model.salt_class) field.values[p] = 1.0f;
    }
    if (blur_sigma > 0.0) {
      for (std::size_t axis = 0; axis < model.dims.size(); ++axis) {
        blur_axis(field.values, model.dims, axis, blur_sigma);
      }
      for (float& v : field.values) v = std::clamp(v, 0.0f, 1.0f);
    }
  }
  return field;
}

}  // namespace seisgan
