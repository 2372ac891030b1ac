#include "seisgan/volume.hpp"

#include <sstream>

namespace seisgan {

std::size_t dims_size(const Dims& dims) {
  std::size_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return n;
}

std::string dims_str(const Dims& dims) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out << 'x';
    out << dims[i];
  }
  return out.str();
}

Volume Volume::zeros(Dims dims, float dt_ms) {
  Volume v;
  v.samples.assign(dims_size(dims), 0.0f);
  v.dims = std::move(dims);
  v.dt_ms = dt_ms;
  return v;
}

void Volume::check() const {
  if (dims.size() != 2 && dims.size() != 3) {
    throw ShapeError("volume rank must be 2 or 3, got dims " + dims_str(dims));
  }
  if (samples.size() != dims_size(dims)) {
    throw ShapeError("volume sample count " + std::to_string(samples.size()) +
                     " does not match dims " + dims_str(dims));
  }
}

void ConditionField::check() const {
  if (dims.size() != 2 && dims.size() != 3) {
    throw ShapeError("condition rank must be 2 or 3, got dims " + dims_str(dims));
  }
  const std::size_t cells = cell_count();
  if (values.size() != cells * channels) {
    throw ShapeError("condition value count " + std::to_string(values.size()) +
                     " does not match " + std::to_string(channels) + " channels over " +
                     dims_str(dims));
  }
  if (mode == Mode::Probabilistic) {
    if (channels != 1) {
      throw DataError("probabilistic condition must have a single channel, got " +
                      std::to_string(channels));
    }
    for (float v : values) {
      if (v < 0.0f || v > 1.0f) {
        throw DataError("probabilistic condition value " + std::to_string(v) +
                        " outside [0, 1]");
      }
    }
  } else {
    for (std::size_t p = 0; p < cells; ++p) {
      float sum = 0.0f;
      for (std::uint32_t c = 0; c < channels; ++c) sum += values[c * cells + p];
      if (sum < 1.0f - 1e-5f || sum > 1.0f + 1e-5f) {
        throw DataError("one-hot channel sum " + std::to_string(sum) + " at cell " +
                        std::to_string(p) + " is not 1");
      }
    }
  }
}

const char* to_string(ConditionField::Mode mode) {
  return mode == ConditionField::Mode::Deterministic ? "deterministic" : "probabilistic";
}

}  // namespace seisgan
