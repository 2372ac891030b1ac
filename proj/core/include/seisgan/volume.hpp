#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seisgan/errors.hpp"

namespace seisgan {

using Dims = std::vector<std::uint32_t>;

std::size_t dims_size(const Dims& dims);
std::string dims_str(const Dims& dims);

// A rank-2 (H,W) or rank-3 (D,H,W) grid of seismic amplitudes, normalized to
// [-1, 1]. Axis 0 is the depth/time axis. dt_ms is the sampling interval
// along that axis.
struct Volume {
  Dims dims;
  std::vector<float> samples;
  float dt_ms = 8.0f;

  std::size_t size() const { return samples.size(); }
  int rank() const { return static_cast<int>(dims.size()); }
  float& at(std::size_t flat) { return samples[flat]; }
  float at(std::size_t flat) const { return samples[flat]; }

  static Volume zeros(Dims dims, float dt_ms = 8.0f);
  void check() const;  // dims/sample count consistency
};

// Per-pixel conditioning channels: either K one-hot lithology channels
// (deterministic) or a single salt-probability channel (probabilistic).
// Values are stored channel-major: [C, spatial...].
struct ConditionField {
  enum class Mode : std::uint8_t { Deterministic = 0, Probabilistic = 1 };

  Mode mode = Mode::Probabilistic;
  std::uint32_t channels = 1;
  Dims dims;  // spatial dims, matching the paired Volume
  std::vector<float> values;

  std::size_t cell_count() const { return dims_size(dims); }
  void check() const;  // one-hot sums / probability range
};

const char* to_string(ConditionField::Mode mode);

}  // namespace seisgan
