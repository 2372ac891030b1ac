#include "seisgan/earth.hpp"

#include <cmath>
#include <numbers>

#include "seisgan/rng.hpp"

namespace seisgan {

void EarthModel::check() const {
  if (dims.size() != 2 && dims.size() != 3) {
    throw ShapeError("earth model rank must be 2 or 3, got dims " + dims_str(dims));
  }
  if (classes.size() != dims_size(dims) || impedance.size() != classes.size()) {
    throw ShapeError("earth model grids do not match dims " + dims_str(dims));
  }
  for (std::uint16_t c : classes) {
    if (c >= class_count) {
      throw DataError("class id " + std::to_string(c) + " outside [0, " +
                      std::to_string(class_count) + ")");
    }
  }
  for (float z : impedance) {
    if (!(z > 0.0f)) {
      throw DataError("non-positive impedance " + std::to_string(z));
    }
  }
}

EarthModel generate_earth_model(const EarthModelConfig& config, std::uint64_t seed) {
  if (config.dims.size() != 2 && config.dims.size() != 3) {
    throw ParamError("earth model dims must be rank 2 or 3, got " + dims_str(config.dims));
  }
  for (std::uint32_t d : config.dims) {
    if (d < 1) throw ParamError("earth model dims must be positive");
  }
  if (config.class_count < 2 || config.class_count > 0xffff) {
    throw ParamError("class count must be in [2, 65535], got " +
                     std::to_string(config.class_count));
  }
  if (config.min_layers < 1 || config.max_layers < config.min_layers) {
    throw ParamError("invalid layer count range");
  }
  const int depth_extent = static_cast<int>(config.dims[0]);
  if (depth_extent < 2 * config.max_layers) {
    throw ParamError("depth extent " + std::to_string(depth_extent) +
                     " too small for up to " + std::to_string(config.max_layers) +
                     " layers (needs >= 2 cells per layer)");
  }
  if (config.salt_blob_count < 0) {
    throw ParamError("salt blob count must be non-negative");
  }
  if (!(config.min_impedance > 0.0) || config.max_impedance <= config.min_impedance) {
    throw ParamError("impedance band must satisfy 0 < min < max");
  }

  Rng rng(seed);
  const int K = config.class_count;
  const int salt = K - 1;

  EarthModel model;
  model.dims = config.dims;
  model.class_count = static_cast<std::uint16_t>(K);
  model.salt_class = static_cast<std::uint16_t>(salt);
  const std::size_t cells = dims_size(config.dims);
  model.classes.assign(cells, 0);
  model.impedance.assign(cells, 1.0f);

  const bool rank3 = config.dims.size() == 3;
  const int lat1 = static_cast<int>(config.dims[1]);
  const int lat2 = rank3 ? static_cast<int>(config.dims[2]) : 1;

  const int layer_count =
      static_cast<int>(rng.uniform_int(config.min_layers, config.max_layers));

  // Interface b sits near b*H/L, jittered, then folded sinusoidally across
  // the lateral extent.
  struct Interface {
    double base;
    double freq1, freq2, phase;
  };
  const double spacing = static_cast<double>(depth_extent) / layer_count;
  std::vector<Interface> interfaces;
  for (int b = 1; b < layer_count; ++b) {
    Interface f;
    f.base = b * spacing + rng.uniform(-0.3, 0.3) * spacing;
    f.freq1 = rng.uniform(0.5, 2.0);
    f.freq2 = rng.uniform(0.5, 2.0);
    f.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    interfaces.push_back(f);
  }

  // Per-layer lithology (never salt) and impedance from its class band.
  const int nonsalt = K - 1;
  const double band = (config.max_impedance - config.min_impedance) / K;
  std::vector<std::uint16_t> layer_class(layer_count);
  std::vector<float> layer_impedance(layer_count);
  int prev = -1;
  for (int l = 0; l < layer_count; ++l) {
    int c;
    if (prev >= 0 && nonsalt >= 2) {
      c = (prev + 1 + static_cast<int>(rng.uniform_int(0, nonsalt - 2))) % nonsalt;
    } else {
      c = static_cast<int>(rng.uniform_int(0, nonsalt - 1));
    }
    prev = c;
    layer_class[l] = static_cast<std::uint16_t>(c);
    const double lo = config.min_impedance + c * band;
    layer_impedance[l] = static_cast<float>(rng.uniform(lo, lo + band));
  }

  const double fold = config.fold_amplitude;
  auto interface_depth = [&](const Interface& f, int u1, int u2) {
    double arg = f.phase;
    arg += 2.0 * std::numbers::pi * f.freq1 * (lat1 > 1 ? static_cast<double>(u1) / lat1 : 0.0);
    if (rank3) {
      arg += 2.0 * std::numbers::pi * f.freq2 * (lat2 > 1 ? static_cast<double>(u2) / lat2 : 0.0);
    }
    return f.base + fold * std::sin(arg);
  };

  for (int u1 = 0; u1 < lat1; ++u1) {
    for (int u2 = 0; u2 < lat2; ++u2) {
      for (int d = 0; d < depth_extent; ++d) {
        int layer = 0;
        for (const Interface& f : interfaces) {
          if (interface_depth(f, u1, u2) <= d) ++layer;
        }
        const std::size_t idx =
            rank3 ? (static_cast<std::size_t>(d) * lat1 + u1) * lat2 + u2
                  : static_cast<std::size_t>(d) * lat1 + u1;
        model.classes[idx] = layer_class[layer];
        model.impedance[idx] = layer_impedance[layer];
      }
    }
  }

  // Salt blobs: axis-aligned ellipsoids stamped over the layering. Salt
  // impedance comes from the top band.
  const double salt_lo = config.min_impedance + salt * band;
  for (int blob = 0; blob < config.salt_blob_count; ++blob) {
    std::vector<double> center(config.dims.size());
    std::vector<double> semi(config.dims.size());
    for (std::size_t a = 0; a < config.dims.size(); ++a) {
      const double ext = static_cast<double>(config.dims[a]);
      center[a] = rng.uniform(0.0, ext - 1.0);
      semi[a] = std::max(1.0, rng.uniform(config.min_blob_radius_frac,
                                          config.max_blob_radius_frac) * ext);
    }
    const float imp = static_cast<float>(rng.uniform(salt_lo, salt_lo + band));
    for (int d = 0; d < depth_extent; ++d) {
      for (int u1 = 0; u1 < lat1; ++u1) {
        for (int u2 = 0; u2 < lat2; ++u2) {
          const double dd = (d - center[0]) / semi[0];
          const double d1 = (u1 - center[1]) / semi[1];
          const double d2 = rank3 ? (u2 - center[2]) / semi[2] : 0.0;
          if (dd * dd + d1 * d1 + d2 * d2 <= 1.0) {
            const std::size_t idx =
                rank3 ? (static_cast<std::size_t>(d) * lat1 + u1) * lat2 + u2
                      : static_cast<std::size_t>(d) * lat1 + u1;
            model.classes[idx] = static_cast<std::uint16_t>(salt);
            model.impedance[idx] = imp;
          }
        }
      }
    }
  }

  return model;
}

}  // namespace seisgan
