#pragma once

#include <cstdint>
#include <vector>

#include "seisgan/volume.hpp"

namespace seisgan {

// Layered synthetic earth: a lithology class id and an acoustic impedance
// per cell. Salt cells always belong to an ellipsoidal blob by construction.
struct EarthModel {
  Dims dims;
  std::vector<std::uint16_t> classes;   // class id per cell, in [0, class_count)
  std::vector<float> impedance;         // strictly positive
  std::uint16_t class_count = 31;
  std::uint16_t salt_class = 30;

  std::size_t size() const { return classes.size(); }
  void check() const;
};

struct EarthModelConfig {
  Dims dims;
  int class_count = 31;
  int min_layers = 4;
  int max_layers = 12;
  double fold_amplitude = 4.0;   // interface undulation in cells
  int salt_blob_count = 2;
  double min_blob_radius_frac = 0.05;  // semi-axis bounds as a fraction of each extent
  double max_blob_radius_frac = 0.15;
  double min_impedance = 2e6;
  double max_impedance = 8e6;
};

// Stacked quasi-horizontal layers with sinusoidally folded interfaces, each
// assigned a class and an impedance from per-class bands; salt blobs
// (random ellipsoids) overwrite whatever they cover. Pure function of
// (config, seed).
EarthModel generate_earth_model(const EarthModelConfig& config, std::uint64_t seed);

}  // namespace seisgan
