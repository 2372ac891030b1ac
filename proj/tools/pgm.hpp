#pragma once

#include <string>
#include <vector>

#include "seisgan/volume.hpp"

namespace seisgan::cli {

// Binary (P5) PGM with a comment line recording the source and slice.
// Amplitudes map linearly [-1, 1] -> [0, 255], rounding half up.
void write_pgm(const std::string& path, const std::vector<float>& pixels, std::uint32_t height,
               std::uint32_t width, const std::string& comment);

// A 2D slice of a volume: rank-2 volumes pass through, rank-3 volumes are
// cut at `index` along `axis`.
std::vector<float> slice_volume(const Volume& volume, int axis, std::uint32_t index,
                                std::uint32_t& height, std::uint32_t& width);

}  // namespace seisgan::cli
