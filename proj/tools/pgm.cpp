#include "pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace seisgan::cli {

void write_pgm(const std::string& path, const std::vector<float>& pixels, std::uint32_t height,
               std::uint32_t width, const std::string& comment) {
  if (pixels.size() != static_cast<std::size_t>(height) * width) {
    throw ShapeError("pgm pixel count does not match " + std::to_string(height) + "x" +
                     std::to_string(width));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << "P5\n# " << comment << "\n" << width << " " << height << "\n255\n";
  std::string bytes(pixels.size(), '\0');
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double mapped = std::floor((pixels[i] + 1.0) * 127.5 + 0.5);  // round half up
    bytes[i] = static_cast<char>(static_cast<unsigned char>(std::clamp(mapped, 0.0, 255.0)));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed for '" + path + "'");
  }
}

std::vector<float> slice_volume(const Volume& volume, int axis, std::uint32_t index,
                                std::uint32_t& height, std::uint32_t& width) {
  volume.check();
  if (volume.rank() == 2) {
    height = volume.dims[0];
    width = volume.dims[1];
    return volume.samples;
  }
  if (axis < 0 || axis > 2) {
    throw ParamError("slice axis must be 0, 1, or 2 for a rank-3 volume");
  }
  if (index >= volume.dims[axis]) {
    throw ParamError("slice index " + std::to_string(index) + " outside axis extent " +
                     std::to_string(volume.dims[axis]));
  }
  const std::uint32_t d = volume.dims[0], h = volume.dims[1], w = volume.dims[2];
  std::vector<float> out;
  if (axis == 0) {
    height = h;
    width = w;
    out.resize(static_cast<std::size_t>(h) * w);
    std::copy_n(volume.samples.begin() + static_cast<std::size_t>(index) * h * w, out.size(),
                out.begin());
  } else if (axis == 1) {
    height = d;
    width = w;
    out.resize(static_cast<std::size_t>(d) * w);
    for (std::uint32_t i = 0; i < d; ++i) {
      std::copy_n(volume.samples.begin() + (static_cast<std::size_t>(i) * h + index) * w, w,
                  out.begin() + static_cast<std::size_t>(i) * w);
    }
  } else {
    height = d;
    width = h;
    out.resize(static_cast<std::size_t>(d) * h);
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t j = 0; j < h; ++j) {
        out[static_cast<std::size_t>(i) * h + j] =
            volume.samples[(static_cast<std::size_t>(i) * h + j) * w + index];
      }
    }
  }
  return out;
}

}  // namespace seisgan::cli
