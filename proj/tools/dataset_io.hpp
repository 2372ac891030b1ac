#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seisgan/config.hpp"
#include "seisgan/patches.hpp"

namespace seisgan::cli {

struct ManifestEntry {
  std::string truth;
  std::string degraded;
  std::optional<std::string> condition;
  std::uint64_t seed = 0;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::string body;  // full JSON document
};

Manifest read_manifest(const std::string& data_dir);

// Loads every manifest entry and turns it into training patches. When
// patch_dims is empty each volume becomes a single whole-volume patch.
std::vector<PatchPair> load_dataset(const std::string& data_dir, ConditionMode mode,
                                    const Dims& patch_dims, const Dims& stride);

// "64x64" or "16x16x16" -> dims.
Dims parse_dims(const std::string& text);

}  // namespace seisgan::cli
