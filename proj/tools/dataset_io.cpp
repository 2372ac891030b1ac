#include "dataset_io.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "seisgan/formats.hpp"

namespace seisgan::cli {

namespace fs = std::filesystem;
using nlohmann::json;

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find('x', pos);
    const std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      const long v = std::stol(part);
      if (v < 1) throw std::out_of_range("non-positive");
      dims.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("invalid size '" + text + "' (expected e.g. 64x64 or 16x16x16)");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (dims.size() != 2 && dims.size() != 3) {
    throw ConfigError("size '" + text + "' must have 2 or 3 extents");
  }
  return dims;
}

Manifest read_manifest(const std::string& data_dir) {
  const fs::path path = fs::path(data_dir) / "manifest.json";
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("no manifest.json in '" + data_dir + "'");
  }
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ConfigError("invalid manifest JSON: " + std::string(e.what()));
  }
  Manifest manifest;
  manifest.body = body;
  try {
    for (const auto& entry : j.at("entries")) {
      ManifestEntry e;
      e.truth = entry.at("truth").get<std::string>();
      e.degraded = entry.at("degraded").get<std::string>();
      if (entry.contains("condition") && !entry["condition"].is_null()) {
        e.condition = entry["condition"].get<std::string>();
      }
      if (entry.contains("seed")) e.seed = entry["seed"].get<std::uint64_t>();
      manifest.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ConfigError("invalid manifest: " + std::string(e.what()));
  }
  if (manifest.entries.empty()) {
    throw ConfigError("manifest lists no entries");
  }
  return manifest;
}

std::vector<PatchPair> load_dataset(const std::string& data_dir, ConditionMode mode,
                                    const Dims& patch_dims, const Dims& stride) {
  const Manifest manifest = read_manifest(data_dir);
  const fs::path dir(data_dir);

  std::vector<PatchPair> patches;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const ManifestEntry& entry = manifest.entries[i];
    const Volume truth = read_svol((dir / entry.truth).string());
    const Volume degraded = read_svol((dir / entry.degraded).string());

    std::optional<ConditionField> condition;
    if (mode != ConditionMode::None) {
      if (!entry.condition) {
        throw ConfigError("dataset entry " + std::to_string(i) +
                          " has no condition file but the config requires condition_mode " +
                          std::string(to_string(mode)));
      }
      const fs::path cpath = dir / *entry.condition;
      if (!fs::exists(cpath)) {
        throw ConfigError("missing condition file '" + cpath.string() + "'");
      }
      condition = read_scnd(cpath.string());
    }

    Dims patch = patch_dims.empty() ? truth.dims : patch_dims;
    Dims step = stride.empty() ? patch : stride;
    if (patch.size() != truth.dims.size()) {
      throw ConfigError("patch size rank does not match volume rank " +
                        std::to_string(truth.dims.size()));
    }
    std::vector<PatchPair> extracted =
        extract_patches(truth, degraded, condition ? &*condition : nullptr, patch, step,
                        /*seed=*/0, /*shuffle=*/false, static_cast<std::uint32_t>(i));
    for (PatchPair& p : extracted) patches.push_back(std::move(p));
  }
  return patches;
}

}  // namespace seisgan::cli
