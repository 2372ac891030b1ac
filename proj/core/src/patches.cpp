#include "seisgan/patches.hpp"

#include "seisgan/rng.hpp"

namespace seisgan {

namespace {

// Copies an axis-aligned box out of a channel-major grid.
void copy_box(const float* src, const Dims& src_dims, const Dims& offset, const Dims& box,
              float* dst) {
  if (src_dims.size() == 2) {
    const std::size_t w = src_dims[1];
    for (std::uint32_t i = 0; i < box[0]; ++i) {
      const float* row = src + (offset[0] + i) * w + offset[1];
      std::copy_n(row, box[1], dst + static_cast<std::size_t>(i) * box[1]);
    }
  } else {
    const std::size_t h = src_dims[1], w = src_dims[2];
    for (std::uint32_t i = 0; i < box[0]; ++i) {
      for (std::uint32_t j = 0; j < box[1]; ++j) {
        const float* row = src + ((offset[0] + i) * h + offset[1] + j) * w + offset[2];
        std::copy_n(row, box[2],
                    dst + (static_cast<std::size_t>(i) * box[1] + j) * box[2]);
      }
    }
  }
}

}  // namespace

std::vector<PatchPair> extract_patches(const Volume& truth, const Volume& degraded,
                                       const ConditionField* condition, const Dims& patch_dims,
                                       const Dims& stride, std::uint64_t seed, bool shuffle,
                                       std::uint32_t source_id) {
  truth.check();
  degraded.check();
  if (truth.dims != degraded.dims) {
    throw ShapeError("truth dims " + dims_str(truth.dims) + " do not match degraded dims " +
                     dims_str(degraded.dims));
  }
  if (condition && condition->dims != truth.dims) {
    throw ShapeError("condition dims " + dims_str(condition->dims) +
                     " do not match volume dims " + dims_str(truth.dims));
  }
  if (patch_dims.size() != truth.dims.size() || stride.size() != truth.dims.size()) {
    throw ShapeError("patch dims " + dims_str(patch_dims) + " and stride " + dims_str(stride) +
                     " must match volume rank " + std::to_string(truth.dims.size()));
  }
  for (std::size_t a = 0; a < patch_dims.size(); ++a) {
    if (patch_dims[a] < 1 || patch_dims[a] > truth.dims[a]) {
      throw ShapeError("patch dims " + dims_str(patch_dims) + " do not fit volume " +
                       dims_str(truth.dims));
    }
    if (stride[a] < 1) {
      throw ParamError("stride must be positive, got " + dims_str(stride));
    }
  }

  // Grid offsets per axis: 0, s, 2s, ... while the patch still fits.
  std::vector<std::vector<std::uint32_t>> axis_offsets(patch_dims.size());
  for (std::size_t a = 0; a < patch_dims.size(); ++a) {
    for (std::uint32_t o = 0; o + patch_dims[a] <= truth.dims[a]; o += stride[a]) {
      axis_offsets[a].push_back(o);
    }
  }

  std::vector<Dims> offsets;
  if (patch_dims.size() == 2) {
    for (std::uint32_t o0 : axis_offsets[0]) {
      for (std::uint32_t o1 : axis_offsets[1]) {
        offsets.push_back({o0, o1});
      }
    }
  } else {
    for (std::uint32_t o0 : axis_offsets[0]) {
      for (std::uint32_t o1 : axis_offsets[1]) {
        for (std::uint32_t o2 : axis_offsets[2]) {
          offsets.push_back({o0, o1, o2});
        }
      }
    }
  }

  std::vector<PatchPair> patches;
  patches.reserve(offsets.size());
  const std::size_t patch_cells = dims_size(patch_dims);
  for (const Dims& off : offsets) {
    PatchPair pair;
    pair.source_id = source_id;
    pair.offset = off;
    pair.truth = Volume::zeros(patch_dims, truth.dt_ms);
    pair.degraded = Volume::zeros(patch_dims, degraded.dt_ms);
    copy_box(truth.samples.data(), truth.dims, off, patch_dims, pair.truth.samples.data());
    copy_box(degraded.samples.data(), degraded.dims, off, patch_dims,
             pair.degraded.samples.data());
    if (condition) {
      ConditionField cf;
      cf.mode = condition->mode;
      cf.channels = condition->channels;
      cf.dims = patch_dims;
      cf.values.resize(static_cast<std::size_t>(condition->channels) * patch_cells);
      const std::size_t src_cells = condition->cell_count();
      for (std::uint32_t c = 0; c < condition->channels; ++c) {
        copy_box(condition->values.data() + static_cast<std::size_t>(c) * src_cells,
                 condition->dims, off, patch_dims,
                 cf.values.data() + static_cast<std::size_t>(c) * patch_cells);
      }
      pair.condition = std::move(cf);
    }
    patches.push_back(std::move(pair));
  }

  if (shuffle) {
    Rng rng(seed);
    for (std::size_t i = patches.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(patches[i - 1], patches[j]);
    }
  }
  return patches;
}

}  // namespace seisgan
