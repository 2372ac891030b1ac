#pragma once

#include <string>

#include "seisgan/training.hpp"
#include "seisgan/volume.hpp"

namespace seisgan {

// Fixed-layout little-endian binary formats. Writers go through a temp file
// and rename, so readers never observe partial files. Every format
// round-trips byte-identically (write -> read -> write).
//
// SVOL: "SVOL" | u32 version | u8 rank | u32 dims[rank] | f32 dt_ms
//       | f32 samples (C-order)
// SCND: "SCND" | u32 version | u8 mode | u32 channels | u8 rank
//       | u32 dims[rank] | f32 values (channel-major)
// SGCK: "SGCK" | u32 version | u32 json_len | json | u32 tensor_count
//       | tensors (u32 name_len | name | u8 ndim | u32 dims | f32 payload)
//       | u32 sampler_len | sampler blob

void write_svol(const std::string& path, const Volume& volume);
Volume read_svol(const std::string& path);

void write_scnd(const std::string& path, const ConditionField& field);
ConditionField read_scnd(const std::string& path);

void write_sgck(const std::string& path, const Checkpoint& checkpoint);
Checkpoint read_sgck(const std::string& path);

}  // namespace seisgan
