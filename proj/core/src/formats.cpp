#include "seisgan/formats.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace seisgan {

namespace {

constexpr std::uint32_t kFormatVersion = 1;

class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void magic(const char m[4]) { bytes_.append(m, 4); }
  void raw(const void* data, std::size_t n) {
    bytes_.append(static_cast<const char*>(data), n);
  }
  void f32_array(const std::vector<float>& values) {
    for (float v : values) f32(v);
  }
  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  ByteReader(std::string bytes, std::string path)
      : bytes_(std::move(bytes)), path_(std::move(path)) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  void magic(const char expected[4]) {
    need(4);
    if (std::memcmp(bytes_.data() + pos_, expected, 4) != 0) {
      throw FormatError(path_ + ": bad magic, expected '" + std::string(expected, 4) + "'",
                        pos_);
    }
    pos_ += 4;
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<float> f32_array(std::size_t n) {
    need(4 * n);
    std::vector<float> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f32();
    return out;
  }
  void expect_end() const {
    if (pos_ != bytes_.size()) {
      throw FormatError(path_ + ": trailing bytes", pos_);
    }
  }
  std::size_t offset() const { return pos_; }
  const std::string& path() const { return path_; }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) {
      throw FormatError(path_ + ": unexpected end of file", bytes_.size());
    }
  }
  std::string bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

void write_file(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      throw IoError("write failed for '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failed for '" + path + "'");
  }
  return bytes;
}

void check_version(ByteReader& r) {
  const std::size_t at = r.offset();
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw FormatError(r.path() + ": unsupported version " + std::to_string(version), at);
  }
}

Dims read_dims(ByteReader& r) {
  const std::size_t at = r.offset();
  const std::uint8_t rank = r.u8();
  if (rank != 2 && rank != 3) {
    throw FormatError(r.path() + ": rank must be 2 or 3, got " + std::to_string(rank), at);
  }
  Dims dims(rank);
  for (std::uint8_t a = 0; a < rank; ++a) {
    const std::size_t dat = r.offset();
    dims[a] = r.u32();
    if (dims[a] == 0) {
      throw FormatError(r.path() + ": zero extent", dat);
    }
  }
  return dims;
}

}  // namespace

void write_svol(const std::string& path, const Volume& volume) {
  volume.check();
  ByteWriter w;
  w.magic("SVOL");
  w.u32(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(volume.dims.size()));
  for (std::uint32_t d : volume.dims) w.u32(d);
  w.f32(volume.dt_ms);
  w.f32_array(volume.samples);
  write_file(path, w.bytes());
}

Volume read_svol(const std::string& path) {
  ByteReader r(read_file(path), path);
  r.magic("SVOL");
  check_version(r);
  Volume v;
  v.dims = read_dims(r);
  v.dt_ms = r.f32();
  v.samples = r.f32_array(dims_size(v.dims));
  r.expect_end();
  return v;
}

void write_scnd(const std::string& path, const ConditionField& field) {
  field.check();
  ByteWriter w;
  w.magic("SCND");
  w.u32(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(field.mode));
  w.u32(field.channels);
  w.u8(static_cast<std::uint8_t>(field.dims.size()));
  for (std::uint32_t d : field.dims) w.u32(d);
  w.f32_array(field.values);
  write_file(path, w.bytes());
}

ConditionField read_scnd(const std::string& path) {
  ByteReader r(read_file(path), path);
  r.magic("SCND");
  check_version(r);
  ConditionField f;
  const std::size_t mode_at = r.offset();
  const std::uint8_t mode = r.u8();
  if (mode > 1) {
    throw FormatError(path + ": mode byte must be 0 or 1, got " + std::to_string(mode), mode_at);
  }
  f.mode = static_cast<ConditionField::Mode>(mode);
  const std::size_t ch_at = r.offset();
  f.channels = r.u32();
  if (f.channels == 0) {
    throw FormatError(path + ": zero channels", ch_at);
  }
  f.dims = read_dims(r);
  f.values = r.f32_array(static_cast<std::size_t>(f.channels) * dims_size(f.dims));
  r.expect_end();
  f.check();  // one-hot sums / probability range
  return f;
}

namespace {

void write_named_tensor(ByteWriter& w, const std::string& name, const Shape& shape,
                        const std::vector<float>& values) {
  w.u32(static_cast<std::uint32_t>(name.size()));
  w.raw(name.data(), name.size());
  w.u8(static_cast<std::uint8_t>(shape.size()));
  for (int d : shape) w.u32(static_cast<std::uint32_t>(d));
  w.f32_array(values);
}

struct RawTensor {
  std::string name;
  Shape shape;
  std::vector<float> values;
};

RawTensor read_named_tensor(ByteReader& r) {
  RawTensor t;
  const std::uint32_t name_len = r.u32();
  t.name = r.str(name_len);
  const std::uint8_t ndim = r.u8();
  std::size_t count = 1;
  for (std::uint8_t a = 0; a < ndim; ++a) {
    const std::size_t at = r.offset();
    const std::uint32_t d = r.u32();
    if (d == 0) {
      throw FormatError(r.path() + ": zero extent in tensor '" + t.name + "'", at);
    }
    t.shape.push_back(static_cast<int>(d));
    count *= d;
  }
  t.values = r.f32_array(count);
  return t;
}

// The checkpoint tensor list, in a fixed order: model parameters, running
// batch-norm statistics, then Adam moments, for the generator then the
// discriminator.
template <class Emit>
void for_each_checkpoint_tensor(const Checkpoint& c, Emit&& emit) {
  auto net = [&](const char* prefix, const ModelParams<float>& params,
                 const AdamState<float>& opt) {
    const std::string p(prefix);
    for (const auto& [name, t] : params.params) {
      emit(p + "/" + name, t.shape(), t.values());
    }
    for (const auto& [name, stats] : params.bn) {
      const Shape shape{static_cast<int>(stats.mean.size())};
      emit(p + "/" + name + ".running_mean", shape, stats.mean);
      emit(p + "/" + name + ".running_var", shape, stats.var);
    }
    for (std::size_t i = 0; i < opt.m.size(); ++i) {
      const auto& [name, t] = params.params[i];
      emit("opt_" + p + "/" + name + ".m", t.shape(), opt.m[i]);
      emit("opt_" + p + "/" + name + ".v", t.shape(), opt.v[i]);
    }
  };
  net("g", c.generator, c.generator_opt);
  net("d", c.discriminator, c.discriminator_opt);
}

nlohmann::json bn_initialized_flags(const ModelParams<float>& params, const char* prefix) {
  nlohmann::json flags;
  for (const auto& [name, stats] : params.bn) {
    flags[std::string(prefix) + "/" + name] = stats.initialized;
  }
  return flags;
}

}  // namespace

void write_sgck(const std::string& path, const Checkpoint& checkpoint) {
  nlohmann::json meta;
  meta["format"] = "sgck";
  meta["step"] = checkpoint.step;
  meta["condition_channels"] = checkpoint.condition_channels;
  meta["config"] = nlohmann::json::parse(train_config_to_json(checkpoint.config));
  meta["opt_g_step"] = checkpoint.generator_opt.step;
  meta["opt_d_step"] = checkpoint.discriminator_opt.step;
  nlohmann::json flags;
  const nlohmann::json gflags = bn_initialized_flags(checkpoint.generator, "g");
  const nlohmann::json dflags = bn_initialized_flags(checkpoint.discriminator, "d");
  for (const auto& [k, v] : gflags.items()) flags[k] = v;
  for (const auto& [k, v] : dflags.items()) flags[k] = v;
  meta["bn_initialized"] = flags;
  const std::string json_text = meta.dump();

  std::uint32_t tensor_count = 0;
  for_each_checkpoint_tensor(checkpoint,
                             [&](const std::string&, const Shape&, const std::vector<float>&) {
                               ++tensor_count;
                             });

  ByteWriter w;
  w.magic("SGCK");
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(json_text.size()));
  w.raw(json_text.data(), json_text.size());
  w.u32(tensor_count);
  for_each_checkpoint_tensor(
      checkpoint, [&](const std::string& name, const Shape& shape,
                      const std::vector<float>& values) { write_named_tensor(w, name, shape, values); });
  w.u32(static_cast<std::uint32_t>(checkpoint.sampler_state.size()));
  w.raw(checkpoint.sampler_state.data(), checkpoint.sampler_state.size());
  write_file(path, w.bytes());
}

Checkpoint read_sgck(const std::string& path) {
  ByteReader r(read_file(path), path);
  r.magic("SGCK");
  check_version(r);

  const std::uint32_t json_len = r.u32();
  const std::string json_text = r.str(json_len);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": invalid metadata JSON (" + e.what() + ")", 12);
  }

  Checkpoint c;
  try {
    c.step = meta.at("step").get<std::int64_t>();
    c.condition_channels = meta.at("condition_channels").get<int>();
    c.config = train_config_from_json(meta.at("config").dump());
    c.generator_opt.step = meta.at("opt_g_step").get<std::int64_t>();
    c.discriminator_opt.step = meta.at("opt_d_step").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": incomplete metadata (" + std::string(e.what()) + ")", 12);
  }

  // Rebuild the parameter skeletons from the config so tensor names, order,
  // and batch-norm layers are known, then overwrite values from the file.
  c.generator = build_generator<float>(c.config.generator_spec(c.condition_channels), 0);
  c.discriminator =
      build_discriminator<float>(c.config.discriminator_spec(c.condition_channels), 0);
  c.generator_opt.reset(c.generator.params);
  c.discriminator_opt.reset(c.discriminator.params);
  c.generator_opt.step = meta.at("opt_g_step").get<std::int64_t>();
  c.discriminator_opt.step = meta.at("opt_d_step").get<std::int64_t>();

  const std::uint32_t tensor_count = r.u32();
  for (std::uint32_t i = 0; i < tensor_count; ++i) {
    const std::size_t at = r.offset();
    RawTensor raw = read_named_tensor(r);

    const auto slash = raw.name.find('/');
    if (slash == std::string::npos) {
      throw FormatError(path + ": tensor name '" + raw.name + "' lacks a net prefix", at);
    }
    const std::string prefix = raw.name.substr(0, slash);
    std::string local = raw.name.substr(slash + 1);

    auto store_param = [&](ModelParams<float>& net) {
      Tensor<float>& t = net.at(local);
      if (t.shape() != raw.shape) {
        throw DataError(path + ": tensor '" + raw.name + "' has shape " + shape_str(raw.shape) +
                        ", expected " + shape_str(t.shape()));
      }
      t.values() = std::move(raw.values);
    };
    auto store_bn = [&](ModelParams<float>& net, const std::string& stem, bool mean) {
      BnStats<float>& stats = net.bn_at(stem);
      std::vector<float>& dst = mean ? stats.mean : stats.var;
      if (raw.values.size() != dst.size()) {
        throw DataError(path + ": tensor '" + raw.name + "' has " +
                        std::to_string(raw.values.size()) + " entries, expected " +
                        std::to_string(dst.size()));
      }
      dst = std::move(raw.values);
    };
    auto store_opt = [&](ModelParams<float>& net, AdamState<float>& opt, bool m) {
      const std::string pname = local.substr(0, local.size() - 2);  // strip ".m"/".v"
      for (std::size_t k = 0; k < net.params.size(); ++k) {
        if (net.params[k].first == pname) {
          if (net.params[k].second.shape() != raw.shape) {
            throw DataError(path + ": tensor '" + raw.name + "' has shape " +
                            shape_str(raw.shape) + ", expected " +
                            shape_str(net.params[k].second.shape()));
          }
          (m ? opt.m[k] : opt.v[k]) = std::move(raw.values);
          return;
        }
      }
      throw FormatError(path + ": unknown optimizer tensor '" + raw.name + "'", at);
    };

    try {
      if (prefix == "g" || prefix == "d") {
        ModelParams<float>& net = prefix == "g" ? c.generator : c.discriminator;
        if (local.ends_with(".running_mean")) {
          store_bn(net, local.substr(0, local.size() - 13), true);
        } else if (local.ends_with(".running_var")) {
          store_bn(net, local.substr(0, local.size() - 12), false);
        } else {
          store_param(net);
        }
      } else if (prefix == "opt_g" || prefix == "opt_d") {
        if (!local.ends_with(".m") && !local.ends_with(".v")) {
          throw FormatError(path + ": unknown optimizer tensor '" + raw.name + "'", at);
        }
        ModelParams<float>& net = prefix == "opt_g" ? c.generator : c.discriminator;
        AdamState<float>& opt = prefix == "opt_g" ? c.generator_opt : c.discriminator_opt;
        store_opt(net, opt, local.ends_with(".m"));
      } else {
        throw FormatError(path + ": unknown tensor prefix '" + prefix + "'", at);
      }
    } catch (const ContractError&) {
      throw FormatError(path + ": unknown tensor '" + raw.name + "'", at);
    }
  }

  try {
    const nlohmann::json& flags = meta.at("bn_initialized");
    auto apply = [&](ModelParams<float>& net, const char* prefix) {
      for (auto& [name, stats] : net.bn) {
        stats.initialized = flags.at(std::string(prefix) + "/" + name).get<bool>();
      }
    };
    apply(c.generator, "g");
    apply(c.discriminator, "d");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": incomplete bn_initialized flags (" + std::string(e.what()) + ")",
                      12);
  }

  const std::uint32_t sampler_len = r.u32();
  c.sampler_state = r.str(sampler_len);
  r.expect_end();
  return c;
}

}  // namespace seisgan
