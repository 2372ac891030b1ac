#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dataset_io.hpp"
#include "pgm.hpp"
#include "seisgan/condition.hpp"
#include "seisgan/degrade.hpp"
#include "seisgan/earth.hpp"
#include "seisgan/formats.hpp"
#include "seisgan/hpsearch.hpp"
#include "seisgan/metrics.hpp"
#include "seisgan/seismic.hpp"
#include "seisgan/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace seisgan;

namespace {

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() == 0) {
    std::random_device rd;
    value = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << value << " (randomly chosen)\n";
  } else {
    std::cerr << "seed: " << value << "\n";
  }
  return value;
}

NoiseMode parse_noise_mode(const std::string& s) {
  if (s == "amplitude") return NoiseMode::Amplitude;
  if (s == "pixel-fraction") return NoiseMode::PixelFraction;
  throw ConfigError("unknown noise mode '" + s + "' (expected amplitude|pixel-fraction)");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw IoError("write failed for '" + path + "'");
  }
}

struct SynthArgs {
  int count = 1;
  std::string size = "64x64";
  int classes = 31;
  int salt_blobs = 2;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string cond_mode = "probabilistic";
  double blur_sigma = 1.0;
  double wavelet_hz = 25.0;
  double dt_ms = 8.0;
  double cutoff_hz = 5.0;
  double noise = 0.5;
  std::string noise_mode = "amplitude";
  int layers_min = 4;
  int layers_max = 12;
  double fold = 4.0;
};

void run_synth(const SynthArgs& a) {
  const Dims dims = cli::parse_dims(a.size);
  const ConditionField::Mode cmode = a.cond_mode == "deterministic"
                                         ? ConditionField::Mode::Deterministic
                                         : ConditionField::Mode::Probabilistic;
  if (a.cond_mode != "deterministic" && a.cond_mode != "probabilistic") {
    throw ConfigError("unknown condition mode '" + a.cond_mode + "'");
  }
  const NoiseMode nmode = parse_noise_mode(a.noise_mode);
  if (a.count < 1) {
    throw ConfigError("count must be positive");
  }
  fs::create_directories(a.out_dir);

  json entries = json::array();
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t entry_seed = mix_seed(a.seed, static_cast<std::uint64_t>(i));
    EarthModelConfig cfg;
    cfg.dims = dims;
    cfg.class_count = a.classes;
    cfg.min_layers = a.layers_min;
    cfg.max_layers = a.layers_max;
    cfg.fold_amplitude = a.fold;
    cfg.salt_blob_count = a.salt_blobs;
    const EarthModel model = generate_earth_model(cfg, entry_seed);
    const Volume truth = synthesize_seismic(model, a.wavelet_hz, a.dt_ms);
    const Volume degraded =
        degrade(truth, a.cutoff_hz, a.dt_ms, a.noise, mix_seed(entry_seed, 7), nmode);
    const ConditionField condition = encode_condition(model, cmode, a.blur_sigma);

    char stem[32];
    std::snprintf(stem, sizeof(stem), "vol%04d", i);
    const std::string truth_name = std::string(stem) + "_truth.svol";
    const std::string degraded_name = std::string(stem) + "_degraded.svol";
    const std::string cond_name = std::string(stem) + "_cond.scnd";
    write_svol((fs::path(a.out_dir) / truth_name).string(), truth);
    write_svol((fs::path(a.out_dir) / degraded_name).string(), degraded);
    write_scnd((fs::path(a.out_dir) / cond_name).string(), condition);

    entries.push_back({{"truth", truth_name},
                       {"degraded", degraded_name},
                       {"condition", cond_name},
                       {"seed", entry_seed}});
  }

  json manifest;
  manifest["entries"] = entries;
  manifest["seed"] = a.seed;
  manifest["size"] = a.size;
  manifest["classes"] = a.classes;
  manifest["salt_blobs"] = a.salt_blobs;
  manifest["condition_mode"] = a.cond_mode;
  manifest["blur_sigma"] = a.blur_sigma;
  manifest["wavelet_hz"] = a.wavelet_hz;
  manifest["degradation"] = {{"cutoff_hz", a.cutoff_hz},
                             {"dt_ms", a.dt_ms},
                             {"noise_fraction", a.noise},
                             {"noise_mode", a.noise_mode}};
  write_text_file((fs::path(a.out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  std::cerr << "wrote " << a.count << " volume triples to " << a.out_dir << "\n";
}

struct DegradeArgs {
  std::string in, out;
  double cutoff_hz = 5.0;
  double noise = 0.5;
  std::string noise_mode = "amplitude";
  double dt_ms = 0.0;  // 0 = from file
  std::uint64_t seed = 0;
};

void run_degrade(const DegradeArgs& a) {
  const Volume input = read_svol(a.in);
  const double dt = a.dt_ms > 0.0 ? a.dt_ms : input.dt_ms;
  const Volume out = degrade(input, a.cutoff_hz, dt, a.noise, a.seed,
                             parse_noise_mode(a.noise_mode));
  write_svol(a.out, out);
}

struct TrainArgs {
  std::string config_path, data_dir, out_ckpt;
  std::string history_path;
  std::int64_t steps_override = -1;
  std::string patch, stride;
};

void run_train(const TrainArgs& a) {
  TrainConfig config = train_config_from_json(read_text_file(a.config_path));
  if (a.steps_override >= 0) {
    config.total_steps = a.steps_override;
  }
  const Dims patch = a.patch.empty() ? Dims{} : cli::parse_dims(a.patch);
  const Dims stride = a.stride.empty() ? Dims{} : cli::parse_dims(a.stride);
  const std::vector<PatchPair> dataset =
      cli::load_dataset(a.data_dir, config.condition_mode, patch, stride);

  History history;
  const Checkpoint ckpt = train(config, dataset, &history);
  write_sgck(a.out_ckpt, ckpt);

  const std::string history_path =
      a.history_path.empty()
          ? (fs::path(a.out_ckpt).parent_path() / "history.json").string()
          : a.history_path;
  write_text_file(history_path, history_to_json(history));
  std::cerr << "trained " << config.total_steps << " steps on " << dataset.size()
            << " patches; checkpoint: " << a.out_ckpt << "\n";
}

struct EnhanceArgs {
  std::string ckpt, in, cond, out;
};

void run_enhance(const EnhanceArgs& a) {
  Checkpoint ckpt = read_sgck(a.ckpt);
  const Volume input = read_svol(a.in);
  if (ckpt.generator.spec.rank != input.rank()) {
    throw ConfigError("checkpoint is rank-" + std::to_string(ckpt.generator.spec.rank) +
                      " but input volume is rank-" + std::to_string(input.rank()));
  }
  const bool conditional = ckpt.generator.spec.fusion.has_value();
  if (conditional && a.cond.empty()) {
    throw ConfigError("checkpoint is conditional: pass --cond with a SCND file");
  }
  if (!conditional && !a.cond.empty()) {
    throw ConfigError("checkpoint is unconditional: drop --cond");
  }
  std::optional<ConditionField> condition;
  if (conditional) {
    condition = read_scnd(a.cond);
    if (static_cast<int>(condition->channels) != ckpt.generator.spec.condition_channels) {
      throw ConfigError("condition has " + std::to_string(condition->channels) +
                        " channels, checkpoint expects " +
                        std::to_string(ckpt.generator.spec.condition_channels));
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Volume out = enhance(ckpt.generator, input, condition);
  const auto t1 = std::chrono::steady_clock::now();
  write_svol(a.out, out);
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  std::cerr << "throughput: " << (secs > 0.0 ? 1.0 / secs : 0.0) << " samples/s\n";
}

struct EvalArgs {
  std::string ref, test, out;
  double data_range = 2.0;
  bool slice_ssim = false;
};

void run_eval(const EvalArgs& a) {
  const Volume ref = read_svol(a.ref);
  const Volume test = read_svol(a.test);
  const MetricsReport report = evaluate(ref, test, a.data_range, a.slice_ssim);
  const std::string text = report_to_json(report);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
  }
}

struct GainArgs {
  std::string baseline, model, out;
};

void run_gain(const GainArgs& a) {
  const MetricsReport base = report_from_json(read_text_file(a.baseline));
  const MetricsReport model = report_from_json(read_text_file(a.model));
  json j;
  j["ssim_gain_pct"] = percent_gain(base.ssim, model.ssim);
  if (std::isfinite(base.psnr_db) && std::isfinite(model.psnr_db)) {
    j["psnr_gain_pct"] = percent_gain(base.psnr_db, model.psnr_db);
  } else {
    j["psnr_gain_pct"] = nullptr;
  }
  if (base.ms_ssim && model.ms_ssim) {
    j["ms_ssim_gain_pct"] = percent_gain(*base.ms_ssim, *model.ms_ssim);
  } else {
    j["ms_ssim_gain_pct"] = nullptr;
  }
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
  }
}

struct ExportArgs {
  std::string in, slice = "all:mid", out;
};

void run_export(const ExportArgs& a) {
  const Volume volume = read_svol(a.in);

  auto export_one = [&](int axis, std::uint32_t index, const std::string& path) {
    std::uint32_t h = 0, w = 0;
    const std::vector<float> pixels = cli::slice_volume(volume, axis, index, h, w);
    write_pgm(path, pixels, h, w,
              "source=" + a.in + " slice=" + std::to_string(axis) + ":" + std::to_string(index));
  };

  if (volume.rank() == 2) {
    std::uint32_t h = 0, w = 0;
    const std::vector<float> pixels = cli::slice_volume(volume, 0, 0, h, w);
    write_pgm(a.out, pixels, h, w, "source=" + a.in + " slice=-");
    return;
  }

  const std::size_t colon = a.slice.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("slice spec must be 'axis:index' or 'all:mid', got '" + a.slice + "'");
  }
  const std::string axis_part = a.slice.substr(0, colon);
  const std::string index_part = a.slice.substr(colon + 1);

  if (axis_part == "all") {
    if (index_part != "mid") {
      throw ConfigError("'all' slices support only 'all:mid'");
    }
    const fs::path out(a.out);
    const fs::path stem = out.parent_path() / out.stem();
    for (int axis = 0; axis < 3; ++axis) {
      export_one(axis, volume.dims[axis] / 2,
                 stem.string() + "_axis" + std::to_string(axis) + out.extension().string());
    }
    return;
  }

  int axis = 0;
  std::uint32_t index = 0;
  try {
    axis = std::stoi(axis_part);
    index = static_cast<std::uint32_t>(std::stoul(index_part));
  } catch (const std::exception&) {
    throw ConfigError("invalid slice spec '" + a.slice + "'");
  }
  if (axis < 0 || axis > 2 || index >= volume.dims[axis]) {
    throw ConfigError("slice " + a.slice + " outside volume " + dims_str(volume.dims));
  }
  export_one(axis, index, a.out);
}

struct HpsearchArgs {
  std::string space_path, data_dir, out;
  int trials = 3;
  std::int64_t budget = 50;
  std::uint64_t seed = 0;
  std::string patch, stride;
};

void run_hpsearch(const HpsearchArgs& a) {
  const SearchSpace space = search_space_from_json(read_text_file(a.space_path));
  const Dims patch = a.patch.empty() ? Dims{} : cli::parse_dims(a.patch);
  const Dims stride = a.stride.empty() ? Dims{} : cli::parse_dims(a.stride);
  const std::vector<PatchPair> dataset =
      cli::load_dataset(a.data_dir, space.condition_mode, patch, stride);
  const std::vector<TrialResult> ranked = hpsearch(space, a.trials, a.budget, dataset, a.seed);
  const std::string text = trials_to_json(ranked);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
  }
  std::cerr << "best ssim: " << (ranked.empty() ? 0.0 : ranked.front().ssim) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional GAN enhancement for synthetic seismic volumes"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate labeled synthetic volume triples");
  synth_cmd->add_option("--count", synth.count, "Number of volumes");
  synth_cmd->add_option("--size", synth.size, "Volume dims, e.g. 64x64 or 32x32x32");
  synth_cmd->add_option("--classes", synth.classes, "Lithology class count");
  synth_cmd->add_option("--salt-blobs", synth.salt_blobs, "Salt blob count per volume");
  CLI::Option* synth_seed = synth_cmd->add_option("--seed", synth.seed, "Master seed");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--cond-mode", synth.cond_mode, "deterministic|probabilistic");
  synth_cmd->add_option("--blur-sigma", synth.blur_sigma, "Salt-probability blur sigma");
  synth_cmd->add_option("--wavelet-hz", synth.wavelet_hz, "Ricker peak frequency");
  synth_cmd->add_option("--dt-ms", synth.dt_ms, "Sampling interval (ms)");
  synth_cmd->add_option("--cutoff-hz", synth.cutoff_hz, "Degradation low-pass cutoff");
  synth_cmd->add_option("--noise", synth.noise, "Degradation noise fraction");
  synth_cmd->add_option("--noise-mode", synth.noise_mode, "amplitude|pixel-fraction");
  synth_cmd->add_option("--layers-min", synth.layers_min, "Min layer count");
  synth_cmd->add_option("--layers-max", synth.layers_max, "Max layer count");
  synth_cmd->add_option("--fold", synth.fold, "Interface fold amplitude (cells)");

  DegradeArgs degrade_args;
  CLI::App* degrade_cmd = app.add_subcommand("degrade", "Low-pass filter plus uniform noise");
  degrade_cmd->add_option("--in", degrade_args.in, "Input SVOL")->required();
  degrade_cmd->add_option("--out", degrade_args.out, "Output SVOL")->required();
  degrade_cmd->add_option("--cutoff-hz", degrade_args.cutoff_hz, "Low-pass cutoff (Hz)");
  degrade_cmd->add_option("--noise", degrade_args.noise, "Noise fraction");
  degrade_cmd->add_option("--noise-mode", degrade_args.noise_mode, "amplitude|pixel-fraction");
  degrade_cmd->add_option("--dt-ms", degrade_args.dt_ms, "Override sampling interval");
  CLI::Option* degrade_seed = degrade_cmd->add_option("--seed", degrade_args.seed, "Noise seed");

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a GAN on a synthesized dataset");
  train_cmd->add_option("--config", train_args.config_path, "Train config JSON")->required();
  train_cmd->add_option("--data", train_args.data_dir, "Dataset directory")->required();
  train_cmd->add_option("--out", train_args.out_ckpt, "Output checkpoint (SGCK)")->required();
  train_cmd->add_option("--history", train_args.history_path, "History JSON path");
  train_cmd->add_option("--steps", train_args.steps_override, "Override total steps");
  train_cmd->add_option("--patch", train_args.patch, "Patch dims, e.g. 32x32");
  train_cmd->add_option("--stride", train_args.stride, "Patch stride (default: patch dims)");

  EnhanceArgs enhance_args;
  CLI::App* enhance_cmd = app.add_subcommand("enhance", "Run the generator on a volume");
  enhance_cmd->add_option("--ckpt", enhance_args.ckpt, "Checkpoint (SGCK)")->required();
  enhance_cmd->add_option("--in", enhance_args.in, "Input SVOL")->required();
  enhance_cmd->add_option("--cond", enhance_args.cond, "Condition SCND (conditional models)");
  enhance_cmd->add_option("--out", enhance_args.out, "Output SVOL")->required();

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "PSNR / SSIM / MS-SSIM report");
  eval_cmd->add_option("--ref", eval_args.ref, "Reference SVOL")->required();
  eval_cmd->add_option("--test", eval_args.test, "Test SVOL")->required();
  eval_cmd->add_option("--out", eval_args.out, "Report path (default: stdout)");
  eval_cmd->add_option("--data-range", eval_args.data_range, "PSNR/SSIM data range");
  eval_cmd->add_flag("--slice-ssim", eval_args.slice_ssim,
                     "Slice-averaged SSIM for rank-3 volumes");

  GainArgs gain_args;
  CLI::App* gain_cmd = app.add_subcommand("gain", "Percent gains between two reports");
  gain_cmd->add_option("--baseline", gain_args.baseline, "Baseline report JSON")->required();
  gain_cmd->add_option("--model", gain_args.model, "Model report JSON")->required();
  gain_cmd->add_option("--out", gain_args.out, "Output path (default: stdout)");

  ExportArgs export_args;
  CLI::App* export_cmd = app.add_subcommand("export", "Export a slice as 8-bit PGM");
  export_cmd->add_option("--in", export_args.in, "Input SVOL")->required();
  export_cmd->add_option("--slice", export_args.slice, "axis:index or all:mid (rank 3)");
  export_cmd->add_option("--out", export_args.out, "Output PGM path")->required();

  HpsearchArgs hps_args;
  CLI::App* hps_cmd = app.add_subcommand("hpsearch", "Random hyperparameter search");
  hps_cmd->add_option("--space", hps_args.space_path, "Search space JSON")->required();
  hps_cmd->add_option("--trials", hps_args.trials, "Trial count");
  hps_cmd->add_option("--budget", hps_args.budget, "Steps per trial");
  hps_cmd->add_option("--data", hps_args.data_dir, "Dataset directory")->required();
  hps_cmd->add_option("--out", hps_args.out, "Ranked trials JSON (default: stdout)");
  CLI::Option* hps_seed = hps_cmd->add_option("--seed", hps_args.seed, "Search seed");
  hps_cmd->add_option("--patch", hps_args.patch, "Patch dims");
  hps_cmd->add_option("--stride", hps_args.stride, "Patch stride");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) {
      synth.seed = resolve_seed(synth_seed, synth.seed);
      run_synth(synth);
    } else if (degrade_cmd->parsed()) {
      degrade_args.seed = resolve_seed(degrade_seed, degrade_args.seed);
      run_degrade(degrade_args);
    } else if (train_cmd->parsed()) {
      run_train(train_args);
    } else if (enhance_cmd->parsed()) {
      run_enhance(enhance_args);
    } else if (eval_cmd->parsed()) {
      run_eval(eval_args);
    } else if (gain_cmd->parsed()) {
      run_gain(gain_args);
    } else if (export_cmd->parsed()) {
      run_export(export_args);
    } else if (hps_cmd->parsed()) {
      hps_args.seed = resolve_seed(hps_seed, hps_args.seed);
      run_hpsearch(hps_args);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
