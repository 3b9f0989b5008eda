// edgeprint: palm texture features, enrollment, identification and
// evaluation from the command line.
//
// Exit codes: 0 success, 2 input/IO error, 3 config mismatch,
// 4 precondition violation (including invalid arguments).

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edgeprint/corpus_io.hpp"
#include "edgeprint/errors.hpp"
#include "edgeprint/evaluation.hpp"
#include "edgeprint/features.hpp"
#include "edgeprint/matcher.hpp"
#include "edgeprint/pgm.hpp"
#include "edgeprint/synth.hpp"

namespace fs = std::filesystem;
using namespace edgeprint;

namespace {

constexpr int kExitIo = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitPrecondition = 4;

struct ConfigFlags {
  std::string op = "sobel";
  std::string threshold = "auto";
  double threshold_k = kDefaultThresholdK;
  int min_component = kDefaultMinComponent;
  std::string grid = "2x2";
  std::vector<CLI::Option*> options;

  void attach(CLI::App* cmd) {
    options.push_back(cmd->add_option("--operator", op, "Edge operator: sobel, laplacian, log")
                          ->check(CLI::IsMember({"sobel", "laplacian", "log"})));
    options.push_back(cmd->add_option("--threshold", threshold,
                                      "Edge threshold, or 'auto' for k * mean |response|"));
    options.push_back(cmd->add_option("--threshold-k", threshold_k,
                                      "Auto-threshold multiplier (> 0)"));
    options.push_back(cmd->add_option("--min-component", min_component,
                                      "Smallest edge component counted, in pixels (>= 1)"));
    options.push_back(cmd->add_option("--grid", grid, "Region grid RxC: 2x2, 2x4, 4x4, ..."));
  }

  bool any_given() const {
    for (auto* o : options)
      if (o->count() > 0) return true;
    return false;
  }

  // Starts from base and applies only the flags present on the command line.
  ExtractionConfig apply(ExtractionConfig base) const {
    if (options[0]->count()) base.op = parse_edge_operator(op);
    if (options[1]->count()) {
      if (threshold == "auto") {
        base.threshold.reset();
      } else {
        try {
          std::size_t used = 0;
          base.threshold = std::stod(threshold, &used);
          if (used != threshold.size()) throw std::invalid_argument(threshold);
        } catch (const std::exception&) {
          throw PreconditionError("invalid --threshold '" + threshold + "'");
        }
      }
    }
    if (options[2]->count()) base.threshold_k = threshold_k;
    if (options[3]->count()) base.min_component = min_component;
    if (options[4]->count()) base.grid = RegionGrid::parse(grid);
    base.validate();
    return base;
  }
};

// Writes to --out when given, otherwise stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  write_file_bytes(out_path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::string join_values(const FeatureVector& f) {
  std::ostringstream out;
  for (std::size_t i = 0; i < f.values.size(); ++i) out << (i ? "," : "") << f.values[i];
  return out.str();
}

Gallery read_gallery(const std::string& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return load_gallery(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                         bytes.size()));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

ExtractionConfig gallery_config_with_flags(const Gallery& gallery, const ConfigFlags& flags) {
  const ExtractionConfig requested = flags.apply(gallery.config());
  if (requested.fingerprint() != gallery.fingerprint()) {
    throw ConfigMismatchError("flags request '" + requested.fingerprint() +
                              "' but gallery uses '" + gallery.fingerprint() + "'");
  }
  return requested;
}

Corpus corpus_from(const std::string& dir, bool synthetic) {
  if (synthetic == !dir.empty()) {
    throw PreconditionError("give exactly one of --corpus DIR or --synthetic");
  }
  return synthetic ? to_corpus(generate_synthetic(benchmark_synth_spec()))
                   : load_corpus_dir(dir);
}

int run_error(const std::exception& e, int code) {
  std::cerr << "edgeprint: " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Palmprint identification from per-region edge texture counts"};
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 1;

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Print the feature vector of one image");
  ConfigFlags extract_flags;
  extract_flags.attach(extract_cmd);
  std::string image_path;
  extract_cmd->add_option("image", image_path, "PGM image")->required();
  extract_cmd->add_option("--out", out_path, "Write output here instead of stdout");

  // enroll
  auto* enroll_cmd = app.add_subcommand("enroll", "Add images of one class to a gallery file");
  ConfigFlags enroll_flags;
  enroll_flags.attach(enroll_cmd);
  std::string class_id;
  std::string gallery_path;
  std::vector<std::string> image_paths;
  enroll_cmd->add_option("--class", class_id, "Class id")->required();
  enroll_cmd->add_option("--gallery", gallery_path, "Gallery file (created if absent)")->required();
  enroll_cmd->add_option("images", image_paths, "PGM images")->required();

  // identify
  auto* identify_cmd = app.add_subcommand("identify", "Match one image against a gallery");
  ConfigFlags identify_flags;
  identify_flags.attach(identify_cmd);
  identify_cmd->add_option("image", image_path, "PGM image")->required();
  identify_cmd->add_option("--gallery", gallery_path, "Gallery file")->required();
  identify_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  // evaluate / sweep
  std::string corpus_dir;
  bool synthetic = false;
  int n_train = 6;
  int n_test = 6;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Train/test evaluation on a corpus");
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate every grid and operator");
  ConfigFlags evaluate_flags;
  ConfigFlags sweep_flags;
  evaluate_flags.attach(evaluate_cmd);
  sweep_flags.attach(sweep_cmd);
  for (auto* cmd : {evaluate_cmd, sweep_cmd}) {
    cmd->add_option("--corpus", corpus_dir, "Directory of <class>/<sample>.pgm");
    cmd->add_flag("--synthetic", synthetic, "Use the built-in benchmark corpus");
    cmd->add_option("--n-train", n_train, "Training samples per class")->check(CLI::PositiveNumber);
    cmd->add_option("--n-test", n_test, "Test samples per class")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Split seed");
    cmd->add_option("--out", out_path, "Write the report here instead of stdout");
  }

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic palm corpus");
  SynthSpec synth = benchmark_synth_spec();
  synth_cmd->add_option("--out", out_path, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "Corpus seed");
  synth_cmd->add_option("--classes", synth.class_count, "Number of classes");
  synth_cmd->add_option("--samples", synth.samples_per_class, "Samples per class");
  synth_cmd->add_option("--width", synth.width, "Image width");
  synth_cmd->add_option("--height", synth.height, "Image height");
  synth_cmd->add_option("--noise", synth.noise_amplitude, "Uniform noise amplitude");
  synth_cmd->add_option("--clutter", synth.clutter_strokes, "Short clutter strokes per image");
  synth_cmd->add_option("--dropout", synth.dropout, "Per-stroke omission probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  try {
    if (*extract_cmd) {
      const ExtractionConfig config = extract_flags.apply(ExtractionConfig{});
      const GrayImage image = read_pgm_file(image_path);
      const FeatureVector f = extract(image, config);
      emit(out_path, join_values(f) + "\nconfig " + f.fingerprint + "\n");
    } else if (*enroll_cmd) {
      validate_class_id(class_id);
      std::optional<Gallery> gallery;
      if (fs::exists(gallery_path)) {
        Gallery existing = read_gallery(gallery_path);
        gallery_config_with_flags(existing, enroll_flags);
        gallery = std::move(existing);
      } else {
        gallery.emplace(enroll_flags.apply(ExtractionConfig{}));
      }
      for (const std::string& path : image_paths) {
        const GrayImage image = read_pgm_file(path);
        gallery = enroll(std::move(*gallery), class_id, image);
        const auto& samples = gallery->classes().at(class_id);
        std::cout << class_id << ',' << samples.size() - 1 << ','
                  << join_values(samples.back()) << "  " << path << '\n';
      }
      const std::string text = save_gallery(*gallery);
      write_file_bytes(gallery_path, std::vector<std::uint8_t>(text.begin(), text.end()));
    } else if (*identify_cmd) {
      const Gallery gallery = read_gallery(gallery_path);
      const ExtractionConfig config = gallery_config_with_flags(gallery, identify_flags);
      const GrayImage image = read_pgm_file(image_path);
      emit(out_path, report_to_json(identify_two_stage(extract(image, config), gallery)));
    } else if (*evaluate_cmd) {
      const ExtractionConfig config = evaluate_flags.apply(ExtractionConfig{});
      const Corpus corpus = corpus_from(corpus_dir, synthetic);
      emit(out_path, format_evaluation(evaluate(corpus, {n_train, n_test, seed}, config)));
    } else if (*sweep_cmd) {
      const ExtractionConfig config = sweep_flags.apply(ExtractionConfig{});
      const Corpus corpus = corpus_from(corpus_dir, synthetic);
      emit(out_path, format_sweep(sweep(corpus, {n_train, n_test, seed}, config,
                                        default_sweep_grids(), default_sweep_operators())));
    } else if (*synth_cmd) {
      synth.validate();
      const auto samples = generate_synthetic(synth);
      write_corpus_dir(out_path, samples);
      std::cout << "wrote " << samples.size() << " images to " << out_path << '\n';
    }
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Io:
      case ErrorKind::Parse: return run_error(e, kExitIo);
      case ErrorKind::ConfigMismatch: return run_error(e, kExitMismatch);
      case ErrorKind::Precondition: return run_error(e, kExitPrecondition);
    }
  } catch (const std::exception& e) {
    return run_error(e, 1);
  }
  return 0;
}
