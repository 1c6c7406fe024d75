#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "supercap/canvas.hpp"
#include "supercap/classifier.hpp"
#include "supercap/dataset.hpp"
#include "supercap/decoder.hpp"
#include "supercap/errors.hpp"
#include "supercap/fs_util.hpp"
#include "supercap/image_io.hpp"
#include "supercap/log.hpp"
#include "supercap/protocol.hpp"
#include "supercap/subprocess.hpp"

namespace supercap::cli {

namespace fs = std::filesystem;

namespace {

struct RenderArgs {
  std::string image;
  std::string caption;
  std::string out;
};

struct DatasetArgs {
  std::string captions;
  std::string images_dir;
  std::string out_dir;
  unsigned threads = 0;
};

struct VocabArgs {
  std::string captions;
  std::string out;
};

struct DecodeArgs {
  std::string image;
  std::string vocab;
  std::string nn_model;
  std::string classifier_cmd;
  long timeout_ms = 30'000;
};

struct ServeArgs {
  std::string labels;
  std::string canvas_dir;
};

int usage_error(const std::string& msg) {
  std::cerr << "supercap: " << msg << '\n';
  return kExitUsage;
}

Vocabulary read_vocab_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary " + path.string());
  return Vocabulary::read(in);
}

int cmd_render(const RenderArgs& args) {
  Image image;
  std::vector<std::string> tokens;
  const CompositionConfig config;
  try {
    image = read_image(args.image);
    tokens = tokenize(args.caption);
    if (tokens.size() > static_cast<std::size_t>(config.cut_length)) {
      return usage_error("caption has " + std::to_string(tokens.size()) +
                         " tokens; at most " + std::to_string(config.cut_length) + " fit the canvas");
    }
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  write_png(args.out, compose(image, tokens, config));
  return kExitOk;
}

int cmd_dataset(const DatasetArgs& args) {
  std::vector<CaptionRecord> records;
  try {
    records = read_caption_file(args.captions);
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  DatasetOptions options;
  options.threads = args.threads;
  const DatasetSummary s = write_dataset(records, args.images_dir, args.out_dir, options);
  std::cout << "images_total=" << s.images_total << '\n'
            << "images_kept=" << s.images_kept << '\n'
            << "images_dropped=" << s.images_dropped << '\n'
            << "images_skipped=" << s.images_skipped << '\n'
            << "examples_written=" << s.examples_written << '\n'
            << "vocab_size=" << s.vocab_size << '\n';
  return kExitOk;
}

int cmd_vocab(const VocabArgs& args) {
  Vocabulary vocab;
  try {
    std::vector<std::vector<std::string>> selected;
    for (const CaptionRecord& r : read_caption_file(args.captions)) {
      if (auto tokens = select_caption(r)) selected.push_back(std::move(*tokens));
    }
    vocab = build_vocab(selected);
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  std::ostringstream text;
  vocab.write(text);
  write_file_atomic(args.out, text.str());
  std::cout << "vocab_size=" << vocab.size() << '\n';
  return kExitOk;
}

int cmd_decode(const DecodeArgs& args) {
  Vocabulary vocab;
  Image image;
  std::unique_ptr<ClassifierPort> classifier;
  try {
    vocab = read_vocab_file(args.vocab);
    image = read_image(args.image);
    if (!args.nn_model.empty()) {
      const fs::path dir = args.nn_model;
      classifier = std::make_unique<MemorizingModel>(load_memorizing_model(
          dir / DatasetLayout::kLabelsFile, dir / DatasetLayout::kCanvasDir, vocab.size()));
    }
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  try {
    if (!args.classifier_cmd.empty()) {
      if (args.timeout_ms <= 0) return usage_error("--timeout-ms must be positive");
      SubprocessClassifier::Options opts;
      opts.timeout = std::chrono::milliseconds(args.timeout_ms);
      classifier = std::make_unique<SubprocessClassifier>(args.classifier_cmd, vocab.size(), opts);
    }
    const DecodeResult result = generate_caption(image, *classifier, vocab);
    std::string line;
    for (const std::string& t : result.tokens) {
      if (!line.empty()) line += ' ';
      line += t;
    }
    std::cout << line << '\n' << std::flush;
    log().info("decode finished: {} after {} steps", to_string(result.terminated_by), result.steps);
  } catch (const ClassifierError& e) {
    std::cerr << "supercap: classifier failed: " << e.what() << '\n';
    return kExitClassifier;
  }
  return kExitOk;
}

int cmd_serve_nn(const ServeArgs& args) {
  std::optional<MemorizingModel> model;
  try {
    model.emplace(load_memorizing_model(args.labels, args.canvas_dir));
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  log().info("serving {} memorized canvases", model->size());
  std::ios::sync_with_stdio(false);
  std::cin.tie(nullptr);
  try {
    const wire::ServeStats stats = wire::serve(*model, std::cin, std::cout);
    log().info("served {} requests", stats.requests);
  } catch (const ClassifierError& e) {
    std::cerr << "supercap serve-nn: " << e.what() << '\n';
    return kExitClassifier;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"SuperCaptioning toolkit: canvas rendering, dataset generation, caption decoding"};
  app.require_subcommand(1);

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Compose one SuperCaptioning image");
  render_cmd->add_option("--image", render.image, "Input photo (PNG or JPEG)")
      ->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--caption", render.caption, "Partial caption text");
  render_cmd->add_option("--out", render.out, "Output PNG")->required();

  DatasetArgs dataset;
  auto* dataset_cmd = app.add_subcommand("dataset", "Generate labelled next-word training canvases");
  dataset_cmd->add_option("--captions", dataset.captions, "Caption file (<id>#<n>\\t<caption>)")
      ->required()->check(CLI::ExistingFile);
  dataset_cmd->add_option("--images-dir", dataset.images_dir, "Directory holding the images")
      ->required()->check(CLI::ExistingDirectory);
  dataset_cmd->add_option("--out-dir", dataset.out_dir, "Output directory")->required();
  dataset_cmd->add_option("--threads", dataset.threads, "Worker threads (0 = all cores)");

  VocabArgs vocab;
  auto* vocab_cmd = app.add_subcommand("vocab", "Write the class vocabulary of a caption file");
  vocab_cmd->add_option("--captions", vocab.captions, "Caption file")
      ->required()->check(CLI::ExistingFile);
  vocab_cmd->add_option("--out", vocab.out, "Output vocabulary file")->required();

  DecodeArgs decode;
  auto* decode_cmd = app.add_subcommand("decode", "Greedy caption decoding for one image");
  decode_cmd->add_option("--image", decode.image, "Input photo")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--vocab", decode.vocab, "Vocabulary file")->required()->check(CLI::ExistingFile);
  auto* nn_opt = decode_cmd->add_option("--nn-model", decode.nn_model,
                                        "Dataset directory to memorize (labels.tsv + canvases/)")
                     ->check(CLI::ExistingDirectory);
  auto* cmd_opt = decode_cmd->add_option("--classifier-cmd", decode.classifier_cmd,
                                         "Shell command speaking the classifier wire protocol");
  nn_opt->excludes(cmd_opt);
  cmd_opt->excludes(nn_opt);
  decode_cmd->add_option("--timeout-ms", decode.timeout_ms, "Per-request classifier timeout");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand(
      "serve-nn", "Serve a memorizing classifier over the wire protocol on stdin/stdout");
  serve_cmd->add_option("--labels", serve.labels, "Labels file")->required()->check(CLI::ExistingFile);
  serve_cmd->add_option("--canvas-dir", serve.canvas_dir, "Directory of labelled canvases")
      ->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*render_cmd) return cmd_render(render);
    if (*dataset_cmd) return cmd_dataset(dataset);
    if (*vocab_cmd) return cmd_vocab(vocab);
    if (*decode_cmd) {
      if (decode.nn_model.empty() == decode.classifier_cmd.empty()) {
        return usage_error("decode needs exactly one of --nn-model or --classifier-cmd");
      }
      return cmd_decode(decode);
    }
    if (*serve_cmd) return cmd_serve_nn(serve);
  } catch (const ClassifierError& e) {
    std::cerr << "supercap: classifier failed: " << e.what() << '\n';
    return kExitClassifier;
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  return kExitUsage;
}

}  // namespace supercap::cli
