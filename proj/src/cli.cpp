#include "sketchlevel/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "sketchlevel/error.hpp"
#include "sketchlevel/json_io.hpp"
#include "sketchlevel/levelxml.hpp"
#include "sketchlevel/service.hpp"

namespace sketchlevel {

namespace {

std::atomic<bool> g_shutdown{false};

extern "C" void on_signal(int) { g_shutdown = true; }

struct GridDims {
  int cols = kDefaultGridCols;
  int rows = kDefaultGridRows;
};

std::optional<GridDims> parse_grid(const std::string& text) {
  GridDims dims;
  char sep = 0;
  std::istringstream in(text);
  if (!(in >> dims.cols >> sep >> dims.rows) || (sep != 'x' && sep != 'X') || !in.eof() || dims.cols < 1 ||
      dims.rows < 1)
    return std::nullopt;
  return dims;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

class Cli {
public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Turn drawings into stable Science Birds levels.", "sketchlevel"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", verbosity_, "More diagnostics on stderr (repeatable)");

    auto* gen = app.add_subcommand("generate", "Generate a level XML from a drawing");
    gen->add_option("--input", input_, "PNG or binary PGM drawing")->required();
    gen->add_option("--output", output_, "Where to write the level XML")->required();
    add_generation_options(gen);
    gen->add_option("--max-blocks", cfg_.max_blocks, "Block budget")->capture_default_str();
    gen->add_option("--pigs", cfg_.pigs, "Pigs placed on the tallest columns")->capture_default_str();

    auto* rec = app.add_subcommand("recognize", "Print the top-5 labels for a drawing");
    rec->add_option("--input", input_, "PNG or binary PGM drawing")->required();
    rec->add_option("--model", model_path_, "Template set JSON")->capture_default_str();
    rec->add_option("--threshold", cfg_.threshold, "Ink threshold")->check(CLI::Range(0, 255))->capture_default_str();

    auto* val = app.add_subcommand("validate", "Check a level XML for unsupported blocks");
    val->add_option("--level", level_path_, "Level XML")->required();

    auto* srv = app.add_subcommand("serve", "Run the HTTP API");
    srv->add_option("--bind", bind_, "HOST:PORT (default 127.0.0.1:8787)");
    srv->add_option("--store", store_, "Store root directory (default ./data)");
    srv->add_option("--model", model_path_, "Template set JSON")->capture_default_str();
    srv->add_option("--therapy-dir", therapy_dir_, "Directory with feedback templates and lexicons");
    srv->add_option("--cors-origin", cors_origin_, "Access-Control-Allow-Origin value");
    add_generation_options(srv);

    std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_tail.begin(), argv_tail.end());
    try {
      app.parse(argv_tail);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n";
      const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
      err_ << sub->help();
      return kExitUsage;
    }
    if (grid_text_) {
      auto dims = parse_grid(*grid_text_);
      if (!dims) {
        err_ << "error: --grid expects COLSxROWS, e.g. 16x10\n";
        return kExitUsage;
      }
      cfg_.cols = dims->cols;
      cfg_.rows = dims->rows;
    }

    if (gen->parsed()) return generate();
    if (rec->parsed()) return recognize();
    if (val->parsed()) return validate();
    return serve();
  }

private:
  void add_generation_options(CLI::App* sub) {
    sub->add_option("--seed", cfg_.seed, "RNG seed for TNT conversion")->capture_default_str();
    sub->add_option("--tnt-prob", cfg_.tnt_prob, "Per-block TNT probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--threshold", cfg_.threshold, "Ink threshold")->check(CLI::Range(0, 255))->capture_default_str();
    sub->add_option("--grid", grid_text_, "Grid size COLSxROWS (default 16x10)");
  }

  void log(int level, const std::string& message) {
    if (verbosity_ >= level) err_ << message << "\n";
  }

  int generate() {
    LevelSpec spec;
    try {
      const SketchImage image = load_image(read_file_bytes(input_));
      log(1, "loaded " + input_ + " (" + std::to_string(image.width()) + "x" + std::to_string(image.height()) + ")");
      spec = sketchlevel::generate(sketch_to_grid(image, cfg_), cfg_);
    } catch (const BudgetError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitBudget;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitIo;
    }
    const std::string xml = emit_level(to_document(spec));
    {
      std::ofstream file(output_, std::ios::binary | std::ios::trunc);
      file << xml;
      if (!file.flush()) {
        err_ << "error: cannot write " << output_ << "\n";
        return kExitIo;
      }
    }
    log(1, "wrote " + std::to_string(spec.blocks.size()) + " blocks to " + output_);
    Json summary = {{"output", output_}, {"stats", difficulty_stats(spec)}, {"stability", check_support(spec)}};
    out_ << summary.dump(2) << "\n";
    return kExitOk;
  }

  int recognize() {
    try {
      const TemplateSet model = load_templates(model_path_);
      GenerationConfig cfg = cfg_;
      cfg.cols = model.cols();
      cfg.rows = model.rows();
      const BinaryGrid grid = sketch_to_grid(load_image(read_file_bytes(input_)), cfg);
      out_ << Json(classify(grid, model)).dump(2) << "\n";
      return kExitOk;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }

  int validate() {
    StabilityReport report;
    try {
      const LevelDocument doc = parse_level(read_text(level_path_));
      report = check_support(from_document(doc));
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitIo;
    }
    out_ << Json(report).dump(2) << "\n";
    if (!report.stable) {
      for (const auto& v : report.violations)
        log(0, "unsupported block at (" + std::to_string(v.col) + ", " + std::to_string(v.row) +
                   "): " + std::string(to_string(v.reason)));
      return kExitUnstable;
    }
    return kExitOk;
  }

  int serve() {
    try {
      ServiceConfig sc;
      apply_environment(sc);
      if (bind_) parse_bind_address(*bind_, sc.host, sc.port);
      if (store_) sc.store_root = *store_;
      if (model_path_ != default_model()) sc.model_path = model_path_;
      if (therapy_dir_) sc.therapy_dir = *therapy_dir_;
      if (cors_origin_) sc.cors_origin = *cors_origin_;
      sc.generation = cfg_;

      LevelService service(sc);
      HttpServer server(service);
      const int port = server.bind(sc.host, sc.port);
      if (port < 0) {
        err_ << "error: cannot bind " << sc.host << ":" << sc.port << "\n";
        return kExitIo;
      }
      sc.port = port;
      out_ << config_to_json(sc).dump(2) << std::endl;
      err_ << "listening on http://" << sc.host << ":" << port << std::endl;

      g_shutdown = false;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::thread watcher([&] {
        while (!g_shutdown) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
      });
      server.serve();
      g_shutdown = true;
      watcher.join();
      return kExitOk;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }

  static std::string default_model() { return (default_data_dir() / "models" / "starter.json").string(); }

  std::ostream& out_;
  std::ostream& err_;
  int verbosity_ = 0;
  GenerationConfig cfg_;
  std::optional<std::string> grid_text_;
  std::string input_;
  std::string output_;
  std::string level_path_;
  std::string model_path_ = default_model();
  std::optional<std::string> bind_;
  std::optional<std::string> store_;
  std::optional<std::string> therapy_dir_;
  std::optional<std::string> cors_origin_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace sketchlevel
