// Rebuilds the starter template set from the checked-in example sketches.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sketchlevel/levelgen.hpp"
#include "sketchlevel/recognizer.hpp"
#include "sketchlevel/service.hpp"

int main(int argc, char** argv) {
  using namespace sketchlevel;
  CLI::App app{"Build a nearest-centroid template set from labelled sketches"};
  std::string sketches = (default_data_dir() / "sketches").string();
  std::string output = (default_data_dir() / "models" / "starter.json").string();
  GenerationConfig cfg;
  app.add_option("--sketches", sketches, "Directory of <label>_<n>.pgm files")->capture_default_str();
  app.add_option("--output", output, "Template set JSON to write")->capture_default_str();
  app.add_option("--threshold", cfg.threshold)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<LabeledGrid> examples;
    for (const auto& [label, path] : list_sketches(sketches))
      examples.emplace_back(label, sketch_to_grid(load_image(read_file_bytes(path)), cfg));
    const TemplateSet model = build_templates(examples);
    std::ofstream(output) << templates_to_json(model);
    std::cerr << "wrote " << model.size() << " classes from " << examples.size() << " sketches to " << output << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
