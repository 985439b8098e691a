#include "sketchlevel/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "sketchlevel/error.hpp"

namespace sketchlevel {

TemplateSet::TemplateSet(int cols, int rows, std::vector<std::string> labels, std::vector<Centroid> centroids)
    : cols_(cols), rows_(rows), labels_(std::move(labels)), centroids_(std::move(centroids)) {
  if (cols_ < 1 || rows_ < 1) throw DimensionError("template grid must be at least 1x1");
  if (labels_.size() != centroids_.size()) throw ModelError("label and centroid counts differ");
  if (labels_.size() < 2) throw ModelError("a template set needs at least two labels");
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ModelError("duplicate label");
  for (std::size_t i = 0; i < centroids_.size(); ++i) {
    const Centroid& c = centroids_[i];
    if (labels_[i].empty()) throw ModelError("empty label");
    if (c.rows() != rows_ || c.cols() != cols_)
      throw DimensionError("centroid for '" + labels_[i] + "' does not match " + std::to_string(cols_) + "x" +
                           std::to_string(rows_));
    if (!c.isFinite().all() || (c < 0.0).any() || (c > 1.0).any())
      throw ModelError("centroid for '" + labels_[i] + "' has values outside [0, 1]");
  }
}

bool TemplateSet::operator==(const TemplateSet& other) const {
  if (cols_ != other.cols_ || rows_ != other.rows_ || labels_ != other.labels_) return false;
  for (std::size_t i = 0; i < centroids_.size(); ++i)
    if (!(centroids_[i] == other.centroids_[i]).all()) return false;
  return true;
}

TemplateSet build_templates(std::span<const LabeledGrid> examples) {
  if (examples.empty()) throw ModelError("no examples");
  std::vector<std::string> labels;
  for (const auto& [label, grid] : examples) labels.push_back(label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return build_templates(examples, labels);
}

TemplateSet build_templates(std::span<const LabeledGrid> examples, std::span<const std::string> declared) {
  if (examples.empty()) throw ModelError("no examples");
  const int cols = examples.front().second.cols();
  const int rows = examples.front().second.rows();

  std::map<std::string, std::pair<TemplateSet::Centroid, int>> sums;
  for (const std::string& label : declared) sums.emplace(label, std::pair{TemplateSet::Centroid::Zero(rows, cols), 0});
  for (const auto& [label, grid] : examples) {
    if (grid.cols() != cols || grid.rows() != rows) throw DimensionError("example grids have mixed dimensions");
    auto it = sums.find(label);
    if (it == sums.end()) throw ModelError("example label '" + label + "' was not declared");
    it->second.first += grid.cells().cast<double>();
    ++it->second.second;
  }

  std::vector<std::string> labels;
  std::vector<TemplateSet::Centroid> centroids;
  for (auto& [label, acc] : sums) {
    if (acc.second == 0) throw ModelError("label '" + label + "' has no examples");
    labels.push_back(label);
    centroids.push_back(acc.first / acc.second);
  }
  return TemplateSet(cols, rows, std::move(labels), std::move(centroids));
}

Eigen::VectorXd centroid_distances(const BinaryGrid& grid, const TemplateSet& model) {
  if (grid.cols() != model.cols() || grid.rows() != model.rows())
    throw DimensionError("grid is " + std::to_string(grid.cols()) + "x" + std::to_string(grid.rows()) +
                         " but the model expects " + std::to_string(model.cols()) + "x" +
                         std::to_string(model.rows()));
  const Eigen::ArrayXXd cells = grid.cells().cast<double>();
  Eigen::VectorXd d(static_cast<Eigen::Index>(model.size()));
  for (std::size_t i = 0; i < model.size(); ++i)
    d(static_cast<Eigen::Index>(i)) = (cells - model.centroids()[i]).square().mean();
  return d;
}

RecognitionResult classify(const BinaryGrid& grid, const TemplateSet& model, double tau) {
  if (model.size() == 0) throw ModelError("empty model");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ContractError("temperature must be positive");
  const Eigen::VectorXd confidence = softmax_confidences(centroid_distances(grid, model), tau);

  std::vector<std::size_t> order(model.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ca = confidence(static_cast<Eigen::Index>(a));
    const double cb = confidence(static_cast<Eigen::Index>(b));
    if (ca != cb) return ca > cb;
    return model.labels()[a] < model.labels()[b];
  });

  RecognitionResult result;
  const std::size_t k = std::min(kTopK, model.size());
  for (std::size_t i = 0; i < k; ++i)
    result.entries.push_back({model.labels()[order[i]], confidence(static_cast<Eigen::Index>(order[i]))});
  return result;
}

std::string templates_to_json(const TemplateSet& model) {
  // Hand-laid-out so each centroid reads as a picture: one grid row per line, top first.
  std::string out = "{\n  \"grid\": {\"cols\": " + std::to_string(model.cols()) +
                    ", \"rows\": " + std::to_string(model.rows()) + "},\n  \"classes\": [";
  for (std::size_t i = 0; i < model.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n      \"label\": " + nlohmann::json(model.labels()[i]).dump() + ",\n      \"centroid\": [";
    const auto& c = model.centroids()[i];
    for (int r = model.rows() - 1; r >= 0; --r) {
      out += "\n        ";
      for (int col = 0; col < model.cols(); ++col) {
        out += nlohmann::json(c(r, col)).dump();
        if (r > 0 || col + 1 < model.cols()) out += col + 1 < model.cols() ? ", " : ",";
      }
    }
    out += "\n      ]\n    }";
  }
  out += "\n  ]\n}\n";
  return out;
}

TemplateSet templates_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const int cols = j.at("grid").at("cols").get<int>();
    const int rows = j.at("grid").at("rows").get<int>();
    if (cols < 1 || rows < 1) throw DimensionError("template grid must be at least 1x1");
    std::vector<std::string> labels;
    std::vector<TemplateSet::Centroid> centroids;
    for (const auto& cls : j.at("classes")) {
      labels.push_back(cls.at("label").get<std::string>());
      const auto flat = cls.at("centroid").get<std::vector<double>>();
      if (flat.size() != static_cast<std::size_t>(cols) * rows)
        throw DimensionError("centroid for '" + labels.back() + "' has " + std::to_string(flat.size()) +
                             " values, expected " + std::to_string(cols * rows));
      TemplateSet::Centroid c(rows, cols);
      std::size_t i = 0;
      for (int r = rows - 1; r >= 0; --r)
        for (int col = 0; col < cols; ++col) c(r, col) = flat[i++];
      centroids.push_back(std::move(c));
    }
    return TemplateSet(cols, rows, std::move(labels), std::move(centroids));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("template set JSON: ") + e.what());
  }
}

TemplateSet load_templates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open template set " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return templates_from_json(ss.str());
}

std::string label_from_filename(const std::filesystem::path& file) {
  std::string stem = file.stem().string();
  const auto underscore = stem.rfind('_');
  if (underscore != std::string::npos && underscore + 1 < stem.size() &&
      stem.find_first_not_of("0123456789", underscore + 1) == std::string::npos)
    stem.erase(underscore);
  std::replace(stem.begin(), stem.end(), '_', ' ');
  return stem;
}

std::vector<std::pair<std::string, std::filesystem::path>> list_sketches(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".pgm" || ext == ".png")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::filesystem::path>> out;
  for (auto& f : files) out.emplace_back(label_from_filename(f), std::move(f));
  return out;
}

}  // namespace sketchlevel
