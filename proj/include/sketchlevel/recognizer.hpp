#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sketchlevel/raster.hpp"

namespace sketchlevel {

inline constexpr double kDefaultTemperature = 0.05;
inline constexpr std::size_t kTopK = 5;

struct Recognition {
  std::string label;
  double confidence = 0.0;
  bool operator==(const Recognition&) const = default;
};

/// Up to five labels, confidence descending, ties by label.
struct RecognitionResult {
  std::vector<Recognition> entries;

  const std::string& top_label() const { return entries.front().label; }
  bool operator==(const RecognitionResult&) const = default;
};

/// Nearest-centroid model: one mean-occupancy grid per label. Centroids use
/// BinaryGrid storage layout, (row - 1, col - 1) with row 1 at the bottom.
class TemplateSet {
public:
  using Centroid = Eigen::ArrayXXd;

  TemplateSet(int cols, int rows, std::vector<std::string> labels, std::vector<Centroid> centroids);

  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Centroid>& centroids() const noexcept { return centroids_; }

  bool operator==(const TemplateSet& other) const;

private:
  int cols_;
  int rows_;
  std::vector<std::string> labels_;
  std::vector<Centroid> centroids_;
};

using LabeledGrid = std::pair<std::string, BinaryGrid>;

/// Per-label mean of the example grids; labels come out sorted.
TemplateSet build_templates(std::span<const LabeledGrid> examples);

/// Same, but every label in `declared` must have at least one example.
TemplateSet build_templates(std::span<const LabeledGrid> examples, std::span<const std::string> declared);

/// Mean squared difference between the grid and every centroid.
Eigen::VectorXd centroid_distances(const BinaryGrid& grid, const TemplateSet& model);

/// exp(-d / tau) normalised to sum 1. Shifted by min(d) before exponentiating.
template <typename Derived>
Eigen::VectorXd softmax_confidences(const Eigen::MatrixBase<Derived>& distances, double tau) {
  const Eigen::ArrayXd shifted = (distances.array() - distances.minCoeff()) / tau;
  const Eigen::ArrayXd weights = (-shifted).exp();
  return (weights / weights.sum()).matrix();
}

RecognitionResult classify(const BinaryGrid& grid, const TemplateSet& model, double tau = kDefaultTemperature);

/// JSON: {"grid": {"cols", "rows"}, "classes": [{"label", "centroid": [...]}]},
/// centroid flattened row-major with the top grid row first.
std::string templates_to_json(const TemplateSet& model);
TemplateSet templates_from_json(std::string_view text);
TemplateSet load_templates(const std::filesystem::path& path);

/// "smiling_face_2.pgm" -> "smiling face": stem minus the trailing _<n>, '_' as space.
std::string label_from_filename(const std::filesystem::path& file);

/// Every .pgm/.png in dir, sorted by file name, paired with its label.
std::vector<std::pair<std::string, std::filesystem::path>> list_sketches(const std::filesystem::path& dir);

}  // namespace sketchlevel
