#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "patchblur/feature_csv.hpp"

namespace patchblur {

/// Training parameters. Defaults mirror the stock XGBoost setup:
/// (max-depth, learning-rate, n-estimators, gamma) = (6, 0.3, 100, 0) with
/// lambda 1, min_child_weight 1 and base_score 0.5.
struct TrainParams {
  int max_depth = 6;
  double learning_rate = 0.3;
  int n_estimators = 100;
  double gamma = 0.0;
  double lambda = 1.0;
  double min_child_weight = 1.0;
  double base_score = 0.5;
  std::uint64_t seed = 0;  // reserved for subsampling, which defaults off

  void validate() const;
};

/// One node of a regression tree. Splits route x[feature] < threshold to
/// the left child; leaves carry the learning-rate-scaled log-odds step.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double leaf = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root; children follow parents

  double leaf_value(std::span<const double> x) const;
};

struct GbdtModel {
  std::vector<Tree> trees;
  TrainParams params;
  std::string config_id;  // FeatureConfig the model expects
  std::size_t n_features = 0;

  /// Raw additive score: logit(base_score) plus the first n_trees leaf
  /// contributions (all trees when n_trees is npos).
  double predict_margin(std::span<const double> x,
                        std::size_t n_trees = static_cast<std::size_t>(-1)) const;
};

/// Second-order gradient boosting of binary logistic loss with exact greedy
/// split search. Deterministic: split-gain ties break toward the lower
/// feature index, then the lower threshold.
GbdtModel train(const FeatureMatrix& X, const std::vector<int>& y,
                const TrainParams& params, std::string config_id = {});

/// Probability of class 1, strictly inside (0, 1).
double predict_proba(const GbdtModel& model, std::span<const double> x);

/// 1 iff predict_proba(x) > threshold.
int predict_label(const GbdtModel& model, std::span<const double> x,
                  double threshold = 0.5);

double sigmoid(double x);
double logit(double p);

/// Mean binary cross-entropy of raw margins against labels; numerically
/// stable for large |margin|.
double mean_logloss(std::span<const double> margins, std::span<const int> labels);

/// Model file round-trip. JSON with decimal numbers that parse back to the
/// identical doubles, so a saved and reloaded model predicts bit-identically.
void save_model(const GbdtModel& model, const std::filesystem::path& path);
GbdtModel load_model(const std::filesystem::path& path);

std::string model_to_json(const GbdtModel& model);
GbdtModel model_from_json(const std::string& text);

}  // namespace patchblur
