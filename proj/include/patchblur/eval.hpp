#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "patchblur/feature_csv.hpp"
#include "patchblur/gbdt.hpp"

namespace patchblur {

struct FoldPlanParams {
  int k = 5;
  int shuffles = 5;
  std::uint64_t seed = 0;
};

/// Stratified fold assignments: per shuffle, per sample, the validation
/// fold index in [0, k). Each class is spread so fold class counts differ
/// from perfect proportionality by at most one sample.
struct FoldPlan {
  int k = 5;
  int shuffles = 5;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> assignments;  // [shuffle][sample] -> fold
};

FoldPlan make_folds(const std::vector<int>& labels, const FoldPlanParams& p);

/// Normalized Mann–Whitney statistic: (concordant + tied/2) / (pos * neg).
/// Rank-based, and exactly equal to the O(n^2) pair count.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

double accuracy(std::span<const int> preds, std::span<const int> labels);

/// Per-class F1 with the given class treated as positive; 0 when
/// precision + recall is 0.
double f1_score(std::span<const int> preds, std::span<const int> labels,
                int positive_class);

struct RunMetrics {
  double accuracy = 0.0;
  double auc = 0.0;
  double f1_blur = 0.0;
  double f1_sharp = 0.0;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1)
};

struct EvalReport {
  int k = 5;
  int shuffles = 5;
  std::uint64_t seed = 0;
  std::string config_id;
  std::size_t n_samples = 0;
  std::size_t n_blur = 0;
  std::size_t n_sharp = 0;
  std::vector<RunMetrics> per_run;  // shuffle-major, then fold
  MetricSummary accuracy;
  MetricSummary auc;
  MetricSummary f1_blur;
  MetricSummary f1_sharp;
};

/// Trains on each train split and scores the held-out fold, aggregating
/// mean +/- sample std across all shuffles * k runs. Runs are independent;
/// `threads` only controls how many execute at once.
EvalReport cross_validate(const FeatureMatrix& X, const std::vector<int>& y,
                          const TrainParams& tp, const FoldPlanParams& fp,
                          const std::string& config_id = {},
                          unsigned threads = 1);

std::string eval_report_to_json(const EvalReport& report);

/// Plain-text row in the style of the results table: accuracy as a
/// percentage, AUC on [0,1], each as mean +/- std.
std::string eval_report_table(const EvalReport& report);

}  // namespace patchblur
