#include "patchblur/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include <json.hpp>

#include "patchblur/errors.hpp"
#include "patchblur/parallel.hpp"

namespace patchblur {
namespace {

/// Unbiased draw from [0, bound) via rejection, so fold shuffles do not
/// depend on the standard library's distribution implementation.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

void fisher_yates(std::vector<std::size_t>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ssd = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ssd += d * d;
    }
    s.stddev = std::sqrt(ssd / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

FoldPlan make_folds(const std::vector<int>& labels, const FoldPlanParams& p) {
  if (p.k < 2) raise(Errc::InvalidArgument, "k must be >= 2");
  if (p.shuffles < 1) raise(Errc::InvalidArgument, "shuffles must be >= 1");

  std::vector<std::size_t> class_members[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int label = labels[i];
    if (label != 0 && label != 1) {
      raise(Errc::InvalidArgument, "labels must be 0 or 1");
    }
    class_members[label].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (class_members[c].size() < static_cast<std::size_t>(p.k)) {
      raise(Errc::TooFewSamples,
            "class " + std::to_string(c) + " has fewer samples than folds");
    }
  }

  FoldPlan plan;
  plan.k = p.k;
  plan.shuffles = p.shuffles;
  plan.seed = p.seed;
  plan.assignments.assign(static_cast<std::size_t>(p.shuffles),
                          std::vector<int>(labels.size(), -1));

  std::mt19937_64 rng(p.seed);
  for (int s = 0; s < p.shuffles; ++s) {
    auto& folds = plan.assignments[static_cast<std::size_t>(s)];
    for (int c = 0; c < 2; ++c) {
      std::vector<std::size_t> members = class_members[c];
      fisher_yates(members, rng);
      // Chunked deal: the first (n mod k) folds take one extra sample.
      const std::size_t n_c = members.size();
      const std::size_t base = n_c / static_cast<std::size_t>(p.k);
      const std::size_t extra = n_c % static_cast<std::size_t>(p.k);
      std::size_t cursor = 0;
      for (int f = 0; f < p.k; ++f) {
        const std::size_t take = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
        for (std::size_t j = 0; j < take; ++j) {
          folds[members[cursor++]] = f;
        }
      }
    }
  }
  return plan;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    raise(Errc::ShapeMismatch, "scores and labels do not line up");
  }
  std::size_t n_pos = 0;
  for (int label : labels) {
    if (label != 0 && label != 1) {
      raise(Errc::InvalidArgument, "labels must be 0 or 1");
    }
    n_pos += static_cast<std::size_t>(label);
  }
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    raise(Errc::SingleClass, "AUC needs both classes present");
  }

  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Twice the positive rank sum, using average ranks for ties. Kept
  // integral so the result matches the pair-counting oracle exactly.
  std::uint64_t twice_rank_sum_pos = 0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    // 1-based ranks i+1 .. j share the average (i+1 + j) / 2.
    const std::uint64_t twice_avg_rank = static_cast<std::uint64_t>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[idx[t]] == 1) twice_rank_sum_pos += twice_avg_rank;
    }
    i = j;
  }

  const std::uint64_t np = n_pos;
  const std::uint64_t twice_u = twice_rank_sum_pos - np * (np + 1);
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double accuracy(std::span<const int> preds, std::span<const int> labels) {
  if (preds.size() != labels.size() || preds.empty()) {
    raise(Errc::ShapeMismatch, "predictions and labels do not line up");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double f1_score(std::span<const int> preds, std::span<const int> labels,
                int positive_class) {
  if (preds.size() != labels.size() || preds.empty()) {
    raise(Errc::ShapeMismatch, "predictions and labels do not line up");
  }
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool pred_pos = preds[i] == positive_class;
    const bool is_pos = labels[i] == positive_class;
    if (pred_pos && is_pos) ++tp;
    if (pred_pos && !is_pos) ++fp;
    if (!pred_pos && is_pos) ++fn;
  }
  const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

EvalReport cross_validate(const FeatureMatrix& X, const std::vector<int>& y,
                          const TrainParams& tp, const FoldPlanParams& fp,
                          const std::string& config_id, unsigned threads) {
  if (X.rows != y.size() || X.rows == 0) {
    raise(Errc::ShapeMismatch, "features and labels do not line up");
  }
  const FoldPlan plan = make_folds(y, fp);

  EvalReport report;
  report.k = fp.k;
  report.shuffles = fp.shuffles;
  report.seed = fp.seed;
  report.config_id = config_id;
  report.n_samples = X.rows;
  for (int label : y) {
    if (label == 1) {
      report.n_blur++;
    } else {
      report.n_sharp++;
    }
  }

  const std::size_t n_runs =
      static_cast<std::size_t>(fp.shuffles) * static_cast<std::size_t>(fp.k);
  report.per_run.resize(n_runs);

  parallel_for(n_runs, threads, [&](std::size_t run) {
    const int shuffle = static_cast<int>(run) / fp.k;
    const int fold = static_cast<int>(run) % fp.k;
    const auto& folds = plan.assignments[static_cast<std::size_t>(shuffle)];

    FeatureMatrix train_X;
    train_X.cols = X.cols;
    std::vector<int> train_y;
    std::vector<std::size_t> val_idx;
    for (std::size_t i = 0; i < X.rows; ++i) {
      if (folds[i] == fold) {
        val_idx.push_back(i);
      } else {
        const auto row = X.row(i);
        train_X.values.insert(train_X.values.end(), row.begin(), row.end());
        train_y.push_back(y[i]);
      }
    }
    train_X.rows = train_y.size();

    const GbdtModel model = train(train_X, train_y, tp);

    std::vector<double> scores(val_idx.size());
    std::vector<int> preds(val_idx.size());
    std::vector<int> truth(val_idx.size());
    for (std::size_t v = 0; v < val_idx.size(); ++v) {
      scores[v] = predict_proba(model, X.row(val_idx[v]));
      preds[v] = scores[v] > 0.5 ? 1 : 0;
      truth[v] = y[val_idx[v]];
    }

    RunMetrics m;
    m.accuracy = accuracy(preds, truth);
    m.auc = roc_auc(scores, truth);
    m.f1_blur = f1_score(preds, truth, 1);
    m.f1_sharp = f1_score(preds, truth, 0);
    report.per_run[run] = m;
  });

  std::vector<double> acc;
  std::vector<double> auc;
  std::vector<double> f1b;
  std::vector<double> f1s;
  for (const RunMetrics& m : report.per_run) {
    acc.push_back(m.accuracy);
    auc.push_back(m.auc);
    f1b.push_back(m.f1_blur);
    f1s.push_back(m.f1_sharp);
  }
  report.accuracy = summarize(acc);
  report.auc = summarize(auc);
  report.f1_blur = summarize(f1b);
  report.f1_sharp = summarize(f1s);
  return report;
}

std::string eval_report_to_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["k"] = report.k;
  doc["shuffles"] = report.shuffles;
  doc["seed"] = report.seed;
  doc["config_id"] = report.config_id;
  doc["n_samples"] = report.n_samples;
  doc["class_counts"] = {{"blur", report.n_blur}, {"sharp", report.n_sharp}};
  // k folds means a 1/k validation share per run
  doc["validation_fraction"] = 1.0 / static_cast<double>(report.k);
  auto metric = [](const MetricSummary& s, const std::vector<double>& per_run) {
    return nlohmann::json{{"mean", s.mean}, {"std", s.stddev}, {"per_run", per_run}};
  };
  std::vector<double> acc;
  std::vector<double> auc;
  std::vector<double> f1b;
  std::vector<double> f1s;
  for (const RunMetrics& m : report.per_run) {
    acc.push_back(m.accuracy);
    auc.push_back(m.auc);
    f1b.push_back(m.f1_blur);
    f1s.push_back(m.f1_sharp);
  }
  doc["metrics"] = {
      {"accuracy", metric(report.accuracy, acc)},
      {"auc", metric(report.auc, auc)},
      {"f1_blur", metric(report.f1_blur, f1b)},
      {"f1_sharp", metric(report.f1_sharp, f1s)},
  };
  return doc.dump(2) + "\n";
}

std::string eval_report_table(const EvalReport& report) {
  std::string out;
  out += "config: " + (report.config_id.empty() ? "(unspecified)" : report.config_id) + "\n";
  out += "protocol: stratified " + std::to_string(report.k) + "-fold x " +
         std::to_string(report.shuffles) + " shuffles (" +
         format_fixed(100.0 / report.k, 0) + "% validation per run), seed " +
         std::to_string(report.seed) + "\n";
  out += "samples: " + std::to_string(report.n_samples) + " (blur " +
         std::to_string(report.n_blur) + ", sharp " +
         std::to_string(report.n_sharp) + ")\n";
  out += "Accuracy | AUC | F1 (blur) | F1 (sharp)\n";
  out += format_fixed(report.accuracy.mean * 100.0, 1) + " ± " +
         format_fixed(report.accuracy.stddev * 100.0, 1) + " | " +
         format_fixed(report.auc.mean, 3) + " ± " +
         format_fixed(report.auc.stddev, 3) + " | " +
         format_fixed(report.f1_blur.mean, 3) + " ± " +
         format_fixed(report.f1_blur.stddev, 3) + " | " +
         format_fixed(report.f1_sharp.mean, 3) + " ± " +
         format_fixed(report.f1_sharp.stddev, 3) + "\n";
  return out;
}

}  // namespace patchblur
