#include "patchblur/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "patchblur/errors.hpp"

namespace patchblur {
namespace {

constexpr double kNoGain = -std::numeric_limits<double>::infinity();

struct SplitCandidate {
  double gain = kNoGain;
  int feature = -1;
  double threshold = 0.0;
};

/// Scan state per active node while sweeping one feature in sorted order.
struct NodeScan {
  double acc_g = 0.0;
  double acc_h = 0.0;
  double last_value = 0.0;
  bool has_prev = false;
};

struct ActiveNode {
  int tree_node = -1;
  double sum_g = 0.0;
  double sum_h = 0.0;
  SplitCandidate best;
};

double gain_term(double g, double h, double lambda) {
  return g * g / (h + lambda);
}

/// Midpoint threshold between two adjacent distinct values. Guaranteed to
/// lie strictly above `lo` so that every sample at `lo` routes left.
double split_threshold(double lo, double hi) {
  double mid = lo + (hi - lo) * 0.5;
  if (!std::isfinite(mid)) mid = lo * 0.5 + hi * 0.5;
  return mid > lo ? mid : hi;
}

}  // namespace

void TrainParams::validate() const {
  if (max_depth < 1) raise(Errc::InvalidArgument, "max_depth must be >= 1");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    raise(Errc::InvalidArgument, "learning_rate must be in (0, 1]");
  }
  if (n_estimators < 1) raise(Errc::InvalidArgument, "n_estimators must be >= 1");
  if (!(gamma >= 0.0)) raise(Errc::InvalidArgument, "gamma must be >= 0");
  if (!(lambda >= 0.0)) raise(Errc::InvalidArgument, "lambda must be >= 0");
  if (!(min_child_weight >= 0.0)) {
    raise(Errc::InvalidArgument, "min_child_weight must be >= 0");
  }
  if (!(base_score > 0.0 && base_score < 1.0)) {
    raise(Errc::InvalidArgument, "base_score must be in (0, 1)");
  }
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double Tree::leaf_value(std::span<const double> x) const {
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const TreeNode& n = nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(id)].leaf;
}

double GbdtModel::predict_margin(std::span<const double> x,
                                 std::size_t n_trees) const {
  double margin = logit(params.base_score);
  const std::size_t count = std::min(n_trees, trees.size());
  for (std::size_t t = 0; t < count; ++t) margin += trees[t].leaf_value(x);
  return margin;
}

GbdtModel train(const FeatureMatrix& X, const std::vector<int>& y,
                const TrainParams& params, std::string config_id) {
  params.validate();
  const std::size_t n = X.rows;
  const std::size_t n_features = X.cols;
  if (n != y.size() || n < 2 || n_features == 0 ||
      X.values.size() != n * n_features) {
    raise(Errc::ShapeMismatch, "feature matrix and labels do not line up");
  }
  for (double v : X.values) {
    if (!std::isfinite(v)) {
      raise(Errc::NonFiniteFeature, "features must be finite");
    }
  }
  {
    std::size_t positives = 0;
    for (int label : y) {
      if (label != 0 && label != 1) {
        raise(Errc::InvalidArgument, "labels must be 0 or 1");
      }
      positives += static_cast<std::size_t>(label);
    }
    if (positives == 0 || positives == n) {
      raise(Errc::DegenerateLabels, "training labels contain a single class");
    }
  }

  // Presorted sample indices per feature; ties keep index order so the scan
  // is fully deterministic.
  std::vector<std::vector<std::uint32_t>> order(n_features);
  for (std::size_t f = 0; f < n_features; ++f) {
    auto& idx = order[f];
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      const double va = X.at(a, f);
      const double vb = X.at(b, f);
      if (va != vb) return va < vb;
      return a < b;
    });
  }

  GbdtModel model;
  model.params = params;
  model.config_id = std::move(config_id);
  model.n_features = n_features;
  model.trees.reserve(static_cast<std::size_t>(params.n_estimators));

  std::vector<double> margin(n, logit(params.base_score));
  std::vector<double> grad(n);
  std::vector<double> hess(n);
  std::vector<std::int32_t> node_of(n);
  std::vector<std::int32_t> slot_of;  // tree node id -> active slot, or -1

  for (int round = 0; round < params.n_estimators; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(margin[i]);
      grad[i] = p - static_cast<double>(y[i]);
      hess[i] = p * (1.0 - p);
    }

    Tree tree;
    tree.nodes.emplace_back();
    std::fill(node_of.begin(), node_of.end(), 0);

    std::vector<ActiveNode> active(1);
    active[0].tree_node = 0;
    for (std::size_t i = 0; i < n; ++i) {
      active[0].sum_g += grad[i];
      active[0].sum_h += hess[i];
    }

    for (int depth = 0; depth < params.max_depth && !active.empty(); ++depth) {
      slot_of.assign(tree.nodes.size(), -1);
      for (std::size_t a = 0; a < active.size(); ++a) {
        slot_of[static_cast<std::size_t>(active[a].tree_node)] =
            static_cast<std::int32_t>(a);
        active[a].best = SplitCandidate{};
      }

      std::vector<NodeScan> scans(active.size());
      for (std::size_t f = 0; f < n_features; ++f) {
        std::fill(scans.begin(), scans.end(), NodeScan{});
        for (const std::uint32_t i : order[f]) {
          const std::int32_t slot = slot_of[static_cast<std::size_t>(node_of[i])];
          if (slot < 0) continue;
          ActiveNode& node = active[static_cast<std::size_t>(slot)];
          NodeScan& scan = scans[static_cast<std::size_t>(slot)];
          const double value = X.at(i, f);
          if (scan.has_prev && value > scan.last_value) {
            const double g_left = scan.acc_g;
            const double h_left = scan.acc_h;
            const double g_right = node.sum_g - g_left;
            const double h_right = node.sum_h - h_left;
            if (h_left >= params.min_child_weight &&
                h_right >= params.min_child_weight) {
              const double gain =
                  0.5 * (gain_term(g_left, h_left, params.lambda) +
                         gain_term(g_right, h_right, params.lambda) -
                         gain_term(node.sum_g, node.sum_h, params.lambda)) -
                  params.gamma;
              // Strict > keeps the earliest (lowest feature, lowest
              // threshold) candidate on ties.
              if (gain > node.best.gain) {
                node.best.gain = gain;
                node.best.feature = static_cast<int>(f);
                node.best.threshold = split_threshold(scan.last_value, value);
              }
            }
          }
          scan.acc_g += grad[i];
          scan.acc_h += hess[i];
          scan.last_value = value;
          scan.has_prev = true;
        }
      }

      std::vector<ActiveNode> next;
      for (ActiveNode& node : active) {
        TreeNode& tn = tree.nodes[static_cast<std::size_t>(node.tree_node)];
        if (node.best.feature >= 0 && node.best.gain >= 0.0) {
          tn.feature = node.best.feature;
          tn.threshold = node.best.threshold;
          tn.left = static_cast<int>(tree.nodes.size());
          tn.right = tn.left + 1;
          tree.nodes.emplace_back();
          tree.nodes.emplace_back();
          ActiveNode left;
          left.tree_node = tn.left;
          ActiveNode right;
          right.tree_node = tn.right;
          next.push_back(left);
          next.push_back(right);
        } else {
          tn.leaf = -node.sum_g / (node.sum_h + params.lambda) *
                    params.learning_rate;
        }
      }

      if (next.empty()) {
        active.clear();
        break;
      }

      // Route samples and accumulate child stats in index order, so the
      // sums do not depend on which feature produced the split.
      slot_of.assign(tree.nodes.size(), -1);
      for (std::size_t a = 0; a < next.size(); ++a) {
        slot_of[static_cast<std::size_t>(next[a].tree_node)] =
            static_cast<std::int32_t>(a);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const TreeNode& tn = tree.nodes[static_cast<std::size_t>(node_of[i])];
        if (tn.is_leaf()) continue;
        const int child =
            X.at(i, static_cast<std::size_t>(tn.feature)) < tn.threshold
                ? tn.left
                : tn.right;
        node_of[i] = child;
        ActiveNode& an =
            next[static_cast<std::size_t>(slot_of[static_cast<std::size_t>(child)])];
        an.sum_g += grad[i];
        an.sum_h += hess[i];
      }
      active = std::move(next);
    }

    // Anything still active hit the depth limit.
    for (ActiveNode& node : active) {
      TreeNode& tn = tree.nodes[static_cast<std::size_t>(node.tree_node)];
      tn.leaf = -node.sum_g / (node.sum_h + params.lambda) * params.learning_rate;
    }

    for (std::size_t i = 0; i < n; ++i) {
      margin[i] += tree.nodes[static_cast<std::size_t>(node_of[i])].leaf;
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

double predict_proba(const GbdtModel& model, std::span<const double> x) {
  if (x.size() != model.n_features) {
    raise(Errc::ShapeMismatch, "feature vector length does not match model");
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      raise(Errc::NonFiniteFeature, "features must be finite");
    }
  }
  const double p = sigmoid(model.predict_margin(x));
  // Strictly open interval even at extreme margins.
  const double lo = std::numeric_limits<double>::min();
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  return std::clamp(p, lo, hi);
}

int predict_label(const GbdtModel& model, std::span<const double> x,
                  double threshold) {
  return predict_proba(model, x) > threshold ? 1 : 0;
}

double mean_logloss(std::span<const double> margins, std::span<const int> labels) {
  if (margins.size() != labels.size() || margins.empty()) {
    raise(Errc::ShapeMismatch, "margins and labels do not line up");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const double m = margins[i];
    // log(1 + e^m) - y*m, evaluated as softplus for stability
    const double softplus = std::max(m, 0.0) + std::log1p(std::exp(-std::abs(m)));
    total += softplus - static_cast<double>(labels[i]) * m;
  }
  return total / static_cast<double>(margins.size());
}

}  // namespace patchblur
