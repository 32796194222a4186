#include <cmath>
#include <json.hpp>

#include "patchblur/errors.hpp"
#include "patchblur/gbdt.hpp"
#include "patchblur/io_util.hpp"

namespace patchblur {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json tree_to_json(const Tree& tree) {
  json nodes = json::array();
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const TreeNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      nodes.push_back({{"id", id}, {"leaf", n.leaf}});
    } else {
      nodes.push_back({{"id", id},
                       {"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right}});
    }
  }
  return json{{"nodes", std::move(nodes)}};
}

int tree_depth(const Tree& tree, int id, int depth) {
  const TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
  if (n.is_leaf()) return depth;
  return std::max(tree_depth(tree, n.left, depth + 1),
                  tree_depth(tree, n.right, depth + 1));
}

void validate_tree(const Tree& tree, std::size_t n_features, int max_depth) {
  if (tree.nodes.empty()) {
    raise(Errc::InvalidArgument, "model tree has no nodes");
  }
  const int count = static_cast<int>(tree.nodes.size());
  std::vector<int> seen(tree.nodes.size(), 0);
  for (int id = 0; id < count; ++id) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
    if (n.is_leaf()) {
      if (!std::isfinite(n.leaf)) {
        raise(Errc::InvalidArgument, "model leaf weight is not finite");
      }
      continue;
    }
    if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= n_features) {
      raise(Errc::InvalidArgument, "model split references a bad feature");
    }
    if (!std::isfinite(n.threshold)) {
      raise(Errc::InvalidArgument, "model threshold is not finite");
    }
    // children strictly after the parent keeps the tree acyclic
    if (n.left <= id || n.right <= id || n.left >= count || n.right >= count ||
        n.left == n.right) {
      raise(Errc::InvalidArgument, "model tree has malformed child links");
    }
    seen[static_cast<std::size_t>(n.left)]++;
    seen[static_cast<std::size_t>(n.right)]++;
  }
  if (seen[0] != 0) {
    raise(Errc::InvalidArgument, "model tree root has a parent");
  }
  for (int id = 1; id < count; ++id) {
    if (seen[static_cast<std::size_t>(id)] != 1) {
      raise(Errc::InvalidArgument, "model tree node is not linked exactly once");
    }
  }
  if (tree_depth(tree, 0, 0) > max_depth) {
    raise(Errc::InvalidArgument, "model tree exceeds max_depth");
  }
}

}  // namespace

std::string model_to_json(const GbdtModel& model) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["params"] = {
      {"max_depth", model.params.max_depth},
      {"learning_rate", model.params.learning_rate},
      {"n_estimators", model.params.n_estimators},
      {"gamma", model.params.gamma},
      {"lambda", model.params.lambda},
      {"min_child_weight", model.params.min_child_weight},
      {"base_score", model.params.base_score},
      {"seed", model.params.seed},
  };
  doc["config_id"] = model.config_id;
  doc["n_features"] = model.n_features;
  json trees = json::array();
  for (const Tree& t : model.trees) trees.push_back(tree_to_json(t));
  doc["trees"] = std::move(trees);
  return doc.dump();
}

GbdtModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::InvalidArgument, std::string("malformed model file: ") + e.what());
  }

  GbdtModel model;
  try {
    if (doc.at("format_version").get<int>() != kFormatVersion) {
      raise(Errc::InvalidArgument, "unsupported model format_version");
    }
    const json& p = doc.at("params");
    model.params.max_depth = p.at("max_depth").get<int>();
    model.params.learning_rate = p.at("learning_rate").get<double>();
    model.params.n_estimators = p.at("n_estimators").get<int>();
    model.params.gamma = p.at("gamma").get<double>();
    model.params.lambda = p.at("lambda").get<double>();
    model.params.min_child_weight = p.at("min_child_weight").get<double>();
    model.params.base_score = p.at("base_score").get<double>();
    model.params.seed = p.at("seed").get<std::uint64_t>();
    model.config_id = doc.at("config_id").get<std::string>();
    model.n_features = doc.at("n_features").get<std::size_t>();

    for (const json& jt : doc.at("trees")) {
      Tree tree;
      const json& nodes = jt.at("nodes");
      tree.nodes.resize(nodes.size());
      for (const json& jn : nodes) {
        const std::size_t id = jn.at("id").get<std::size_t>();
        if (id >= tree.nodes.size()) {
          raise(Errc::InvalidArgument, "model node id out of range");
        }
        TreeNode& n = tree.nodes[id];
        if (jn.contains("leaf")) {
          n.feature = -1;
          n.leaf = jn.at("leaf").get<double>();
        } else {
          n.feature = jn.at("feature").get<int>();
          n.threshold = jn.at("threshold").get<double>();
          n.left = jn.at("left").get<int>();
          n.right = jn.at("right").get<int>();
        }
      }
      model.trees.push_back(std::move(tree));
    }
  } catch (const json::exception& e) {
    raise(Errc::InvalidArgument, std::string("malformed model file: ") + e.what());
  }

  model.params.validate();
  if (model.n_features == 0) {
    raise(Errc::InvalidArgument, "model n_features must be positive");
  }
  for (const Tree& t : model.trees) {
    validate_tree(t, model.n_features, model.params.max_depth);
  }
  return model;
}

void save_model(const GbdtModel& model, const std::filesystem::path& path) {
  atomic_write_text(path, model_to_json(model));
}

GbdtModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_text_file(path));
}

}  // namespace patchblur
