#include "evolab/trajectory_tree.hpp"

#include <string>

#include "evolab/errors.hpp"

namespace evolab {

std::string tree_prefix(std::size_t node) {
  std::string prefix;
  while (node > 0) {
    prefix.insert(prefix.begin(), node % 2 == 1 ? '0' : '1');
    node = (node - 1) / 2;
  }
  return prefix;
}

namespace {

std::size_t node_of(const std::string& prefix) {
  std::size_t node = 0;
  for (char c : prefix) {
    if (c != '0' && c != '1') throw SpecError("tree JSON key must be a 0/1 prefix");
    node = 2 * node + (c == '0' ? 1 : 2);
  }
  return node;
}

void check(const TrajectoryTree& tree) {
  if (tree.depth < 0) throw SpecError("tree depth must be non-negative");
  if (tree.depth > 62) throw SpecError("tree depth out of range");
  if (tree.labels.size() != TrajectoryTree::node_count(tree.depth))
    throw SpecError("tree label count must match its depth");
}

}  // namespace

std::size_t TrajectoryTree::node_count(int depth) {
  return (std::size_t{1} << (depth + 1)) - 1;
}

State TrajectoryTree::root() const {
  if (labels.empty()) throw SpecError("tree has no nodes");
  return labels[0];
}

std::vector<State> TrajectoryTree::path_states(std::uint64_t path) const {
  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(depth) + 1);
  for (std::size_t node : path_nodes(path)) states.push_back(labels[node]);
  return states;
}

std::vector<std::size_t> TrajectoryTree::path_nodes(std::uint64_t path) const {
  check(*this);
  std::vector<std::size_t> nodes;
  nodes.reserve(static_cast<std::size_t>(depth) + 1);
  std::size_t node = 0;
  nodes.push_back(node);
  for (int t = 0; t < depth; ++t) {
    node = 2 * node + (((path >> t) & 1u) ? 2 : 1);
    nodes.push_back(node);
  }
  return nodes;
}

int branching_factor(const TrajectoryTree& tree) {
  check(tree);
  // Bottom-up: value of a node at the deepest level is 0; above, the value is
  // min(value(left), value(right)) + [left and right child states differ].
  std::vector<int> value(tree.labels.size(), 0);
  std::size_t first_leaf = tree.labels.size() / 2;
  for (std::size_t i = first_leaf; i-- > 0;) {
    std::size_t l = 2 * i + 1, r = 2 * i + 2;
    value[i] = std::min(value[l], value[r]) + (tree.labels[l] != tree.labels[r] ? 1 : 0);
  }
  return value[0];
}

ShatterResult is_shattered(const TrajectoryTree& tree, const EnumeratedFamily& family) {
  check(tree);
  for (State x : tree.labels)
    if (x >= family.state_count()) throw SpecError("tree label outside the state space");
  ShatterResult result;
  std::size_t paths = std::size_t{1} << tree.depth;
  result.path_members.assign(paths, 0);
  for (std::uint64_t path = 0; path < paths; ++path) {
    auto states = tree.path_states(path);
    MemberSet consistent = family.full_set();
    for (std::size_t t = 1; t < states.size(); ++t) {
      consistent &= family.restriction_mask(states[t - 1], states[t]);
      if (consistent.none()) return result;
    }
    result.path_members[path] = consistent.lowest();
  }
  result.shattered = true;
  return result;
}

Json tree_to_json(const TrajectoryTree& tree, const StateSpace& space) {
  check(tree);
  Json labels = Json::object();
  for (std::size_t i = 0; i < tree.labels.size(); ++i)
    labels[tree_prefix(i)] = space.label(tree.labels[i]);
  return Json{{"depth", tree.depth}, {"labels", labels}};
}

TrajectoryTree tree_from_json(const Json& j, const StateSpace& space) {
  if (!j.is_object() || !j.contains("depth") || !j.contains("labels"))
    throw SpecError("tree JSON must carry 'depth' and 'labels'");
  TrajectoryTree tree;
  tree.depth = j.at("depth").get<int>();
  if (tree.depth < 0 || tree.depth > 30) throw SpecError("tree depth out of range");
  tree.labels.assign(TrajectoryTree::node_count(tree.depth), 0);
  const Json& labels = j.at("labels");
  if (!labels.is_object() || labels.size() != tree.labels.size())
    throw SpecError("tree JSON must label every node exactly once");
  for (auto it = labels.begin(); it != labels.end(); ++it) {
    std::size_t node = node_of(it.key());
    if (node >= tree.labels.size()) throw SpecError("tree JSON key exceeds depth");
    tree.labels[node] = space.require(it.value().get<std::string>());
  }
  return tree;
}

}  // namespace evolab
