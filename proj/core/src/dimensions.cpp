#include "evolab/dimensions.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "evolab/errors.hpp"

namespace evolab {

namespace {

struct TopTwo {
  int m1 = -1, m2 = -1;
  State y1 = 0, y2 = 0;

  // Values must arrive in ascending state order so that ties resolve to the
  // lowest state.
  void offer(State y, int value) {
    if (value > m1) {
      m2 = m1;
      y2 = y1;
      m1 = value;
      y1 = y;
    } else if (value > m2) {
      m2 = value;
      y2 = y;
    }
  }
};

}  // namespace

DimensionEngine::DimensionEngine(const EnumeratedFamily& family) : family_(family) {}

int DimensionEngine::complexity(const MemberSet& version, State x, int depth) {
  if (depth < 0) throw SpecError("depth must be non-negative");
  if (version.none()) throw SpecError("version space must be nonempty");
  if (depth == 0) return 0;
  ComplexityKey key{version, x, depth};
  {
    std::shared_lock lock(mutex_);
    auto it = complexity_memo_.find(key);
    if (it != complexity_memo_.end()) return it->second;
  }
  TopTwo top;
  std::vector<State> proj = family_.projection(version, x);
  for (State y : proj)
    top.offer(y, complexity(version & family_.restriction_mask(x, y), y, depth - 1));
  int value = proj.size() == 1 ? top.m1 : std::max(top.m1, 1 + top.m2);
  {
    std::unique_lock lock(mutex_);
    complexity_memo_.emplace(std::move(key), value);
  }
  return value;
}

int DimensionEngine::complexity_at(State root, int depth) {
  return complexity(family_.full_set(), root, depth);
}

int DimensionEngine::complexity(int depth) {
  int best = 0;
  for (State x = 0; x < family_.state_count(); ++x)
    best = std::max(best, complexity_at(x, depth));
  return best;
}

DimensionEngine::Split DimensionEngine::complexity_split(const MemberSet& version,
                                                         State x, int depth) {
  TopTwo top;
  std::vector<State> proj = family_.projection(version, x);
  for (State y : proj)
    top.offer(y, complexity(version & family_.restriction_mask(x, y), y, depth - 1));
  if (proj.size() == 1 || top.m1 >= 1 + top.m2)
    return Split{top.m1, top.y1, top.y1};
  return Split{1 + top.m2, top.y1, top.y2};
}

void DimensionEngine::fill_witness(TrajectoryTree& tree, std::size_t node,
                                   const MemberSet& version, State x, int depth) {
  tree.labels[node] = x;
  if (depth == 0) return;
  Split split = complexity_split(version, x, depth);
  fill_witness(tree, 2 * node + 1, version & family_.restriction_mask(x, split.left),
               split.left, depth - 1);
  fill_witness(tree, 2 * node + 2, version & family_.restriction_mask(x, split.right),
               split.right, depth - 1);
}

TrajectoryTree DimensionEngine::witness(const MemberSet& version, State x, int depth) {
  if (depth < 0) throw SpecError("depth must be non-negative");
  if (version.none()) throw SpecError("version space must be nonempty");
  TrajectoryTree tree;
  tree.depth = depth;
  tree.labels.assign(TrajectoryTree::node_count(depth), 0);
  fill_witness(tree, 0, version, x, depth);
  return tree;
}

TrajectoryTree DimensionEngine::witness_at(State root, int depth) {
  return witness(family_.full_set(), root, depth);
}

TrajectoryTree DimensionEngine::witness(int depth) {
  State best_root = 0;
  int best = -1;
  for (State x = 0; x < family_.state_count(); ++x) {
    int v = complexity_at(x, depth);
    if (v > best) {
      best = v;
      best_root = x;
    }
  }
  return witness_at(best_root, depth);
}

int DimensionEngine::evolution_dimension(const Rational& gamma) {
  if (gamma.num <= 0) throw SpecError("rate parameter must be positive");
  int dim = branching_dimension();
  // complexity(d) <= dim for every d, so depths beyond dim/gamma cannot
  // satisfy complexity(d) >= gamma * d.
  long long bound = static_cast<long long>(dim) * gamma.den / gamma.num;
  int result = 0;
  for (long long d = 1; d <= bound; ++d) {
    long long c = complexity(static_cast<int>(d));
    if (gamma.den * c >= gamma.num * d) result = static_cast<int>(d);
  }
  return result;
}

SandwichReport DimensionEngine::sandwich_check(int T,
                                               const std::vector<Rational>& gammas) {
  if (T < 0) throw SpecError("horizon must be non-negative");
  SandwichReport report;
  report.T = T;
  report.complexity = complexity(T);
  report.pass = true;
  for (const Rational& gamma : gammas) {
    long long e = evolution_dimension(gamma);
    long long lower = gamma.num * e - gamma.den * std::max<long long>(e - T, 0);
    long long mid = gamma.den * static_cast<long long>(report.complexity);
    long long upper = gamma.num * (std::max<long long>(e, T) + 1);
    bool ok = lower <= mid && mid <= upper;
    report.rows.push_back({gamma.str(), static_cast<int>(e), ok});
    report.pass = report.pass && ok;
  }
  return report;
}

void DimensionEngine::run_value_iteration() {
  {
    std::shared_lock lock(mutex_);
    if (branching_dim_) return;
  }
  struct NodeKey {
    MemberSet version;
    State x;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
      return k.version.hash() * 2654435761u ^ static_cast<std::size_t>(k.x);
    }
  };
  std::unordered_map<NodeKey, std::size_t, NodeKeyHash> index;
  std::vector<std::vector<std::size_t>> children;
  std::deque<NodeKey> queue;
  std::vector<std::size_t> roots;

  auto intern = [&](NodeKey key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::size_t id = index.size();
    index.emplace(key, id);
    children.emplace_back();
    queue.push_back(std::move(key));
    return id;
  };

  MemberSet full = family_.full_set();
  for (State x = 0; x < family_.state_count(); ++x) roots.push_back(intern({full, x}));

  std::size_t processed = 0;
  while (processed < queue.size()) {
    NodeKey node = queue[processed];
    std::vector<std::size_t> kids;
    for (State y : family_.projection(node.version, node.x))
      kids.push_back(intern({node.version & family_.restriction_mask(node.x, y), y}));
    children[processed] = std::move(kids);
    ++processed;
  }

  // Jacobi sweeps: after sweep k the value at a node equals its depth-k
  // complexity, so the first unchanged sweep certifies stabilization.
  std::vector<int> value(children.size(), 0), next(children.size(), 0);
  int sweeps = 0;
  while (true) {
    for (std::size_t i = 0; i < children.size(); ++i) {
      TopTwo top;
      State pseudo = 0;
      for (std::size_t c : children[i]) top.offer(pseudo++, value[c]);
      next[i] = children[i].size() == 1 ? top.m1 : std::max(top.m1, 1 + top.m2);
    }
    ++sweeps;
    if (next == value) break;
    value = next;
  }

  int dim = 0;
  for (std::size_t r : roots) dim = std::max(dim, value[r]);
  {
    std::unique_lock lock(mutex_);
    branching_dim_ = dim;
    stabilization_depth_ = sweeps - 1;
  }
}

int DimensionEngine::branching_dimension() {
  run_value_iteration();
  std::shared_lock lock(mutex_);
  return *branching_dim_;
}

int DimensionEngine::stabilization_depth() {
  run_value_iteration();
  std::shared_lock lock(mutex_);
  return *stabilization_depth_;
}

int DimensionEngine::littlestone(const MemberSet& version) {
  if (version.none()) throw SpecError("version space must be nonempty");
  {
    std::shared_lock lock(mutex_);
    auto it = littlestone_memo_.find(version);
    if (it != littlestone_memo_.end()) return it->second;
  }
  int best = 0;
  for (State x = 0; x < family_.state_count(); ++x) {
    std::vector<State> proj = family_.projection(version, x);
    if (proj.size() < 2) continue;
    TopTwo top;
    for (State y : proj)
      top.offer(y, littlestone(version & family_.restriction_mask(x, y)));
    best = std::max(best, 1 + top.m2);
  }
  {
    std::unique_lock lock(mutex_);
    littlestone_memo_.emplace(version, best);
  }
  return best;
}

int DimensionEngine::littlestone_dimension() { return littlestone(family_.full_set()); }

void DimensionEngine::fill_littlestone(LittlestoneTree& tree, std::size_t node,
                                       const MemberSet& version, int depth) {
  if (depth == 0) return;
  for (State x = 0; x < family_.state_count(); ++x) {
    std::vector<State> proj = family_.projection(version, x);
    if (proj.size() < 2) continue;
    TopTwo top;
    for (State y : proj)
      top.offer(y, littlestone(version & family_.restriction_mask(x, y)));
    if (1 + top.m2 != depth) continue;
    tree.instances[node] = x;
    State left = std::min(top.y1, top.y2), right = std::max(top.y1, top.y2);
    tree.edge_labels[2 * node + 1] = left;
    tree.edge_labels[2 * node + 2] = right;
    fill_littlestone(tree, 2 * node + 1, version & family_.restriction_mask(x, left),
                     depth - 1);
    fill_littlestone(tree, 2 * node + 2, version & family_.restriction_mask(x, right),
                     depth - 1);
    return;
  }
  throw SpecError("no instance splits the version space at the claimed depth");
}

LittlestoneTree DimensionEngine::littlestone_witness() {
  LittlestoneTree tree;
  tree.depth = littlestone_dimension();
  std::size_t nodes = TrajectoryTree::node_count(tree.depth);
  tree.instances.assign(nodes, 0);
  tree.edge_labels.assign(nodes, 0);
  fill_littlestone(tree, 0, family_.full_set(), tree.depth);
  std::size_t paths = std::size_t{1} << tree.depth;
  tree.path_members.assign(paths, 0);
  for (std::uint64_t path = 0; path < paths; ++path) {
    MemberSet version = family_.full_set();
    std::size_t node = 0;
    for (int t = 0; t < tree.depth; ++t) {
      State x = tree.instances[node];
      node = 2 * node + (((path >> t) & 1u) ? 2 : 1);
      version &= family_.restriction_mask(x, tree.edge_labels[node]);
    }
    tree.path_members[path] = version.lowest();
  }
  return tree;
}

bool ds_shattered(const EnumeratedFamily& family, const std::vector<State>& points) {
  if (points.empty()) throw SpecError("point set must be nonempty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= family.state_count()) throw SpecError("point out of range");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw SpecError("point set must be duplicate-free");
  }
  std::vector<std::vector<State>> behaviors;
  for (std::size_t f = 0; f < family.member_count(); ++f) {
    std::vector<State> b;
    b.reserve(points.size());
    for (State x : points) b.push_back(family.apply(f, x));
    if (std::find(behaviors.begin(), behaviors.end(), b) == behaviors.end())
      behaviors.push_back(std::move(b));
  }
  // Repeatedly delete behaviors missing a one-coordinate neighbor; the
  // remainder is the largest subset in which every behavior has, in every
  // coordinate, a mate differing there and nowhere else.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t h = behaviors.size(); h-- > 0;) {
      bool keep = true;
      for (std::size_t c = 0; c < points.size() && keep; ++c) {
        bool neighbor = false;
        for (const auto& g : behaviors) {
          if (g[c] == behaviors[h][c]) continue;
          bool same_elsewhere = true;
          for (std::size_t j = 0; j < points.size(); ++j)
            if (j != c && g[j] != behaviors[h][j]) {
              same_elsewhere = false;
              break;
            }
          if (same_elsewhere) {
            neighbor = true;
            break;
          }
        }
        keep = neighbor;
      }
      if (!keep) {
        behaviors.erase(behaviors.begin() + static_cast<std::ptrdiff_t>(h));
        changed = true;
      }
    }
  }
  return !behaviors.empty();
}

DsResult ds_dimension(const EnumeratedFamily& family, int size_cap) {
  if (size_cap < 0) throw SpecError("size cap must be non-negative");
  int limit = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(size_cap), family.state_count()));
  DsResult result{0, false};
  for (int d = 1; d <= limit; ++d) {
    bool found = false;
    std::vector<State> combo(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) combo[static_cast<std::size_t>(i)] = static_cast<State>(i);
    while (true) {
      if (ds_shattered(family, combo)) {
        found = true;
        break;
      }
      int i = d - 1;
      while (i >= 0 &&
             combo[static_cast<std::size_t>(i)] ==
                 static_cast<State>(family.state_count() - static_cast<std::size_t>(d - i)))
        --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < d; ++j)
        combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (!found) {
      result.exact = true;
      return result;
    }
    result.value = d;
  }
  result.exact = limit == static_cast<int>(family.state_count());
  return result;
}

Json littlestone_tree_to_json(const LittlestoneTree& tree, const StateSpace& space) {
  Json instances = Json::object();
  Json edges = Json::object();
  std::size_t internal = tree.instances.size() / 2;
  for (std::size_t i = 0; i < tree.instances.size(); ++i) {
    if (i < internal) instances[tree_prefix(i)] = space.label(tree.instances[i]);
    if (i > 0) edges[tree_prefix(i)] = space.label(tree.edge_labels[i]);
  }
  Json members = Json::array();
  for (std::size_t m : tree.path_members) members.push_back(m);
  return Json{{"depth", tree.depth},
              {"instances", instances},
              {"edges", edges},
              {"path_members", members}};
}

Json dimension_report_json(const DimensionReport& report, const StateSpace& space) {
  Json j;
  j["family"] = report.family;
  j["members"] = report.members;
  j["states"] = report.states;
  j["complexity"] = report.complexity;
  if (!report.evolution.empty()) {
    Json rows = Json::array();
    for (const auto& [gamma, value] : report.evolution)
      rows.push_back(Json{{"gamma", gamma}, {"value", value}});
    j["evolution"] = rows;
  }
  if (report.branching) j["branching"] = *report.branching;
  if (report.littlestone) j["littlestone"] = *report.littlestone;
  if (report.ds) j["ds"] = Json{{"value", report.ds->value}, {"exact", report.ds->exact}};
  if (report.complexity_witness)
    j["complexity_witness"] = tree_to_json(*report.complexity_witness, space);
  if (report.littlestone_witness)
    j["littlestone_witness"] = littlestone_tree_to_json(*report.littlestone_witness, space);
  return j;
}

}  // namespace evolab
