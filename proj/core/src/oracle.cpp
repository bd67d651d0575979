#include "evolab/oracle.hpp"

#include <bit>

#include "evolab/errors.hpp"

namespace evolab {

namespace {

class Enumerator {
 public:
  Enumerator(const EnumeratedFamily& family, int depth, std::uint64_t budget)
      : family_(family), depth_(depth), budget_(budget) {
    std::size_t nodes = TrajectoryTree::node_count(depth);
    labels_.assign(nodes, 0);
    consistent_.assign(nodes, MemberSet());
  }

  void run_root(State root) {
    charge();
    labels_[0] = root;
    consistent_[0] = family_.full_set();
    assign(1);
  }

  int best() const { return best_; }
  std::uint64_t attempts() const { return attempts_; }

  TrajectoryTree witness() const {
    TrajectoryTree tree;
    tree.depth = depth_;
    tree.labels = witness_;
    return tree;
  }

 private:
  void charge() {
    if (++attempts_ > budget_)
      throw BudgetError("tree enumeration budget exhausted", attempts_, budget_);
  }

  // Differing child pairs along the walk from the root down to `node`.
  int path_branch(std::size_t node) const {
    int total = 0;
    while (node > 0) {
      std::size_t parent = (node - 1) / 2;
      total += labels_[2 * parent + 1] != labels_[2 * parent + 2];
      node = parent;
    }
    return total;
  }

  void assign(std::size_t i) {
    if (i == labels_.size()) {
      TrajectoryTree tree{depth_, labels_};
      int b = branching_factor(tree);
      if (b > best_) {
        best_ = b;
        witness_ = labels_;
      }
      return;
    }
    std::size_t parent = (i - 1) / 2;
    int level = std::bit_width(i + 1) - 1;
    for (State y = 0; y < family_.state_count(); ++y) {
      charge();
      MemberSet c = consistent_[parent] & family_.restriction_mask(labels_[parent], y);
      if (c.none()) continue;
      labels_[i] = y;
      consistent_[i] = std::move(c);
      if (i % 2 == 0) {
        // The sibling pair under `parent` is complete; no tree extending this
        // assignment can exceed the branch count accumulated so far plus one
        // per remaining level, so equal-or-worse subtrees are skipped. Only
        // strict improvements are recorded, which keeps the first (least)
        // maximizer intact.
        int cap = path_branch(parent) + (labels_[i - 1] != labels_[i]) + (depth_ - level);
        if (cap <= best_) continue;
      }
      assign(i + 1);
    }
  }

  const EnumeratedFamily& family_;
  int depth_;
  std::uint64_t budget_;
  std::uint64_t attempts_ = 0;
  int best_ = -1;
  std::vector<State> labels_;
  std::vector<State> witness_;
  std::vector<MemberSet> consistent_;
};

}  // namespace

OracleResult brute_force_max_branching(const EnumeratedFamily& family, int depth,
                                       std::optional<State> root,
                                       std::uint64_t budget) {
  if (depth < 0) throw SpecError("tree depth must be non-negative");
  if (depth > 20) throw SpecError("tree depth out of range for enumeration");
  Enumerator e(family, depth, budget);
  if (root) {
    if (*root >= family.state_count()) throw SpecError("root state out of range");
    e.run_root(*root);
  } else {
    for (State x = 0; x < family.state_count(); ++x) e.run_root(x);
  }
  return OracleResult{e.best(), e.witness(), e.attempts()};
}

}  // namespace evolab
