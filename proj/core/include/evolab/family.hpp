#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evolab/member_set.hpp"
#include "evolab/state_space.hpp"

namespace evolab {

// Observed trajectory; stream[0] is the start state x0 and stream[t] the state
// revealed in round t.
using Stream = std::vector<State>;

struct ComparatorResult {
  long long loss = 0;
  std::size_t member = 0;  // lowest index among the minimizers
};

struct RealizabilityResult {
  bool realizable = false;
  MemberSet witness;  // every member consistent with the stream
};

// Finite family of evolution functions over a finite state space, stored as
// explicit transition tables. Member f maps state x to table(f, x); iterating
// a member from a start state generates its flow.
class EnumeratedFamily {
 public:
  EnumeratedFamily(StateSpace space, std::vector<std::vector<State>> tables,
                   std::vector<std::string> member_labels, std::string name);

  const StateSpace& space() const { return space_; }
  const std::string& name() const { return name_; }
  std::size_t member_count() const { return tables_.size(); }
  std::size_t state_count() const { return space_.size(); }
  const std::string& member_label(std::size_t f) const;
  const std::vector<State>& table(std::size_t f) const;

  State apply(std::size_t f, State x) const;
  State iterate(std::size_t f, State x0, long long steps) const;
  // [x0, f(x0), ..., f^T(x0)], length T+1.
  Stream flow(std::size_t f, State x0, int T) const;

  MemberSet full_set() const { return MemberSet(member_count(), true); }

  // Members f with f(x) = y.
  const MemberSet& restriction_mask(State x, State y) const;

  // Members of `version` consistent with the observed transition x -> y.
  MemberSet consistent_subset(const MemberSet& version, State x, State y) const;

  // Distinct successor states {f(x) : f in version}, ascending.
  std::vector<State> projection(const MemberSet& version, State x) const;

  // Largest projection size over all states (successor fan-out of the family).
  std::size_t max_projection() const;

  RealizabilityResult is_realizable(const Stream& stream) const;

  // Best fixed member judged on one-step transitions of the observed stream.
  ComparatorResult markovian_comparator(const Stream& stream) const;

  // Best fixed member judged against its own flow from stream[0].
  ComparatorResult flow_comparator(const Stream& stream) const;

  bool same_tables(const EnumeratedFamily& other) const;

 private:
  StateSpace space_;
  std::string name_;
  std::vector<std::vector<State>> tables_;
  std::vector<std::string> member_labels_;
  std::vector<std::vector<MemberSet>> masks_;  // [x][y]
};

}  // namespace evolab
