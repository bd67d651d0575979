#include "evolab/family.hpp"

#include "evolab/errors.hpp"

namespace evolab {

EnumeratedFamily::EnumeratedFamily(StateSpace space,
                                   std::vector<std::vector<State>> tables,
                                   std::vector<std::string> member_labels,
                                   std::string name)
    : space_(std::move(space)),
      name_(std::move(name)),
      tables_(std::move(tables)),
      member_labels_(std::move(member_labels)) {
  if (tables_.empty()) throw SpecError("family '" + name_ + "' must be nonempty");
  if (member_labels_.size() != tables_.size())
    throw SpecError("family '" + name_ + "': one label per member required");
  const std::size_t n = space_.size();
  for (const auto& t : tables_) {
    if (t.size() != n)
      throw SpecError("family '" + name_ + "': table size must match state count");
    for (State y : t)
      if (y >= n) throw SpecError("family '" + name_ + "': transition target out of range");
  }
  masks_.assign(n, std::vector<MemberSet>(n, MemberSet(tables_.size())));
  for (std::size_t f = 0; f < tables_.size(); ++f)
    for (State x = 0; x < n; ++x) masks_[x][tables_[f][x]].set(f);
}

const std::string& EnumeratedFamily::member_label(std::size_t f) const {
  if (f >= member_labels_.size()) throw SpecError("member index out of range");
  return member_labels_[f];
}

const std::vector<State>& EnumeratedFamily::table(std::size_t f) const {
  if (f >= tables_.size()) throw SpecError("member index out of range");
  return tables_[f];
}

State EnumeratedFamily::apply(std::size_t f, State x) const {
  if (f >= tables_.size()) throw SpecError("member index out of range");
  if (x >= space_.size()) throw SpecError("state index out of range");
  return tables_[f][x];
}

State EnumeratedFamily::iterate(std::size_t f, State x0, long long steps) const {
  if (steps < 0) throw SpecError("iteration count must be non-negative");
  State x = x0;
  for (long long t = 0; t < steps; ++t) x = apply(f, x);
  return x;
}

Stream EnumeratedFamily::flow(std::size_t f, State x0, int T) const {
  if (T < 0) throw SpecError("horizon must be non-negative");
  Stream s;
  s.reserve(static_cast<std::size_t>(T) + 1);
  s.push_back(x0);
  for (int t = 1; t <= T; ++t) s.push_back(apply(f, s.back()));
  return s;
}

const MemberSet& EnumeratedFamily::restriction_mask(State x, State y) const {
  if (x >= space_.size() || y >= space_.size())
    throw SpecError("state index out of range");
  return masks_[x][y];
}

MemberSet EnumeratedFamily::consistent_subset(const MemberSet& version, State x,
                                              State y) const {
  return version & restriction_mask(x, y);
}

std::vector<State> EnumeratedFamily::projection(const MemberSet& version,
                                                State x) const {
  if (x >= space_.size()) throw SpecError("state index out of range");
  std::vector<State> out;
  for (State y = 0; y < space_.size(); ++y)
    if ((version & masks_[x][y]).any()) out.push_back(y);
  return out;
}

std::size_t EnumeratedFamily::max_projection() const {
  MemberSet full = full_set();
  std::size_t best = 0;
  for (State x = 0; x < space_.size(); ++x)
    best = std::max(best, projection(full, x).size());
  return best;
}

RealizabilityResult EnumeratedFamily::is_realizable(const Stream& stream) const {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  RealizabilityResult r;
  r.witness = full_set();
  for (std::size_t t = 1; t < stream.size(); ++t) {
    r.witness &= restriction_mask(stream[t - 1], stream[t]);
    if (r.witness.none()) return r;
  }
  r.realizable = true;
  return r;
}

ComparatorResult EnumeratedFamily::markovian_comparator(const Stream& stream) const {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  ComparatorResult best{static_cast<long long>(stream.size()), 0};
  for (std::size_t f = 0; f < tables_.size(); ++f) {
    long long loss = 0;
    for (std::size_t t = 1; t < stream.size(); ++t)
      loss += tables_[f][stream[t - 1]] != stream[t];
    if (f == 0 || loss < best.loss) best = {loss, f};
  }
  return best;
}

ComparatorResult EnumeratedFamily::flow_comparator(const Stream& stream) const {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  ComparatorResult best{static_cast<long long>(stream.size()), 0};
  for (std::size_t f = 0; f < tables_.size(); ++f) {
    long long loss = 0;
    State x = stream[0];
    for (std::size_t t = 1; t < stream.size(); ++t) {
      x = tables_[f][x];
      loss += x != stream[t];
    }
    if (f == 0 || loss < best.loss) best = {loss, f};
  }
  return best;
}

bool EnumeratedFamily::same_tables(const EnumeratedFamily& other) const {
  if (tables_.size() != other.tables_.size()) return false;
  if (space_.size() != other.space_.size()) return false;
  for (State x = 0; x < space_.size(); ++x)
    if (space_.label(x) != other.space_.label(x)) return false;
  return tables_ == other.tables_;
}

}  // namespace evolab
