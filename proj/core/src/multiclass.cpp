#include "evolab/multiclass.hpp"

#include "evolab/errors.hpp"

namespace evolab {

SoaMulticlass::SoaMulticlass(std::shared_ptr<DimensionEngine> engine)
    : engine_(std::move(engine)) {
  if (!engine_) throw SpecError("soa needs a dimension engine");
}

void SoaMulticlass::reset(int, std::uint64_t) {
  version_ = engine_->family().full_set();
  fallback_ = false;
}

State SoaMulticlass::predict(State instance) {
  if (fallback_) return instance;
  const EnumeratedFamily& family = engine_->family();
  std::vector<State> labels = family.projection(version_, instance);
  if (labels.size() == 1) return labels[0];
  State best = labels[0];
  int best_value = -1;
  for (State y : labels) {
    int value = engine_->littlestone(version_ & family.restriction_mask(instance, y));
    if (value > best_value) {
      best_value = value;
      best = y;
    }
  }
  return best;
}

void SoaMulticlass::update(State instance, State label) {
  if (fallback_) return;
  MemberSet next = engine_->family().consistent_subset(version_, instance, label);
  if (next.none()) {
    fallback_ = true;
    return;
  }
  version_ = std::move(next);
}

Json SoaMulticlass::diagnostics() const { return Json{{"fallback", fallback_}}; }

}  // namespace evolab
