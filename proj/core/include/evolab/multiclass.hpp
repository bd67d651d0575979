#pragma once

#include <memory>
#include <string>

#include "evolab/dimensions.hpp"
#include "evolab/json.hpp"

namespace evolab {

// Online multiclass prediction over (instance, label) pairs from one state
// space. Protocol per round: predict(instance), then update with the truth.
class MulticlassSession {
 public:
  virtual ~MulticlassSession() = default;
  virtual void reset(int horizon, std::uint64_t seed) = 0;
  virtual State predict(State instance) = 0;
  virtual void update(State instance, State label) = 0;
  virtual bool deterministic() const = 0;
  virtual std::string id() const = 0;
  virtual Json diagnostics() const { return Json::object(); }
};

// Standard optimal algorithm: predict the label whose consistent restriction
// has the deepest mistake tree (lowest label on ties). Once the version space
// empties, it echoes the instance and stops updating.
class SoaMulticlass : public MulticlassSession {
 public:
  explicit SoaMulticlass(std::shared_ptr<DimensionEngine> engine);

  void reset(int horizon, std::uint64_t seed) override;
  State predict(State instance) override;
  void update(State instance, State label) override;
  bool deterministic() const override { return true; }
  std::string id() const override { return "soa"; }
  Json diagnostics() const override;

 private:
  std::shared_ptr<DimensionEngine> engine_;
  MemberSet version_;
  bool fallback_ = false;
};

}  // namespace evolab
