#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "evolab/errors.hpp"
#include "evolab/family.hpp"
#include "evolab/json.hpp"
#include "evolab/rng.hpp"

namespace evolab {

// One side of the prediction game. Protocol per episode: reset with the start
// state, then for each round first predict(), then observe() the revealed
// state. Sessions are reusable across episodes via reset.
template <class S>
class LearnerSession {
 public:
  virtual ~LearnerSession() = default;
  virtual void reset(const S& x0, int horizon, std::uint64_t seed) = 0;
  virtual S predict() = 0;
  virtual void observe(const S& x) = 0;
  virtual bool deterministic() const = 0;
  virtual std::string id() const = 0;
  virtual Json diagnostics() const { return Json::object(); }
};

// The other side: start() reveals the start state, emit() maps the learner's
// prediction to the revealed state of the round. Oblivious adversaries ignore
// the prediction.
template <class S>
class AdversarySession {
 public:
  virtual ~AdversarySession() = default;
  virtual void reset(int horizon, std::uint64_t seed) = 0;
  virtual S start() = 0;
  virtual S emit(const S& prediction) = 0;
  virtual bool oblivious() const = 0;
  virtual std::string id() const = 0;
  virtual Json diagnostics() const { return Json::object(); }
};

struct ComparatorOutcome {
  long long loss = 0;
  std::string member;
};

struct RealizabilityOutcome {
  bool realizable = false;
  std::size_t witnesses = 0;
  std::string member;
};

// World plumbing for a game: how to print and compare states, plus the exact
// comparators the world supports (unset functions mean the capability is
// absent and the corresponding report fields stay empty).
template <class S>
struct GameContext {
  std::function<std::string(const S&)> label;
  std::function<bool(const S&, const S&)> equal;
  std::function<ComparatorOutcome(const std::vector<S>&)> markovian;
  std::function<ComparatorOutcome(const std::vector<S>&)> flow;
  std::function<RealizabilityOutcome(const std::vector<S>&)> realizability;
};

struct RoundRecord {
  std::string prediction;
  std::string truth;
  bool mistake = false;
};

struct GameReport {
  std::string learner;
  std::string adversary;
  std::uint64_t learner_seed = 0;
  std::uint64_t adversary_seed = 0;
  int horizon = 0;
  std::string x0;
  std::vector<RoundRecord> rounds;
  long long mistakes = 0;
  std::optional<long long> markovian_loss;
  std::optional<std::string> markovian_best;
  std::optional<long long> markovian_regret;
  std::optional<long long> flow_loss;
  std::optional<std::string> flow_best;
  std::optional<long long> flow_regret;
  std::optional<bool> realizable;
  std::size_t realizability_witnesses = 0;
  std::string realizability_member;
  // A randomized learner facing an adaptive adversary runs outside the
  // regime the guarantees are stated for; flagged rather than refused.
  bool randomized_vs_adaptive = false;
  Json learner_diagnostics = Json::object();
  Json adversary_diagnostics = Json::object();

  Json to_json(bool include_rounds = true) const;
  void write_rounds_csv(std::ostream& out) const;
};

template <class S>
GameReport run_game(LearnerSession<S>& learner, AdversarySession<S>& adversary, int T,
                    std::uint64_t learner_seed, std::uint64_t adversary_seed,
                    const GameContext<S>& ctx) {
  if (T < 0) throw SpecError("horizon must be non-negative");
  if (!ctx.label || !ctx.equal)
    throw SpecError("game context must provide label and equality");
  GameReport report;
  report.learner = learner.id();
  report.adversary = adversary.id();
  report.learner_seed = learner_seed;
  report.adversary_seed = adversary_seed;
  report.horizon = T;

  adversary.reset(T, adversary_seed);
  std::vector<S> stream;
  stream.reserve(static_cast<std::size_t>(T) + 1);
  stream.push_back(adversary.start());
  learner.reset(stream[0], T, learner_seed);
  report.x0 = ctx.label(stream[0]);
  report.rounds.reserve(static_cast<std::size_t>(T));

  for (int t = 1; t <= T; ++t) {
    S prediction = learner.predict();
    S truth = adversary.emit(prediction);
    learner.observe(truth);
    bool mistake = !ctx.equal(prediction, truth);
    report.mistakes += mistake;
    report.rounds.push_back({ctx.label(prediction), ctx.label(truth), mistake});
    stream.push_back(std::move(truth));
  }

  report.randomized_vs_adaptive = !learner.deterministic() && !adversary.oblivious();
  if (ctx.markovian) {
    ComparatorOutcome c = ctx.markovian(stream);
    report.markovian_loss = c.loss;
    report.markovian_best = c.member;
    report.markovian_regret = report.mistakes - c.loss;
  }
  if (ctx.flow) {
    ComparatorOutcome c = ctx.flow(stream);
    report.flow_loss = c.loss;
    report.flow_best = c.member;
    report.flow_regret = report.mistakes - c.loss;
  }
  if (ctx.realizability) {
    RealizabilityOutcome r = ctx.realizability(stream);
    report.realizable = r.realizable;
    report.realizability_witnesses = r.witnesses;
    report.realizability_member = r.member;
  }
  report.learner_diagnostics = learner.diagnostics();
  report.adversary_diagnostics = adversary.diagnostics();
  return report;
}

enum class Metric { mistakes, markovian, flow };

std::string metric_name(Metric metric);
Metric metric_from_name(const std::string& name);

struct MonteCarloSummary {
  std::string learner;
  std::string adversary;
  std::string metric;
  int horizon = 0;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  double delta = 0.05;
  double mean = 0;
  double stddev = 0;
  double min = 0;
  double max = 0;
  // Hoeffding radius for a [0, T]-bounded metric at confidence 1 - delta.
  double ci_radius = 0;
  std::string seed_derivation;
  std::vector<double> values;  // per replica, in replica order

  Json to_json(bool include_values = false) const;
};

template <class S>
using LearnerFactory = std::function<std::unique_ptr<LearnerSession<S>>()>;
template <class S>
using AdversaryFactory = std::function<std::unique_ptr<AdversarySession<S>>()>;

// Replica i derives its learner seed from lane 2i and its adversary seed from
// lane 2i+1 of the base seed, so the summary does not depend on thread
// scheduling. When `on_report` is given, replicas run sequentially in replica
// order and the callback sees every report.
template <class S>
MonteCarloSummary monte_carlo(
    const LearnerFactory<S>& make_learner, const AdversaryFactory<S>& make_adversary,
    int T, std::size_t trials, std::uint64_t base_seed, Metric metric,
    const GameContext<S>& ctx,
    const std::function<void(const GameReport&, std::size_t)>& on_report = nullptr,
    unsigned max_threads = 0) {
  if (trials == 0) throw SpecError("trials must be positive");
  if (metric == Metric::markovian && !ctx.markovian)
    throw CapabilityError("this world has no exact one-step comparator");
  if (metric == Metric::flow && !ctx.flow)
    throw CapabilityError("this world has no exact flow comparator");

  std::vector<double> values(trials, 0.0);
  auto run_one = [&](std::size_t i) {
    auto learner = make_learner();
    auto adversary = make_adversary();
    GameReport report = run_game(*learner, *adversary, T, derive_seed(base_seed, 2 * i),
                                 derive_seed(base_seed, 2 * i + 1), ctx);
    switch (metric) {
      case Metric::mistakes:
        values[i] = static_cast<double>(report.mistakes);
        break;
      case Metric::markovian:
        values[i] = static_cast<double>(*report.markovian_regret);
        break;
      case Metric::flow:
        values[i] = static_cast<double>(*report.flow_regret);
        break;
    }
    return report;
  };

  if (on_report) {
    for (std::size_t i = 0; i < trials; ++i) {
      GameReport report = run_one(i);
      on_report(report, i);
    }
  } else {
    unsigned workers = max_threads == 0 ? std::thread::hardware_concurrency() : max_threads;
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(
        std::min<std::size_t>({workers, trials, std::size_t{8}}));
    if (workers <= 1) {
      for (std::size_t i = 0; i < trials; ++i) run_one(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= trials) break;
            try {
              run_one(i);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              break;
            }
          }
        });
      }
      for (auto& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
    }
  }

  MonteCarloSummary summary;
  summary.metric = metric_name(metric);
  summary.horizon = T;
  summary.trials = trials;
  summary.base_seed = base_seed;
  {
    auto learner = make_learner();
    auto adversary = make_adversary();
    summary.learner = learner->id();
    summary.adversary = adversary->id();
  }
  double sum = 0;
  summary.min = values[0];
  summary.max = values[0];
  for (double v : values) {
    sum += v;
    summary.min = std::min(summary.min, v);
    summary.max = std::max(summary.max, v);
  }
  summary.mean = sum / static_cast<double>(trials);
  double ss = 0;
  for (double v : values) ss += (v - summary.mean) * (v - summary.mean);
  summary.stddev = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  summary.ci_radius = static_cast<double>(T) *
                      std::sqrt(std::log(2.0 / summary.delta) /
                                (2.0 * static_cast<double>(trials)));
  summary.seed_derivation =
      "seed(lane)=splitmix64(base+(lane+1)*0x9E3779B97F4A7C15); "
      "replica i: learner lane 2i, adversary lane 2i+1";
  summary.values = std::move(values);
  return summary;
}

// Replays a pinned stream; the prediction is ignored.
template <class S>
class FixedStreamAdversary : public AdversarySession<S> {
 public:
  explicit FixedStreamAdversary(std::vector<S> stream) : stream_(std::move(stream)) {
    if (stream_.empty()) throw SpecError("fixed stream must contain a start state");
  }

  void reset(int horizon, std::uint64_t) override {
    if (stream_.size() < static_cast<std::size_t>(horizon) + 1)
      throw SpecError("fixed stream is shorter than the horizon");
    t_ = 0;
  }

  S start() override {
    t_ = 1;
    return stream_[0];
  }

  S emit(const S&) override { return stream_[t_++]; }
  bool oblivious() const override { return true; }
  std::string id() const override { return "stream"; }

 private:
  std::vector<S> stream_;
  std::size_t t_ = 0;
};

// Full capability context over an enumerated family. The family reference
// must outlive the context.
GameContext<State> enumerated_context(const EnumeratedFamily& family);

struct ExhaustiveResult {
  long long worst_mistakes = 0;
  // Conjunction of the per-run "potential_ok" learner diagnostic when the
  // learner reports one, true otherwise.
  bool potentials_ok = true;
  std::size_t runs = 0;
};

// Runs the learner on every member flow from every start state and reports
// the worst mistake count.
ExhaustiveResult exhaustive_realizable_suite(const EnumeratedFamily& family,
                                             const LearnerFactory<State>& make_learner,
                                             int T,
                                             std::uint64_t budget = 10'000'000);

}  // namespace evolab
