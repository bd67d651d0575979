#include "evolab/game.hpp"

#include <ostream>

namespace evolab {

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::mistakes:
      return "mistakes";
    case Metric::markovian:
      return "markovian";
    case Metric::flow:
      return "flow";
  }
  throw SpecError("unknown metric");
}

Metric metric_from_name(const std::string& name) {
  if (name == "mistakes") return Metric::mistakes;
  if (name == "markovian") return Metric::markovian;
  if (name == "flow") return Metric::flow;
  throw SpecError("unknown metric '" + name + "' (use mistakes, markovian, or flow)");
}

Json GameReport::to_json(bool include_rounds) const {
  Json j;
  j["learner"] = learner;
  j["adversary"] = adversary;
  j["horizon"] = horizon;
  j["learner_seed"] = learner_seed;
  j["adversary_seed"] = adversary_seed;
  j["x0"] = x0;
  j["mistakes"] = mistakes;
  if (markovian_loss) {
    j["markovian"] = Json{{"loss", *markovian_loss},
                          {"member", *markovian_best},
                          {"regret", *markovian_regret}};
  }
  if (flow_loss) {
    j["flow"] =
        Json{{"loss", *flow_loss}, {"member", *flow_best}, {"regret", *flow_regret}};
  }
  if (realizable) {
    j["realizable"] = Json{{"value", *realizable},
                           {"witnesses", realizability_witnesses},
                           {"member", realizability_member}};
  }
  j["randomized_vs_adaptive"] = randomized_vs_adaptive;
  if (!learner_diagnostics.empty()) j["learner_diagnostics"] = learner_diagnostics;
  if (!adversary_diagnostics.empty()) j["adversary_diagnostics"] = adversary_diagnostics;
  if (include_rounds) {
    Json rows = Json::array();
    for (const RoundRecord& r : rounds)
      rows.push_back(Json{{"prediction", r.prediction},
                          {"truth", r.truth},
                          {"mistake", r.mistake}});
    j["rounds"] = rows;
  }
  return j;
}

void GameReport::write_rounds_csv(std::ostream& out) const {
  out << "t,prediction,truth,mistake\n";
  for (std::size_t t = 0; t < rounds.size(); ++t)
    out << t + 1 << "," << rounds[t].prediction << "," << rounds[t].truth << ","
        << (rounds[t].mistake ? 1 : 0) << "\n";
}

Json MonteCarloSummary::to_json(bool include_values) const {
  Json j;
  j["learner"] = learner;
  j["adversary"] = adversary;
  j["metric"] = metric;
  j["horizon"] = horizon;
  j["trials"] = trials;
  j["base_seed"] = base_seed;
  j["delta"] = delta;
  j["mean"] = mean;
  j["stddev"] = stddev;
  j["min"] = min;
  j["max"] = max;
  j["ci_radius"] = ci_radius;
  j["seed_derivation"] = seed_derivation;
  if (include_values) j["values"] = values;
  return j;
}

GameContext<State> enumerated_context(const EnumeratedFamily& family) {
  GameContext<State> ctx;
  ctx.label = [&family](const State& x) { return family.space().label(x); };
  ctx.equal = [](const State& a, const State& b) { return a == b; };
  ctx.markovian = [&family](const std::vector<State>& stream) {
    ComparatorResult c = family.markovian_comparator(stream);
    return ComparatorOutcome{c.loss, family.member_label(c.member)};
  };
  ctx.flow = [&family](const std::vector<State>& stream) {
    ComparatorResult c = family.flow_comparator(stream);
    return ComparatorOutcome{c.loss, family.member_label(c.member)};
  };
  ctx.realizability = [&family](const std::vector<State>& stream) {
    RealizabilityResult r = family.is_realizable(stream);
    RealizabilityOutcome out;
    out.realizable = r.realizable;
    out.witnesses = r.witness.count();
    if (r.realizable) out.member = family.member_label(r.witness.lowest());
    return out;
  };
  return ctx;
}

ExhaustiveResult exhaustive_realizable_suite(const EnumeratedFamily& family,
                                             const LearnerFactory<State>& make_learner,
                                             int T, std::uint64_t budget) {
  if (T < 0) throw SpecError("horizon must be non-negative");
  std::uint64_t needed = static_cast<std::uint64_t>(family.member_count()) *
                         family.state_count();
  if (needed > budget)
    throw BudgetError("exhaustive realizable suite too large", needed, budget);
  GameContext<State> ctx = enumerated_context(family);
  ExhaustiveResult result;
  for (std::size_t f = 0; f < family.member_count(); ++f) {
    for (State x0 = 0; x0 < family.state_count(); ++x0) {
      FixedStreamAdversary<State> adversary(family.flow(f, x0, T));
      auto learner = make_learner();
      GameReport report = run_game(*learner, adversary, T, 0, 0, ctx);
      result.worst_mistakes = std::max(result.worst_mistakes, report.mistakes);
      if (report.learner_diagnostics.contains("potential_ok"))
        result.potentials_ok =
            result.potentials_ok && report.learner_diagnostics["potential_ok"].get<bool>();
      ++result.runs;
    }
  }
  return result;
}

}  // namespace evolab
