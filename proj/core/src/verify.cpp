#include "evolab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "evolab/adversaries.hpp"
#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/errors.hpp"
#include "evolab/game.hpp"
#include "evolab/learners.hpp"
#include "evolab/linear_world.hpp"
#include "evolab/oracle.hpp"
#include "evolab/rng.hpp"
#include "evolab/separation_world.hpp"

namespace evolab {

namespace {

// Measured once on this implementation and pinned; the surrounding range
// check keeps the value honest if the family construction ever drifts.
constexpr int kBoolThreshold2DepthFourComplexity = 2;

template <class Fn>
CriterionResult guarded(const char* id, const char* title, Fn&& fn) {
  CriterionResult c;
  c.id = id;
  c.title = title;
  c.pass = true;
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  return c;
}

void expect(CriterionResult& c, bool ok, const std::string& what) {
  Json row;
  row["check"] = what;
  row["ok"] = ok;
  c.details["checks"].push_back(row);
  c.pass = c.pass && ok;
}

// A distinct random subfamily of X^X with 1..max_members members.
EnumeratedFamily random_family(Rng& rng, int states, int max_members) {
  std::vector<std::string> labels;
  for (int s = 0; s < states; ++s) labels.push_back(std::to_string(s));
  long long total = 1;
  for (int s = 0; s < states; ++s) total *= states;
  int members = static_cast<int>(rng.uniform_int(1, max_members));
  std::vector<long long> picked;
  while (static_cast<int>(picked.size()) < members) {
    long long code = rng.uniform_int(0, total - 1);
    if (std::find(picked.begin(), picked.end(), code) == picked.end())
      picked.push_back(code);
  }
  std::vector<std::vector<State>> tables;
  std::vector<std::string> member_labels;
  for (long long code : picked) {
    std::vector<State> table(static_cast<std::size_t>(states));
    long long rest = code;
    for (int x = 0; x < states; ++x) {
      table[x] = static_cast<State>(rest % states);
      rest /= states;
    }
    tables.push_back(std::move(table));
    member_labels.push_back("g" + std::to_string(code));
  }
  return EnumeratedFamily(StateSpace(labels), std::move(tables), std::move(member_labels),
                          "random");
}

Stream uniform_stream(std::size_t states, int T, Rng& rng) {
  Stream s;
  s.reserve(static_cast<std::size_t>(T) + 1);
  for (int t = 0; t <= T; ++t)
    s.push_back(static_cast<State>(rng.uniform_int(0, static_cast<long long>(states) - 1)));
  return s;
}

// One desk-scale instance of every enumerated catalog constructor.
std::vector<EnumeratedFamily> dimension_fixtures() {
  std::vector<EnumeratedFamily> fams;
  fams.push_back(bool_mod2(2));
  fams.push_back(bool_threshold(2));
  fams.push_back(f_s_family({1, 2, 4}, 8));
  fams.push_back(thresholds_grid(7));
  fams.push_back(threshold_pair());
  fams.push_back(signed_capped(2, 8));
  fams.push_back(switching_family(1, 8));
  fams.push_back(markovian_tightness(2));
  fams.push_back(all_functions(3));
  return fams;
}

CriterionResult a1(std::uint64_t budget) {
  return guarded("A1", "recursive complexity matches exhaustive tree search", [&](CriterionResult& c) {
    Rng rng(0xE701);
    long long comparisons = 0;
    long long mismatches = 0;
    auto check_family = [&](const EnumeratedFamily& fam, int max_depth) {
      DimensionEngine eng(fam);
      for (int d = 0; d <= max_depth; ++d) {
        OracleResult oracle = brute_force_max_branching(fam, d, std::nullopt, budget);
        int recursive = eng.complexity(d);
        TrajectoryTree witness = eng.witness(d);
        bool ok = oracle.value == recursive &&
                  is_shattered(oracle.witness, fam).shattered &&
                  branching_factor(oracle.witness) == oracle.value &&
                  is_shattered(witness, fam).shattered &&
                  branching_factor(witness) == recursive;
        ++comparisons;
        if (!ok) ++mismatches;
      }
    };
    for (int i = 0; i < 200; ++i) check_family(random_family(rng, 2, 4), 3);
    for (int i = 0; i < 100; ++i) check_family(random_family(rng, 3, 5), 3);
    std::vector<EnumeratedFamily> catalog;
    catalog.push_back(bool_mod2(2));
    catalog.push_back(bool_threshold(2));
    catalog.push_back(thresholds_grid(5));
    catalog.push_back(threshold_pair());
    catalog.push_back(f_s_family({1, 2}, 4));
    catalog.push_back(f_s_family({1, 2, 4}, 8));
    catalog.push_back(signed_capped(2, 6));
    catalog.push_back(switching_family(1, 4));
    catalog.push_back(markovian_tightness(2));
    catalog.push_back(all_functions(2));
    for (const auto& fam : catalog)
      if (fam.member_count() <= 20) check_family(fam, 3);
    c.details["comparisons"] = comparisons;
    c.details["mismatches"] = mismatches;
    expect(c, mismatches == 0, "every depth agrees and both witnesses are valid");
  });
}

CriterionResult a2() {
  return guarded("A2", "parity matrix family has complexity n", [&](CriterionResult& c) {
    for (int n = 2; n <= 3; ++n) {
      EnumeratedFamily fam = bool_mod2(n);
      DimensionEngine eng(fam);
      for (int T = n; T <= n + 2; ++T) {
        int value = eng.complexity(T);
        c.details[fam.name()]["T=" + std::to_string(T)] = value;
        expect(c, value == n, fam.name() + " complexity at depth " + std::to_string(T));
      }
    }
  });
}

CriterionResult a3() {
  return guarded("A3", "indicator matrix family depth-4 complexity is pinned", [&](CriterionResult& c) {
    EnumeratedFamily fam = bool_threshold(2);
    DimensionEngine eng(fam);
    int value = eng.complexity(4);
    c.details["value"] = value;
    c.details["pinned"] = kBoolThreshold2DepthFourComplexity;
    expect(c, value >= 2 && value <= 4, "value lies in [2, 4]");
    expect(c, value == kBoolThreshold2DepthFourComplexity, "value equals the pinned constant");
    TrajectoryTree witness = eng.witness(4);
    expect(c, branching_factor(witness) == value && is_shattered(witness, fam).shattered,
           "witness tree realizes the value");
  });
}

CriterionResult a4(std::uint64_t budget) {
  return guarded("A4", "version-space learner respects the complexity bound on every flow",
                 [&](CriterionResult& c) {
    EnumeratedFamily fam = bool_mod2(2);
    auto engine = std::make_shared<DimensionEngine>(fam);
    ExhaustiveResult res = exhaustive_realizable_suite(
        fam, [&] { return std::make_unique<Alg1Session>(engine); }, 6, budget);
    c.details["runs"] = res.runs;
    c.details["worst_mistakes"] = res.worst_mistakes;
    c.details["potentials_ok"] = res.potentials_ok;
    expect(c, res.runs == fam.member_count() * fam.state_count(), "every start and member played");
    expect(c, res.worst_mistakes <= 2, "worst mistakes within the depth-6 complexity of 2");
    expect(c, res.potentials_ok, "complexity potential dropped on every realizable mistake");
  });
}

CriterionResult a5() {
  return guarded("A5", "deterministic tree walk forces the complexity bound", [&](CriterionResult& c) {
    EnumeratedFamily fam = bool_mod2(2);
    auto engine = std::make_shared<DimensionEngine>(fam);
    GameContext<State> ctx = enumerated_context(fam);
    int value = engine->complexity(6);
    TrajectoryTree witness = engine->witness(6);
    c.details["complexity"] = value;
    expect(c, value == 2, "depth-6 complexity is 2");
    expect(c, branching_factor(witness) == value, "witness branching matches");
    std::vector<std::pair<std::string, LearnerFactory<State>>> learners;
    learners.emplace_back("alg1", [&] { return std::make_unique<Alg1Session>(engine); });
    learners.emplace_back("soa", [&] { return soa_session(engine); });
    learners.emplace_back("baseline_previous",
                          [&] { return std::make_unique<PreviousStateLearner<State>>(); });
    learners.emplace_back("baseline_member0",
                          [&] { return std::make_unique<FixedMemberLearner>(fam, 0); });
    for (auto& [name, make] : learners) {
      auto learner = make();
      TreeAdversaryDeterministic adversary(fam, witness);
      GameReport report = run_game<State>(*learner, adversary, 6, 1, 1, ctx);
      c.details["mistakes"][name] = report.mistakes;
      expect(c, report.mistakes >= value, name + " was forced at least 2 mistakes");
      expect(c, report.realizable.value_or(false), name + " stream stayed realizable");
    }
  });
}

CriterionResult a6() {
  return guarded("A6", "random tree paths force half the bound on average", [&](CriterionResult& c) {
    EnumeratedFamily fam = bool_mod2(2);
    auto engine = std::make_shared<DimensionEngine>(fam);
    GameContext<State> ctx = enumerated_context(fam);
    TrajectoryTree witness = engine->witness(6);
    MonteCarloSummary s = monte_carlo<State>(
        [&] { return std::make_unique<Alg1Session>(engine); },
        [&] { return std::make_unique<TreeAdversaryRandomPath>(fam, witness); }, 6, 2000,
        0xE706, Metric::mistakes, ctx);
    c.details["alg1"] = Json{{"mean", s.mean}, {"ci_radius", s.ci_radius}, {"max", s.max}};
    expect(c, s.mean >= 1.0 - s.ci_radius, "alg1 mean mistakes at least half the bound");
    expect(c, s.max <= 2.0, "alg1 never exceeded the complexity bound");
    MonteCarloSummary g = monte_carlo<State>(
        [&] { return std::make_unique<RandomGuessLearner>(fam.state_count()); },
        [&] { return std::make_unique<TreeAdversaryRandomPath>(fam, witness); }, 6, 2000,
        0xE706, Metric::mistakes, ctx);
    c.details["baseline_random"] = Json{{"mean", g.mean}, {"ci_radius", g.ci_radius}};
    expect(c, g.mean >= 1.0 - g.ci_radius, "random guesser mean mistakes at least half the bound");
  });
}

CriterionResult a7() {
  return guarded("A7", "evolution dimension is sandwiched by complexity", [&](CriterionResult& c) {
    std::vector<Rational> gammas = {Rational(1, 4), Rational(1, 2), Rational(1, 1),
                                    Rational(2, 1)};
    for (EnumeratedFamily& fam : dimension_fixtures()) {
      DimensionEngine eng(fam);
      bool sandwich = true;
      Json row;
      for (int t = 0; t <= 6; ++t) {
        SandwichReport rep = eng.sandwich_check(t, gammas);
        sandwich = sandwich && rep.pass;
        if (t == 6)
          for (const SandwichRow& r : rep.rows) row["gamma " + r.gamma] = r.e_dim;
      }
      row["complexity_T6"] = eng.complexity(6);
      int dim = eng.branching_dimension();
      int stab = eng.stabilization_depth();
      row["branching_dimension"] = dim;
      row["stabilization_depth"] = stab;
      c.details[fam.name()] = row;
      expect(c, sandwich, fam.name() + " sandwich inequalities for every depth up to 6");
      bool monotone = true;
      int prev = 0;
      for (int t = 0; t <= 6; ++t) {
        int cur = eng.complexity(t);
        monotone = monotone && cur >= prev && cur <= dim;
        prev = cur;
      }
      expect(c, monotone, fam.name() + " complexity nondecreasing and capped by the limit");
      expect(c, eng.complexity(stab) == dim,
             fam.name() + " complexity reaches the limit at the stabilization depth");
    }
  });
}

CriterionResult a8() {
  return guarded("A8", "escalator families match the magnitude-window formula",
                 [&](CriterionResult& c) {
    const long long w = 8;
    // A depth-T path starting at magnitude n branches once per choice
    // magnitude among the transition sources n..n+T-1 (sources at or past the
    // window cap absorb and cannot branch).
    auto formula = [&](const std::vector<long long>& s_set, int T) {
      long long best = 0;
      for (long long n = 0; n <= w; ++n) {
        long long count = 0;
        for (long long s : s_set)
          if (s < w && s >= n && s <= n + T - 1) ++count;
        best = std::max(best, count);
      }
      return static_cast<int>(best);
    };
    std::vector<std::vector<long long>> sets = {{0, 2}, {1, 2, 4}};
    for (const auto& s_set : sets) {
      EnumeratedFamily fam = f_s_family(s_set, w);
      DimensionEngine eng(fam);
      for (int T = 1; T <= 5; ++T) {
        int value = eng.complexity(T);
        int expected = formula(s_set, T);
        c.details[fam.name()]["T=" + std::to_string(T)] = value;
        expect(c, value == expected,
               fam.name() + " depth " + std::to_string(T) + " equals window count " +
                   std::to_string(expected));
      }
    }
    EnumeratedFamily one = f_s_family({1, 2, 4}, w);
    EnumeratedFamily two = f_s_family({1, 2, 4, 8}, w);
    expect(c, one.same_tables(two), "choice magnitudes beyond the window are inert");
  });
}

CriterionResult a9() {
  return guarded("A9", "complexity stays below the sequential mistake dimension",
                 [&](CriterionResult& c) {
    for (EnumeratedFamily& fam : dimension_fixtures()) {
      DimensionEngine eng(fam);
      int complexity4 = eng.complexity(4);
      int lit = eng.littlestone_dimension();
      c.details[fam.name()] = Json{{"complexity_T4", complexity4}, {"littlestone", lit}};
      expect(c, complexity4 <= lit, fam.name() + " complexity at depth 4 is at most littlestone");
    }
    auto grid_lit = [](int m) {
      EnumeratedFamily fam = thresholds_grid(m);
      DimensionEngine eng(fam);
      return eng.littlestone_dimension();
    };
    auto grid_c4 = [](int m) {
      EnumeratedFamily fam = thresholds_grid(m);
      DimensionEngine eng(fam);
      return eng.complexity(4);
    };
    c.details["grid littlestone"] = Json{{"m=4", grid_lit(4)}, {"m=7", grid_lit(7)},
                                         {"m=16", grid_lit(16)}};
    expect(c, grid_lit(4) == 1, "4-grid littlestone is 1");
    expect(c, grid_lit(7) == 2, "7-grid littlestone is 2");
    expect(c, grid_lit(16) == 3, "16-grid littlestone is 3");
    expect(c, grid_c4(4) == 1 && grid_c4(7) == 1 && grid_c4(8) == 1 && grid_c4(16) == 1,
           "grid complexity stays 1 while littlestone grows");
  });
}

CriterionResult a10() {
  return guarded("A10", "span learner is optimal against low-rank forcing", [&](CriterionResult& c) {
    GameContext<LinVec> ctx = linear_context(3);
    for (int r = 1; r <= 2; ++r) {
      std::string tag = "r=" + std::to_string(r);
      {
        LinearSpanSession learner(3);
        LowrankForcingAdversary adversary(3, r);
        GameReport report = run_game<LinVec>(learner, adversary, 10, 1, 1, ctx);
        c.details[tag]["span_mistakes"] = report.mistakes;
        expect(c, report.mistakes == r + 1, tag + " span learner makes exactly r+1 mistakes");
        expect(c, matrix_rank(adversary.matrix()) <= r, tag + " revealed matrix has rank <= r");
        expect(c, report.realizable.value_or(false), tag + " forced stream is a matrix flow");
      }
      {
        PreviousStateLearner<LinVec> learner;
        LowrankForcingAdversary adversary(3, r);
        GameReport report = run_game<LinVec>(learner, adversary, 10, 1, 1, ctx);
        c.details[tag]["previous_mistakes"] = report.mistakes;
        expect(c, report.mistakes >= r + 1, tag + " previous-state baseline forced r+1");
      }
      {
        ZeroVectorLearner learner(3);
        LowrankForcingAdversary adversary(3, r);
        GameReport report = run_game<LinVec>(learner, adversary, 10, 1, 1, ctx);
        c.details[tag]["zero_mistakes"] = report.mistakes;
        expect(c, report.mistakes >= r + 1, tag + " zero baseline forced r+1");
      }
      Rng rng(0xE710 + static_cast<std::uint64_t>(r));
      long long worst = 0;
      for (int i = 0; i < 100; ++i) {
        LinMat w = random_lowrank_matrix(3, r, 2, rng);
        std::vector<LinVec> stream = matrix_flow(w, random_vector(3, 2, rng), 20);
        LinearSpanSession learner(3);
        FixedStreamAdversary<LinVec> adversary(stream);
        GameReport report = run_game<LinVec>(learner, adversary, 20, 1, 1, ctx);
        worst = std::max(worst, report.mistakes);
      }
      c.details[tag]["worst_random_flow_mistakes"] = worst;
      expect(c, worst <= r + 1, tag + " random flows cost at most r+1 mistakes");
    }
  });
}

CriterionResult a11() {
  return guarded("A11", "pseudo-cube dimension matches pinned values", [&](CriterionResult& c) {
    DsResult all2 = ds_dimension(all_functions(2), 2);
    DsResult single = ds_dimension(thresholds_grid(2), 2);
    DsResult grid4 = ds_dimension(thresholds_grid(4), 3);
    c.details["all_functions(2)"] = Json{{"value", all2.value}, {"exact", all2.exact}};
    c.details["thresholds_grid(2)"] = Json{{"value", single.value}, {"exact", single.exact}};
    c.details["thresholds_grid(4)"] = Json{{"value", grid4.value}, {"exact", grid4.exact}};
    expect(c, all2.value == 2 && all2.exact, "full function family on 2 states has dimension 2");
    expect(c, single.value == 0 && single.exact, "single-member family has dimension 0");
    expect(c, grid4.value == 1 && grid4.exact, "4-grid thresholds have dimension 1");
  });
}

CriterionResult a12() {
  return guarded("A12", "weighted members meet the one-step regret bound", [&](CriterionResult& c) {
    EnumeratedFamily fam = bool_mod2(2);
    GameContext<State> ctx = enumerated_context(fam);
    const int T = 200;
    double bound = std::sqrt(2.0 * T * std::log(static_cast<double>(fam.member_count())));
    Rng rng(0xE712);
    double worst_mean = 0;
    double radius = 0;
    for (int i = 0; i < 50; ++i) {
      Stream stream = uniform_stream(fam.state_count(), T, rng);
      MonteCarloSummary s = monte_carlo<State>(
          [&] { return std::make_unique<EwMarkovianSession>(fam); },
          [&] { return std::make_unique<FixedStreamAdversary<State>>(stream); }, T, 500,
          derive_seed(0xE712, static_cast<std::uint64_t>(i)), Metric::markovian, ctx);
      worst_mean = std::max(worst_mean, s.mean);
      radius = s.ci_radius;
    }
    c.details["bound"] = bound;
    c.details["ci_radius"] = radius;
    c.details["worst_stream_mean"] = worst_mean;
    expect(c, worst_mean <= bound + radius, "worst per-stream mean regret within the bound");
  });
}

CriterionResult a13() {
  return guarded("A13", "block streams force one-step regret on weighted and tree learners",
                 [&](CriterionResult& c) {
    EnumeratedFamily fam = markovian_tightness(6);
    auto engine = std::make_shared<DimensionEngine>(fam);
    GameContext<State> ctx = enumerated_context(fam);
    int lit = engine->littlestone_dimension();
    c.details["littlestone"] = lit;
    expect(c, lit == 6, "littlestone dimension of the 6-state fan-out family is 6");
    LittlestoneTree witness = engine->littlestone_witness();
    const int r = (witness.depth + 2) / 3;
    std::vector<std::pair<std::string, LearnerFactory<State>>> learners;
    learners.emplace_back("ew_markovian",
                          [&] { return std::make_unique<EwMarkovianSession>(fam); });
    learners.emplace_back("soa", [&] { return soa_session(engine); });
    for (auto& [name, make] : learners) {
      bool certificates = true;
      MonteCarloSummary s = monte_carlo<State>(
          make, [&] { return std::make_unique<LittlestoneBlockAdversary>(fam, witness); },
          2 * r - 1, 3000, 0xE713, Metric::markovian, ctx,
          [&](const GameReport& report, std::size_t) {
            certificates = certificates &&
                           report.adversary_diagnostics.at("witness_loss").get<long long>() <=
                               r - 1;
          });
      c.details[name] = Json{{"mean", s.mean}, {"ci_radius", s.ci_radius}};
      expect(c, s.mean >= 1.0 / 3.0 - s.ci_radius, name + " mean regret at least 1/3");
      expect(c, certificates, name + " witness member lost at most r-1 per run");
    }
  });
}

CriterionResult a14() {
  return guarded("A14", "two-member random walk builds regret growing with the horizon",
                 [&](CriterionResult& c) {
    EnumeratedFamily fam = threshold_pair();
    GameContext<State> ctx = enumerated_context(fam);
    auto run = [&](int T, std::size_t trials) {
      return monte_carlo<State>(
          [&] { return std::make_unique<EwMarkovianSession>(fam); },
          [&] { return std::make_unique<TwoFunctionAdversary>(fam, 0, 1); }, T, trials,
          0xE714 + static_cast<std::uint64_t>(T), Metric::markovian, ctx);
    };
    MonteCarloSummary mid = run(256, 5000);
    MonteCarloSummary low = run(64, 1000);
    MonteCarloSummary high = run(1024, 1000);
    double rate = std::sqrt(256.0) / (16.0 * std::sqrt(3.0));
    c.details["mean_T64"] = low.mean;
    c.details["mean_T256"] = mid.mean;
    c.details["mean_T1024"] = high.mean;
    c.details["rate_threshold"] = rate;
    c.details["ci_radius_T256"] = mid.ci_radius;
    expect(c, mid.mean >= rate - mid.ci_radius,
           "mean regret at horizon 256 meets the sqrt(T)/(16 sqrt 3) rate");
    expect(c, mid.mean >= 1.0, "mean regret at horizon 256 is at least 1");
    expect(c, high.mean > low.mean, "mean regret grows from horizon 64 to 1024");
  });
}

CriterionResult a15() {
  return guarded("A15", "fan-out blocks force one-step regret at the pinned rate",
                 [&](CriterionResult& c) {
    const int d = 3;
    const int k = 9;
    const int T = 2 * k * d - 1;
    EnumeratedFamily fam = markovian_tightness(d);
    GameContext<State> ctx = enumerated_context(fam);
    MonteCarloSummary s = monte_carlo<State>(
        [&] { return std::make_unique<EwMarkovianSession>(fam); },
        [&] { return std::make_unique<MarkovianTightnessAdversary>(d, k); }, T, 25000,
        0xE715, Metric::markovian, ctx);
    double threshold = 0.25 * std::sqrt(static_cast<double>((T + 1) * d)) - 2.0;
    c.details["mean"] = s.mean;
    c.details["threshold"] = threshold;
    c.details["ci_radius"] = s.ci_radius;
    expect(c, s.mean >= threshold - s.ci_radius, "mean regret at least (1/4)sqrt((T+1)d) - 2");
  });
}

CriterionResult a16() {
  return guarded("A16", "expert pool meets the flow regret bound with matching certificates",
                 [&](CriterionResult& c) {
    {
      EnumeratedFamily tiny = bool_mod2(1);
      auto tiny_engine = std::make_shared<DimensionEngine>(tiny);
      FlowExpertsOracle pool(tiny_engine, 3);
      c.details["experts_n1_T3"] = pool.expert_count();
      expect(c, pool.expert_count() == 7, "2-state parity pool at horizon 3 has 7 experts");
    }
    EnumeratedFamily fam = bool_mod2(2);
    auto engine = std::make_shared<DimensionEngine>(fam);
    GameContext<State> ctx = enumerated_context(fam);
    {
      FlowExpertsOracle pool6(engine, 6);
      c.details["experts_T6"] = pool6.expert_count();
      expect(c, pool6.expert_count() == 265, "horizon-6 pool has 265 experts");
    }
    auto oracle = std::make_shared<FlowExpertsOracle>(engine, 12);
    c.details["experts_T12"] = oracle->expert_count();
    expect(c, oracle->expert_count() == 1105, "horizon-12 pool has 1105 experts");
    const int T = 12;
    double complexity = oracle->complexity_bound();
    double fanout = static_cast<double>(oracle->fanout());
    double bound = complexity +
                   std::sqrt(2.0 * complexity * T * std::log(T * fanout / complexity));
    Rng rng(0xE716);
    bool certificates = true;
    double worst_mean = 0;
    double radius = 0;
    for (int i = 0; i < 50; ++i) {
      Stream stream = uniform_stream(fam.state_count(), T, rng);
      certificates = certificates &&
                     oracle->best_expert_loss(stream) <= fam.flow_comparator(stream).loss;
      MonteCarloSummary s = monte_carlo<State>(
          [&] { return std::make_unique<FlowExpertsSession>(oracle); },
          [&] { return std::make_unique<FixedStreamAdversary<State>>(stream); }, T, 200,
          derive_seed(0xE716, static_cast<std::uint64_t>(i)), Metric::flow, ctx);
      worst_mean = std::max(worst_mean, s.mean);
      radius = s.ci_radius;
    }
    c.details["bound"] = bound;
    c.details["worst_stream_mean"] = worst_mean;
    c.details["ci_radius"] = radius;
    expect(c, worst_mean <= bound + radius, "worst per-stream mean flow regret within the bound");
    expect(c, certificates, "some expert matches the best flow on every stream");
  });
}

CriterionResult a17() {
  return guarded("A17", "random tree paths force flow regret on the expert learner",
                 [&](CriterionResult& c) {
    EnumeratedFamily fam = bool_mod2(2);
    auto engine = std::make_shared<DimensionEngine>(fam);
    GameContext<State> ctx = enumerated_context(fam);
    TrajectoryTree witness = engine->witness(6);
    auto oracle = std::make_shared<FlowExpertsOracle>(engine, 6);
    bool comparator_zero = true;
    MonteCarloSummary s = monte_carlo<State>(
        [&] { return std::make_unique<FlowExpertsSession>(oracle); },
        [&] { return std::make_unique<TreeAdversaryRandomPath>(fam, witness); }, 6, 2000,
        0xE717, Metric::flow, ctx, [&](const GameReport& report, std::size_t) {
          comparator_zero = comparator_zero && report.flow_loss.value_or(1) == 0;
        });
    c.details["mean"] = s.mean;
    c.details["ci_radius"] = s.ci_radius;
    expect(c, comparator_zero, "every emitted path is some member's flow");
    expect(c, s.mean >= 1.0 - s.ci_radius, "mean flow regret at least half the branching");
  });
}

CriterionResult a18() {
  return guarded("A18", "capped and switching sign families match their flow bounds",
                 [&](CriterionResult& c) {
    {
      EnumeratedFamily fam = signed_capped(3, 16);
      GameContext<State> ctx = enumerated_context(fam);
      std::size_t all_minus = fam.member_count();
      for (std::size_t f = 0; f < fam.member_count(); ++f) {
        if (fam.apply(f, signed_to_state(0)) == signed_to_state(-1) &&
            fam.apply(f, signed_to_state(-1)) == signed_to_state(-2) &&
            fam.apply(f, signed_to_state(-2)) == signed_to_state(-3)) {
          all_minus = f;
          break;
        }
      }
      expect(c, all_minus < fam.member_count(), "all-minus member exists");
      Stream stream = fam.flow(all_minus, signed_to_state(0), 12);
      MonteCarloSummary s = monte_carlo<State>(
          [&] { return std::make_unique<SignedCappedSession>(3, 16); },
          [&] { return std::make_unique<FixedStreamAdversary<State>>(stream); }, 12, 1000,
          0xE718, Metric::flow, ctx);
      c.details["capped_mean"] = s.mean;
      c.details["capped_ci"] = s.ci_radius;
      expect(c, s.mean <= 1.5 + s.ci_radius,
             "capped learner flow regret at most p/2 on the worst member flow");
      expect(c, std::abs(s.mean - 1.5) <= s.ci_radius,
             "capped learner flow regret concentrates at p/2 exactly");
    }
    {
      EnumeratedFamily fam = switching_family(1, 18);
      GameContext<State> ctx = enumerated_context(fam);
      MonteCarloSummary s = monte_carlo<State>(
          [&] { return std::make_unique<EwMarkovianSession>(fam); },
          [&] { return std::make_unique<SwitchingTightnessAdversary>(1, 9, 18); }, 18, 2000,
          0xE719, Metric::flow, ctx);
      c.details["switching_mean"] = s.mean;
      c.details["switching_ci"] = s.ci_radius;
      expect(c, s.mean >= std::sqrt(4.5) - s.ci_radius,
             "switching stream forces flow regret at least sqrt(T/4)");
      DimensionEngine eng(fam);
      bool complexities = eng.complexity(1) == 1;
      for (int T = 2; T <= 5; ++T) complexities = complexities && eng.complexity(T) == 2;
      expect(c, complexities, "switching family complexity is p+1 from depth 2 on");
    }
  });
}

CriterionResult a19() {
  return guarded("A19", "sign-revelation world separates one-step from flow regret",
                 [&](CriterionResult& c) {
    {
      SeparationWorld world(4, 40);
      GameContext<SepState> ctx = separation_context(world);
      Rng rng(0xE71A);
      long long worst = 0;
      bool realizable = true;
      for (int i = 0; i < 100; ++i) {
        std::uint64_t sigma = rng.next_u64() & world.all_plus();
        std::vector<SepState> stream = world.flow(sigma, SepState{world.all_plus(), 0}, 30);
        SeparationRealizableSession learner(world);
        FixedStreamAdversary<SepState> adversary(stream);
        GameReport report = run_game<SepState>(learner, adversary, 30, 1, 1, ctx);
        worst = std::max(worst, report.mistakes);
        realizable = realizable && report.realizable.value_or(false);
      }
      c.details["random_worst_mistakes"] = worst;
      expect(c, worst <= 3, "random member flows cost at most 3 mistakes");
      expect(c, realizable, "member flows verify as realizable");
    }
    {
      SeparationWorld world(3, 12);
      GameContext<SepState> ctx = separation_context(world);
      long long worst = 0;
      for (std::uint64_t sigma = 0; sigma < world.member_count(); ++sigma) {
        std::vector<SepState> stream = world.flow(sigma, SepState{world.all_plus(), 0}, 9);
        SeparationRealizableSession learner(world);
        FixedStreamAdversary<SepState> adversary(stream);
        GameReport report = run_game<SepState>(learner, adversary, 9, 1, 1, ctx);
        worst = std::max(worst, report.mistakes);
      }
      c.details["exhaustive_worst_mistakes"] = worst;
      expect(c, worst <= 3, "every member flow costs at most 3 mistakes");
    }
    {
      SeparationWorld world(60, 60);
      GameContext<SepState> ctx = separation_context(world);
      MonteCarloSummary learner = monte_carlo<SepState>(
          [&] { return std::make_unique<SeparationRealizableSession>(world); },
          [&] { return std::make_unique<SeparationFlowAdversary>(world); }, 60, 1000,
          0xE71B, Metric::flow, ctx);
      MonteCarloSummary baseline = monte_carlo<SepState>(
          [&] { return std::make_unique<PreviousStateLearner<SepState>>(); },
          [&] { return std::make_unique<SeparationFlowAdversary>(world); }, 60, 1000,
          0xE71B, Metric::flow, ctx);
      c.details["learner_flow_regret_mean"] = learner.mean;
      c.details["baseline_flow_regret_mean"] = baseline.mean;
      c.details["ci_radius"] = learner.ci_radius;
      expect(c, learner.mean >= 10.0 - learner.ci_radius,
             "flow regret grows at rate T/6 for the revelation learner");
      expect(c, baseline.mean >= 10.0 - baseline.ci_radius,
             "flow regret grows at rate T/6 for the previous-state baseline");
      expect(c, baseline.mean > learner.mean, "previous-state baseline fares worse");
    }
  });
}

SuiteResult assemble(const std::string& name, std::vector<CriterionResult> criteria) {
  SuiteResult s;
  s.name = name;
  s.criteria = std::move(criteria);
  for (const CriterionResult& c : s.criteria) s.pass = s.pass && c.pass;
  return s;
}

}  // namespace

Json SuiteResult::to_json() const {
  Json j;
  j["suite"] = name;
  j["pass"] = pass;
  j["criteria"] = Json::array();
  for (const CriterionResult& c : criteria) {
    Json row;
    row["id"] = c.id;
    row["title"] = c.title;
    row["pass"] = c.pass;
    row["details"] = c.details;
    j["criteria"].push_back(row);
  }
  return j;
}

std::vector<std::string> verify_suite_names() {
  return {"oracle", "dimensions", "realizable", "agnostic", "flow"};
}

SuiteResult run_verify_suite(const std::string& name, std::uint64_t budget) {
  if (name == "oracle") return assemble(name, [&] {
    std::vector<CriterionResult> v;
    v.push_back(a1(budget));
    return v;
  }());
  if (name == "dimensions") {
    std::vector<CriterionResult> v;
    v.push_back(a2());
    v.push_back(a3());
    v.push_back(a7());
    v.push_back(a8());
    v.push_back(a9());
    v.push_back(a11());
    return assemble(name, std::move(v));
  }
  if (name == "realizable") {
    std::vector<CriterionResult> v;
    v.push_back(a4(budget));
    v.push_back(a5());
    v.push_back(a6());
    v.push_back(a10());
    return assemble(name, std::move(v));
  }
  if (name == "agnostic") {
    std::vector<CriterionResult> v;
    v.push_back(a12());
    v.push_back(a13());
    v.push_back(a14());
    v.push_back(a15());
    return assemble(name, std::move(v));
  }
  if (name == "flow") {
    std::vector<CriterionResult> v;
    v.push_back(a16());
    v.push_back(a17());
    v.push_back(a18());
    v.push_back(a19());
    return assemble(name, std::move(v));
  }
  throw SpecError("unknown verify suite '" + name + "'");
}

std::vector<SuiteResult> run_all_verify_suites(std::uint64_t budget) {
  std::vector<SuiteResult> results;
  CriterionResult rerun;
  rerun.id = "A20";
  rerun.title = "suite reruns are byte-identical";
  rerun.pass = true;
  for (const std::string& name : verify_suite_names()) {
    SuiteResult first = run_verify_suite(name, budget);
    SuiteResult second = run_verify_suite(name, budget);
    bool identical = first.to_json().dump() == second.to_json().dump();
    rerun.details[name] = identical;
    rerun.pass = rerun.pass && identical;
    results.push_back(std::move(first));
  }
  results.push_back(assemble("determinism", {std::move(rerun)}));
  return results;
}

}  // namespace evolab
