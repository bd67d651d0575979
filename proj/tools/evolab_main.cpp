#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "evolab/adversaries.hpp"
#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/errors.hpp"
#include "evolab/family.hpp"
#include "evolab/game.hpp"
#include "evolab/learners.hpp"
#include "evolab/linear_world.hpp"
#include "evolab/oracle.hpp"
#include "evolab/rational.hpp"
#include "evolab/rng.hpp"
#include "evolab/separation_world.hpp"
#include "evolab/stream_io.hpp"
#include "evolab/trajectory_tree.hpp"
#include "evolab/verify.hpp"

namespace {

using namespace evolab;

struct ParamFlags {
  std::string params_json;
  long long n = 0;
  long long m = 0;
  long long p = 0;
  long long d = 0;
  long long k = 0;
  long long w = 0;
  long long r = 0;
  long long zmax = 0;
  long long entry_bound = 0;
  std::vector<long long> s_set;
};

void add_param_flags(CLI::App* cmd, std::string& family, ParamFlags& pf, bool required) {
  auto* opt = cmd->add_option("--family", family, "catalog family name");
  if (required) opt->required();
  cmd->add_option("--params", pf.params_json, "family parameters as a JSON object");
  cmd->add_option("--n", pf.n, "family parameter n");
  cmd->add_option("--m", pf.m, "family parameter m");
  cmd->add_option("--p", pf.p, "family parameter p");
  cmd->add_option("--d", pf.d, "family parameter d");
  cmd->add_option("--k", pf.k, "family parameter k");
  cmd->add_option("--w", pf.w, "family parameter w");
  cmd->add_option("--r", pf.r, "family parameter r");
  cmd->add_option("--zmax", pf.zmax, "family parameter zmax");
  cmd->add_option("--entry-bound", pf.entry_bound, "family parameter entry_bound");
  cmd->add_option("--S", pf.s_set, "family parameter S (comma separated)")->delimiter(',');
}

FamilySpec make_spec(const CLI::App* cmd, const std::string& family, const ParamFlags& pf) {
  FamilySpec spec;
  spec.family = family;
  if (!pf.params_json.empty()) {
    Json parsed = Json::parse(pf.params_json, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object())
      throw SpecError("--params must be a JSON object");
    spec.params = parsed;
  }
  auto put = [&](const char* flag, const char* key, const Json& value) {
    if (cmd->count(flag) > 0) spec.params[key] = value;
  };
  put("--n", "n", pf.n);
  put("--m", "m", pf.m);
  put("--p", "p", pf.p);
  put("--d", "d", pf.d);
  put("--k", "k", pf.k);
  put("--w", "w", pf.w);
  put("--r", "r", pf.r);
  put("--zmax", "zmax", pf.zmax);
  put("--entry-bound", "entry_bound", pf.entry_bound);
  put("--S", "S", pf.s_set);
  return spec;
}

std::uint64_t resolve_budget(const CLI::App* cmd, std::uint64_t flag_value,
                             std::uint64_t fallback) {
  if (cmd->count("--budget") > 0) return flag_value;
  if (const char* env = std::getenv("EVOLAB_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw SpecError("EVOLAB_BUDGET must be an unsigned integer");
    }
  }
  return fallback;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

std::vector<std::string> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stream file '" + path + "'");
  return read_stream_labels_csv(in);
}

struct GameConfig {
  int T = -1;
  long long trials = 1;
  std::uint64_t seed = 1;
  std::string metric = "mistakes";
  std::string out;
  std::string csv;
};

template <class S>
int run_configured_game(const GameContext<S>& ctx, const LearnerFactory<S>& make_learner,
                        const AdversaryFactory<S>& make_adversary, const GameConfig& cfg) {
  if (cfg.T < 0) throw SpecError("--T is required");
  if (cfg.trials <= 1) {
    auto learner = make_learner();
    auto adversary = make_adversary();
    GameReport report = run_game<S>(*learner, *adversary, cfg.T, derive_seed(cfg.seed, 0),
                                    derive_seed(cfg.seed, 1), ctx);
    if (!cfg.csv.empty()) {
      std::ostringstream rounds;
      report.write_rounds_csv(rounds);
      write_output(cfg.csv, rounds.str());
    }
    write_output(cfg.out, report.to_json().dump(2) + "\n");
  } else {
    MonteCarloSummary summary = monte_carlo<S>(
        make_learner, make_adversary, cfg.T, static_cast<std::size_t>(cfg.trials), cfg.seed,
        metric_from_name(cfg.metric), ctx);
    write_output(cfg.out, summary.to_json().dump(2) + "\n");
  }
  return 0;
}

long long param_int(const FamilySpec& spec, const char* key) {
  if (!spec.params.contains(key))
    throw SpecError("family '" + spec.family + "' spec is missing parameter '" + key + "'");
  return spec.params.at(key).get<long long>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolab: dimensions and prediction games for evolution-function families"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 I/O failure, 2 invalid spec or capability mismatch,\n"
      "3 budget exceeded, 4 verification failure.\n"
      "The EVOLAB_BUDGET environment variable overrides enumeration budgets;\n"
      "--budget takes precedence over it.");

  std::string family;
  ParamFlags pf;

  auto* dims = app.add_subcommand("dims", "compute dimension report for a family");
  add_param_flags(dims, family, pf, true);
  int dims_T = 6;
  std::vector<std::string> gamma_texts;
  bool want_ldim = false;
  bool want_branching = false;
  bool want_witnesses = false;
  int ds_cap = 0;
  std::string dims_out;
  dims->add_option("--T", dims_T, "complexity depth")->check(CLI::Range(0, 64));
  dims->add_option("--gamma", gamma_texts, "evolution dimension ratio p/q (repeatable)");
  dims->add_flag("--ldim", want_ldim, "include the littlestone dimension");
  dims->add_flag("--branching", want_branching, "include the branching dimension");
  dims->add_flag("--witnesses", want_witnesses, "include witness trees");
  dims->add_option("--dsdim", ds_cap, "include the DS dimension searched up to this size");
  dims->add_option("--out", dims_out, "write the JSON report here instead of stdout");

  auto* game = app.add_subcommand("game", "run a prediction game or a monte carlo");
  add_param_flags(game, family, pf, true);
  GameConfig cfg;
  std::string learner_name;
  std::string adversary_name;
  std::string stream_path;
  double eta = 0;
  long long member = 0;
  long long member2 = 1;
  long long blocks_k = 1;
  int tree_depth = -1;
  bool tie_high = false;
  bool full_domain = false;
  std::uint64_t game_budget = kDefaultExpertBudget;
  game->add_option("--learner", learner_name, "learner name")->required();
  game->add_option("--adversary", adversary_name, "adversary name (default stream)");
  game->add_option("--stream", stream_path, "fixed stream CSV file (t,state)");
  game->add_option("--T", cfg.T, "horizon");
  game->add_option("--trials", cfg.trials, "replicas; more than 1 produces a monte carlo summary")
      ->check(CLI::PositiveNumber);
  game->add_option("--seed", cfg.seed, "base seed");
  game->add_option("--metric", cfg.metric, "monte carlo metric: mistakes, markovian, flow");
  game->add_option("--eta", eta, "learning rate for weighted learners (0 = theory default)");
  game->add_option("--member", member, "member index for member-parameterized roles");
  game->add_option("--member2", member2, "second member index for the two-function adversary");
  game->add_option("--blocks", blocks_k, "odd block length for tightness adversaries");
  game->add_option("--depth", tree_depth, "witness tree depth for tree adversaries (default T)");
  game->add_flag("--tie-high", tie_high, "version-space learner breaks ties toward high states");
  game->add_flag("--full-domain", full_domain,
                 "version-space learner scores the whole domain, not just the projection");
  game->add_option("--budget", game_budget, "expert enumeration budget");
  game->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  game->add_option("--csv", cfg.csv, "write the per-round transcript CSV here");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suite_names;
  std::string verify_out;
  std::uint64_t verify_budget = kVerifyEnumerationBudget;
  verify->add_option("suites", suite_names,
                     "suites to run (default: all, plus the rerun-determinism check)");
  verify->add_option("--out", verify_out, "write the JSON results here");
  verify->add_option("--budget", verify_budget, "oracle enumeration budget");

  auto* fam_cmd = app.add_subcommand("family", "inspect and export catalog families");
  auto* fam_list = fam_cmd->add_subcommand("list", "list catalog families and parameters");
  auto* fam_show = fam_cmd->add_subcommand("show", "summarize one family as JSON");
  std::string show_out;
  add_param_flags(fam_show, family, pf, true);
  fam_show->add_option("--out", show_out, "write the JSON summary here instead of stdout");
  auto* fam_export = fam_cmd->add_subcommand("export", "emit the full function table CSV");
  std::string export_out;
  add_param_flags(fam_export, family, pf, true);
  fam_export->add_option("--out", export_out, "write the CSV here instead of stdout");
  fam_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dims->parsed()) {
      BuiltFamily built = build_family(make_spec(dims, family, pf));
      const EnumeratedFamily& fam = require_enumerated(built);
      DimensionEngine engine(fam);
      DimensionReport report;
      report.family = fam.name();
      report.members = fam.member_count();
      report.states = fam.state_count();
      for (int t = 0; t <= dims_T; ++t) report.complexity.push_back(engine.complexity(t));
      if (gamma_texts.empty()) gamma_texts = {"1/4", "1/2", "1", "2"};
      for (const std::string& text : gamma_texts) {
        Rational gamma = Rational::parse(text);
        report.evolution.emplace_back(gamma.str(), engine.evolution_dimension(gamma));
      }
      if (want_branching) report.branching = engine.branching_dimension();
      if (want_ldim) report.littlestone = engine.littlestone_dimension();
      if (ds_cap > 0) report.ds = ds_dimension(fam, ds_cap);
      if (want_witnesses) {
        report.complexity_witness = engine.witness(dims_T);
        if (want_ldim) report.littlestone_witness = engine.littlestone_witness();
      }
      write_output(dims_out, dimension_report_json(report, fam.space()).dump(2) + "\n");
      return 0;
    }

    if (game->parsed()) {
      if (adversary_name.empty())
        adversary_name = stream_path.empty() ? "" : "stream";
      if (adversary_name.empty()) throw SpecError("--adversary or --stream is required");
      FamilySpec spec = make_spec(game, family, pf);
      BuiltFamily built = build_family(spec);
      std::uint64_t budget = resolve_budget(game, game_budget, kDefaultExpertBudget);

      if (built.enumerated) {
        const EnumeratedFamily& fam = *built.enumerated;
        auto engine = std::make_shared<DimensionEngine>(fam);
        GameContext<State> ctx = enumerated_context(fam);
        std::optional<Stream> stream;
        if (!stream_path.empty()) stream = load_stream_file(stream_path, fam.space());
        if (cfg.T < 0 && stream) cfg.T = static_cast<int>(stream->size()) - 1;
        int depth = tree_depth > 0 ? tree_depth : cfg.T;

        LearnerFactory<State> make_learner;
        if (learner_name == "alg1") {
          Alg1Options options;
          options.highest_tie_break = tie_high;
          options.full_domain_argmax = full_domain;
          make_learner = [engine, options] {
            return std::make_unique<Alg1Session>(engine, options);
          };
        } else if (learner_name == "soa") {
          make_learner = [engine] { return soa_session(engine); };
        } else if (learner_name == "ew_markovian") {
          make_learner = [&fam, eta] { return std::make_unique<EwMarkovianSession>(fam, eta); };
        } else if (learner_name == "flow_experts") {
          if (cfg.T < 0) throw SpecError("--T is required");
          auto oracle = std::make_shared<FlowExpertsOracle>(engine, cfg.T, budget);
          make_learner = [oracle, eta] {
            return std::make_unique<FlowExpertsSession>(oracle, eta);
          };
        } else if (learner_name == "baseline_previous") {
          make_learner = [] { return std::make_unique<PreviousStateLearner<State>>(); };
        } else if (learner_name == "baseline_random") {
          std::size_t states = fam.state_count();
          make_learner = [states] { return std::make_unique<RandomGuessLearner>(states); };
        } else if (learner_name == "baseline_member") {
          make_learner = [&fam, member] {
            return std::make_unique<FixedMemberLearner>(fam, static_cast<std::size_t>(member));
          };
        } else if (learner_name == "signed_capped") {
          if (spec.family != "signed_capped")
            throw SpecError("the signed_capped learner needs the signed_capped family");
          long long p = param_int(spec, "p");
          long long w = param_int(spec, "w");
          make_learner = [p, w] {
            return std::make_unique<SignedCappedSession>(static_cast<int>(p), w);
          };
        } else {
          throw SpecError("unknown learner '" + learner_name + "' for an enumerated family");
        }

        AdversaryFactory<State> make_adversary;
        if (adversary_name == "stream") {
          if (!stream) throw SpecError("the stream adversary needs --stream");
          make_adversary = [&stream] {
            return std::make_unique<FixedStreamAdversary<State>>(*stream);
          };
        } else if (adversary_name == "tree_walk" || adversary_name == "tree_path") {
          if (depth <= 0) throw SpecError("--T or --depth is required for tree adversaries");
          auto witness = std::make_shared<TrajectoryTree>(engine->witness(depth));
          if (adversary_name == "tree_walk")
            make_adversary = [&fam, witness] {
              return std::make_unique<TreeAdversaryDeterministic>(fam, *witness);
            };
          else
            make_adversary = [&fam, witness] {
              return std::make_unique<TreeAdversaryRandomPath>(fam, *witness);
            };
        } else if (adversary_name == "bool_forcing_mod2" ||
                   adversary_name == "bool_forcing_threshold") {
          bool mod2 = adversary_name == "bool_forcing_mod2";
          if (spec.family != (mod2 ? "bool_mod2" : "bool_threshold"))
            throw SpecError("adversary '" + adversary_name + "' needs the matching family");
          long long n = param_int(spec, "n");
          auto kind = mod2 ? BooleanForcingAdversary::Kind::mod2
                           : BooleanForcingAdversary::Kind::threshold;
          make_adversary = [n, kind] {
            return std::make_unique<BooleanForcingAdversary>(static_cast<int>(n), kind);
          };
        } else if (adversary_name == "littlestone_blocks") {
          auto witness = std::make_shared<LittlestoneTree>(engine->littlestone_witness());
          make_adversary = [&fam, witness] {
            return std::make_unique<LittlestoneBlockAdversary>(fam, *witness);
          };
        } else if (adversary_name == "two_function") {
          make_adversary = [&fam, member, member2] {
            return std::make_unique<TwoFunctionAdversary>(fam, static_cast<std::size_t>(member),
                                                          static_cast<std::size_t>(member2));
          };
        } else if (adversary_name == "markovian_tightness") {
          long long d = param_int(spec, "d");
          make_adversary = [d, blocks_k] {
            return std::make_unique<MarkovianTightnessAdversary>(static_cast<int>(d),
                                                                 static_cast<int>(blocks_k));
          };
        } else if (adversary_name == "switching_tightness") {
          long long p = param_int(spec, "p");
          long long w = param_int(spec, "w");
          make_adversary = [p, blocks_k, w] {
            return std::make_unique<SwitchingTightnessAdversary>(
                static_cast<int>(p), static_cast<int>(blocks_k), w);
          };
        } else {
          throw SpecError("unknown adversary '" + adversary_name +
                          "' for an enumerated family");
        }
        return run_configured_game<State>(ctx, make_learner, make_adversary, cfg);
      }

      if (built.lowrank) {
        int n = built.lowrank->n;
        int r = built.lowrank->r;
        GameContext<LinVec> ctx = linear_context(n);
        std::optional<std::vector<LinVec>> stream;
        if (!stream_path.empty()) {
          std::vector<LinVec> parsed;
          for (const std::string& label : load_labels(stream_path))
            parsed.push_back(lin_parse(label, n));
          stream = std::move(parsed);
        }
        if (cfg.T < 0 && stream) cfg.T = static_cast<int>(stream->size()) - 1;

        LearnerFactory<LinVec> make_learner;
        if (learner_name == "linear_span")
          make_learner = [n] { return std::make_unique<LinearSpanSession>(n); };
        else if (learner_name == "baseline_zero")
          make_learner = [n] { return std::make_unique<ZeroVectorLearner>(n); };
        else if (learner_name == "baseline_previous")
          make_learner = [] { return std::make_unique<PreviousStateLearner<LinVec>>(); };
        else
          throw SpecError("unknown learner '" + learner_name + "' for the linear family");

        AdversaryFactory<LinVec> make_adversary;
        if (adversary_name == "stream") {
          if (!stream) throw SpecError("the stream adversary needs --stream");
          make_adversary = [&stream] {
            return std::make_unique<FixedStreamAdversary<LinVec>>(*stream);
          };
        } else if (adversary_name == "lowrank_forcing") {
          make_adversary = [n, r] { return std::make_unique<LowrankForcingAdversary>(n, r); };
        } else {
          throw SpecError("unknown adversary '" + adversary_name + "' for the linear family");
        }
        return run_configured_game<LinVec>(ctx, make_learner, make_adversary, cfg);
      }

      SeparationWorld world(built.separation->m, built.separation->zmax);
      GameContext<SepState> ctx = separation_context(world);
      std::optional<std::vector<SepState>> stream;
      if (!stream_path.empty()) {
        std::vector<SepState> parsed;
        for (const std::string& label : load_labels(stream_path))
          parsed.push_back(world.parse(label));
        stream = std::move(parsed);
      }
      if (cfg.T < 0 && stream) cfg.T = static_cast<int>(stream->size()) - 1;

      LearnerFactory<SepState> make_learner;
      if (learner_name == "separation_realizable")
        make_learner = [&world] {
          return std::make_unique<SeparationRealizableSession>(world);
        };
      else if (learner_name == "baseline_previous")
        make_learner = [] { return std::make_unique<PreviousStateLearner<SepState>>(); };
      else
        throw SpecError("unknown learner '" + learner_name + "' for the separation family");

      AdversaryFactory<SepState> make_adversary;
      if (adversary_name == "stream") {
        if (!stream) throw SpecError("the stream adversary needs --stream");
        make_adversary = [&stream] {
          return std::make_unique<FixedStreamAdversary<SepState>>(*stream);
        };
      } else if (adversary_name == "separation_flow") {
        make_adversary = [&world] { return std::make_unique<SeparationFlowAdversary>(world); };
      } else {
        throw SpecError("unknown adversary '" + adversary_name +
                        "' for the separation family");
      }
      return run_configured_game<SepState>(ctx, make_learner, make_adversary, cfg);
    }

    if (verify->parsed()) {
      std::uint64_t budget = resolve_budget(verify, verify_budget, kVerifyEnumerationBudget);
      std::vector<SuiteResult> results;
      if (suite_names.empty()) {
        results = run_all_verify_suites(budget);
      } else {
        for (const std::string& name : suite_names)
          results.push_back(run_verify_suite(name, budget));
      }
      bool all_pass = true;
      Json out = Json::array();
      for (const SuiteResult& suite : results) {
        for (const CriterionResult& criterion : suite.criteria)
          std::cout << "[" << criterion.id << "][" << (criterion.pass ? "PASS" : "FAIL")
                    << "] " << criterion.title << "\n";
        std::cout << "suite " << suite.name << ": " << (suite.pass ? "PASS" : "FAIL")
                  << "\n";
        all_pass = all_pass && suite.pass;
        out.push_back(suite.to_json());
      }
      if (!verify_out.empty()) write_output(verify_out, out.dump(2) + "\n");
      return all_pass ? 0 : 4;
    }

    if (fam_list->parsed()) {
      for (const auto& [name, params] : catalog_listing())
        std::cout << name << ": " << params << "\n";
      return 0;
    }

    if (fam_show->parsed()) {
      BuiltFamily built = build_family(make_spec(fam_show, family, pf));
      Json j;
      j["spec"] = family_spec_to_json(built.spec);
      if (built.enumerated) {
        const EnumeratedFamily& fam = *built.enumerated;
        j["kind"] = "enumerated";
        j["members"] = fam.member_count();
        j["states"] = fam.state_count();
        j["max_projection"] = fam.max_projection();
      } else if (built.lowrank) {
        j["kind"] = "linear";
        j["dimension"] = built.lowrank->n;
        j["rank_bound"] = built.lowrank->r;
      } else {
        j["kind"] = "separation";
        SeparationWorld world(built.separation->m, built.separation->zmax);
        j["members"] = world.member_count();
        j["zmax"] = world.zmax();
      }
      write_output(show_out, j.dump(2) + "\n");
      return 0;
    }

    if (fam_export->parsed()) {
      BuiltFamily built = build_family(make_spec(fam_export, family, pf));
      const EnumeratedFamily& fam = require_enumerated(built);
      std::ostringstream csv;
      export_family_csv(csv, fam);
      write_output(export_out, csv.str());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
