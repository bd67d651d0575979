#include "evolab/catalog.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <set>

#include "evolab/errors.hpp"
#include "evolab/state_space.hpp"

namespace evolab {

namespace {

std::string param_name(const std::string& family, const std::string& key) {
  return "family '" + family + "' parameter '" + key + "'";
}

long long get_int(const Json& params, const std::string& family, const std::string& key,
                  long long lo, long long hi) {
  if (!params.contains(key))
    throw SpecError(param_name(family, key) + " is required");
  const Json& v = params.at(key);
  if (!v.is_number_integer())
    throw SpecError(param_name(family, key) + " must be an integer");
  long long value = v.get<long long>();
  if (value < lo || value > hi)
    throw SpecError(param_name(family, key) + " must be in [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
  return value;
}

long long get_int_or(const Json& params, const std::string& family,
                     const std::string& key, long long lo, long long hi,
                     long long fallback) {
  if (!params.contains(key)) return fallback;
  return get_int(params, family, key, lo, hi);
}

std::vector<long long> get_int_array(const Json& params, const std::string& family,
                                     const std::string& key) {
  if (!params.contains(key))
    throw SpecError(param_name(family, key) + " is required");
  const Json& v = params.at(key);
  if (!v.is_array()) throw SpecError(param_name(family, key) + " must be an array");
  std::vector<long long> values;
  for (const Json& e : v) {
    if (!e.is_number_integer())
      throw SpecError(param_name(family, key) + " must hold integers");
    values.push_back(e.get<long long>());
  }
  return values;
}

void reject_unknown(const Json& params, const std::string& family,
                    std::initializer_list<const char*> allowed) {
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) known = true;
    if (!known)
      throw SpecError("family '" + family + "' does not take parameter '" + it.key() +
                      "'");
  }
}

std::string sign_chars(std::uint64_t bits, int count) {
  std::string s(static_cast<std::size_t>(count), '-');
  for (int i = 0; i < count; ++i)
    if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '+';
  return s;
}

EnumeratedFamily bool_matrix_family(int n, bool mod2) {
  const std::string name = mod2 ? "bool_mod2" : "bool_threshold";
  if (n < 1 || n > 3)
    throw SpecError("family '" + name + "' supports n in [1, 3] for full enumeration");
  const State states = State{1} << n;
  const std::uint64_t matrices = std::uint64_t{1} << (n * n);
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  std::set<std::vector<State>> seen;
  for (std::uint64_t m = 0; m < matrices; ++m) {
    std::vector<State> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] =
          static_cast<State>((m >> (i * n)) & ((std::uint64_t{1} << n) - 1));
    std::vector<State> table(states);
    for (State x = 0; x < states; ++x) {
      State y = 0;
      for (int i = 0; i < n; ++i) {
        State hit = rows[static_cast<std::size_t>(i)] & x;
        bool bit = mod2 ? (std::popcount(hit) & 1) != 0 : hit != 0;
        if (bit) y |= State{1} << i;
      }
      table[x] = y;
    }
    if (!mod2 && !seen.insert(table).second) continue;
    std::string label = "W=";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        label += ((rows[static_cast<std::size_t>(i)] >> j) & 1u) ? '1' : '0';
    tables.push_back(std::move(table));
    labels.push_back(std::move(label));
  }
  return EnumeratedFamily(StateSpace(bitvec_labels(n)), std::move(tables),
                          std::move(labels), name + "(n=" + std::to_string(n) + ")");
}

}  // namespace

EnumeratedFamily bool_mod2(int n) { return bool_matrix_family(n, true); }

EnumeratedFamily bool_threshold(int n) { return bool_matrix_family(n, false); }

EnumeratedFamily f_s_family(std::vector<long long> s_set, long long window) {
  if (window < 1 || window > 64)
    throw SpecError("family 'f_s' window must be in [1, 64]");
  std::sort(s_set.begin(), s_set.end());
  s_set.erase(std::unique(s_set.begin(), s_set.end()), s_set.end());
  std::vector<long long> active;
  for (long long s : s_set) {
    if (s < 0) throw SpecError("family 'f_s' set entries must be non-negative");
    if (s < window) active.push_back(s);
  }
  if (active.size() > 20)
    throw SpecError("family 'f_s' supports at most 20 active magnitudes");
  const std::uint64_t members = std::uint64_t{1} << active.size();
  StateSpace space(signed_labels(window));
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  for (std::uint64_t sigma = 0; sigma < members; ++sigma) {
    std::vector<State> table(space.size());
    for (State x = 0; x < space.size(); ++x) {
      long long v = state_to_signed(x);
      long long mag = v < 0 ? -v : v;
      if (mag >= window) {
        table[x] = x;
        continue;
      }
      auto it = std::find(active.begin(), active.end(), mag);
      int sign = 1;
      if (it != active.end()) {
        std::size_t idx = static_cast<std::size_t>(it - active.begin());
        sign = ((sigma >> idx) & 1u) ? 1 : -1;
      }
      table[x] = signed_to_state(sign * (mag + 1));
    }
    tables.push_back(std::move(table));
    labels.push_back("signs=" + sign_chars(sigma, static_cast<int>(active.size())));
  }
  std::string set_desc;
  for (long long s : active) {
    if (!set_desc.empty()) set_desc += ",";
    set_desc += std::to_string(s);
  }
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "f_s(S={" + set_desc + "},w=" + std::to_string(window) + ")");
}

EnumeratedFamily thresholds_grid(int m) {
  if (m < 2 || m > 64) throw SpecError("family 'thresholds_grid' needs m in [2, 64]");
  StateSpace space(fraction_labels(m));
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  for (int j = 1; j < m; ++j) {
    std::vector<State> table(space.size());
    for (State x = 0; x < space.size(); ++x)
      table[x] = static_cast<int>(x) >= j ? static_cast<State>(m) : State{0};
    tables.push_back(std::move(table));
    labels.push_back("t=" + fraction_labels(m)[static_cast<std::size_t>(j)]);
  }
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "thresholds_grid(m=" + std::to_string(m) + ")");
}

EnumeratedFamily threshold_pair() {
  StateSpace space({"0", "1/2", "1"});
  std::vector<std::vector<State>> tables = {{0, 2, 2}, {0, 0, 2}};
  std::vector<std::string> labels = {"x>=1/2", "x>1/2"};
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "threshold_pair");
}

EnumeratedFamily signed_capped(int p, long long window) {
  if (window < 1 || window > 64)
    throw SpecError("family 'signed_capped' window must be in [1, 64]");
  if (p < 0 || p > window || p > 20)
    throw SpecError("family 'signed_capped' needs 0 <= p <= min(w, 20)");
  StateSpace space(signed_labels(window));
  const std::uint64_t members = std::uint64_t{1} << p;
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  for (std::uint64_t sigma = 0; sigma < members; ++sigma) {
    std::vector<State> table(space.size());
    for (State x = 0; x < space.size(); ++x) {
      long long v = state_to_signed(x);
      long long mag = v < 0 ? -v : v;
      if (mag >= window) {
        table[x] = x;
        continue;
      }
      int sign = 1;
      if (mag < p) sign = ((sigma >> mag) & 1u) ? 1 : -1;
      table[x] = signed_to_state(sign * (mag + 1));
    }
    tables.push_back(std::move(table));
    labels.push_back("signs=" + sign_chars(sigma, p));
  }
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "signed_capped(p=" + std::to_string(p) +
                              ",w=" + std::to_string(window) + ")");
}

EnumeratedFamily switching_family(int p, long long window) {
  if (window < 1 || window > 64)
    throw SpecError("family 'switching' window must be in [1, 64]");
  if (p < 0 || p > window - 1 || p > 16)
    throw SpecError("family 'switching' needs 0 <= p <= min(w-1, 16)");
  StateSpace space(signed_labels(window));
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  std::set<std::vector<State>> seen;
  std::vector<long long> points(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) points[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << (p + 1)); ++sigma) {
      std::vector<State> table(space.size());
      for (State x = 0; x < space.size(); ++x) {
        long long v = state_to_signed(x);
        long long mag = v < 0 ? -v : v;
        if (mag >= window) {
          table[x] = x;
          continue;
        }
        std::size_t segment = 0;
        for (long long s : points)
          if (s <= mag) ++segment;
        int sign = ((sigma >> segment) & 1u) ? 1 : -1;
        table[x] = signed_to_state(sign * (mag + 1));
      }
      if (!seen.insert(table).second) continue;
      std::string desc;
      for (long long s : points) {
        if (!desc.empty()) desc += ",";
        desc += std::to_string(s);
      }
      tables.push_back(std::move(table));
      labels.push_back("s=" + desc + "|" + sign_chars(sigma, p + 1));
    }
    if (p == 0) break;
    int i = p - 1;
    while (i >= 0 && points[static_cast<std::size_t>(i)] == window - 1 - (p - 1 - i)) --i;
    if (i < 0) break;
    ++points[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < p; ++j)
      points[static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(j - 1)] + 1;
  }
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "switching(p=" + std::to_string(p) +
                              ",w=" + std::to_string(window) + ")");
}

EnumeratedFamily markovian_tightness(int d) {
  if (d < 1 || d > 12) throw SpecError("family 'markovian_tightness' needs d in [1, 12]");
  std::vector<std::string> state_labels;
  for (int i = 1; i <= d; ++i) state_labels.push_back(std::to_string(i));
  for (int j = 0; j < d; ++j) {
    state_labels.push_back(std::to_string(d + 1 + j));
    state_labels.push_back("-" + std::to_string(d + 1 + j));
  }
  StateSpace space(std::move(state_labels));
  const std::uint64_t members = std::uint64_t{1} << d;
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  for (std::uint64_t sigma = 0; sigma < members; ++sigma) {
    std::vector<State> table(space.size());
    for (State x = 0; x < space.size(); ++x) {
      if (x < static_cast<State>(d)) {
        bool plus = (sigma >> x) & 1u;
        table[x] = static_cast<State>(d + 2 * x + (plus ? 0 : 1));
      } else {
        table[x] = (x - static_cast<State>(d)) / 2;
      }
    }
    tables.push_back(std::move(table));
    labels.push_back("signs=" + sign_chars(sigma, d));
  }
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "markovian_tightness(d=" + std::to_string(d) + ")");
}

EnumeratedFamily all_functions(int k) {
  if (k < 1 || k > 5) throw SpecError("family 'all_functions' needs k in [1, 5]");
  std::vector<std::string> state_labels;
  for (int i = 0; i < k; ++i) state_labels.push_back(std::to_string(i));
  StateSpace space(std::move(state_labels));
  std::uint64_t members = 1;
  for (int i = 0; i < k; ++i) members *= static_cast<std::uint64_t>(k);
  std::vector<std::vector<State>> tables;
  std::vector<std::string> labels;
  for (std::uint64_t m = 0; m < members; ++m) {
    std::vector<State> table(space.size());
    std::uint64_t rest = m;
    std::string digits;
    for (State x = 0; x < space.size(); ++x) {
      table[x] = static_cast<State>(rest % static_cast<std::uint64_t>(k));
      digits += std::to_string(table[x]);
      rest /= static_cast<std::uint64_t>(k);
    }
    tables.push_back(std::move(table));
    labels.push_back("f=" + digits);
  }
  return EnumeratedFamily(std::move(space), std::move(tables), std::move(labels),
                          "all_functions(k=" + std::to_string(k) + ")");
}

FamilySpec family_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw SpecError("family spec must be an object with a 'family' string");
  FamilySpec spec;
  spec.family = j.at("family").get<std::string>();
  if (j.contains("params")) {
    if (!j.at("params").is_object())
      throw SpecError("family spec 'params' must be an object");
    spec.params = j.at("params");
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "family" && it.key() != "params")
      throw SpecError("family spec does not take field '" + it.key() + "'");
  return spec;
}

Json family_spec_to_json(const FamilySpec& spec) {
  return Json{{"family", spec.family}, {"params", spec.params}};
}

BuiltFamily build_family(const FamilySpec& spec) {
  BuiltFamily built;
  built.spec = spec;
  const Json& p = spec.params;
  const std::string& id = spec.family;
  if (id == "bool_mod2") {
    reject_unknown(p, id, {"n"});
    built.enumerated = bool_mod2(static_cast<int>(get_int(p, id, "n", 1, 3)));
  } else if (id == "bool_threshold") {
    reject_unknown(p, id, {"n"});
    built.enumerated = bool_threshold(static_cast<int>(get_int(p, id, "n", 1, 3)));
  } else if (id == "f_s") {
    reject_unknown(p, id, {"S", "w"});
    built.enumerated = f_s_family(get_int_array(p, id, "S"), get_int(p, id, "w", 1, 64));
  } else if (id == "thresholds_grid") {
    reject_unknown(p, id, {"m"});
    built.enumerated = thresholds_grid(static_cast<int>(get_int(p, id, "m", 2, 64)));
  } else if (id == "threshold_pair") {
    reject_unknown(p, id, {});
    built.enumerated = threshold_pair();
  } else if (id == "signed_capped") {
    reject_unknown(p, id, {"p", "w"});
    built.enumerated = signed_capped(static_cast<int>(get_int(p, id, "p", 0, 20)),
                                     get_int(p, id, "w", 1, 64));
  } else if (id == "switching") {
    reject_unknown(p, id, {"p", "w"});
    built.enumerated = switching_family(static_cast<int>(get_int(p, id, "p", 0, 16)),
                                        get_int(p, id, "w", 1, 64));
  } else if (id == "markovian_tightness") {
    reject_unknown(p, id, {"d"});
    built.enumerated = markovian_tightness(static_cast<int>(get_int(p, id, "d", 1, 12)));
  } else if (id == "all_functions") {
    reject_unknown(p, id, {"k"});
    built.enumerated = all_functions(static_cast<int>(get_int(p, id, "k", 1, 5)));
  } else if (id == "lowrank_linear") {
    reject_unknown(p, id, {"n", "r", "entry_bound"});
    LowrankSpec lr;
    lr.n = static_cast<int>(get_int(p, id, "n", 1, 16));
    lr.r = static_cast<int>(get_int(p, id, "r", 1, 16));
    lr.entry_bound = get_int_or(p, id, "entry_bound", 1, 1000, 2);
    if (lr.r >= lr.n)
      throw SpecError("family 'lowrank_linear' needs r < n");
    built.lowrank = lr;
  } else if (id == "separation") {
    reject_unknown(p, id, {"m", "zmax"});
    SeparationSpec sep;
    sep.m = static_cast<int>(get_int(p, id, "m", 1, 62));
    sep.zmax = get_int(p, id, "zmax", 1, 1'000'000);
    built.separation = sep;
  } else {
    throw SpecError("unknown family '" + id + "'");
  }
  return built;
}

const EnumeratedFamily& require_enumerated(const BuiltFamily& built) {
  if (!built.enumerated)
    throw CapabilityError("family '" + built.spec.family +
                          "' is implicit and cannot be enumerated");
  return *built.enumerated;
}

void export_family_csv(std::ostream& out, const EnumeratedFamily& family) {
  out << "member,state,next_state\n";
  for (std::size_t f = 0; f < family.member_count(); ++f)
    for (State x = 0; x < family.state_count(); ++x)
      out << family.member_label(f) << "," << family.space().label(x) << ","
          << family.space().label(family.apply(f, x)) << "\n";
}

std::vector<std::pair<std::string, std::string>> catalog_listing() {
  return {
      {"bool_mod2", "n (bit-vector dimension, 1..3)"},
      {"bool_threshold", "n (bit-vector dimension, 1..3)"},
      {"f_s", "S (array of magnitudes), w (window)"},
      {"thresholds_grid", "m (grid resolution, 2..64)"},
      {"threshold_pair", "(no parameters)"},
      {"signed_capped", "p (free magnitudes), w (window)"},
      {"switching", "p (switch points), w (window)"},
      {"markovian_tightness", "d (fan-out states, 1..12)"},
      {"all_functions", "k (state count, 1..5)"},
      {"lowrank_linear", "n (dimension), r (rank), entry_bound (default 2)"},
      {"separation", "m (sign coordinates), zmax (counter cap)"},
  };
}

}  // namespace evolab
