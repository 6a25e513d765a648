#pragma once

#include <set>
#include <string>
#include <vector>

#include "wfv/encoder/rules.hpp"
#include "wfv/encoder/scenario.hpp"
#include "wfv/ltl/syntax.hpp"

namespace wfv::encoder {

struct EncodeOptions {
  /// Emit the printed exclusion form !(e_1 && ... && e_n) instead of
  /// !e_1 && ... && !e_n.
  bool literal_exclusion = false;
  /// Emit the three configuration-selection implications exactly as printed
  /// instead of the start-anchored form (see encode_reconfiguration).
  bool verbatim_reconfiguration = false;
};

struct Conjunct {
  Rule rule;
  bool global = true;  // under the top-level G; false = anchored at position 0
};

/// The scenario formula as an ordered list of top-level conjuncts.
struct ScenarioEncoding {
  std::vector<Conjunct> conjuncts;

  /// G(all global bodies) && all anchored formulas.
  Formula formula() const {
    std::vector<Formula> global, anchored;
    for (const auto& c : conjuncts) (c.global ? global : anchored).push_back(c.rule.formula);
    std::vector<Formula> top;
    if (!global.empty()) top.push_back(ltl::globally(ltl::conj_all(global)));
    for (auto& f : anchored) top.push_back(std::move(f));
    return ltl::conj_all(top);
  }

  /// One conjunct per line, each preceded by a comment naming its rule.
  /// Global bodies are printed with their own G, which is equivalent.
  std::string text() const {
    std::string out;
    for (const auto& c : conjuncts) {
      out += "# " + c.rule.origin + "\n";
      out += c.global ? ltl::to_string(ltl::globally(c.rule.formula)) : ltl::to_string(c.rule.formula);
      out += "\n";
    }
    return out;
  }
};

/// E^j_1 ∪ E^j_2 in a fixed order: config 1 nodes and edges, then those of
/// config 2 not already present.
inline std::vector<PropId> scenario_elements(const Scenario& s, int j) {
  std::vector<PropId> out = elements(s.config1, j);
  std::set<PropId> seen(out.begin(), out.end());
  for (auto& p : elements(s.config2, j))
    if (seen.insert(p).second) out.push_back(std::move(p));
  return out;
}

/// Elements of configuration `other` that configuration `i` lacks.
inline std::vector<PropId> exclusive_elements(const Scenario& s, int j, int i) {
  const auto mine = elements(s.config(i), j);
  const std::set<PropId> have(mine.begin(), mine.end());
  std::vector<PropId> out;
  for (auto& p : elements(s.config(3 - i), j))
    if (!have.count(p)) out.push_back(std::move(p));
  return out;
}

inline Formula disj_props(const std::vector<PropId>& ps) {
  std::vector<Formula> fs;
  for (const auto& p : ps) fs.push_back(p.atom());
  return ltl::disj_all(fs);
}

/// end => X G !end, once per distinct End node of the two configurations.
inline std::vector<Rule> encode_termination(const Scenario& s, int j) {
  std::set<std::string> ends;
  for (int i = 1; i <= 2; ++i)
    for (const auto& e : s.config(i).nodes_of_kind(NodeKind::End)) ends.insert(e);
  std::vector<Rule> out;
  for (const auto& e : ends) {
    const Formula a = act(e, j);
    out.push_back({ltl::implies(a, ltl::next(ltl::globally(ltl::neg(a)))),
                   detail::tag("end-never-resumes", detail::inst(e, j))});
  }
  return out;
}

/// W <=> any element of either configuration holds.
inline Rule encode_active(const Scenario& s, int j) {
  return {ltl::iff(PropId::active(j).atom(), disj_props(scenario_elements(s, j))),
          detail::tag("active-flag", "W#" + std::to_string(j))};
}

/// C_i => every rule of configuration i.
inline Rule encode_config_guard(const Scenario& s, int j, int i) {
  std::vector<Formula> body;
  for (const auto& r : encode_config(s.config(i), j)) body.push_back(r.formula);
  return {ltl::implies(PropId::config_flag(i, j).atom(), ltl::conj_all(body)),
          detail::tag("config-guard", "C" + std::to_string(i) + "#" + std::to_string(j))};
}

/// Under C_i an active instance is inside configuration i and uses none of
/// the elements only the other configuration has.
///
/// The "some element of E_i holds" part is conditioned on W: configuration
/// flags stay true while the instance is idle (see encode_reconfiguration),
/// and an unconditional disjunction would forbid idle positions.
inline Rule encode_exclusive(const Scenario& s, int j, const EncodeOptions& opt = {}) {
  std::vector<Formula> parts;
  const Formula w = PropId::active(j).atom();
  for (int i = 1; i <= 2; ++i) {
    std::vector<Formula> body{ltl::implies(w, disj_props(elements(s.config(i), j)))};
    const auto only_other = exclusive_elements(s, j, i);
    if (!only_other.empty()) {
      std::vector<Formula> atoms;
      for (const auto& p : only_other) atoms.push_back(p.atom());
      if (opt.literal_exclusion) {
        body.push_back(ltl::neg(ltl::conj_all(atoms)));
      } else {
        for (auto& a : atoms) body.push_back(ltl::neg(a));
      }
    }
    parts.push_back(ltl::implies(PropId::config_flag(i, j).atom(), ltl::conj_all(body)));
  }
  return {ltl::conj_all(parts), detail::tag("exclusive-configs", "instance " + std::to_string(j))};
}

/// Configuration selection for instance j. Returns global rules in `global`
/// and origin-anchored rules in `anchored`.
///
/// Default form: the flag is chosen at the first active position (C1 before
/// R, C2 from R on), kept while the instance stays active, and an instance
/// that is never active before R is under C2 for the whole time line.
///
/// Verbatim form: the printed implications, each placed under G. They force
/// C1 and C2 at every idle position of an instance that starts before R and
/// are therefore unsatisfiable together with encode_exclusive on most
/// scenarios; kept for comparison only.
inline void encode_reconfiguration(const Scenario& s, int j, const EncodeOptions& opt, std::vector<Rule>& global,
                                   std::vector<Rule>& anchored) {
  using namespace ltl;
  const Formula w = PropId::active(j).atom();
  const Formula r = PropId::reconfig().atom();
  const Formula c1 = PropId::config_flag(1, j).atom();
  const Formula c2 = PropId::config_flag(2, j).atom();
  const std::string who = "instance " + std::to_string(j);
  (void)s;
  if (opt.verbatim_reconfiguration) {
    const Formula before = conj(w, neg(r));
    const Formula after = conj(w, r);
    global.push_back({implies(disj(until(before, neg(w)), until(before, until(after, conj(neg(w), r)))), c1),
                      detail::tag("select-config1-verbatim", who)});
    global.push_back({implies(until(after, neg(w)), c2), detail::tag("select-config2-verbatim", who)});
    global.push_back({implies(neg(eventually(before)), globally(c2)), detail::tag("late-instance-verbatim", who)});
    return;
  }
  const Formula first = conj(w, neg(yesterday(w)));
  global.push_back({implies(conj(first, neg(r)), c1), detail::tag("select-config1", who)});
  global.push_back({implies(conj(first, r), c2), detail::tag("select-config2", who)});
  global.push_back({implies(conj(w, next(w)), conj(implies(c1, next(c1)), implies(c2, next(c2)))),
                    detail::tag("keep-config", who)});
  anchored.push_back({implies(neg(eventually(conj(w, neg(r)))), globally(c2)), detail::tag("late-instance", who)});
}

/// !a at 0..p-1 and a at p, as nested X.
inline Formula schedule_at(const Formula& a, std::size_t p) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < p; ++i) parts.push_back(ltl::next_n(ltl::neg(a), i));
  parts.push_back(ltl::next_n(a, p));
  return ltl::conj_all(parts);
}

/// Start position (anchored) and the single-run constraint (global).
inline void encode_schedule(const Scenario& s, int j, std::vector<Rule>& global, std::vector<Rule>& anchored) {
  const Formula w = PropId::active(j).atom();
  const auto& start = s.starts.at(static_cast<std::size_t>(j - 1));
  if (start) anchored.push_back({schedule_at(w, *start), detail::tag("start-at", "instance " + std::to_string(j) + " at " + std::to_string(*start))});
  global.push_back({ltl::implies(ltl::conj(w, ltl::neg(ltl::next(w))), ltl::next(ltl::globally(ltl::neg(w)))),
                    detail::tag("single-run", "instance " + std::to_string(j))});
}

/// The scenario formula: behavioural rules under G, schedule and
/// late-instance rules anchored at the origin. Configuration guards are
/// distributed over the rules of their configuration, one conjunct per rule.
inline ScenarioEncoding encode_scenario(const Scenario& s, const EncodeOptions& opt = {}) {
  check_scenario(s);
  ScenarioEncoding enc;
  auto add = [&](Rule r, bool global) { enc.conjuncts.push_back({std::move(r), global}); };
  const Formula r = PropId::reconfig().atom();
  std::vector<Rule> anchored;
  for (int j = 1; j <= s.instances(); ++j) {
    for (auto& t : encode_termination(s, j)) add(std::move(t), true);
    add(encode_active(s, j), true);
    for (int i = 1; i <= 2; ++i) {
      const Formula c = PropId::config_flag(i, j).atom();
      for (auto& rule : encode_config(s.config(i), j)) {
        add({ltl::implies(c, rule.formula), "[config" + std::to_string(i) + "] " + rule.origin}, true);
      }
    }
    add(encode_exclusive(s, j, opt), true);
    std::vector<Rule> global;
    encode_reconfiguration(s, j, opt, global, anchored);
    encode_schedule(s, j, global, anchored);
    for (auto& g : global) add(std::move(g), true);
  }
  add({ltl::implies(r, ltl::globally(r)), detail::tag("reconfig-persists", "R")}, true);
  if (s.reconfig_at) anchored.push_back({schedule_at(r, *s.reconfig_at), detail::tag("reconfig-at", std::to_string(*s.reconfig_at))});
  for (auto& a : anchored) add(std::move(a), false);
  return enc;
}

/// Every proposition of the scenario, rendered.
inline std::set<std::string> scenario_propositions(const Scenario& s) {
  std::set<std::string> out{PropId::reconfig().render()};
  for (int j = 1; j <= s.instances(); ++j) {
    for (const auto& p : scenario_elements(s, j)) out.insert(p.render());
    out.insert(PropId::active(j).render());
    out.insert(PropId::config_flag(1, j).render());
    out.insert(PropId::config_flag(2, j).render());
  }
  return out;
}

}  // namespace wfv::encoder
