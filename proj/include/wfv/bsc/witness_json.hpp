#pragma once

#include <string>

#include "json.hpp"
#include "wfv/ltl/lasso.hpp"

namespace wfv::bsc {

class WitnessFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `{"bound": k, "loop": l, "states": [[prop, ...], ...]}` with propositions
/// sorted within each state. An `alphabet` member lists every proposition of
/// the checked formula so that replay can tell absent from unknown.
inline nlohmann::ordered_json witness_to_json(const ltl::LassoWord& w) {
  nlohmann::ordered_json j;
  j["bound"] = w.bound();
  j["loop"] = w.loop();
  auto states = nlohmann::ordered_json::array();
  for (const auto& s : w.states()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : s) arr.push_back(p);
    states.push_back(std::move(arr));
  }
  j["states"] = std::move(states);
  auto alpha = nlohmann::ordered_json::array();
  for (const auto& p : w.alphabet()) alpha.push_back(p);
  j["alphabet"] = std::move(alpha);
  return j;
}

inline std::string witness_to_string(const ltl::LassoWord& w) { return witness_to_json(w).dump(2) + "\n"; }

inline ltl::LassoWord witness_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw WitnessFormatError(std::string("malformed witness JSON: ") + e.what());
  }
  try {
    const auto bound = j.at("bound").get<std::size_t>();
    const auto loop = j.at("loop").get<std::size_t>();
    std::vector<ltl::LassoWord::State> states;
    for (const auto& s : j.at("states")) states.emplace_back(s.get<std::set<std::string>>());
    if (states.size() != bound + 1) {
      throw WitnessFormatError("witness has " + std::to_string(states.size()) + " states, expected bound + 1 = " +
                               std::to_string(bound + 1));
    }
    std::set<std::string> alphabet;
    if (j.contains("alphabet")) alphabet = j.at("alphabet").get<std::set<std::string>>();
    return ltl::LassoWord(std::move(states), loop, std::move(alphabet));
  } catch (const nlohmann::json::exception& e) {
    throw WitnessFormatError(std::string("invalid witness: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw WitnessFormatError(std::string("invalid witness: ") + e.what());
  }
}

}  // namespace wfv::bsc
