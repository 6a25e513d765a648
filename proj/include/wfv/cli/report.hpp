#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wfv/ltl/lasso.hpp"

namespace wfv::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

/// Peak resident set size in KiB, 0 when unavailable.
inline long peak_rss_kb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream ss(line.substr(6));
      long kb = 0;
      ss >> kb;
      return kb;
    }
  }
  return 0;
}

/// "Conf#2" -> ("Conf", "2"). Propositions without an instance suffix map to
/// the empty instance.
inline std::pair<std::string, std::string> split_instance(const std::string& prop) {
  const auto hash = prop.rfind('#');
  if (hash == std::string::npos) return {prop, ""};
  return {prop.substr(0, hash), prop.substr(hash + 1)};
}

/// Positions as rows, one column per instance suffix (plus "global" for
/// unsuffixed propositions). The first loop row is marked with '>' and the
/// footer names the loop.
inline std::string render_trace(const ltl::LassoWord& w) {
  std::map<std::string, bool> columns;  // instance -> present
  for (const auto& p : w.alphabet()) columns[split_instance(p).second] = true;
  std::vector<std::string> order;
  if (columns.count("")) order.push_back("");
  for (const auto& [inst, _] : columns)
    if (!inst.empty()) order.push_back(inst);

  std::vector<std::vector<std::string>> cells(w.states().size(), std::vector<std::string>(order.size()));
  std::vector<std::size_t> width(order.size());
  for (std::size_t c = 0; c < order.size(); ++c) width[c] = order[c].empty() ? 6 : order[c].size() + 9;
  for (std::size_t i = 0; i < w.states().size(); ++i) {
    for (std::size_t c = 0; c < order.size(); ++c) {
      std::string cell;
      for (const auto& p : w.states()[i]) {
        auto [base, inst] = split_instance(p);
        if (inst != order[c]) continue;
        if (!cell.empty()) cell += ' ';
        cell += base;
      }
      width[c] = std::max(width[c], cell.size());
      cells[i][c] = std::move(cell);
    }
  }
  auto pad = [](const std::string& s, std::size_t n) { return s + std::string(n > s.size() ? n - s.size() : 0, ' '); };
  std::string out = "  pos";
  for (std::size_t c = 0; c < order.size(); ++c) {
    out += " | " + pad(order[c].empty() ? "global" : "instance " + order[c], width[c]);
  }
  out += "\n";
  for (std::size_t i = 0; i < w.states().size(); ++i) {
    std::string pos = std::to_string(i);
    out += (i == w.loop() ? ">" : " ") + std::string(4 - std::min<std::size_t>(4, pos.size()), ' ') + pos;
    for (std::size_t c = 0; c < order.size(); ++c) out += " | " + pad(cells[i][c], width[c]);
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  out += "loop: position " + std::to_string(w.bound()) + " is followed by position " + std::to_string(w.loop()) +
         " (marked '>')\n";
  return out;
}

}  // namespace wfv::cli
