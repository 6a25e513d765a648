#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

#include "wfv/ltl/formula.hpp"

namespace wfv::encoder {

/// Scenario proposition. Rendering is injective because element names
/// cannot contain ':' or '#':
///   A:<node>#<j>  T:<label>#<j>  W#<j>  C<i>#<j>  R
struct PropId {
  enum class Kind { Activity, Transition, Active, Config, Reconfig };

  Kind kind = Kind::Reconfig;
  std::string name;  // node or label for Activity/Transition
  int instance = 0;
  int config = 0;  // 1 or 2 for Config

  static PropId activity(std::string n, int j) { return {Kind::Activity, std::move(n), j, 0}; }
  static PropId transition(std::string l, int j) { return {Kind::Transition, std::move(l), j, 0}; }
  static PropId active(int j) { return {Kind::Active, {}, j, 0}; }
  static PropId config_flag(int i, int j) { return {Kind::Config, {}, j, i}; }
  static PropId reconfig() { return {Kind::Reconfig, {}, 0, 0}; }

  std::string render() const {
    const std::string jj = "#" + std::to_string(instance);
    switch (kind) {
      case Kind::Activity: return "A:" + name + jj;
      case Kind::Transition: return "T:" + name + jj;
      case Kind::Active: return "W" + jj;
      case Kind::Config: return "C" + std::to_string(config) + jj;
      case Kind::Reconfig: return "R";
    }
    return {};
  }

  ltl::Formula atom() const { return ltl::atom(render()); }

  bool operator==(const PropId&) const = default;
  auto operator<=>(const PropId&) const = default;
};

namespace detail {
inline std::optional<int> parse_index(std::string_view s) {
  int v = 0;
  if (s.empty() || (s.front() == '0' && s.size() > 1)) return std::nullopt;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}
}  // namespace detail

/// Inverse of PropId::render().
inline std::optional<PropId> parse_propid(std::string_view s) {
  if (s == "R") return PropId::reconfig();
  const auto hash = s.rfind('#');
  if (hash == std::string_view::npos) return std::nullopt;
  const auto j = detail::parse_index(s.substr(hash + 1));
  if (!j) return std::nullopt;
  const std::string_view head = s.substr(0, hash);
  if (head == "W") return PropId::active(*j);
  if (head == "C1" || head == "C2") return PropId::config_flag(head[1] - '0', *j);
  if (head.size() > 2 && head[1] == ':' && (head[0] == 'A' || head[0] == 'T')) {
    const std::string_view n = head.substr(2);
    if (n.find_first_of(":#") != std::string_view::npos) return std::nullopt;
    return head[0] == 'A' ? PropId::activity(std::string(n), *j) : PropId::transition(std::string(n), *j);
  }
  return std::nullopt;
}

}  // namespace wfv::encoder
