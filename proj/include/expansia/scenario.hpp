#pragma once

// Line-oriented scenario files:
//
//   [group G]            matrix B = -1,1;0,1   or   perm s = 1,0,2
//   [subgroup H]         of = G, then one "word = ..." line per generator
//   [space]              kind = torus | metric | topology, dim = 2,
//                        labels = a b c, row = ... (metric), open = ... (topology)
//   [cover U]            name: spec, as in cover files
//   [witness]            word = ...
//   [params]             key = value
//
// '#' starts a comment. Sections may repeat only where they carry a name.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "expansia/actions.hpp"
#include "expansia/groups.hpp"
#include "expansia/spaces.hpp"

namespace expansia {

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct SubgroupSpec {
  std::string of;
  std::vector<Word> words;
};

struct Scenario {
  std::string text;
  std::vector<std::string> group_names;  // file order
  std::map<std::string, GroupPresentation> groups;
  std::map<std::string, SubgroupSpec> subgroups;
  std::optional<Space> space;
  std::vector<std::string> cover_names;
  std::map<std::string, OpenCover> covers;
  std::vector<Word> witness;
  std::map<std::string, std::string> params;
  /// Line and column of each parameter value, for error reports.
  std::map<std::string, std::pair<std::size_t, std::size_t>> param_pos;

  const GroupPresentation& group(const std::string& name) const;
  /// params["target"], else the first group.
  std::string target() const;
  Action action() const;
  Subgroup subgroup(const std::string& name) const;
  const OpenCover& cover(const std::string& name) const;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  std::string param(const std::string& key) const;
  Rational rational(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
};

/// Throws ScenarioError with 1-based line and column.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

}  // namespace expansia
