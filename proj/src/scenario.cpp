#include "expansia/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace expansia {

ScenarioError::ScenarioError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column)
{
}

namespace {

struct Line {
  std::size_t number = 0;
  std::string text;
  std::size_t indent = 0;  // columns stripped from the left
};

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t value_column = 1;
};

std::string trim(std::string_view s, std::size_t* lead = nullptr)
{
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  if (lead)
    *lead = b;
  return std::string(s.substr(b, e - b));
}

// Moves "column K: " from a nested parser message into the scenario position.
[[noreturn]] void rethrow_at(const Line& line, std::size_t column, const std::exception& e)
{
  std::string msg = e.what();
  if (msg.rfind("column ", 0) == 0) {
    auto colon = msg.find(':');
    try {
      auto inner = std::stoul(msg.substr(7, colon - 7));
      throw ScenarioError(line.number, column + inner - 1, trim(msg.substr(colon + 1)));
    } catch (const std::logic_error&) {
    }
  }
  throw ScenarioError(line.number, column, msg);
}

KeyValue split_key_value(const Line& line, char sep = '=')
{
  auto pos = line.text.find(sep);
  if (pos == std::string::npos)
    throw ScenarioError(line.number, line.indent + 1, std::string("expected '") + sep + "'");
  KeyValue kv;
  kv.key = trim(std::string_view(line.text).substr(0, pos));
  std::size_t lead = 0;
  kv.value = trim(std::string_view(line.text).substr(pos + 1), &lead);
  kv.value_column = line.indent + pos + 2 + lead;
  if (kv.key.empty())
    throw ScenarioError(line.number, line.indent + 1, "missing key");
  return kv;
}

struct Section {
  std::string kind;
  std::string name;
  Line header;
  std::vector<Line> body;
};

void parse_group(const Section& sec, Scenario& out)
{
  if (sec.name.empty())
    throw ScenarioError(sec.header.number, sec.header.indent + 1, "group section needs a name");
  if (out.groups.count(sec.name))
    throw ScenarioError(sec.header.number, sec.header.indent + 1, "duplicate group " + sec.name);
  std::vector<std::pair<std::string, IntMatrix>> mats;
  std::vector<std::pair<std::string, Permutation>> perms;
  for (const auto& line : sec.body) {
    auto kv = split_key_value(line);
    std::istringstream head(kv.key);
    std::string kind, name, extra;
    head >> kind >> name >> extra;
    if (name.empty() || !extra.empty() || (kind != "matrix" && kind != "perm"))
      throw ScenarioError(line.number, line.indent + 1, "expected 'matrix NAME = ...' or 'perm NAME = ...'");
    try {
      if (kind == "matrix")
        mats.emplace_back(name, parse_matrix(kv.value));
      else
        perms.emplace_back(name, parse_permutation(kv.value));
    } catch (const std::invalid_argument& e) {
      rethrow_at(line, kv.value_column, e);
    }
  }
  if (!mats.empty() && !perms.empty())
    throw ScenarioError(sec.header.number, sec.header.indent + 1, "group mixes matrices and permutations");
  try {
    out.groups[sec.name] =
        mats.empty() ? GroupPresentation::from_permutations(perms) : GroupPresentation::from_matrices(mats);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(sec.header.number, sec.header.indent + 1, e.what());
  }
  out.group_names.push_back(sec.name);
}

void parse_space(const Section& sec, Scenario& out)
{
  if (out.space)
    throw ScenarioError(sec.header.number, sec.header.indent + 1, "duplicate space section");
  std::string kind;
  std::size_t dim = 2;
  std::string labels;
  std::vector<std::string> rows;
  for (const auto& line : sec.body) {
    auto kv = split_key_value(line);
    if (kv.key == "kind")
      kind = kv.value;
    else if (kv.key == "dim") {
      try {
        dim = std::stoul(kv.value);
      } catch (const std::logic_error&) {
        throw ScenarioError(line.number, kv.value_column, "bad dimension '" + kv.value + "'");
      }
    } else if (kv.key == "labels")
      labels = kv.value;
    else if (kv.key == "row" || kv.key == "open")
      rows.push_back(kv.value);
    else
      throw ScenarioError(line.number, line.indent + 1, "unknown space key '" + kv.key + "'");
  }
  const auto& at = sec.header;
  try {
    std::string text = labels + "\n";
    for (const auto& r : rows)
      text += (r.empty() ? "-" : r) + "\n";
    if (kind == "torus") {
      if (dim < 1 || dim > 4)
        throw std::invalid_argument("torus dimension must be 1..4");
      out.space = TorusSpace{dim};
    } else if (kind == "metric") {
      out.space = parse_metric_space(text);
    } else if (kind == "topology") {
      out.space = parse_topology(text);
    } else {
      throw std::invalid_argument("space kind must be torus, metric or topology");
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(at.number, at.indent + 1, e.what());
  }
}

Word parse_word_at(const GroupPresentation& g, const Line& line, const KeyValue& kv)
{
  try {
    return g.parse_word(kv.value);
  } catch (const std::exception& e) {
    throw ScenarioError(line.number, kv.value_column, e.what());
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text)
{
  Scenario out;
  out.text = std::string(text);
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::size_t lead = 0;
    auto t = trim(raw, &lead);
    if (t.empty())
      continue;
    Line line{number, t, lead};
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ScenarioError(number, lead + t.size(), "section header must end with ']'");
      std::istringstream h(t.substr(1, t.size() - 2));
      Section s;
      h >> s.kind >> s.name;
      std::string extra;
      if (h >> extra)
        throw ScenarioError(number, lead + 1, "unexpected text in section header");
      s.header = line;
      sections.push_back(std::move(s));
      continue;
    }
    if (sections.empty())
      throw ScenarioError(number, lead + 1, "content before the first section");
    sections.back().body.push_back(line);
  }

  // Groups and the space first; everything else refers to them.
  for (const auto& sec : sections) {
    if (sec.kind == "group")
      parse_group(sec, out);
    else if (sec.kind == "space")
      parse_space(sec, out);
    else if (sec.kind == "params") {
      for (const auto& line : sec.body) {
        auto kv = split_key_value(line);
        out.params[kv.key] = kv.value;
        out.param_pos[kv.key] = {line.number, kv.value_column};
      }
    } else if (sec.kind != "subgroup" && sec.kind != "cover" && sec.kind != "witness") {
      throw ScenarioError(sec.header.number, sec.header.indent + 2, "unknown section '" + sec.kind + "'");
    }
  }
  for (const auto& sec : sections) {
    const auto& at = sec.header;
    if (sec.kind == "subgroup") {
      if (sec.name.empty() || out.subgroups.count(sec.name))
        throw ScenarioError(at.number, at.indent + 1, "subgroup needs a unique name");
      SubgroupSpec spec;
      std::vector<std::pair<Line, KeyValue>> words;
      for (const auto& line : sec.body) {
        auto kv = split_key_value(line);
        if (kv.key == "of") {
          if (!out.groups.count(kv.value))
            throw ScenarioError(line.number, kv.value_column, "unknown group '" + kv.value + "'");
          spec.of = kv.value;
        } else if (kv.key == "word") {
          words.emplace_back(line, kv);
        } else {
          throw ScenarioError(line.number, line.indent + 1, "unknown subgroup key '" + kv.key + "'");
        }
      }
      if (spec.of.empty()) {
        if (out.group_names.empty())
          throw ScenarioError(at.number, at.indent + 1, "subgroup without a group");
        spec.of = out.group_names.front();
      }
      if (words.empty())
        throw ScenarioError(at.number, at.indent + 1, "subgroup has no generators");
      for (const auto& [line, kv] : words)
        spec.words.push_back(parse_word_at(out.groups.at(spec.of), line, kv));
      out.subgroups[sec.name] = std::move(spec);
    } else if (sec.kind == "cover") {
      if (sec.name.empty() || out.covers.count(sec.name))
        throw ScenarioError(at.number, at.indent + 1, "cover needs a unique name");
      if (!out.space)
        throw ScenarioError(at.number, at.indent + 1, "cover without a space section");
      OpenCover u;
      for (const auto& line : sec.body) {
        try {
          auto part = parse_cover(*out.space, line.text);
          u.members.push_back(std::move(part.members.front()));
        } catch (const std::invalid_argument& e) {
          rethrow_at(line, line.indent + 1, e);
        }
      }
      if (u.members.empty())
        throw ScenarioError(at.number, at.indent + 1, "cover has no members");
      out.covers[sec.name] = std::move(u);
      out.cover_names.push_back(sec.name);
    }
  }
  // Witness words live in the group containing the subgroup, if any.
  for (const auto& sec : sections) {
    if (sec.kind != "witness")
      continue;
    std::string group = out.has("subgroup") && out.subgroups.count(out.params.at("subgroup"))
                            ? out.subgroups.at(out.params.at("subgroup")).of
                        : !out.subgroups.empty() ? out.subgroups.begin()->second.of
                                                 : (out.group_names.empty() ? "" : out.target());
    if (group.empty() || !out.groups.count(group))
      throw ScenarioError(sec.header.number, sec.header.indent + 1, "witness without a group");
    for (const auto& line : sec.body) {
      auto kv = split_key_value(line);
      if (kv.key != "word")
        throw ScenarioError(line.number, line.indent + 1, "witness lines are 'word = ...'");
      out.witness.push_back(parse_word_at(out.groups.at(group), line, kv));
    }
  }
  return out;
}

Scenario load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open scenario " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

const GroupPresentation& Scenario::group(const std::string& name) const
{
  auto it = groups.find(name);
  if (it == groups.end())
    throw std::invalid_argument("unknown group '" + name + "'");
  return it->second;
}

std::string Scenario::target() const
{
  if (has("target"))
    return params.at("target");
  if (group_names.empty())
    throw std::invalid_argument("scenario defines no group");
  return group_names.front();
}

Action Scenario::action() const
{
  if (!space)
    throw std::invalid_argument("scenario defines no space");
  return Action(group(target()), *space);
}

Subgroup Scenario::subgroup(const std::string& name) const
{
  auto it = subgroups.find(name);
  if (it == subgroups.end())
    throw std::invalid_argument("unknown subgroup '" + name + "'");
  return Subgroup(group(it->second.of), it->second.words);
}

const OpenCover& Scenario::cover(const std::string& name) const
{
  auto it = covers.find(name);
  if (it == covers.end())
    throw std::invalid_argument("unknown cover '" + name + "'");
  return it->second;
}

std::string Scenario::param(const std::string& key) const
{
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

Rational Scenario::rational(const std::string& key) const
{
  auto value = param(key);
  try {
    return parse_rational(value);
  } catch (const std::invalid_argument& e) {
    auto [line, column] = param_pos.at(key);
    throw ScenarioError(line, column, "parameter " + key + ": " + e.what());
  }
}

std::int64_t Scenario::integer(const std::string& key) const
{
  auto r = rational(key);
  if (r.denominator() != 1) {
    auto [line, column] = param_pos.count(key) ? param_pos.at(key) : std::pair<std::size_t, std::size_t>{0, 0};
    throw ScenarioError(line, column, "parameter " + key + " must be an integer");
  }
  return r.numerator();
}

}  // namespace expansia
