#include "expansia/report.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "expansia/expansivity.hpp"
#include "expansia/orbit_expansivity.hpp"
#include "expansia/suites.hpp"

namespace expansia {

using nlohmann::json;

const std::vector<std::string>& task_names()
{
  static const std::vector<std::string> names{"certify",     "falsify",      "estimate", "fixed-points",
                                              "syndetic",    "cover-verify", "cover-build", "fiber",
                                              "beta",        "suite"};
  return names;
}

std::string exact(const Rational& r)
{
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

json point_json(const Point& p, const Space* s)
{
  if (auto t = std::get_if<TorusPoint>(&p)) {
    json out = json::array();
    for (const auto& c : t->coords())
      out.push_back(exact(c));
    return out;
  }
  auto i = std::get<std::size_t>(p);
  return s ? json(finite_labels(*s).at(i)) : json(i);
}

Point point_from_json(const json& j, const Space* s)
{
  if (j.is_array()) {
    std::vector<Rational> coords;
    for (const auto& c : j)
      coords.push_back(parse_rational(c.get<std::string>()));
    return TorusPoint::from_rationals(coords);
  }
  if (!s || !is_finite(*s))
    throw std::invalid_argument("label point without a finite space");
  const auto& labels = finite_labels(*s);
  auto it = std::find(labels.begin(), labels.end(), j.get<std::string>());
  if (it == labels.end())
    throw std::invalid_argument("unknown point label " + j.get<std::string>());
  return static_cast<std::size_t>(it - labels.begin());
}

json word_json(const GroupPresentation& g, const Word& w)
{
  json out = json::array();
  for (const auto& n : g.word_names(w))
    out.push_back(n);
  return out;
}

Word word_from_json(const GroupPresentation& g, const json& j)
{
  Word w;
  for (const auto& n : j)
    w.letters.push_back(g.find(n.get<std::string>()));
  return w;
}

json pair_json(const PairWitness& p, const Space* s)
{
  return {{"x", point_json(p.x, s)}, {"y", point_json(p.y, s)}, {"max_separation", exact(p.max_separation)}};
}

json verdict_json(const Verdict& v, const GroupPresentation& g, const Space* s)
{
  json out{{"kind", to_string(v.kind)},
           {"depth", v.depth},
           {"exact", v.exact},
           {"numeric", v.numeric},
           {"reason", v.reason}};
  if (v.constant)
    out["constant"] = exact(*v.constant);
  if (v.word)
    out["word"] = word_json(g, *v.word);
  if (v.pair)
    out["pair"] = pair_json(*v.pair, s);
  return out;
}

json cover_json(const Space& s, const OpenCover& u)
{
  json out = json::array();
  for (const auto& m : u.members)
    out.push_back({{"name", m.name}, {"set", format_member(s, m)}});
  return out;
}

struct Context {
  const Scenario& s;
  RunOptions opts;
  json params = json::object();

  std::size_t depth(std::size_t fallback)
  {
    std::size_t d = opts.depth ? *opts.depth : s.has("depth") ? static_cast<std::size_t>(s.integer("depth")) : fallback;
    params["depth"] = d;
    return d;
  }
  std::int64_t grid()
  {
    std::int64_t q = opts.grid ? *opts.grid : s.has("grid") ? s.integer("grid") : 12;
    if (q < 1)
      throw std::invalid_argument("grid must be positive");
    params["grid"] = q;
    return q;
  }
  std::uint64_t seed()
  {
    std::uint64_t v = opts.seed ? *opts.seed : s.has("seed") ? static_cast<std::uint64_t>(s.integer("seed")) : 0;
    params["seed"] = v;
    return v;
  }
  Rational rational(const std::string& key, std::optional<Rational> fallback = std::nullopt)
  {
    Rational r = s.has(key) || !fallback ? s.rational(key) : *fallback;
    params[key] = exact(r);
    return r;
  }
  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt)
  {
    std::string v = s.has(key) || !fallback ? s.param(key) : *fallback;
    params[key] = v;
    return v;
  }
  Sampler sampler()
  {
    Sampler out;
    out.grid = grid();
    out.seed = seed();
    if (s.has("pairs")) {
      out.max_pairs = static_cast<std::size_t>(s.integer("pairs"));
      params["pairs"] = out.max_pairs;
    }
    return out;
  }
};

struct TaskOutput {
  std::vector<json> lines;
  int exit_code = 0;
};

TaskOutput single(json line, int code) { return {{std::move(line)}, code}; }

TaskOutput task_certify(Context& c)
{
  const auto name = c.text("target", c.s.target());
  const auto& g = c.s.group(name);
  auto v = certify_linear(g, c.depth(4), c.rational("witness", Rational(1, 100)));
  json line{{"group", name}, {"verdict", verdict_json(v, g, nullptr)}};
  if (v.word) {
    auto m = canonicalize(g, *v.word).matrix();
    line["element"] = {{"matrix", to_string(m)}, {"trace", m.trace()}, {"determinant", m.determinant()}};
  }
  return single(std::move(line), exit_code(v.kind));
}

TaskOutput task_falsify(Context& c)
{
  c.text("target", c.s.target());
  auto a = c.s.action();
  auto cst = c.rational("c");
  auto depth = c.depth(8);
  auto v = falsify_expansive(a, cst, depth, c.sampler());
  return single({{"verdict", verdict_json(v, a.group(), &a.space())}}, exit_code(v.kind));
}

TaskOutput task_estimate(Context& c)
{
  c.text("target", c.s.target());
  auto a = c.s.action();
  auto depth = c.depth(6);
  auto q = c.grid();
  auto est = estimate_sup_constant(a, depth, q);
  json e{{"lo", exact(est.lo)}, {"hi", exact(est.hi)}, {"threshold", exact(est.threshold)}};
  if (est.tightest)
    e["tightest"] = pair_json(*est.tightest, &a.space());
  json line{{"estimate", e}};
  int code = 0;
  if (c.s.has("epsilon")) {
    auto eps = c.rational("epsilon");
    auto cst = c.rational("c");
    Sampler smp;
    smp.grid = q;
    auto ub = uniform_separation_bound(a, cst, eps, depth, smp);
    json u = json::object();
    if (ub.n)
      u["n"] = *ub.n;
    if (ub.unresolved)
      u["unresolved"] = pair_json(*ub.unresolved, &a.space());
    if (ub.analytic)
      u["analytic"] = static_cast<std::int64_t>(*ub.analytic);
    line["uniform"] = u;
    if (!ub.n)
      code = 2;
  }
  return single(std::move(line), code);
}

TaskOutput task_fixed_points(Context& c)
{
  c.text("target", c.s.target());
  auto a = c.s.action();
  auto fp = fixed_points(a);
  if (!fp)
    return single({{"fixed_points", nullptr}, {"reason", "every generator has det(A - I) = 0"}}, 2);
  json pts = json::array();
  for (const auto& p : *fp)
    pts.push_back(point_json(p, &a.space()));
  return single({{"fixed_points", pts}, {"count", fp->size()}}, 0);
}

TaskOutput task_syndetic(Context& c)
{
  std::string name = c.text("subgroup", c.s.subgroups.empty() ? std::string() : c.s.subgroups.begin()->first);
  auto h = c.s.subgroup(name);
  if (c.s.witness.empty())
    throw std::invalid_argument("syndetic task needs a [witness] section");
  SyndeticOptions o;
  o.depth = c.depth(4);
  if (c.s.has("membership_depth")) {
    o.membership_depth = static_cast<std::size_t>(c.s.integer("membership_depth"));
    c.params["membership_depth"] = o.membership_depth;
  }
  auto v = verify_syndetic_witness(h, SyndeticWitness{c.s.witness}, o);
  json k = json::array();
  for (const auto& w : c.s.witness)
    k.push_back(word_json(h.parent, w));
  return single({{"subgroup", name}, {"witness", k}, {"verdict", verdict_json(v, h.parent, nullptr)}},
                exit_code(v.kind));
}

json orbit_verdict_json(const OrbitCoverVerdict& v, const Space& s)
{
  json out{{"kind", to_string(v.kind)}, {"depth", v.depth}, {"exact", v.exact}, {"reason", v.reason}};
  if (v.pair)
    out["pair"] = {{"x", point_json(v.pair->first, &s)}, {"y", point_json(v.pair->second, &s)}};
  return out;
}

std::string default_cover(const Scenario& s)
{
  if (s.cover_names.empty())
    throw std::invalid_argument("scenario defines no cover");
  return s.cover_names.front();
}

TaskOutput task_cover_verify(Context& c)
{
  c.text("target", c.s.target());
  auto a = c.s.action();
  auto name = c.text("cover", default_cover(c.s));
  auto depth = c.depth(8);
  auto v = verify_orbit_expansive(a, c.s.cover(name), depth, c.sampler());
  return single({{"cover", name}, {"orbit_verdict", orbit_verdict_json(v, a.space())}}, exit_code(v));
}

TaskOutput task_cover_build(Context& c)
{
  c.text("target", c.s.target());
  auto a = c.s.action();
  if (c.s.has("c")) {
    auto cst = c.rational("c");
    auto q = c.grid();
    auto u = cover_from_constant(a, cst, q);
    auto depth = c.depth(8);
    auto smp = c.sampler();
    auto v = verify_orbit_expansive(a, u, depth, smp);
    return single({{"cover", cover_json(a.space(), u)}, {"orbit_verdict", orbit_verdict_json(v, a.space())}},
                  exit_code(v));
  }
  auto name = c.text("cover", default_cover(c.s));
  auto cst = constant_from_cover(a.space(), c.s.cover(name));
  auto depth = c.depth(8);
  auto v = falsify_expansive(a, cst, depth, c.sampler());
  return single({{"constant", exact(cst)}, {"verdict", verdict_json(v, a.group(), &a.space())}}, exit_code(v.kind));
}

CoveringMap covering_map(Context& c)
{
  auto text = c.text("map");
  try {
    return CoveringMap(parse_matrix(text));
  } catch (const std::invalid_argument& e) {
    auto [line, column] = c.s.param_pos.at("map");
    throw ScenarioError(line, column, e.what());
  }
}

TaskOutput task_fiber(Context& c)
{
  auto f = covering_map(c);
  auto y = parse_torus_point(c.text("point"));
  auto fiber = covering_fiber(f, y);
  json pts = json::array();
  for (const auto& p : fiber)
    pts.push_back(point_json(p, nullptr));
  bool ok = static_cast<std::int64_t>(fiber.size()) == f.degree();
  json line{{"degree", f.degree()}, {"fiber", pts}};
  if (c.s.space && std::holds_alternative<TorusSpace>(*c.s.space) && !c.s.groups.empty()) {
    c.text("target", c.s.target());
    auto a = c.s.action();
    auto rep = check_semiconjugacy(f, a, a);
    line["semiconjugacy"] = {{"holds", rep.holds}, {"failing", rep.failing_generators}};
    ok = ok && rep.holds;
  }
  return single(std::move(line), ok ? 0 : 1);
}

TaskOutput task_beta(Context& c)
{
  auto f = covering_map(c);
  auto b = fiber_separation_beta(f);
  return single({{"degree", f.degree()}, {"beta", exact(b)}}, 0);
}

TaskOutput task_suite(Context& c)
{
  auto name = c.text("suite", "finite-models");
  auto seed = c.seed();
  std::size_t models = 200;
  if (c.s.has("models")) {
    models = static_cast<std::size_t>(c.s.integer("models"));
    c.params["models"] = models;
  }
  TaskOutput out;
  bool all = true;
  for (const auto& r : run_suite(name, seed, models)) {
    json line{{"property", r.name}, {"cases", r.cases}, {"passed", r.passed}, {"ok", r.ok()}};
    if (!r.counterexample.empty())
      line["counterexample"] = r.counterexample;
    all = all && r.ok();
    out.lines.push_back(std::move(line));
  }
  out.lines.push_back({{"suite", name}, {"ok", all}});
  out.exit_code = all ? 0 : 1;
  return out;
}

const std::map<std::string, std::function<TaskOutput(Context&)>>& dispatch()
{
  static const std::map<std::string, std::function<TaskOutput(Context&)>> table{
      {"certify", task_certify},         {"falsify", task_falsify},
      {"estimate", task_estimate},       {"fixed-points", task_fixed_points},
      {"syndetic", task_syndetic},       {"cover-verify", task_cover_verify},
      {"cover-build", task_cover_build}, {"fiber", task_fiber},
      {"beta", task_beta},               {"suite", task_suite}};
  return table;
}

json overrides_json(const RunOptions& o)
{
  json out = json::object();
  if (o.depth)
    out["depth"] = *o.depth;
  if (o.grid)
    out["grid"] = *o.grid;
  if (o.seed)
    out["seed"] = *o.seed;
  return out;
}

RunOptions overrides_from_json(const json& j)
{
  RunOptions o;
  if (j.contains("depth"))
    o.depth = j["depth"].get<std::size_t>();
  if (j.contains("grid"))
    o.grid = j["grid"].get<std::int64_t>();
  if (j.contains("seed"))
    o.seed = j["seed"].get<std::uint64_t>();
  return o;
}

int major_of(const std::string& version) { return std::stoi(version.substr(0, version.find('.'))); }

// First differing path between two JSON values, ignoring timing.
std::optional<std::string> first_difference(const json& a, const json& b, const std::string& path)
{
  if (a.type() != b.type())
    return path;
  if (a.is_object()) {
    std::set<std::string> keys;
    for (const auto& [k, _] : a.items())
      keys.insert(k);
    for (const auto& [k, _] : b.items())
      keys.insert(k);
    for (const auto& k : keys) {
      if (k == "timing_ms")
        continue;
      auto sub = path.empty() ? k : path + "." + k;
      if (!a.contains(k) || !b.contains(k))
        return sub;
      if (auto d = first_difference(a[k], b[k], sub))
        return d;
    }
    return std::nullopt;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
      if (auto d = first_difference(a[i], b[i], path + "[" + std::to_string(i) + "]"))
        return d;
    if (a.size() != b.size())
      return path;
    return std::nullopt;
  }
  if (a != b)
    return path;
  return std::nullopt;
}

using Problem = std::optional<std::pair<std::string, std::string>>;

// Orbit of the pair under a cyclic matrix group, followed until both points return.
Problem check_cyclic_pair(const IntMatrix& m, const TorusPoint& x, const TorusPoint& y, const Rational& c,
                          const Rational& claimed)
{
  Rational best(0);
  TorusPoint px = x, py = y;
  for (std::size_t k = 0; k < 1000000; ++k) {
    best = std::max(best, torus_distance(px, py));
    px = px.mapped(m);
    py = py.mapped(m);
    if (px == x && py == y) {
      if (best > c)
        return std::pair{"verdict.pair", "orbit separates the pair beyond the constant"};
      if (best != claimed)
        return std::pair{"verdict.pair.max_separation", "recomputed " + exact(best)};
      return std::nullopt;
    }
  }
  return std::pair{"verdict.pair", "orbit did not close"};
}

Problem validate_line(const std::string& task, const Scenario& s, const json& line)
{
  try {
    if (task == "certify" && line.contains("verdict")) {
      const auto& v = line["verdict"];
      const auto& g = s.group(line["group"].get<std::string>());
      if (v["kind"] == "Certified") {
        auto m = canonicalize(g, word_from_json(g, v["word"])).matrix();
        if (!is_hyperbolic(m))
          return std::pair{"verdict.word", "element " + to_string(m) + " is not hyperbolic"};
      } else if (v["kind"] == "Falsified") {
        auto x = std::get<TorusPoint>(point_from_json(v["pair"]["x"], nullptr));
        auto y = std::get<TorusPoint>(point_from_json(v["pair"]["y"], nullptr));
        if (x == y)
          return std::pair{"verdict.pair", "points coincide"};
        if (g.rank() != 1)
          return std::pair{"verdict.kind", "exact falsification needs a cyclic group"};
        return check_cyclic_pair(g.image(0).matrix(), x, y, parse_rational(v["constant"].get<std::string>()),
                                 parse_rational(v["pair"]["max_separation"].get<std::string>()));
      }
    }
    if ((task == "falsify" || task == "cover-build") && line.contains("verdict") &&
        line["verdict"]["kind"] == "Falsified") {
      const auto& v = line["verdict"];
      auto a = s.action();
      auto x = point_from_json(v["pair"]["x"], &a.space());
      auto y = point_from_json(v["pair"]["y"], &a.space());
      if (x == y)
        return std::pair{"verdict.pair", "points coincide"};
      auto c = parse_rational(v["constant"].get<std::string>());
      Rational best(0);
      for (const auto& e : cayley_ball(a.group(), v["depth"].get<std::size_t>()).entries)
        best = std::max(best, distance(a.space(), a.apply(e.element, x), a.apply(e.element, y)));
      if (best > c)
        return std::pair{"verdict.pair", "pair is separated beyond the constant"};
      if (best != parse_rational(v["pair"]["max_separation"].get<std::string>()))
        return std::pair{"verdict.pair.max_separation", "recomputed " + exact(best)};
    }
    if (task == "fiber" && line.contains("fiber")) {
      auto d = parse_matrix(s.param("map"));
      auto y = parse_torus_point(s.param("point"));
      for (std::size_t i = 0; i < line["fiber"].size(); ++i) {
        auto x = std::get<TorusPoint>(point_from_json(line["fiber"][i], nullptr));
        if (!(x.mapped(d) == y))
          return std::pair{"fiber[" + std::to_string(i) + "]", "point does not map to " + to_string(y)};
      }
    }
  } catch (const std::exception& e) {
    return std::pair{"witness", e.what()};
  }
  return std::nullopt;
}

}  // namespace

RunResult run_task(const std::string& task, const Scenario& s, const RunOptions& opts)
{
  auto it = dispatch().find(task);
  if (it == dispatch().end())
    throw std::invalid_argument("unknown task '" + task + "'");
  Context ctx{s, opts};
  auto start = std::chrono::steady_clock::now();
  auto out = it->second(ctx);
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  if (!ctx.params.contains("seed"))
    ctx.seed();

  RunResult r;
  r.exit_code = out.exit_code;
  for (auto& line : out.lines) {
    line["tool"] = "expansia";
    line["version"] = kVersion;
    line["task"] = task;
    line["seed"] = ctx.params["seed"];
    line["params"] = ctx.params;
    line["scenario"] = {{"text", s.text}, {"overrides", overrides_json(opts)}};
    line["exit"] = out.exit_code;
    if (opts.timing)
      line["timing_ms"] = elapsed;
    r.reports.push_back(std::move(line));
  }
  return r;
}

ReplayOutcome replay_reports(const std::vector<json>& reports)
{
  if (reports.empty())
    return {false, "lines", "report is empty"};
  const auto& head = reports.front();
  for (const char* key : {"version", "task", "scenario"})
    if (!head.contains(key))
      return {false, key, "missing field"};
  const auto version = head["version"].get<std::string>();
  if (major_of(version) != major_of(kVersion))
    throw VersionMismatch("report version " + version + " is incompatible with " + kVersion);

  const auto task = head["task"].get<std::string>();
  auto scenario = parse_scenario(head["scenario"]["text"].get<std::string>());
  auto opts = overrides_from_json(head["scenario"]["overrides"]);

  for (std::size_t i = 0; i < reports.size(); ++i)
    if (auto p = validate_line(task, scenario, reports[i]))
      return {false, p->first, p->second};

  auto fresh = run_task(task, scenario, opts);
  for (std::size_t i = 0; i < std::min(fresh.reports.size(), reports.size()); ++i)
    if (auto d = first_difference(json::parse(reports[i].dump()), json::parse(fresh.reports[i].dump()), ""))
      return {false, *d, "line " + std::to_string(i + 1) + " differs on re-run"};
  if (fresh.reports.size() != reports.size())
    return {false, "lines", "re-run produced " + std::to_string(fresh.reports.size()) + " lines"};
  return {};
}

}  // namespace expansia
