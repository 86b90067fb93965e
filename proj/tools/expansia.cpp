#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "expansia/report.hpp"
#include "expansia/scenario.hpp"

namespace {

using nlohmann::json;

// Everything but the echo and bookkeeping, one field per line.
void print_human(const json& line)
{
  static const std::set<std::string> skip{"tool", "version", "scenario", "params", "exit", "task", "seed"};
  std::cout << line["task"].get<std::string>() << ":";
  for (const auto& [k, v] : line.items())
    if (!skip.count(k))
      std::cout << "\n  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump());
  std::cout << "\n";
}

int replay(const std::string& task, const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    std::cerr << "expansia: cannot open report " << path << "\n";
    return expansia::kUsageError;
  }
  std::vector<json> reports;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (text.empty())
      continue;
    try {
      reports.push_back(json::parse(text));
    } catch (const json::parse_error& e) {
      std::cerr << path << ":" << number << ": " << e.what() << "\n";
      return expansia::kUsageError;
    }
  }
  if (!reports.empty() && task != "replay" && reports.front().value("task", "") != task) {
    std::cerr << "expansia: report was produced by task '" << reports.front().value("task", "") << "'\n";
    return expansia::kUsageError;
  }
  try {
    auto r = expansia::replay_reports(reports);
    if (r.ok) {
      std::cout << "replay ok: " << reports.size() << " line(s) re-validated\n";
      return 0;
    }
    std::cout << "replay failed at " << r.field << ": " << r.message << "\n";
    return 1;
  } catch (const expansia::VersionMismatch& e) {
    std::cerr << "expansia: " << e.what() << "\n";
    return expansia::kUsageError;
  } catch (const std::exception& e) {
    std::cout << "replay failed at scenario: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Bounded certificates for expansive group actions"};
  std::string task, scenario_path, replay_path;
  std::size_t depth = 0;
  std::int64_t grid = 0;
  std::uint64_t seed = 0;
  bool as_json = false, timing = false;

  std::vector<std::string> tasks = expansia::task_names();
  tasks.push_back("replay");
  app.add_option("task", task, "Task to run")->required()->check(CLI::IsMember(tasks));
  auto* scen = app.add_option("--scenario", scenario_path, "Scenario file");
  auto* dep = app.add_option("--depth", depth, "Cayley ball radius");
  auto* grd = app.add_option("--grid", grid, "Torus grid denominator q")->check(CLI::PositiveNumber);
  auto* sd = app.add_option("--seed", seed, "Seed for sampled searches and suites");
  auto* rep = app.add_option("--replay", replay_path, "Re-validate a JSON-lines report");
  app.add_flag("--json", as_json, "Emit JSON lines");
  app.add_flag("--timing", timing, "Include wall-clock timing in reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return expansia::kUsageError;
  }

  if (*rep)
    return replay(task, replay_path);
  if (!*scen || task == "replay") {
    std::cerr << "expansia: " << (task == "replay" ? "replay needs --replay FILE" : "--scenario is required")
              << "\n";
    return expansia::kUsageError;
  }

  expansia::RunOptions opts;
  if (*dep)
    opts.depth = depth;
  if (*grd)
    opts.grid = grid;
  if (*sd)
    opts.seed = seed;
  opts.timing = timing;

  try {
    auto s = expansia::load_scenario(scenario_path);
    auto result = expansia::run_task(task, s, opts);
    for (const auto& line : result.reports) {
      if (as_json)
        std::cout << line.dump() << "\n";
      else
        print_human(line);
    }
    return result.exit_code;
  } catch (const expansia::ScenarioError& e) {
    std::cerr << scenario_path << ": " << e.what() << "\n";
    return expansia::kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "expansia: " << e.what() << "\n";
    return expansia::kUsageError;
  } catch (const std::overflow_error& e) {
    std::cerr << "expansia: " << e.what() << " (result left open)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "expansia: " << e.what() << "\n";
    return expansia::kUsageError;
  }
}
