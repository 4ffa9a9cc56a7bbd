// pathform: runs a verification suite and writes report.json and rows.csv.
// Exit codes: 0 all rows pass, 1 some row failed, 2 configuration error,
// 3 any other error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathform/config.hpp"
#include "pathform/report.hpp"
#include "pathform/suites.hpp"

namespace fs = std::filesystem;
namespace pf = pathform;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) pf::fail(pf::Errc::ConfigError, "cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// A --measure file may hold a whole run config or just the measure object.
nlohmann::json sample_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    pf::fail(pf::Errc::ConfigError, std::string("$: invalid JSON: ") + e.what());
  }
  if (j.is_object() && !j.contains("measure")) j = nlohmann::json{{"measure", j}};
  return j;
}

void print_rows(std::ostream& out, const pf::Report& rep) {
  for (const auto& r : rep.rows) {
    char line[64];
    std::snprintf(line, sizeof line, "  diff=%-12.4g threshold=%-10.4g", r.diff, r.threshold);
    out << (r.pass ? "PASS " : "FAIL ") << r.name << line << ' ' << pf::to_string(r.kind) << '\n';
  }
  out << rep.suite << ": " << (rep.pass() ? "pass" : "FAIL") << " (" << rep.rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson path-space verification suites"};
  std::string suite;
  std::string config_path;
  std::string measure_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<double> horizon;
  std::optional<std::uint64_t> n_paths;
  std::optional<int> project;
  std::optional<std::string> out_dir;

  app.add_option("suite", suite, "qi | poincare | generator | semigroup | smalltime | lsi | coupling | sample | all")
      ->required();
  app.add_option("--config", config_path, "run configuration (JSON)");
  app.add_option("--measure", measure_path, "sample: measure or run configuration (JSON)");
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("--samples", samples, "override the configured Monte Carlo sample count");
  app.add_option("--T", horizon, "sample: horizon T");
  app.add_option("--n", n_paths, "sample: number of paths");
  app.add_option("--project", project, "sample: dyadic projection level of the marks");
  app.add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    nlohmann::json raw;
    if (!config_path.empty()) {
      try {
        raw = nlohmann::json::parse(read_file(config_path));
      } catch (const nlohmann::json::parse_error& e) {
        pf::fail(pf::Errc::ConfigError, std::string("$: invalid JSON: ") + e.what());
      }
    } else if (suite == "sample" && !measure_path.empty()) {
      raw = sample_config(measure_path);
    } else {
      pf::fail(pf::Errc::ConfigError, "--config is required");
    }
    if (!raw.is_object()) pf::fail(pf::Errc::ConfigError, "$: expected a JSON object");
    if (seed) raw["seed"] = *seed;
    if (samples) raw["samples"] = *samples;
    if (horizon) raw["T"] = *horizon;
    if (n_paths) raw["sample"]["n"] = *n_paths;
    if (project) raw["sample"]["project"] = *project;
    if (out_dir) raw["out"] = *out_dir;
    const pf::RunConfig cfg = pf::parse_config_json(raw);

    std::vector<std::string> names{suite};
    if (suite == "all") names = cfg.suites;
    const fs::path out(cfg.out);
    fs::create_directories(out);

    bool pass = true;
    nlohmann::json reports = nlohmann::json::array();
    std::ostringstream csv;
    for (const auto& name : names) {
      const auto result = pf::run_suite(name, cfg);
      pass = pass && result.report.pass();
      reports.push_back(pf::report_to_json(result.report));
      pf::write_csv(csv, result.report);
      if (name == "sample") {
        std::string lines;
        for (const auto& l : result.path_lines) lines += l + '\n';
        write_file(out / "paths.jsonl", lines);
        std::cout << lines;
        print_rows(std::cerr, result.report);
      } else {
        print_rows(std::cout, result.report);
      }
    }
    std::string text = suite == "all" ? nlohmann::json{{"pass", pass}, {"reports", reports}}.dump(2)
                                      : reports[0].dump(2);
    write_file(out / "report.json", text + '\n');
    std::string rows = csv.str();
    if (names.size() > 1) {
      // One header for the concatenated suites.
      const std::string header = rows.substr(0, rows.find('\n') + 1);
      std::string merged = header;
      std::istringstream in(rows);
      for (std::string line; std::getline(in, line);) {
        if (line + '\n' != header) merged += line + '\n';
      }
      rows = merged;
    }
    write_file(out / "rows.csv", rows);
    return pass ? 0 : 1;
  } catch (const pf::Error& e) {
    std::cerr << "pathform: " << e.what() << '\n';
    return e.code() == pf::Errc::ConfigError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "pathform: " << e.what() << '\n';
    return 3;
  }
}
