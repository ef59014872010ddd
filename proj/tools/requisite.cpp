// requisite: command-line front end.
//
// Exit codes: 0 ok, 1 internal error, 2 usage, 3 unreadable file, 4 JSON
// syntax, 5 schema violation, 6 unit error, 7 validation or domain error,
// 8 a worked-example check failed.

#include "requisite/commands.hpp"
#include "requisite/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kFile = 3,
  kParse = 4,
  kSchema = 5,
  kUnit = 6,
  kValidation = 7,
  kCheckFailed = 8,
};

struct Output {
  std::string path;
  std::string format = "table";
};

bool use_color(const Output& out) {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color && *no_color) return false;
  return out.path.empty() && out.format == "table" && isatty(fileno(stdout));
}

void emit(const requisite::Report& report, const Output& out) {
  const auto text = requisite::render(report, requisite::parse_format(out.format), use_color(out));
  if (out.path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f || !(f << text)) throw requisite::FileError("cannot write '" + out.path + "'");
}

int fail(int code, const std::string& kind, const std::string& msg) {
  std::cerr << "requisite: " << kind << ": " << msg << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variety, regulation and moving-target simulation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(requisite::kToolVersion));

  Output out;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "jsonl"}));
    cmd->add_option("--out", out.path, "Write the report here instead of standard output");
  };

  std::string file;
  auto* run = app.add_subcommand("run", "Execute every request in a scenario file");
  run->add_option("file", file, "Scenario file (JSON)")->required();
  run->add_option("--seed", seed, "Seed replacing every seed in the file");
  add_common(run);

  auto* sweep = app.add_subcommand("sweep", "Execute only the sweep requests in a scenario file");
  sweep->add_option("file", file, "Scenario file (JSON)")->required();
  sweep->add_option("--seed", seed, "Seed replacing every seed in the file");
  add_common(sweep);

  std::string expected_path;
  auto* examples = app.add_subcommand("paper-examples", "Recompute the worked variety and regulation examples");
  examples->add_option("--expected", expected_path, "JSON file overriding expected values");
  add_common(examples);

  double h_move = 0.0;
  std::string rate_text;
  double margin = 1.0;
  auto* bound = app.add_subcommand("bound", "Longest reconfiguration period that keeps up with a disturbance");
  bound->add_option("--h-move", h_move, "Entropy injected per reconfiguration, bits")->required();
  bound->add_option("--rate", rate_text, "Disturbance entropy rate, e.g. 2/hour")->required();
  bound->add_option("--margin", margin, "Safety margin, at least 1");
  add_common(bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run || *sweep) {
      requisite::RunOptions opts;
      opts.command = *run ? "run" : "sweep";
      opts.source = file;
      opts.seed = seed;
      opts.sweeps_only = static_cast<bool>(*sweep);
      emit(requisite::run_scenario_file(requisite::parse_scenario(file), opts), out);
      return kOk;
    }
    if (*examples) {
      const auto table = expected_path.empty() ? requisite::default_expectations()
                                               : requisite::load_expectations(expected_path);
      const auto outcome = requisite::worked_examples_report(table, expected_path.empty() ? "builtin" : expected_path);
      emit(outcome.report, out);
      if (!outcome.all_pass) return fail(kCheckFailed, "check failed", "one or more worked examples did not match");
      return kOk;
    }
    if (*bound) {
      emit(requisite::bound_report(h_move, requisite::parse_rate(rate_text), margin), out);
      return kOk;
    }
  } catch (const requisite::FileError& e) {
    return fail(kFile, "file error", e.what());
  } catch (const requisite::ParseError& e) {
    return fail(kParse, "parse error", e.what());
  } catch (const requisite::SchemaError& e) {
    return fail(kSchema, "schema error", e.what());
  } catch (const requisite::UnitError& e) {
    return fail(kUnit, "unit error", e.what());
  } catch (const requisite::ValidationError& e) {
    return fail(kValidation, "validation error", e.what());
  } catch (const requisite::DomainError& e) {
    return fail(kValidation, "validation error", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "error", e.what());
  }
  return kUsage;
}
