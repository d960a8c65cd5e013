#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "levrot/commands.hpp"
#include "levrot/config.hpp"
#include "levrot/error.hpp"
#include "levrot/parallel.hpp"

int main(int argc, char** argv) {
  using namespace levrot::studio;

  CLI::App app{"levrot: trapped rotor and NV spin coupling calculator"};
  app.set_version_flag("--version", std::string(levrot::version()));
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::string format = "csv";
  bool dump_config = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--threads", threads, "worker threads (default: LEVROT_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--dump-config", dump_config, "print the effective configuration and exit");
  std::vector<std::string> verbs;
  app.add_option("commands", verbs, "one or more of: table1 fig2-map fig4-curves thermal charges "
                                    "stability-chart dynamics spin resonance coupling jc-sim all")
      ->check(CLI::IsMember([] {
        auto v = command_names();
        v.push_back("all");
        return v;
      }()));

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const levrot::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  if (dump_config) {
    std::printf("%s\n", cfg.to_json().c_str());
    return 0;
  }
  if (verbs.empty()) {
    std::fprintf(stderr, "%s", app.help().c_str());
    return 2;
  }
  if (std::find(verbs.begin(), verbs.end(), "all") != verbs.end()) verbs = command_names();
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (threads <= 0) threads = levrot::default_thread_count();
  const Format fmt = format == "json" ? Format::Json : Format::Csv;

  int failures = 0;
  std::vector<std::string> warnings;
  for (const auto& verb : verbs) {
    try {
      auto result = run_command(verb, cfg, threads);
      for (const auto& table : result.tables)
        std::printf("%s\n", write_table(table, cfg.output_dir, fmt).c_str());
      warnings.insert(warnings.end(), result.warnings.begin(), result.warnings.end());
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s: %s\n", verb.c_str(), e.what());
      ++failures;
    }
  }
  if (!warnings.empty()) {
    std::fprintf(stderr, "%zu warning(s):\n", warnings.size());
    for (const auto& w : warnings) std::fprintf(stderr, "  %s\n", w.c_str());
  }
  return failures == 0 ? 0 : 1;
}
