// aapam command line: ingest -> classify -> profile -> pac -> recommend ->
// evaluate, individually or as one pipeline. Logs go to stderr (AAPAM_LOG
// selects verbosity); artifacts go to files only.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aapam/cli/config.hpp"
#include "aapam/cli/pipeline.hpp"
#include "aapam/errors.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<double> tau;
  std::optional<int> top_n;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

void add_common_options(CLI::App* sub, CliOptions& options) {
  sub->add_option("--config", options.config_path, "run configuration file")
      ->required();
  sub->add_option("--tau", options.tau,
                  "AII threshold override, in (0, 1]");
  sub->add_option("--top-n", options.top_n, "recommendation list length");
  sub->add_option("--out", options.out, "output directory override");
  sub->add_option("--format", options.format, "report format: csv or text");
}

int run_stage(aapam::cli::Stage stage, const CliOptions& options) {
  aapam::cli::RunConfig config =
      aapam::cli::load_run_config(options.config_path);
  aapam::cli::Overrides overrides;
  overrides.tau = options.tau;
  overrides.top_n = options.top_n;
  if (options.out.has_value()) overrides.output_dir = *options.out;
  overrides.format = options.format;
  aapam::cli::apply_overrides(config, overrides);

  aapam::cli::Pipeline pipeline(std::move(config));
  pipeline.run(stage);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "aapam: emotion-profile construction, pseudo-association linking, and "
      "cross-domain recommendation"};
  app.require_subcommand(1);

  CliOptions options;
  const struct {
    const char* name;
    const char* help;
  } stages[] = {
      {"ingest", "parse datasets, build id maps, report rejected records"},
      {"classify", "build item emotion profiles"},
      {"profile", "build user and group emotion profiles"},
      {"pac", "scan for pseudo-association links and write the run report"},
      {"recommend", "write per-user recommendation lists"},
      {"evaluate", "write side-by-side top-N reports with hit rates"},
      {"pipeline", "run every configured stage"},
  };
  for (const auto& stage : stages) {
    add_common_options(app.add_subcommand(stage.name, stage.help), options);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string chosen = app.get_subcommands().front()->get_name();
  try {
    return run_stage(*aapam::cli::parse_stage(chosen), options);
  } catch (const aapam::Error& e) {
    std::cerr << "aapam: error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "aapam: error: " << e.what() << std::endl;
    return 1;
  }
}
