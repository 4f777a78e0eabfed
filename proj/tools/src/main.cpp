// ripkit command-line front end. Exit codes: 0 success, 2 config error,
// 3 numerical failure.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "plot.hpp"
#include "ripkit/errors.hpp"
#include "sweep.hpp"
#include "table.hpp"

namespace {

using namespace ripkit::cli;

struct Common {
  std::string config;
  std::string out;
  int jobs = 1;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::string cache_dir;
};

void add_common(CLI::App* sub, Common& c, bool needs_config = true) {
  auto* opt = sub->add_option("--config", c.config, "YAML config file");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory (stdout when omitted)");
  sub->add_option("--jobs", c.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "seed for randomized initial states");
  sub->add_option("--cache", c.cache_dir, "directory for cached system operators");
}

Format format_of(const Common& c) { return c.format == "json" ? Format::json : Format::csv; }

int run(const std::string& name, const Common& c) {
  const YAML::Node root = load_config(c.config);
  std::vector<std::string> warnings;
  RunContext ctx;
  ctx.seed = c.seed;
  ctx.jobs = c.jobs;
  if (!c.cache_dir.empty()) ctx.cache_dir = c.cache_dir;
  ctx.warnings = &warnings;
  const auto tables = run_command(name, root, ctx);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (c.out.empty()) {
    for (const auto& t : tables) {
      if (format_of(c) == Format::csv) write_csv(t, std::cout);
      else write_json(t, std::cout);
    }
  } else {
    for (const auto& t : tables) std::cerr << "wrote " << write_table(t, c.out, format_of(c)).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ripkit: resonator-induced phase gate toolkit"};
  app.require_subcommand(1);
  Common common;
  std::string plot_input, plot_kind = "auto";

  for (const auto& name : command_names()) add_common(app.add_subcommand(name, "run " + name), common);
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep with a resumable manifest");
  add_common(sweep, common);
  auto* plot = app.add_subcommand("plot", "render a result CSV as SVG");
  plot->add_option("csv", plot_input, "result CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", plot_kind, "auto, rates, leakage or response")
      ->check(CLI::IsMember({"auto", "rates", "leakage", "response"}));
  plot->add_option("--out", common.out, "output directory or .svg path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "sweep") {
      if (common.out.empty()) throw ripkit::ConfigError("sweep: --out is required");
      SweepOptions o;
      o.out = common.out;
      o.jobs = common.jobs;
      o.seed = common.seed;
      o.format = format_of(common);
      if (!common.cache_dir.empty()) o.cache_dir = common.cache_dir;
      const SweepSummary s = run_sweep(load_config(common.config), o);
      std::cerr << "sweep: " << s.points << " points, " << s.computed << " computed, " << s.skipped
                << " resumed, " << s.failed << " failed\n";
      return s.failed ? 3 : 0;
    }
    if (name == "plot") {
      const Table t = read_csv(plot_input);
      const auto path = emit_plot(t, plot_kind, std::filesystem::path(common.out.empty() ? "." : common.out));
      std::cerr << "wrote " << path.string() << '\n';
      return 0;
    }
    return run(name, common);
  } catch (const ripkit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const YAML::Exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ripkit::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}
