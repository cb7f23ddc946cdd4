#include "app.hpp"

#include <CLI11.hpp>

#include <functional>
#include <map>

#include "commands.hpp"
#include "gengm/error.hpp"

namespace gengm::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial Gaussian graphical models with a structural prior"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  Options opts;
  std::string out_dir = ".";
  std::string variant;

  using Command = std::function<int(const Config&, const Options&, std::ostream&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"simulate", {"Draw a synthetic dataset", cmd_simulate}},
      {"fit", {"Fit one model at fixed regularization", cmd_fit}},
      {"cv", {"Cross-validate over a parameter grid", cmd_cv}},
      {"eval", {"Replicated MSPE study or selection frequencies", cmd_eval}},
      {"theory", {"Constants of the error bound", cmd_theory}},
  };
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "INI run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Run seed (overrides [run] seed)");
    sub->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--center", opts.center, "Mean-center X and Y before fitting");
    sub->add_option("--variant", variant, "gengm, gm, spr, oracle or lasso (optionally name:beta)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    const Config config = config_path.empty() ? Config() : Config::load(config_path);
    opts.seed = seed;
    opts.out = out_dir;
    if (!variant.empty()) opts.variant = variant;
    return commands.at(chosen->get_name()).second(config, opts, out);
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const HypothesisViolated& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OutsideValidityRegion& e) {
    err << "outside validity region: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace gengm::cli
