#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"
#include "gengm/model.hpp"
#include "gengm/solver.hpp"

namespace gengm::cli {

/// Command-line flags shared by every subcommand; they override the config.
struct Options {
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::filesystem::path out = ".";
  bool center = false;
  std::optional<std::string> variant;
};

/// A solver variant or the Lasso baseline, with an optional beta override
/// written "name:beta" (e.g. "gengm:2").
struct VariantSpec {
  std::string label;
  bool lasso = false;
  Variant variant = Variant::kGenGm;
  std::optional<double> beta;
};
VariantSpec parse_variant_spec(const std::string& text);

SymmetricMatrix structure_from_config(const Config& c, Index p);
RegularizationConfig regularization_from_config(const Config& c, Index p);
FitSettings fit_settings_from_config(const Config& c);

int cmd_simulate(const Config& c, const Options& o, std::ostream& log);
int cmd_fit(const Config& c, const Options& o, std::ostream& log);
int cmd_cv(const Config& c, const Options& o, std::ostream& log);
int cmd_eval(const Config& c, const Options& o, std::ostream& log);
int cmd_theory(const Config& c, const Options& o, std::ostream& log);

}  // namespace gengm::cli
