#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "gengm/evaluate.hpp"
#include "gengm/parallel.hpp"
#include "gengm/rng.hpp"
#include "gengm/simulate.hpp"
#include "gengm/theory.hpp"

namespace gengm::cli {
namespace {

namespace fs = std::filesystem;

// Flat "key = value" text; keys keep insertion order.
class KeyValues {
 public:
  void add(const std::string& key, const std::string& value) { lines_ += key + " = " + value + "\n"; }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void section(const std::string& name) { lines_ += (lines_.empty() ? "" : "\n") + ("[" + name + "]\n"); }
  const std::string& str() const { return lines_; }

 private:
  std::string lines_;
};

std::uint64_t run_seed(const Config& c, const Options& o) {
  return o.seed ? *o.seed : c.get_seed("run.seed", 0);
}

VariantSpec variant_from(const Config& c, const Options& o) {
  return parse_variant_spec(o.variant.value_or(c.get_string("fit.variant", "gengm")));
}

std::string require(const Config& c, const std::string& key) {
  auto v = c.find_string(key);
  if (!v || v->empty()) throw ConfigError("missing required key '" + key + "'");
  return *v;
}

// Scales each predictor column to unit root mean square (no centering).
Dataset standardized(Dataset d) {
  for (Index j = 0; j < d.p(); ++j) {
    const double rms = d.x.col(j).norm() / std::sqrt(static_cast<double>(d.n()));
    if (rms > 0.0) d.x.col(j) /= rms;
  }
  return d;
}

Dataset load_dataset(const Config& c, const Options& o, const std::string& x_key, const std::string& y_key) {
  Dataset d;
  d.x = read_matrix_csv(require(c, x_key));
  d.y = read_matrix_csv(require(c, y_key));
  if (d.x.rows() != d.y.rows()) {
    throw InvalidInput("X and Y have different row counts (" + std::to_string(d.x.rows()) + " vs " +
                       std::to_string(d.y.rows()) + ")");
  }
  d.validate();
  if (o.center) d = centered(d);
  if (c.get_bool("data.standardize", false)) d = standardized(d);
  return d;
}

ScenarioSpec scenario_from_config(const Config& c, std::uint64_t seed) {
  ScenarioSpec s;
  s.id = static_cast<int>(c.get_int("scenario.id", s.id));
  s.p = c.get_int("scenario.p", s.p);
  s.r = c.get_double("scenario.r", s.r);
  s.n_train = c.get_int("scenario.n_train", s.n_train);
  s.n_valid = c.get_int("scenario.n_valid", s.n_valid);
  s.seed = seed;
  try {
    s.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  return s;
}

CvGrid grid_from_config(const Config& c, std::uint64_t seed) {
  CvGrid g;
  g.lambdas = c.get_axis("cv.lambdas", {0.05});
  g.mus = c.get_axis("cv.mus", CvGrid::log_axis(0.005, 0.5, 6));
  g.etas = c.get_axis("cv.etas", {0.0});
  g.beta = c.get_double("cv.beta", c.get_double("regularization.beta", 1.0));
  g.folds = c.get_int("cv.folds", 5);
  g.seed = c.get_seed("cv.seed", seed);
  g.allow_unguaranteed_beta = c.get_bool("regularization.allow_unguaranteed_beta", false);
  try {
    g.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  return g;
}

SymmetricMatrix read_symmetric(const std::string& path) { return SymmetricMatrix(read_matrix_csv(path)); }

void write_theta(const fs::path& dir, const std::string& prefix, const ParameterPair& theta) {
  write_matrix_csv(dir / (prefix + "omega_yy.csv"), theta.omega_yy().matrix(), numbered("y", theta.q()));
  write_matrix_csv(dir / (prefix + "omega_yx.csv"), theta.omega_yx(), numbered("x", theta.p()));
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : "undefined"; }

}  // namespace

VariantSpec parse_variant_spec(const std::string& text) {
  VariantSpec v;
  v.label = text;
  std::string name = text;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    v.beta = parse_double(text.substr(colon + 1), "variant '" + text + "'");
  }
  if (name == "lasso") {
    v.lasso = true;
    return v;
  }
  try {
    v.variant = parse_variant(name);
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  return v;
}

SymmetricMatrix structure_from_config(const Config& c, Index p) {
  const std::string s = c.get_string("regularization.structure", "first_diff");
  if (s == "first_diff") return first_diff_structure(p);
  if (s == "identity") return SymmetricMatrix::identity(p);
  if (s.rfind("first_diff+", 0) == 0) {
    const double ridge = parse_double(s.substr(11), "regularization.structure");
    return SymmetricMatrix(DenseMatrix(first_diff_structure(p).matrix() +
                                       ridge * DenseMatrix::Identity(p, p)));
  }
  SymmetricMatrix l = read_symmetric(s);
  if (l.dim() != p) throw ConfigError("structure matrix " + s + " is not " + std::to_string(p) + " x " + std::to_string(p));
  return l;
}

RegularizationConfig regularization_from_config(const Config& c, Index p) {
  RegularizationConfig r;
  r.lambda = c.get_double("regularization.lambda", 0.0);
  r.mu = c.get_double("regularization.mu", 0.0);
  r.eta = c.get_double("regularization.eta", 0.0);
  r.beta = c.get_double("regularization.beta", 1.0);
  r.allow_unguaranteed_beta = c.get_bool("regularization.allow_unguaranteed_beta", false);
  r.structure = structure_from_config(c, p);
  try {
    r.validate(p);
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  return r;
}

FitSettings fit_settings_from_config(const Config& c) {
  FitSettings s;
  s.epsilon = c.get_double("fit.epsilon", s.epsilon);
  s.max_outer = static_cast<int>(c.get_int("fit.max_outer", s.max_outer));
  s.owlqn.memory = static_cast<int>(c.get_int("fit.memory", s.owlqn.memory));
  s.owlqn.max_iters = static_cast<int>(c.get_int("fit.max_inner", s.owlqn.max_iters));
  s.owlqn.grad_tol = c.get_double("fit.grad_tol", s.owlqn.grad_tol);
  return s;
}

int cmd_simulate(const Config& c, const Options& o, std::ostream& log) {
  const std::uint64_t seed = run_seed(c, o);
  const std::string kind = c.get_string("simulate.kind", "scenario");
  KeyValues manifest;
  manifest.section("run");
  manifest.add("seed", static_cast<long long>(seed));

  if (kind == "weather") {
    WeatherSpec w;
    w.stations = c.get_int("weather.stations", w.stations);
    w.days = c.get_int("weather.days", w.days);
    w.response_correlation = c.get_double("weather.response_correlation", w.response_correlation);
    w.noise_scale = c.get_double("weather.noise_scale", w.noise_scale);
    w.seed = seed;
    const Dataset d = gen_weather_standin(w);
    write_matrix_csv(o.out / "X.csv", d.x, numbered("x", d.p()));
    write_matrix_csv(o.out / "Y.csv", d.y, numbered("y", d.q()));
    write_theta(o.out, "truth_", *d.truth);
    write_matrix_csv(o.out / "noise_cov.csv", d.noise_cov->matrix(), numbered("y", d.q()));
    manifest.section("simulate");
    manifest.add("kind", kind);
    manifest.section("weather");
    manifest.add("stations", static_cast<long long>(w.stations));
    manifest.add("days", static_cast<long long>(w.days));
    manifest.add("response_correlation", w.response_correlation);
    manifest.add("noise_scale", w.noise_scale);
  } else if (kind == "scenario") {
    const ScenarioSpec spec = scenario_from_config(c, seed);
    const ScenarioSample s = gen_scenario(spec);
    write_matrix_csv(o.out / "X.csv", s.train.x, numbered("x", spec.p));
    write_matrix_csv(o.out / "Y.csv", s.train.y, numbered("y", spec.q()));
    write_matrix_csv(o.out / "X_valid.csv", s.valid.x, numbered("x", spec.p));
    write_matrix_csv(o.out / "Y_valid.csv", s.valid.y, numbered("y", spec.q()));
    write_theta(o.out, "truth_", s.truth);
    write_matrix_csv(o.out / "noise_cov.csv", s.noise_cov.matrix(), numbered("y", spec.q()));
    manifest.section("simulate");
    manifest.add("kind", kind);
    manifest.section("scenario");
    manifest.add("id", static_cast<long long>(spec.id));
    manifest.add("p", static_cast<long long>(spec.p));
    manifest.add("q", static_cast<long long>(spec.q()));
    manifest.add("r", spec.r);
    manifest.add("n_train", static_cast<long long>(spec.n_train));
    manifest.add("n_valid", static_cast<long long>(spec.n_valid));
  } else {
    throw ConfigError("simulate.kind must be 'scenario' or 'weather', got '" + kind + "'");
  }
  write_text(o.out / "manifest.ini", manifest.str());
  log << "simulate: wrote " << kind << " data to " << o.out.string() << "\n";
  return 0;
}

int cmd_fit(const Config& c, const Options& o, std::ostream& log) {
  const Dataset d = load_dataset(c, o, "data.x", "data.y");
  const VariantSpec v = variant_from(c, o);
  FitSettings settings = fit_settings_from_config(c);
  KeyValues summary;
  summary.section("fit");
  summary.add("variant", v.label);
  summary.add("n", static_cast<long long>(d.n()));

  if (v.lasso) {
    const double mu = c.get_double("regularization.mu", 0.0);
    const DenseMatrix b = fit_lasso_baseline(d, mu, settings.owlqn);
    write_matrix_csv(o.out / "B.csv", b, numbered("y", d.q()));
    summary.add("mu", mu);
    summary.add("kkt_residual", lasso_kkt_residual(d, b, mu));
  } else {
    RegularizationConfig cfg = regularization_from_config(c, d.p());
    if (v.beta) cfg.beta = *v.beta;
    settings.variant = v.variant;
    if (v.variant == Variant::kOracle) settings.oracle_omega_yy = read_symmetric(require(c, "data.omega_yy"));
    const FitResult r = fit(sample_covariances(d), cfg, settings);
    write_theta(o.out, "", r.theta_hat);
    const RegularizationConfig eff = effective_config(cfg, v.variant);
    summary.add("lambda", eff.lambda);
    summary.add("mu", eff.mu);
    summary.add("eta", eff.eta);
    summary.add("beta", eff.beta);
    summary.add("objective", r.objective);
    summary.add("outer_iterations", static_cast<long long>(r.outer_iters));
    summary.add("converged", r.converged);
    summary.add("last_yy_status", to_string(r.last_yy_status));
    summary.add("last_yx_status", to_string(r.last_yx_status));
  }
  write_text(o.out / "fit.ini", summary.str());
  log << "fit: " << v.label << " done, results in " << o.out.string() << "\n";
  return 0;
}

int cmd_cv(const Config& c, const Options& o, std::ostream& log) {
  const Dataset d = load_dataset(c, o, "data.x", "data.y");
  const VariantSpec v = variant_from(c, o);
  CvGrid grid = grid_from_config(c, run_seed(c, o));
  if (v.beta) grid.beta = *v.beta;
  FitSettings settings = fit_settings_from_config(c);
  settings.variant = v.variant;

  std::vector<std::string> header{"lambda", "mu", "eta"};
  for (Index f = 1; f <= grid.folds; ++f) header.push_back("mspe_fold" + std::to_string(f));
  header.insert(header.end(), {"mean_mspe", "valid"});
  Table table(header);
  KeyValues best;
  best.section("cv");
  best.add("variant", v.label);

  auto emit = [&table](const CvCell& cell) {
    std::vector<std::string> row{format_double(cell.lambda), format_double(cell.mu), format_double(cell.eta)};
    for (double e : cell.fold_mspe) row.push_back(format_double(e));
    row.push_back(format_double(cell.mean_mspe));
    row.push_back(cell.valid ? "1" : "0");
    table.add_row(std::move(row));
  };

  if (v.lasso) {
    const LassoCvResult r = cross_validate_lasso(d, grid.mus, grid.folds, grid.seed, settings.owlqn);
    for (const auto& cell : r.table) emit(cell);
    best.add("mu", r.best_mu);
    best.add("mean_mspe", r.table[r.best_index].mean_mspe);
  } else {
    if (v.variant == Variant::kOracle) settings.oracle_omega_yy = read_symmetric(require(c, "data.omega_yy"));
    const CvResult r = cross_validate(d, structure_from_config(c, d.p()), grid, settings, o.jobs);
    for (const auto& cell : r.table) emit(cell);
    const RegularizationConfig eff = effective_config(r.best, v.variant);
    best.add("lambda", eff.lambda);
    best.add("mu", eff.mu);
    best.add("eta", eff.eta);
    best.add("beta", eff.beta);
    best.add("mean_mspe", r.table[r.best_index].mean_mspe);
  }
  table.write(o.out / "cv_table.csv");
  write_text(o.out / "cv_best.ini", best.str());
  log << "cv: " << table.rows() << " cells evaluated, best written to " << (o.out / "cv_best.ini").string() << "\n";
  return 0;
}

namespace {

struct EvalRow {
  std::string variant;
  RegularizationConfig cfg;
  double mspe = 0.0;
  std::optional<FScore> f;
};

std::vector<EvalRow> eval_replication(const Config& c, const ScenarioSpec& spec,
                                      const std::vector<VariantSpec>& variants, const CvGrid& base_grid,
                                      const FitSettings& base) {
  const ScenarioSample s = gen_scenario(spec);
  const SymmetricMatrix structure = structure_from_config(c, spec.p);
  const CovarianceTriplet cov = sample_covariances(s.train);
  std::vector<EvalRow> rows;
  for (const VariantSpec& v : variants) {
    CvGrid grid = base_grid;
    grid.seed = spec.seed;  // every variant sees the same folds
    EvalRow row;
    row.variant = v.label;
    if (v.lasso) {
      const LassoCvResult r = cross_validate_lasso(s.train, grid.mus, grid.folds, grid.seed, base.owlqn);
      row.cfg.mu = r.best_mu;
      row.mspe = mspe_regression(fit_lasso_baseline(s.train, r.best_mu, base.owlqn), s.valid);
    } else {
      if (v.beta) grid.beta = *v.beta;
      if (v.variant == Variant::kGm) grid.etas = {0.0};
      if (v.variant == Variant::kSpr || v.variant == Variant::kOracle) grid.lambdas = {0.0};
      FitSettings settings = base;
      settings.variant = v.variant;
      if (v.variant == Variant::kOracle) settings.oracle_omega_yy = s.truth.omega_yy();
      const CvResult cv = cross_validate(s.train, structure, grid, settings, 1);
      const FitResult r = fit(cov, cv.best, settings);
      row.cfg = effective_config(cv.best, v.variant);
      row.mspe = mspe(r.theta_hat, s.valid);
      row.f = f_score(r.theta_hat, s.truth);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int eval_mspe(const Config& c, const Options& o, std::ostream& log) {
  const std::uint64_t seed = run_seed(c, o);
  const ScenarioSpec spec0 = scenario_from_config(c, seed);
  const Index reps = c.get_int("eval.replications", 50);
  if (reps < 1) throw ConfigError("eval.replications must be >= 1");
  std::vector<VariantSpec> variants;
  if (o.variant) {
    variants.push_back(parse_variant_spec(*o.variant));
  } else {
    for (const auto& name : c.get_list("eval.variants", {"gm", "gengm:2", "oracle:2"})) {
      variants.push_back(parse_variant_spec(name));
    }
  }
  const CvGrid grid = grid_from_config(c, seed);
  const FitSettings settings = fit_settings_from_config(c);

  auto per_rep = parallel_map(static_cast<std::size_t>(reps), o.jobs, [&](std::size_t i) {
    ScenarioSpec spec = spec0;
    spec.seed = Rng::stream(seed, i).next();
    return eval_replication(c, spec, variants, grid, settings);
  });

  Table table({"replication", "variant", "lambda", "mu", "eta", "beta", "mspe", "f_score", "precision", "recall"});
  std::map<std::string, std::vector<double>> by_variant;
  for (std::size_t i = 0; i < per_rep.size(); ++i) {
    for (const EvalRow& r : per_rep[i]) {
      table.add_row({std::to_string(i + 1), r.variant, format_double(r.cfg.lambda), format_double(r.cfg.mu),
                     format_double(r.cfg.eta), format_double(r.cfg.beta), format_double(r.mspe),
                     r.f ? format_double(r.f->f) : "", r.f ? format_double(r.f->precision) : "",
                     r.f ? format_double(r.f->recall) : ""});
      by_variant[r.variant].push_back(r.mspe);
    }
  }
  table.write(o.out / "eval_mspe.csv");

  Table summary({"variant", "replications", "median_mspe", "mean_mspe"});
  for (const VariantSpec& v : variants) {
    const auto& vals = by_variant[v.label];
    double mean = 0.0;
    for (double x : vals) mean += x;
    mean /= static_cast<double>(vals.size());
    summary.add_row({v.label, std::to_string(vals.size()), format_double(median(vals)), format_double(mean)});
  }
  summary.write(o.out / "eval_summary.csv");
  log << "eval: " << reps << " replications x " << variants.size() << " variants\n";
  return 0;
}

int eval_selection(const Config& c, const Options& o, std::ostream& log) {
  const std::uint64_t seed = run_seed(c, o);
  Dataset d;
  if (c.has("data.x")) {
    d = load_dataset(c, o, "data.x", "data.y");
  } else {
    WeatherSpec w;
    w.seed = seed;
    d = gen_weather_standin(w);
    if (o.center) d = centered(d);
  }
  const VariantSpec v = variant_from(c, o);
  if (v.lasso) throw ConfigError("selection frequencies are defined for the graphical-model variants only");
  RegularizationConfig cfg = regularization_from_config(c, d.p());
  if (v.beta) cfg.beta = *v.beta;
  // Fixed-parameter selection runs default to (lambda, mu, eta) = (0, 0.05, 1).
  if (!c.has("regularization.mu")) cfg.mu = 0.05;
  if (!c.has("regularization.eta")) cfg.eta = 1.0;
  FitSettings settings = fit_settings_from_config(c);
  settings.variant = v.variant;
  if (v.variant == Variant::kOracle) {
    if (!d.truth) throw ConfigError("the oracle variant needs a known Omega_yy");
    settings.oracle_omega_yy = d.truth->omega_yy();
  }
  const Index reps = c.get_int("eval.repetitions", 100);
  const Index sub = c.get_int("eval.subsample", std::min<Index>(25, d.n()));
  const double threshold = c.get_double("eval.threshold", 0.5);
  const SelectionFrequency sf = selection_frequency(d, cfg, settings, reps, sub, seed, o.jobs, threshold);

  Table table({"response", "predictor", "frequency", "retained"});
  const DenseMatrix freq = sf.frequency();
  const DenseMatrix kept = sf.retained();
  for (Index i = 0; i < freq.rows(); ++i) {
    for (Index j = 0; j < freq.cols(); ++j) {
      table.add_row({std::to_string(i + 1), std::to_string(j + 1), format_double(freq(i, j)),
                     kept(i, j) > 0.0 ? "1" : "0"});
    }
  }
  table.write(o.out / "selection_frequency.csv");
  KeyValues summary;
  summary.section("selection");
  summary.add("variant", v.label);
  summary.add("repetitions", static_cast<long long>(sf.repetitions));
  summary.add("failed", static_cast<long long>(sf.failed));
  summary.add("subsample", static_cast<long long>(sub));
  summary.add("threshold", threshold);
  summary.add("retained", static_cast<long long>(kept.sum()));
  write_text(o.out / "selection_summary.ini", summary.str());
  log << "eval: selection frequencies over " << sf.repetitions << " repetitions (" << sf.failed << " failed)\n";
  return 0;
}

}  // namespace

int cmd_eval(const Config& c, const Options& o, std::ostream& log) {
  const std::string mode = c.get_string("eval.mode", "mspe");
  if (mode == "mspe") return eval_mspe(c, o, log);
  if (mode == "selection") return eval_selection(c, o, log);
  throw ConfigError("eval.mode must be 'mspe' or 'selection', got '" + mode + "'");
}

int cmd_theory(const Config& c, const Options& o, std::ostream& log) {
  const std::uint64_t seed = run_seed(c, o);
  const std::string source = c.get_string("theory.source", "population");

  // Truth: explicit files, or the scenario drawn from the run seed.
  std::optional<ScenarioSample> sample;
  ParameterPair truth;
  if (c.has("data.truth_omega_yx")) {
    truth = ParameterPair(read_symmetric(require(c, "data.truth_omega_yy")),
                          read_matrix_csv(require(c, "data.truth_omega_yx")));
  } else {
    sample = gen_scenario(scenario_from_config(c, seed));
    truth = sample->truth;
  }
  const Index p = truth.p();
  const std::string sx = c.get_string("theory.sigma_xx", "identity");
  const SymmetricMatrix sigma_xx = sx == "identity" ? SymmetricMatrix::identity(p) : read_symmetric(sx);

  TheoryInputs in = TheoryInputs::from_truth(truth, sigma_xx, structure_from_config(c, p),
                                             c.get_double("regularization.beta", 1.0));
  in.c_lambda = c.get_double("theory.c_lambda", in.c_lambda);
  in.d_lambda = c.get_double("theory.d_lambda", in.d_lambda);
  in.e_lambda = c.get_double("theory.e_lambda", in.e_lambda);
  in.c_mu = c.get_double("theory.c_mu", in.c_mu);
  in.d_mu = c.get_double("theory.d_mu", in.d_mu);
  in.e_mu = c.get_double("theory.e_mu", in.e_mu);
  in.b3 = c.get_double("theory.b3", in.b3);
  if (c.has("theory.epsilon_s")) in.epsilon_s = c.get_double("theory.epsilon_s", 0.0);
  if (c.has("theory.epsilon_l")) in.epsilon_l = c.get_double("theory.epsilon_l", 0.0);
  in.allow_null_model = c.get_bool("theory.allow_null_model", false);
  try {
    in.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  check_h1(in);

  const CovarianceTriplet pop = population_covariances(truth, sigma_xx);
  CovarianceTriplet emp = pop;
  Index n = c.get_int("theory.n", 100);
  if (source == "data") {
    const Dataset d = load_dataset(c, o, "data.x", "data.y");
    emp = sample_covariances(d);
    n = d.n();
  } else if (source == "scenario") {
    if (!sample) throw ConfigError("theory.source = scenario needs the truth from [scenario], not files");
    emp = sample_covariances(sample->train);
    n = sample->train.n();
  } else if (source != "population") {
    throw ConfigError("theory.source must be population, data or scenario, got '" + source + "'");
  }
  const NoiseMatrices noise = empirical_noise(truth, pop, emp);

  KeyValues rep;
  rep.section("theory");
  rep.add("source", source);
  rep.add("p", static_cast<long long>(p));
  rep.add("q", static_cast<long long>(truth.q()));
  rep.add("n", static_cast<long long>(n));
  rep.add("active_set_size", static_cast<long long>(in.support_size()));
  rep.add("beta", in.beta);
  const EigenBoundConstants eb = eigen_bounds(in);
  rep.add("omega_l_lower", eb.omega_l_lower);
  rep.add("omega_l_upper", eb.omega_l_upper);
  rep.add("omega_s_upper", eb.omega_s_upper);
  const PriorConstants pc = prior_constants(in);
  rep.add("s_l", pc.s_l);
  rep.add("ell_a", pc.ell_a);
  rep.add("ell_b", pc.ell_b);
  rep.add("h_a", noise.h_a);
  rep.add("h_b", noise.h_b);
  rep.add("m_star", noise.m_star);
  rep.add("c_lambda_mu", c_lambda_mu(in));
  const RStar r = r_star(in);
  rep.add("r1_star", r.r1);
  rep.add("r2_star", r.r2);
  rep.add("r3_star", fmt_opt(r.r3));
  rep.add("r4_star", fmt_opt(r.r4));
  rep.add("r_star", r.value);

  const ValidityRegion region = validity_region(in, noise.h_a, noise.h_b);
  rep.add("lambda_lo", region.lambda_lo);
  rep.add("lambda_hi", region.lambda_hi);
  rep.add("mu_lo", region.mu_lo);
  rep.add("mu_hi", region.mu_hi);
  rep.add("eta_bar", region.eta_unbounded ? std::string("unbounded") : format_double(region.eta_bar));
  rep.add("region_degenerate", region.degenerate);

  RegularizationChoice choice;
  choice.lambda = c.get_double("theory.lambda", region.lambda_lo);
  choice.mu = c.get_double("theory.mu", region.mu_lo);
  choice.eta = c.get_double("theory.eta", region.eta_unbounded ? 0.0 : 0.5 * region.eta_bar);
  rep.add("lambda", choice.lambda);
  rep.add("mu", choice.mu);
  rep.add("eta", choice.eta);
  rep.add("in_region", region.contains(choice.lambda, choice.mu, choice.eta));

  // Constants that only exist inside the validity region are reported as
  // undefined (with the reason) instead of failing the whole report.
  try {
    const TheoryReport full = build_report(in, noise.h_a, noise.h_b, n, choice);
    rep.add("alpha", full.alpha.alpha);
    rep.add("s_alpha", full.alpha.s_alpha);
    rep.add("gamma", full.gamma.gamma);
    rep.add("epsilon_s", full.gamma.epsilon_s);
    rep.add("epsilon_l", full.gamma.epsilon_l);
    rep.add("bound", full.bound_value);
    rep.add("n0_rate_branch", full.n0.branch_rate);
    rep.add("n0_log_branch", full.n0.branch_log);
    rep.add("n0_b1_coefficient", full.n0.b1_coefficient);
    rep.add("n0_b1_branch", std::string("incomputable (absolute constant b1 unknown)"));
    rep.add("n0_partial", full.n0.value());
  } catch (const OutsideValidityRegion& e) {
    rep.add("alpha", std::string("undefined"));
    rep.add("bound", std::string("undefined"));
    rep.add("undefined_reason", std::string(e.what()));
  }
  write_text(o.out / "theory_report.ini", rep.str());
  log << "theory: report written to " << (o.out / "theory_report.ini").string() << "\n";
  return 0;
}

}  // namespace gengm::cli
