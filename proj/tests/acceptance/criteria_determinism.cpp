// Criterion 11: every subcommand is byte-reproducible at 1 and 8 workers.

#include <fstream>
#include <map>
#include <sstream>

#include "app.hpp"
#include "criteria.hpp"

namespace gengm::acceptance {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Output files of one run (the config itself excluded), name -> bytes.
std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() != "run.ini") files[e.path().filename().string()] = slurp(e.path());
  return files;
}

struct Command {
  std::string name;
  std::string verb;
  std::string config;
};

}  // namespace

Outcome determinism(const Context& ctx) {
  const fs::path root = ctx.workdir / "determinism";
  fs::remove_all(root);
  const fs::path data = root / "data";
  fs::create_directories(data);

  const std::string data_keys = "[data]\nx = " + (data / "X.csv").string() + "\ny = " + (data / "Y.csv").string() +
                                "\nomega_yy = " + (data / "truth_omega_yy.csv").string() + "\n";
  const std::vector<Command> commands{
      {"simulate", "simulate", "[run]\nseed = 11\n[scenario]\nid = 3\np = 40\nn_train = 60\nn_valid = 50\n"},
      {"fit", "fit",
       data_keys + "[regularization]\nlambda = 0.05\nmu = 0.05\neta = 1\nbeta = 2\n"},
      {"cv", "cv", data_keys + "[run]\nseed = 12\n[cv]\nlambdas = 0.05\nmus = log(0.01, 0.5, 4)\netas = 0.1, 10\n"
                               "beta = 2\nfolds = 3\n"},
      {"eval", "eval",
       "[run]\nseed = 13\n[scenario]\nid = 2\np = 20\nn_train = 50\nn_valid = 100\n"
       "[cv]\nlambdas = 0.05\nmus = 0.02, 0.2\netas = 0.5, 5\nfolds = 2\n"
       "[eval]\nreplications = 6\nvariants = gm, gengm:2, oracle:2, lasso\n"},
      {"selection", "eval",
       "[run]\nseed = 14\n[eval]\nmode = selection\nrepetitions = 4\nsubsample = 20\n[fit]\nmax_outer = 5\n"},
      {"theory", "theory",
       "[run]\nseed = 15\n[scenario]\nid = 1\np = 30\nn_train = 200\n[regularization]\nstructure = first_diff+0.1\n"
       "[theory]\nsource = scenario\n"},
  };

  // Shared input data for fit and cv.
  {
    std::ofstream(data / "run.ini") << commands[0].config;
    std::ostringstream out, err;
    const std::string cfg = (data / "run.ini").string(), dir = data.string();
    const char* argv[] = {"gengm", "simulate", "--config", cfg.c_str(), "--out", dir.c_str()};
    if (cli::run(6, argv, out, err) != 0) return {false, "could not simulate the shared dataset: " + err.str()};
  }

  int identical = 0;
  std::string failures;
  for (const Command& c : commands) {
    std::vector<std::map<std::string, std::string>> runs;
    bool ran = true;
    for (const int jobs : {1, 1, 8, 8}) {
      const fs::path dir = root / (c.name + "_j" + std::to_string(jobs) + "_" + std::to_string(runs.size()));
      fs::create_directories(dir);
      std::ofstream(dir / "run.ini") << c.config;
      const std::string cfg = (dir / "run.ini").string(), out_dir = dir.string(), j = std::to_string(jobs);
      const char* argv[] = {"gengm", c.verb.c_str(), "--config", cfg.c_str(), "--out", out_dir.c_str(), "--jobs", j.c_str()};
      std::ostringstream out, err;
      if (cli::run(8, argv, out, err) != 0) {
        ctx.out() << c.name << ": " << err.str();
        ran = false;
        break;
      }
      runs.push_back(outputs(dir));
    }
    const bool same = ran && !runs.front().empty() && runs[1] == runs[0] && runs[2] == runs[0] && runs[3] == runs[0];
    if (same) {
      ++identical;
    } else {
      failures += " " + c.name;
    }
    ctx.out() << "  " << c.name << ": " << (runs.empty() ? 0 : runs.front().size()) << " files, "
              << (same ? "identical" : "DIFFERENT") << "\n";
  }
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands (simulate, fit, cv, eval, selection, theory) byte-identical over 2 runs x {1, 8} workers" +
              (failures.empty() ? "" : "; differing:" + failures)};
}

}  // namespace gengm::acceptance
