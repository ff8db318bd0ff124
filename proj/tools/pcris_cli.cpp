#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pcris/pipeline.hpp"

using namespace pcris;

namespace {

struct Opts {
  std::string config, out, precision;
  std::uint64_t seed = 1;
  bool seed_set = false;
  int trials = 100;
  bool timings = false;
};

int emit(const nlohmann::json& j, const Opts& o) {
  std::string s = j.dump(2);
  if (o.out.empty()) {
    std::cout << s << "\n";
    return 0;
  }
  std::ofstream f(o.out);
  if (!f) {
    std::cerr << "cannot write " << o.out << "\n";
    return ExitConfig;
  }
  f << s << "\n";
  return 0;
}

void apply_precision(JobConfig& c, const std::string& spec) {
  if (spec.empty()) return;
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw Error(ErrKind::ConfigError, "--precision expects M,N");
  try {
    c.M = std::stoi(spec.substr(0, comma));
    c.N = std::stoi(spec.substr(comma + 1));
  } catch (const std::exception&) {
    throw Error(ErrKind::ConfigError, "--precision expects two integers M,N");
  }
  if (*c.M < 1 || *c.N < 1) throw Error(ErrKind::ConfigError, "precision must be positive");
}

int run_job(const Opts& o, Mode forced, bool force_mode) {
  JobConfig c;
  try {
    c = load_config(o.config);
    apply_precision(c, o.precision);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ExitConfig;
  }
  if (force_mode) c.mode = forced;
  if (o.seed_set) c.seed = o.seed;
  c.record_timings = c.record_timings || o.timings;
  RunReport r = run_pipeline(c);
  int w = emit(r.json, o);
  if (w) return w;
  if (!o.out.empty()) {
    std::cerr << r.status;
    if (r.character) std::cerr << ": " << r.character->str();
    if (!r.stage.empty()) std::cerr << " (stage " << r.stage << ")";
    std::cerr << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mod-p reductions of two-dimensional crystalline representations in the large-valuation regime"};
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--config", o.config, "TOML or JSON job file")->required()->check(CLI::ExistingFile);
    sc->add_option("--out", o.out, "write the JSON report here instead of stdout");
    sc->add_option("--precision", o.precision, "override working precision as M,N");
    sc->add_option("--seed", o.seed, "random seed")->each([&](const std::string&) { o.seed_set = true; });
    sc->add_flag("--timings", o.timings, "record stage timings (reports are then not byte-stable)");
  };
  auto* run = app.add_subcommand("run", "run the full pipeline described by a config");
  common(run);
  auto* classify = app.add_subcommand("classify", "normalize, detect reducibility and report types only");
  common(classify);
  auto* suite = app.add_subcommand("suite", "run the randomized property suite");
  suite->add_option("--seed", o.seed, "random seed");
  suite->add_option("--trials", o.trials, "trials per check");
  suite->add_option("--out", o.out, "write the JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : ExitConfig;
  }

  if (*run) return run_job(o, Mode::Full, false);
  if (*classify) return run_job(o, Mode::ClassifyOnly, true);
  SuiteSummary s = oracle_suite(SuiteOptions{o.seed, o.trials, false});
  nlohmann::json j = s.to_json();
  j["seed"] = o.seed;
  if (int w = emit(j, o)) return w;
  return s.pass() ? ExitOk : ExitInternal;
}
