// qsig — experiment driver for the measurement/decoherence library.
//
// One subcommand per experiment; every flag can also come from an INI config
// file (--config), where [subcommand] sections address subcommand flags.
// Reports go to stdout unless --out is given.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsig/experiments.hpp"
#include "qsig/version.hpp"

namespace {

// "6" | "4..10" (inclusive) | "4,6,8"
std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  auto parse_one = [](const std::string& tok) {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw CLI::ValidationError("bad integer: " + tok);
    return v;
  };
  const std::size_t dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_one(spec.substr(0, dots));
    const int hi = parse_one(spec.substr(dots + 2));
    if (hi < lo) throw CLI::ValidationError("empty range: " + spec);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string tok =
        spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw CLI::ValidationError("bad list: " + spec);
    out.push_back(parse_one(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Comma list of nonnegative times; the token "inf" selects the
// full-decoherence limit row.
std::vector<double> parse_time_list(const std::string& spec) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string tok =
        spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok == "inf") {
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw CLI::ValidationError("bad time: " + tok);
      out.push_back(v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("empty time list");
  return out;
}

struct CliState {
  std::string n_spec = "6";
  std::string c_spec = "0";
  std::string times_spec = "0,0.25,0.5,1,2,4,inf";
  qsig::ExperimentConfig cfg;
};

void add_shared(CLI::App* cmd, CliState& st, bool with_c) {
  cmd->add_option("--n", st.n_spec, "qubit counts: one value, A..B, or comma list")
      ->capture_default_str();
  if (with_c) {
    cmd->add_option("--c", st.c_spec, "coarseness values: one value, A..B, or comma list")
        ->capture_default_str();
  }
  cmd->add_option("--model", st.cfg.model, "complexity model: length|zero|codec|tiny")
      ->capture_default_str();
  cmd->add_option("--seed", st.cfg.seed, "base seed for the per-trial seed chain")
      ->capture_default_str();
  cmd->add_option("--out", st.cfg.out, "output path (default: stdout)");
  cmd->add_option("--format", st.cfg.format, "report format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--workers", st.cfg.workers, "worker threads (results are worker-count invariant)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tiny-l", st.cfg.model_options.tiny_max_program_bits,
                  "tiny model: max program bits")
      ->capture_default_str();
  cmd->add_option("--tiny-budget", st.cfg.model_options.tiny_step_budget,
                  "tiny model: per-program step budget")
      ->capture_default_str();
  cmd->add_option("--tiny-cache", st.cfg.model_options.tiny_cache_path,
                  "tiny model: enumeration cache file");
}

void add_samples(CLI::App* cmd, CliState& st) {
  cmd->add_option("--samples", st.cfg.samples, "trials per parameter point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int run(const CliState& st) {
  std::string text;
  if (st.cfg.experiment == "trajectory") {
    const qsig::TrajectoryReport report = qsig::exp_sieve_trajectory(st.cfg);
    text = st.cfg.format == "json" ? qsig::trajectory_json(report, st.cfg)
                                   : qsig::trajectory_csv(report, st.cfg);
  } else {
    const std::vector<qsig::ReportRow> rows = qsig::run_experiment(st.cfg);
    text = st.cfg.format == "json" ? qsig::report_json(rows, st.cfg)
                                   : qsig::report_csv(rows, st.cfg);
  }
  if (st.cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(st.cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + st.cfg.out);
    file << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum measurement / decoherence experiment driver"};
  app.set_version_flag("--version", std::string("qsig ") + qsig::kCodeVersion);
  app.set_config("--config", "", "read options from an INI file ([subcommand] sections)");
  app.require_subcommand(1);

  CliState st;

  CLI::App* white = app.add_subcommand(
      "white-noise", "measured Haar-random pure states: log2-mean-exp of self-information");
  add_shared(white, st, true);
  add_samples(white, st);
  white->add_option("--povm", st.cfg.povm_path, "dense POVM fixture (JSON); default block PVM");

  CLI::App* mixed = app.add_subcommand(
      "white-noise-mixed", "measured mixed states with mixing law eta over the simplex");
  add_shared(mixed, st, true);
  add_samples(mixed, st);
  mixed->add_option("--eta", st.cfg.eta, "mixing law '<law>:<param>:<M>'")->capture_default_str();
  mixed->add_option("--povm", st.cfg.povm_path, "dense POVM fixture (JSON); default block PVM");

  CLI::App* collapse = app.add_subcommand(
      "collapse", "post-collapse states re-measured at coarseness c: estimate is n-c");
  add_shared(collapse, st, true);
  add_samples(collapse, st);

  CLI::App* biased = app.add_subcommand(
      "biased-prior", "rejection-sampled prior Gamma <= 2^c_bias * Haar vs the Haar baseline");
  add_shared(biased, st, false);
  add_samples(biased, st);
  biased->add_option("--c-bias", st.cfg.c_bias, "weight bound exponent")->capture_default_str();
  biased->add_option("--quantile", st.cfg.bias_quantile,
                     "p_psi(0) acceptance quantile; negative derives 1-2^-c_bias")
      ->capture_default_str();

  CLI::App* conservation = app.add_subcommand(
      "conservation", "self-information of structured inputs before/after a classical channel");
  add_shared(conservation, st, true);
  add_samples(conservation, st);
  conservation
      ->add_option("--channel", st.cfg.channel,
                   "identity | coarsen | kernel:<csv> | prepare-measure:<povm.json>")
      ->capture_default_str();

  CLI::App* trajectory = app.add_subcommand(
      "trajectory", "decoherence sieve along a time grid plus the algorithmic record");
  add_shared(trajectory, st, false);
  trajectory->add_option("--state", st.cfg.state,
                         "plus[:n] | pointer:<k>:<n> | haar:<n> | file:<path>")
      ->capture_default_str();
  trajectory->add_option("--times", st.times_spec, "comma list of times; 'inf' allowed")
      ->capture_default_str();
  trajectory->add_option("--tau", st.cfg.tau, "decoherence time constant")->capture_default_str();

  CLI::App* pointer = app.add_subcommand(
      "pointer-average", "exact average of the algorithmic sieve over all pointer states");
  add_shared(pointer, st, false);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().front();
    st.cfg.experiment = active->get_name();
    // Collapse re-measures a coarser grain, so its coarseness starts at 1.
    if (st.cfg.experiment == "collapse" && active->count("--c") == 0) st.c_spec = "1";
    st.cfg.n_values = parse_int_list(st.n_spec);
    st.cfg.c_values = parse_int_list(st.c_spec);
    st.cfg.times = parse_time_list(st.times_spec);
    return run(st);
  } catch (const std::exception& e) {
    std::cerr << "qsig: " << e.what() << "\n";
    return 1;
  }
}
