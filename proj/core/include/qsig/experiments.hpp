#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsig/complexity.hpp"
#include "qsig/sampling.hpp"
#include "qsig/stats.hpp"

namespace qsig {

// One configuration drives every experiment; unused fields are ignored by
// experiments that do not consume them. The echo written into reports covers
// exactly the fields that influence sampled values — output path, format and
// worker count are execution details and deliberately excluded, so reruns
// with different worker counts produce byte-identical reports (wall-clock
// columns aside).
struct ExperimentConfig {
  std::string experiment;  // white-noise | white-noise-mixed | collapse |
                           // biased-prior | conservation | trajectory |
                           // pointer-average
  std::vector<int> n_values{6};
  std::vector<int> c_values{0};
  int samples = 200;
  std::string model = "length";  // length | zero | codec | tiny
  std::uint64_t seed = 7;
  std::string eta = "dirichlet:1.0:4";

  double c_bias = 2.0;          // biased-prior: weight bound exponent
  // biased-prior: acceptance quantile for p_psi(0). Negative (the default)
  // derives 1 - 2^-c_bias, so the flat weight 2^c_bias on the accepted tail
  // saturates the envelope exactly and c_bias = 0 degrades to the plain Haar
  // prior. See effective_bias_quantile().
  double bias_quantile = -1.0;

  double tau = 1.0;                    // trajectory: decay constant
  std::string state = "plus";          // trajectory: plus[:n] | pointer:<k>:<n> |
                                       // haar:<n> | file:<path>
  std::vector<double> times{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};  // may contain inf

  std::string channel = "coarsen";  // conservation: identity | coarsen |
                                    // kernel:<csv> | prepare-measure:<povm.json>
  std::string povm_path;            // white-noise: optional dense POVM fixture

  std::string out;             // empty: stdout
  std::string format = "csv";  // csv | json
  int workers = 1;

  ModelOptions model_options;
};

// One row per parameter point. estimate_bits is the experiment's headline
// number (log₂-mean-of-2^value for the integral experiments, the median
// difference for conservation, the exact average for pointer-average);
// extra carries experiment-specific key=value pairs separated by ';'.
struct ReportRow {
  std::string experiment;
  int n = 0;
  int c = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string model_id;
  double estimate_bits = 0.0;
  double stderr_bits = 0.0;
  double max_bits = 0.0;
  std::string extra;
  double wall_ms = 0.0;
};

std::vector<ReportRow> exp_white_noise_pure(const ExperimentConfig& cfg);
std::vector<ReportRow> exp_white_noise_mixed(const ExperimentConfig& cfg);
std::vector<ReportRow> exp_collapse_uptake(const ExperimentConfig& cfg);
std::vector<ReportRow> exp_biased_prior(const ExperimentConfig& cfg);
std::vector<ReportRow> exp_channel_conservation(const ExperimentConfig& cfg);

// The acceptance quantile exp_biased_prior actually uses: bias_quantile when
// nonnegative, otherwise 1 - 2^-c_bias. Throws unless the result lies in
// [0, 1); 0 means accept-all, reproducing the unbiased prior.
double effective_bias_quantile(const ExperimentConfig& cfg);
std::vector<ReportRow> exp_pointer_average(const ExperimentConfig& cfg);

// Dispatches on cfg.experiment (trajectory excluded: its output shape
// differs — use exp_sieve_trajectory).
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);

struct TrajectoryPoint {
  double t = 0.0;  // may be +inf (the full-decoherence limit)
  double purity = 0.0;
  double entropy_bits = 0.0;
};

struct TrajectoryReport {
  int qubits = 0;
  std::string model_id;
  std::vector<TrajectoryPoint> points;
  double algorithmic_bits = 0.0;
};

TrajectoryReport exp_sieve_trajectory(const ExperimentConfig& cfg);

// Canonical one-line key=value echo of the value-relevant configuration.
std::string config_echo(const ExperimentConfig& cfg);

// Report renderers. CSV rows end with a wall_ms column; strip it to compare
// reruns. JSON mirrors the same content structurally.
std::string report_csv(const std::vector<ReportRow>& rows, const ExperimentConfig& cfg);
std::string report_json(const std::vector<ReportRow>& rows, const ExperimentConfig& cfg);
std::string trajectory_csv(const TrajectoryReport& report, const ExperimentConfig& cfg);
std::string trajectory_json(const TrajectoryReport& report, const ExperimentConfig& cfg);

}  // namespace qsig
