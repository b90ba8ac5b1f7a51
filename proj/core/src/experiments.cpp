#include "qsig/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qsig/decoherence.hpp"
#include "qsig/io.hpp"
#include "qsig/measurement.hpp"
#include "qsig/quantum.hpp"
#include "qsig/signals.hpp"
#include "qsig/version.hpp"

namespace qsig {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_common(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.n_values.empty()) throw std::invalid_argument("need at least one n");
  for (int n : cfg.n_values) {
    if (n < 1 || n > 20) throw std::invalid_argument("n out of range [1,20]");
  }
}

void check_c_values(const ExperimentConfig& cfg, int min_c) {
  if (cfg.c_values.empty()) throw std::invalid_argument("need at least one c");
  for (int n : cfg.n_values) {
    for (int c : cfg.c_values) {
      if (c < min_c || c > n) {
        throw std::invalid_argument("coarseness c must satisfy " +
                                    std::to_string(min_c) + " <= c <= n");
      }
    }
  }
}

// Runs `samples` independent trials, splitting them over worker threads.
// Trial t always draws from SeededRng(derive_seed(seed, a, b, t)) and every
// worker gets a private model clone, so results are a pure function of
// (seed, a, b, t) regardless of worker count or scheduling. Results land at
// their trial index; the first exception thrown by any trial is rethrown.
template <typename T>
std::vector<T> run_trials(
    int samples, int workers, std::uint64_t seed, std::uint64_t a, std::uint64_t b,
    const ComplexityModel& model,
    const std::function<T(int, SeededRng&, const ComplexityModel&)>& trial) {
  std::vector<T> results(static_cast<std::size_t>(samples));
  const int active = std::max(1, std::min(workers, samples));
  if (active == 1) {
    auto local = model.clone();
    for (int t = 0; t < samples; ++t) {
      SeededRng rng(derive_seed(seed, a, b, static_cast<std::uint64_t>(t)));
      results[static_cast<std::size_t>(t)] = trial(t, rng, *local);
    }
    return results;
  }

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(active));
  for (int w = 0; w < active; ++w) {
    pool.emplace_back([&] {
      auto local = model.clone();
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= samples) break;
        try {
          SeededRng rng(derive_seed(seed, a, b, static_cast<std::uint64_t>(t)));
          results[static_cast<std::size_t>(t)] = trial(t, rng, *local);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(samples);
          break;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Measurement distribution of one trial state under either the structured
// block PVM (povm_path empty) or a dense POVM fixture loaded from disk.
struct MeasureSetup {
  BlockPvm blocks{1, 0};
  PovmSet dense = PovmSet({CMatrix::Identity(1, 1)});
  bool use_dense = false;
  OutcomeEncoding encoding{0};
};

MeasureSetup make_measure_setup(const ExperimentConfig& cfg, int n, int c) {
  MeasureSetup setup;
  if (cfg.povm_path.empty()) {
    setup.blocks = block_pvm(n, c);
    setup.encoding = OutcomeEncoding(setup.blocks.outcome_width());
    return setup;
  }
  if (c != 0) {
    throw std::invalid_argument("a POVM fixture fixes the outcome set; use c=0");
  }
  setup.dense = read_povm_json(cfg.povm_path);
  setup.use_dense = true;
  if (setup.dense.dim() != static_cast<Eigen::Index>(std::uint64_t{1} << n)) {
    throw std::invalid_argument("POVM dimension does not match 2^n");
  }
  int width = 0;
  while ((1 << width) < setup.dense.outcome_count()) ++width;
  setup.encoding = OutcomeEncoding(width);
  return setup;
}

ReportRow base_row(const ExperimentConfig& cfg, const ComplexityModel& model, int n,
                   int c) {
  ReportRow row;
  row.experiment = cfg.experiment;
  row.n = n;
  row.c = c;
  row.samples = cfg.samples;
  row.seed = cfg.seed;
  row.model_id = model.id();
  return row;
}

std::vector<ReportRow> white_noise_impl(const ExperimentConfig& cfg, bool mixed) {
  check_common(cfg);
  check_c_values(cfg, 0);
  auto model = make_model(cfg.model, cfg.model_options);
  MixtureSpec mixture;
  if (mixed) mixture = MixtureSpec::parse(cfg.eta);

  std::vector<ReportRow> rows;
  for (int n : cfg.n_values) {
    for (int c : cfg.c_values) {
      const auto start = Clock::now();
      const auto setup = make_measure_setup(cfg, n, c);
      const std::string side = std::to_string(n);
      // The stream coordinate separates the pure and mixed ensembles so the
      // two experiments never share draws at equal (n, c, trial).
      const std::uint64_t stream = mixed ? (std::uint64_t{1} << 32) + static_cast<std::uint64_t>(c)
                                         : static_cast<std::uint64_t>(c);
      auto bits = run_trials<double>(
          cfg.samples, cfg.workers, cfg.seed, static_cast<std::uint64_t>(n), stream,
          *model,
          [&](int, SeededRng& rng, const ComplexityModel& m) {
            FiniteProbability q = [&] {
              if (mixed) {
                DensityMatrix sigma = mixed_state(n, mixture, rng);
                return setup.use_dense ? measure(sigma, setup.dense)
                                       : measure(sigma, setup.blocks);
              }
              PureState psi = haar_pure(n, rng);
              return setup.use_dense ? measure_pure(psi, setup.dense)
                                     : measure_pure(psi, setup.blocks);
            }();
            return self_info_hat(m, q, setup.encoding, side);
          });
      Log2MeanExp agg = log2_mean_exp2(bits);
      ReportRow row = base_row(cfg, *model, n, c);
      row.estimate_bits = agg.estimate_bits;
      row.stderr_bits = agg.stderr_bits;
      row.max_bits = agg.max_bits;
      row.extra = std::string("povm=") +
                  (cfg.povm_path.empty() ? "block" : cfg.povm_path) +
                  (mixed ? ";eta=" + mixture.str() : std::string());
      row.wall_ms = elapsed_ms(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<ReportRow> exp_white_noise_pure(const ExperimentConfig& cfg) {
  return white_noise_impl(cfg, false);
}

std::vector<ReportRow> exp_white_noise_mixed(const ExperimentConfig& cfg) {
  return white_noise_impl(cfg, true);
}

std::vector<ReportRow> exp_collapse_uptake(const ExperimentConfig& cfg) {
  check_common(cfg);
  check_c_values(cfg, 1);
  if (!cfg.povm_path.empty()) {
    throw std::invalid_argument("collapse uses the block PVM; povm_path unsupported");
  }
  auto model = make_model(cfg.model, cfg.model_options);

  std::vector<ReportRow> rows;
  for (int n : cfg.n_values) {
    for (int c : cfg.c_values) {
      const auto start = Clock::now();
      const BlockPvm blocks = block_pvm(n, c);
      const OutcomeEncoding encoding(blocks.outcome_width());
      const std::string side = std::to_string(n);
      auto bits = run_trials<double>(
          cfg.samples, cfg.workers, cfg.seed, static_cast<std::uint64_t>(n),
          static_cast<std::uint64_t>(c), *model,
          [&](int, SeededRng& rng, const ComplexityModel& m) {
            CollapsedSample sample = collapsed_sample(n, c, rng);
            FiniteProbability q = measure_pure(sample.state, blocks);
            return self_info_hat(m, q, encoding, side);
          });
      Log2MeanExp agg = log2_mean_exp2(bits);
      ReportRow row = base_row(cfg, *model, n, c);
      row.estimate_bits = agg.estimate_bits;
      row.stderr_bits = agg.stderr_bits;
      row.max_bits = agg.max_bits;
      row.extra = "outcome_width=" + std::to_string(blocks.outcome_width());
      row.wall_ms = elapsed_ms(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double effective_bias_quantile(const ExperimentConfig& cfg) {
  if (cfg.c_bias < 0.0) throw std::invalid_argument("c_bias must be >= 0");
  const double q =
      cfg.bias_quantile < 0.0 ? 1.0 - std::exp2(-cfg.c_bias) : cfg.bias_quantile;
  if (!(q >= 0.0 && q < 1.0)) {
    throw std::invalid_argument("bias quantile must lie in [0,1)");
  }
  return q;
}

std::vector<ReportRow> exp_biased_prior(const ExperimentConfig& cfg) {
  check_common(cfg);
  const double quantile = effective_bias_quantile(cfg);
  auto model = make_model(cfg.model, cfg.model_options);

  std::vector<ReportRow> rows;
  for (int n : cfg.n_values) {
    const auto start = Clock::now();
    const BlockPvm blocks = block_pvm(n, 0);
    const OutcomeEncoding encoding(n);
    const std::string side = std::to_string(n);
    const double dim = std::ldexp(1.0, n);
    // Under the Haar measure |psi(0)|^2 is Beta(1, d-1), so the top
    // (1-quantile) tail starts at 1-(1-quantile)^(1/(d-1)). The derived
    // quantile 1-2^-c_bias makes the flat weight 2^c_bias on that tail
    // saturate the envelope exactly; quantile 0 accepts everything.
    const double threshold = 1.0 - std::pow(1.0 - quantile, 1.0 / (dim - 1.0));
    const double bound = std::exp2(cfg.c_bias);
    auto weight = [threshold, bound](const PureState& psi) {
      return std::norm(psi.amplitudes()(0)) > threshold ? bound : 0.0;
    };

    struct BiasedTrial {
      double bits = 0.0;
      std::uint64_t attempts = 0;
    };
    auto biased = run_trials<BiasedTrial>(
        cfg.samples, cfg.workers, cfg.seed, static_cast<std::uint64_t>(n), 1, *model,
        [&](int, SeededRng& rng, const ComplexityModel& m) {
          BiasedTrial out;
          PureState psi = biased_prior_sample(n, cfg.c_bias, weight, rng, &out.attempts);
          FiniteProbability q = measure_pure(psi, blocks);
          out.bits = self_info_hat(m, q, encoding, side);
          return out;
        });
    auto baseline = run_trials<double>(
        cfg.samples, cfg.workers, cfg.seed, static_cast<std::uint64_t>(n), 0, *model,
        [&](int, SeededRng& rng, const ComplexityModel& m) {
          PureState psi = haar_pure(n, rng);
          FiniteProbability q = measure_pure(psi, blocks);
          return self_info_hat(m, q, encoding, side);
        });

    std::vector<double> biased_bits;
    biased_bits.reserve(biased.size());
    std::uint64_t attempts = 0;
    for (const auto& trial : biased) {
      biased_bits.push_back(trial.bits);
      attempts += trial.attempts;
    }
    Log2MeanExp agg = log2_mean_exp2(biased_bits);
    Log2MeanExp base = log2_mean_exp2(baseline);

    ReportRow row = base_row(cfg, *model, n, 0);
    row.estimate_bits = agg.estimate_bits;
    row.stderr_bits = agg.stderr_bits;
    row.max_bits = agg.max_bits;
    row.extra = "c_bias=" + fmt_g(cfg.c_bias) + ";quantile=" + fmt_g(quantile) +
                ";baseline_bits=" + format_double(base.estimate_bits) +
                ";baseline_stderr_bits=" + format_double(base.stderr_bits) +
                ";accept_rate=" +
                fmt_g(static_cast<double>(cfg.samples) / static_cast<double>(attempts));
    row.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

struct ChannelSetup {
  ChannelKernel kernel;
  int out_width = 0;
  std::string label;
};

ChannelSetup make_channel(const ExperimentConfig& cfg, int n, int c) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (cfg.channel == "identity") {
    std::vector<std::uint64_t> support(dim);
    for (std::uint64_t i = 0; i < dim; ++i) support[i] = i;
    return {ChannelKernel::identity(support), n, "identity"};
  }
  if (cfg.channel == "coarsen") {
    return {coarsen_kernel(dim, std::uint64_t{1} << c), n - c, "coarsen"};
  }
  if (cfg.channel.rfind("kernel:", 0) == 0) {
    ChannelKernel kernel = read_kernel_csv(cfg.channel.substr(7));
    const std::uint64_t max_out = kernel.max_output_index();
    int width = 0;
    while ((std::uint64_t{1} << width) <= max_out) ++width;
    return {std::move(kernel), width, cfg.channel};
  }
  if (cfg.channel.rfind("prepare-measure:", 0) == 0) {
    PovmSet povm = read_povm_json(cfg.channel.substr(16));
    if (povm.dim() != static_cast<Eigen::Index>(dim)) {
      throw std::invalid_argument("POVM dimension does not match 2^n");
    }
    std::vector<DensityMatrix> basis_states;
    basis_states.reserve(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
      basis_states.push_back(outer_product(PureState::basis(n, k)));
    }
    int width = 0;
    while ((1 << width) < povm.outcome_count()) ++width;
    return {prepare_and_measure(basis_states, povm), width, cfg.channel};
  }
  throw std::invalid_argument("unknown channel: " + cfg.channel);
}

// Structured classical input: a uniform floor plus one spike of mass
// u ∈ [0.05, 0.5] at a random index. Every weight stays far above the
// channel pruning floor, and the spike gives coarsening something to do.
FiniteProbability structured_input(int n, SeededRng& rng) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double u = 0.05 + 0.45 * rng.uniform01();
  std::uint64_t spike = static_cast<std::uint64_t>(rng.uniform01() * static_cast<double>(dim));
  if (spike >= dim) spike = dim - 1;
  std::vector<std::uint64_t> indices(dim);
  std::vector<double> weights(dim, (1.0 - u) / static_cast<double>(dim));
  for (std::uint64_t i = 0; i < dim; ++i) indices[i] = i;
  weights[spike] += u;
  return FiniteProbability(indices, weights, true);
}

}  // namespace

std::vector<ReportRow> exp_channel_conservation(const ExperimentConfig& cfg) {
  check_common(cfg);
  check_c_values(cfg, 0);
  auto model = make_model(cfg.model, cfg.model_options);

  std::vector<ReportRow> rows;
  for (int n : cfg.n_values) {
    for (int c : cfg.c_values) {
      const auto start = Clock::now();
      const ChannelSetup channel = make_channel(cfg, n, c);
      const OutcomeEncoding in_enc(n);
      const OutcomeEncoding out_enc(channel.out_width);
      const std::string in_side = std::to_string(n);
      const std::string out_side = std::to_string(channel.out_width);

      struct Pair {
        double before = 0.0;
        double after = 0.0;
      };
      auto pairs = run_trials<Pair>(
          cfg.samples, cfg.workers, cfg.seed, static_cast<std::uint64_t>(n),
          static_cast<std::uint64_t>(c), *model,
          [&](int, SeededRng& rng, const ComplexityModel& m) {
            Pair out;
            FiniteProbability p = structured_input(n, rng);
            out.before = self_info_hat(m, p, in_enc, in_side);
            FiniteProbability q = apply_channel(channel.kernel, p);
            out.after = self_info_hat(m, q, out_enc, out_side);
            return out;
          });

      std::vector<double> diffs;
      diffs.reserve(pairs.size());
      int n_neg = 0, n_zero = 0, n_pos = 0;
      for (const auto& pr : pairs) {
        const double d = pr.after - pr.before;
        diffs.push_back(d);
        if (d < 0.0) {
          ++n_neg;
        } else if (d == 0.0) {
          ++n_zero;
        } else {
          ++n_pos;
        }
      }

      ReportRow row = base_row(cfg, *model, n, c);
      row.estimate_bits = median(diffs);
      row.stderr_bits = standard_error(diffs);
      row.max_bits = max_value(diffs);
      row.extra = "channel=" + channel.label +
                  ";mean_diff_bits=" + format_double(mean(diffs)) +
                  ";sign_p=" + format_double(sign_test_p_negative(diffs)) +
                  ";negative=" + std::to_string(n_neg) +
                  ";zero=" + std::to_string(n_zero) +
                  ";positive=" + std::to_string(n_pos);
      row.wall_ms = elapsed_ms(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ReportRow> exp_pointer_average(const ExperimentConfig& cfg) {
  check_common(cfg);
  auto model = make_model(cfg.model, cfg.model_options);

  std::vector<ReportRow> rows;
  for (int n : cfg.n_values) {
    const auto start = Clock::now();
    const std::uint64_t dim = std::uint64_t{1} << n;
    double min_bits = 0.0, max_bits = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) {
      const double v = sieve_algorithmic(PureState::basis(n, k), *model);
      if (k == 0) {
        min_bits = max_bits = v;
      } else {
        min_bits = std::min(min_bits, v);
        max_bits = std::max(max_bits, v);
      }
    }
    ReportRow row = base_row(cfg, *model, n, 0);
    row.samples = static_cast<int>(dim);
    row.estimate_bits = pointer_average(n, *model);
    row.stderr_bits = 0.0;  // exhaustive enumeration, not a sample
    row.max_bits = max_bits;
    row.extra = "exhaustive=1;min_bits=" + format_double(min_bits);
    row.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "white-noise") return exp_white_noise_pure(cfg);
  if (cfg.experiment == "white-noise-mixed") return exp_white_noise_mixed(cfg);
  if (cfg.experiment == "collapse") return exp_collapse_uptake(cfg);
  if (cfg.experiment == "biased-prior") return exp_biased_prior(cfg);
  if (cfg.experiment == "conservation") return exp_channel_conservation(cfg);
  if (cfg.experiment == "pointer-average") return exp_pointer_average(cfg);
  if (cfg.experiment == "trajectory") {
    throw std::invalid_argument("trajectory produces a trajectory report; call exp_sieve_trajectory");
  }
  throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

namespace {

PureState make_trajectory_state(const ExperimentConfig& cfg) {
  const std::string& spec = cfg.state;
  auto parse_int = [](const std::string& s, const char* what) {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(std::string("bad ") + what);
    return v;
  };
  if (spec == "plus") return PureState::uniform_superposition(1);
  if (spec.rfind("plus:", 0) == 0) {
    return PureState::uniform_superposition(parse_int(spec.substr(5), "qubit count"));
  }
  if (spec.rfind("pointer:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const std::size_t sep = rest.find(':');
    if (sep == std::string::npos) {
      throw std::invalid_argument("pointer state spec is pointer:<k>:<n>");
    }
    const int k = parse_int(rest.substr(0, sep), "pointer index");
    const int n = parse_int(rest.substr(sep + 1), "qubit count");
    return PureState::basis(n, static_cast<std::uint64_t>(k));
  }
  if (spec.rfind("haar:", 0) == 0) {
    const int n = parse_int(spec.substr(5), "qubit count");
    SeededRng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n), 0, 0));
    return haar_pure(n, rng);
  }
  if (spec.rfind("file:", 0) == 0) return read_state_json(spec.substr(5));
  throw std::invalid_argument("unknown state spec: " + spec);
}

}  // namespace

TrajectoryReport exp_sieve_trajectory(const ExperimentConfig& cfg) {
  if (cfg.times.empty()) throw std::invalid_argument("need at least one time");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  auto model = make_model(cfg.model, cfg.model_options);
  const PureState psi = make_trajectory_state(cfg);
  const DecoherenceParams params{cfg.tau};

  TrajectoryReport report;
  report.qubits = psi.qubits();
  report.model_id = model->id();
  for (double t : cfg.times) {
    TrajectoryPoint point;
    point.t = t;
    if (std::isinf(t)) {
      // Full-decoherence limit: the sieve keeps only the diagonal.
      const FiniteProbability diag = limit_decohere(psi);
      double purity = 0.0;
      for (double w : diag.weights()) {
        purity += w * w;
      }
      point.purity = purity;
      point.entropy_bits = diag.entropy_bits();
    } else {
      if (t < 0.0) throw std::invalid_argument("times must be >= 0");
      point.purity = sieve_purity(psi, t, params);
      point.entropy_bits = sieve_entropy(psi, t, params);
    }
    report.points.push_back(point);
  }
  report.algorithmic_bits = sieve_algorithmic(psi, *model);
  return report;
}

std::string config_echo(const ExperimentConfig& cfg) {
  auto join_ints = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  auto join_times = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::isinf(v[i]) ? std::string("inf") : fmt_g(v[i]);
    }
    return s;
  };
  // Echo the quantile the run would actually use, but never throw here: the
  // experiment entry points own validation.
  const double echo_quantile =
      cfg.bias_quantile < 0.0 ? 1.0 - std::exp2(-cfg.c_bias) : cfg.bias_quantile;
  std::string echo = "experiment=" + cfg.experiment + " n=" + join_ints(cfg.n_values) +
                     " c=" + join_ints(cfg.c_values) +
                     " samples=" + std::to_string(cfg.samples) + " model=" + cfg.model +
                     " seed=" + std::to_string(cfg.seed) + " eta=" + cfg.eta +
                     " c_bias=" + fmt_g(cfg.c_bias) +
                     " quantile=" + fmt_g(echo_quantile) + " tau=" + fmt_g(cfg.tau) +
                     " state=" + cfg.state + " times=" + join_times(cfg.times) +
                     " channel=" + cfg.channel +
                     " povm=" + (cfg.povm_path.empty() ? "block" : cfg.povm_path);
  if (cfg.model == "tiny") {
    echo += " tiny_L=" + std::to_string(cfg.model_options.tiny_max_program_bits) +
            " tiny_budget=" + std::to_string(cfg.model_options.tiny_step_budget);
  }
  return echo;
}

namespace {

std::string report_header(const ExperimentConfig& cfg) {
  std::string out;
  out += "# ";
  out += kReportSchema;
  out += "\n# code_version=";
  out += kCodeVersion;
  out += " rng=";
  out += kRngId;
  out += "\n# config: ";
  out += config_echo(cfg);
  out += "\n";
  return out;
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows, const ExperimentConfig& cfg) {
  std::string out = report_header(cfg);
  out += "experiment,n,c,samples,seed,model,estimate_bits,stderr_bits,max_bits,extra,wall_ms\n";
  for (const auto& row : rows) {
    out += row.experiment;
    out += ',' + std::to_string(row.n);
    out += ',' + std::to_string(row.c);
    out += ',' + std::to_string(row.samples);
    out += ',' + std::to_string(row.seed);
    out += ',' + row.model_id;
    out += ',' + format_double(row.estimate_bits);
    out += ',' + format_double(row.stderr_bits);
    out += ',' + format_double(row.max_bits);
    out += ',' + row.extra;
    out += ',' + fmt_g(row.wall_ms);
    out += '\n';
  }
  return out;
}

std::string report_json(const std::vector<ReportRow>& rows, const ExperimentConfig& cfg) {
  nlohmann::json doc;
  doc["schema"] = kReportSchema;
  doc["code_version"] = kCodeVersion;
  doc["rng"] = kRngId;
  doc["config"] = config_echo(cfg);
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["experiment"] = row.experiment;
    j["n"] = row.n;
    j["c"] = row.c;
    j["samples"] = row.samples;
    j["seed"] = row.seed;
    j["model"] = row.model_id;
    j["estimate_bits"] = row.estimate_bits;
    j["stderr_bits"] = row.stderr_bits;
    j["max_bits"] = row.max_bits;
    j["extra"] = row.extra;
    j["wall_ms"] = row.wall_ms;
    doc["rows"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string trajectory_csv(const TrajectoryReport& report, const ExperimentConfig& cfg) {
  std::string out;
  out += "# ";
  out += kTrajectorySchema;
  out += "\n# code_version=";
  out += kCodeVersion;
  out += " rng=";
  out += kRngId;
  out += "\n# config: ";
  out += config_echo(cfg);
  out += "\nt,sieve_purity,sieve_entropy_bits\n";
  for (const auto& point : report.points) {
    out += std::isinf(point.t) ? std::string("inf") : format_double(point.t);
    out += ',' + format_double(point.purity);
    out += ',' + format_double(point.entropy_bits);
    out += '\n';
  }
  out += "# sieve_algorithmic model=" + report.model_id +
         " value_bits=" + format_double(report.algorithmic_bits) + "\n";
  return out;
}

std::string trajectory_json(const TrajectoryReport& report, const ExperimentConfig& cfg) {
  nlohmann::json doc;
  doc["schema"] = kTrajectorySchema;
  doc["code_version"] = kCodeVersion;
  doc["rng"] = kRngId;
  doc["config"] = config_echo(cfg);
  doc["qubits"] = report.qubits;
  doc["points"] = nlohmann::json::array();
  for (const auto& point : report.points) {
    nlohmann::json j;
    // t is a string so the full-decoherence limit ("inf") stays valid JSON.
    j["t"] = std::isinf(point.t) ? std::string("inf") : format_double(point.t);
    j["purity"] = point.purity;
    j["entropy_bits"] = point.entropy_bits;
    doc["points"].push_back(std::move(j));
  }
  doc["algorithmic"] = {{"model", report.model_id},
                        {"value_bits", report.algorithmic_bits}};
  return doc.dump(2) + "\n";
}

}  // namespace qsig
