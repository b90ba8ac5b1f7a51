#pragma once

#include <string>

#include "qsig/measurement.hpp"
#include "qsig/quantum.hpp"
#include "qsig/signals.hpp"

namespace qsig {

// JSON fixtures. Complex entries are [re, im] pairs throughout.
//   state: {"qubits": n, "amplitudes": [[re,im], ...]}
//   povm:  {"dimension": d, "elements": [[[ [re,im], ... ], ...], ...]}
// (elements are row-major d×d matrices). read_povm_json runs full
// validation, including the PSD eigenvalue checks.
PureState read_state_json(const std::string& path);
void write_state_json(const PureState& s, const std::string& path);
PovmSet read_povm_json(const std::string& path);
void write_povm_json(const PovmSet& e, const std::string& path);

// CSV fixtures: probabilities as "index,weight" rows, kernels as
// "in_index,out_index,weight" rows. Lines starting with '#' and a single
// header line are ignored on read.
FiniteProbability read_probability_csv(const std::string& path);
void write_probability_csv(const FiniteProbability& p, const std::string& path);
ChannelKernel read_kernel_csv(const std::string& path);
void write_kernel_csv(const ChannelKernel& f, const std::string& path);

// Shared helper: full-precision (%.17g) rendering used by every report
// writer so round-trips are exact.
std::string format_double(double v);

}  // namespace qsig
