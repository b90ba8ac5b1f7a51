#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>

#include "qsig/bits.hpp"
#include "qsig/signals.hpp"

namespace qsig {

// Pluggable surrogate K̂ for prefix complexity. Two queries — K̂(x|side) and
// K̂(y|x,side) — induce the mutual-information estimator Î and the
// self-information functional Îp below. Implementations must be
// deterministic (identical queries, identical values). They are immutable
// after construction apart from internal memo buffers, which is why
// concurrent use goes through clone(): every worker owns its instance.
class ComplexityModel {
public:
  virtual ~ComplexityModel() = default;

  virtual std::string id() const = 0;
  virtual double base_complexity(const Bits& x, const std::string& side) const = 0;
  virtual double conditional_complexity(const Bits& y, const Bits& x,
                                        const std::string& side) const = 0;
  virtual std::unique_ptr<ComplexityModel> clone() const = 0;

  // Allowance for self-conditional and subadditivity violations; 0 for the
  // exact models, a documented constant for codecs.
  virtual double slack_bits() const { return 0.0; }
};

// K̂(x | side), bits.
double k_hat(const ComplexityModel& model, const Bits& x, const std::string& side);

// Î(x:y) = max(0, K̂(x) + K̂(y) − K̂joint(x,y)), with the joint symmetrized:
// K̂joint = min over both argument orders of K̂(first) + K̂(second|first).
// Exactly symmetric by construction, clamped at 0.
double mutual_info_hat(const ComplexityModel& model, const Bits& x, const Bits& y,
                       const std::string& side);

// Îp(p:p) = log₂ Σ_{i,j} 2^{Î(enc(i):enc(j))} p(i) p(j), p normalized.
//
// Zero weights are skipped; the support is put into canonical label order
// first, so the result depends only on the multiset {(enc(i), p(i))} — label
// permutations composed with the matching encoding permutation are exact
// no-ops. Accumulation is log-sum-exp with the plain quadratic weight sum as
// the normalizer, which cancels the input's floating-point normalization
// error: point masses return exactly Î(k:k) and the zero model returns
// exactly 0 regardless of how far Σp strays from 1 within tolerance.
double self_info_hat(const ComplexityModel& model, const FiniteProbability& p,
                     const OutcomeEncoding& enc, const std::string& side);

// --- Registered models ----------------------------------------------------

// K̂(x|side) = bit length of x; conditional 0 on equality, else full length.
class LengthModel final : public ComplexityModel {
public:
  std::string id() const override { return "length"; }
  double base_complexity(const Bits& x, const std::string&) const override {
    return static_cast<double>(x.size());
  }
  double conditional_complexity(const Bits& y, const Bits& x,
                                const std::string&) const override {
    return y == x ? 0.0 : static_cast<double>(y.size());
  }
  std::unique_ptr<ComplexityModel> clone() const override {
    return std::make_unique<LengthModel>();
  }
};

// K̂ ≡ 0; the estimator-contract baseline (Îp ≡ 0 for every p).
class ZeroModel final : public ComplexityModel {
public:
  std::string id() const override { return "zero"; }
  double base_complexity(const Bits&, const std::string&) const override { return 0.0; }
  double conditional_complexity(const Bits&, const Bits&, const std::string&) const override {
    return 0.0;
  }
  std::unique_ptr<ComplexityModel> clone() const override {
    return std::make_unique<ZeroModel>();
  }
};

// K̂ from one fixed, version-pinned general-purpose compressor (zlib, level
// 9) on ascii renderings: K̂(x|side) = 8·max(0, Z(side‖x) − Z(side)) and
// conditionals via compressed-concatenation differences, with '|' as the
// field separator. Holds a per-instance memo of compressed sizes — not
// thread-safe, hence one clone per worker.
class CodecModel final : public ComplexityModel {
public:
  CodecModel();

  std::string id() const override;
  double base_complexity(const Bits& x, const std::string& side) const override;
  double conditional_complexity(const Bits& y, const Bits& x,
                                const std::string& side) const override;
  std::unique_ptr<ComplexityModel> clone() const override;

  // Worst observed self-conditional is ~24 bits and worst mutual-information
  // excess ~8 bits for this codec on renderings up to 8k characters; 48
  // leaves 2x headroom.
  double slack_bits() const override { return 48.0; }

private:
  int compressed_size(const std::string& payload) const;
  mutable std::unordered_map<std::string, int> memo_;
};

// --- Tiny machine ----------------------------------------------------------

// Exact resource-bounded K for a toy prefix-free instruction set "tm1":
// 2-bit opcodes 00 EMIT0, 01 EMIT1, 10 DUP (append a copy of the output so
// far; no-op on empty), 11 HALT. A valid program is a sequence of non-HALT
// opcodes terminated by exactly one HALT, so the program set is prefix-free
// by construction. Programs of length 2m bits enumerate all 3^(m-1) opcode
// sequences; ascending length, so the first program producing an output
// records its exact K.
struct TinyMachineTable {
  static constexpr const char* kInstructionSet = "tm1";

  int max_program_bits = 0;       // L
  std::uint64_t step_budget = 0;  // per-program op/output-size budget
  bool complete = true;           // false if any program hit the budget
  std::unordered_map<std::string, int> k_bits;  // ascii output -> exact K

  bool contains(const Bits& x) const { return k_bits.count(x.str()) != 0; }
};

// Enumerates every tm1 program of length <= max_program_bits (must be <= 20;
// the search is 3^(L/2-1) programs). Programs exceeding step_budget ops or
// output bits are abandoned and mark the table incomplete.
TinyMachineTable enumerate_tiny_machine(int max_program_bits, std::uint64_t step_budget);

// Binary cache, keyed by (instruction-set version, L, budget); see README
// for the exact layout. load throws on unreadable or mismatched files.
void save_tiny_table(const TinyMachineTable& table, const std::string& path);
TinyMachineTable load_tiny_table(const std::string& path);
// Loads when the cache file matches (L, budget); otherwise enumerates and —
// when path is nonempty — rewrites the cache.
TinyMachineTable load_or_build_tiny_table(const std::string& path, int max_program_bits,
                                          std::uint64_t step_budget);

// Table-backed model: exact K below the enumeration horizon, length-model
// fallback above it; conditional is 0 on equality, else base. The table is
// shared (read-only) between clones.
class TinyMachineModel final : public ComplexityModel {
public:
  explicit TinyMachineModel(std::shared_ptr<const TinyMachineTable> table);

  std::string id() const override;
  double base_complexity(const Bits& x, const std::string& side) const override;
  double conditional_complexity(const Bits& y, const Bits& x,
                                const std::string& side) const override;
  std::unique_ptr<ComplexityModel> clone() const override;

  const TinyMachineTable& table() const { return *table_; }

private:
  std::shared_ptr<const TinyMachineTable> table_;
};

// --- Factory ----------------------------------------------------------------

struct ModelOptions {
  int tiny_max_program_bits = 12;
  std::uint64_t tiny_step_budget = 4096;
  std::string tiny_cache_path;  // empty: enumerate in memory, no cache file
};

// name ∈ {"length", "zero", "codec", "tiny"}.
std::unique_ptr<ComplexityModel> make_model(const std::string& name,
                                            const ModelOptions& options = {});

}  // namespace qsig
