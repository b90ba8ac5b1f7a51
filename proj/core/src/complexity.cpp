#include "qsig/complexity.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsig {

double k_hat(const ComplexityModel& model, const Bits& x, const std::string& side) {
  return model.base_complexity(x, side);
}

double mutual_info_hat(const ComplexityModel& model, const Bits& x, const Bits& y,
                       const std::string& side) {
  const double kx = model.base_complexity(x, side);
  const double ky = model.base_complexity(y, side);
  const double joint = std::min(kx + model.conditional_complexity(y, x, side),
                                ky + model.conditional_complexity(x, y, side));
  return std::max(0.0, kx + ky - joint);
}

double self_info_hat(const ComplexityModel& model, const FiniteProbability& p,
                     const OutcomeEncoding& enc, const std::string& side) {
  // Nonzero support in canonical label order. Encodings are injective and
  // indices distinct, so labels are distinct and the order is unambiguous.
  std::vector<std::pair<Bits, double>> support;
  support.reserve(p.support_size());
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    if (p.weights()[i] > 0.0) {
      support.emplace_back(enc.encode(p.indices()[i]), p.weights()[i]);
    }
  }
  if (support.empty()) {
    throw std::invalid_argument("self information of an all-zero probability");
  }
  std::sort(support.begin(), support.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const std::size_t m = support.size();
  // Pass 1: the largest exponent over distinct pairs (Î is exactly symmetric,
  // so i <= j covers everything; off-diagonal weights are doubled in pass 2).
  double emax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double e = mutual_info_hat(model, support[i].first, support[j].first, side);
      if (e > emax) emax = e;
    }
  }
  // Pass 2: T = Σ 2^(Î−emax)·w_i·w_j alongside the plain quadratic sum
  // T0 = Σ w_i·w_j, accumulated over the same terms in the same order. The
  // result is emax + log₂(T/T0), i.e. Îp of the normalized weights: the
  // division cancels the input's own normalization error exactly. When every
  // exponent equals emax (point mass; zero model) T and T0 are bit-identical
  // and the correction term is exactly log₂(1) = 0.
  double t = 0.0;
  double t0 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double e = mutual_info_hat(model, support[i].first, support[j].first, side);
      const double w =
          (i == j) ? support[i].second * support[j].second
                   : 2.0 * (support[i].second * support[j].second);
      t += w * std::exp2(e - emax);
      t0 += w;
    }
  }
  double result = emax + std::log2(t / t0);
  if (result < 0.0) {
    // Î ≥ 0 forces T ≥ T0·2^(−emax); anything below zero is division/log
    // rounding on the order of an ulp.
    if (result < -1e-6) {
      throw std::logic_error("self information accumulated to a negative value");
    }
    result = 0.0;
  }
  return result;
}

// --- codec ------------------------------------------------------------------

CodecModel::CodecModel() = default;

std::string CodecModel::id() const {
  return std::string("codec/zlib-") + ZLIB_VERSION + "/level9";
}

int CodecModel::compressed_size(const std::string& payload) const {
  auto it = memo_.find(payload);
  if (it != memo_.end()) return it->second;
  uLong bound = compressBound(static_cast<uLong>(payload.size()));
  std::vector<Bytef> out(bound);
  uLongf out_len = bound;
  const int rc = compress2(out.data(), &out_len,
                           reinterpret_cast<const Bytef*>(payload.data()),
                           static_cast<uLong>(payload.size()), 9);
  if (rc != Z_OK) {
    throw std::runtime_error("zlib compress2 failed with code " + std::to_string(rc));
  }
  const int size = static_cast<int>(out_len);
  memo_.emplace(payload, size);
  return size;
}

double CodecModel::base_complexity(const Bits& x, const std::string& side) const {
  const std::string prefix = side + "|";
  const int delta = compressed_size(prefix + x.str()) - compressed_size(prefix);
  return 8.0 * std::max(0, delta);
}

double CodecModel::conditional_complexity(const Bits& y, const Bits& x,
                                          const std::string& side) const {
  const std::string prefix = side + "|" + x.str() + "|";
  const int delta = compressed_size(prefix + y.str()) - compressed_size(prefix);
  return 8.0 * std::max(0, delta);
}

std::unique_ptr<ComplexityModel> CodecModel::clone() const {
  return std::make_unique<CodecModel>();  // fresh memo
}

// --- tiny machine -----------------------------------------------------------

TinyMachineTable enumerate_tiny_machine(int max_program_bits, std::uint64_t step_budget) {
  if (max_program_bits < 0 || max_program_bits > 20) {
    throw std::invalid_argument("tiny machine enumeration depth must lie in [0, 20]");
  }
  if (step_budget == 0) {
    throw std::invalid_argument("tiny machine step budget must be positive");
  }
  TinyMachineTable table;
  table.max_program_bits = max_program_bits;
  table.step_budget = step_budget;

  // Programs have m opcodes (2m bits); the last opcode is HALT, the first
  // m-1 range over {EMIT0, EMIT1, DUP}. Enumerate ascending m so the first
  // program reaching an output records the minimal length.
  const int max_ops = max_program_bits / 2;
  std::string out;
  for (int m = 1; m <= max_ops; ++m) {
    const int body = m - 1;
    std::vector<int> ops(static_cast<std::size_t>(body), 0);
    for (;;) {
      out.clear();
      bool ok = true;
      std::uint64_t steps = 0;
      for (int i = 0; i < body; ++i) {
        if (++steps > step_budget) {
          ok = false;
          break;
        }
        switch (ops[static_cast<std::size_t>(i)]) {
          case 0: out.push_back('0'); break;
          case 1: out.push_back('1'); break;
          default: {
            // DUP; no-op while empty. Copy first: self-append would alias.
            const std::string copy = out;
            out += copy;
            break;
          }
        }
        if (out.size() > step_budget) {
          ok = false;
          break;
        }
      }
      if (ok) {
        table.k_bits.emplace(out, 2 * m);  // keeps the first (shortest) hit
      } else {
        table.complete = false;
      }
      // Next opcode body, odometer-style.
      int pos = body - 1;
      while (pos >= 0 && ops[static_cast<std::size_t>(pos)] == 2) {
        ops[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++ops[static_cast<std::size_t>(pos)];
    }
  }
  return table;
}

namespace {

constexpr char kTinyMagic[8] = {'Q', 'S', 'I', 'G', 'T', 'M', '1', '\n'};
constexpr std::uint32_t kTinyFormatVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void save_tiny_table(const TinyMachineTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open tiny machine cache for writing: " + path);
  }
  out.write(kTinyMagic, sizeof(kTinyMagic));
  write_pod(out, kTinyFormatVersion);
  write_pod(out, static_cast<std::uint32_t>(table.max_program_bits));
  write_pod(out, table.step_budget);
  write_pod(out, static_cast<std::uint8_t>(table.complete ? 1 : 0));
  write_pod(out, static_cast<std::uint64_t>(table.k_bits.size()));
  // Sorted dump so the file content is deterministic.
  std::vector<std::pair<std::string, int>> entries(table.k_bits.begin(), table.k_bits.end());
  std::sort(entries.begin(), entries.end());
  for (const auto& [key, k] : entries) {
    write_pod(out, static_cast<std::uint32_t>(key.size()));
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    write_pod(out, static_cast<std::uint32_t>(k));
  }
  if (!out) {
    throw std::runtime_error("failed while writing tiny machine cache: " + path);
  }
}

TinyMachineTable load_tiny_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open tiny machine cache: " + path);
  }
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + 8, kTinyMagic)) {
    throw std::runtime_error("not a tiny machine cache file: " + path);
  }
  std::uint32_t version = 0;
  read_pod(in, version);
  if (version != kTinyFormatVersion) {
    throw std::runtime_error("unsupported tiny machine cache version in " + path);
  }
  TinyMachineTable table;
  std::uint32_t bits = 0;
  read_pod(in, bits);
  table.max_program_bits = static_cast<int>(bits);
  read_pod(in, table.step_budget);
  std::uint8_t complete = 0;
  read_pod(in, complete);
  table.complete = complete != 0;
  std::uint64_t count = 0;
  read_pod(in, count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t len = 0;
    read_pod(in, len);
    std::string key(len, '\0');
    in.read(key.data(), static_cast<std::streamsize>(len));
    std::uint32_t k = 0;
    read_pod(in, k);
    if (!in) {
      throw std::runtime_error("truncated tiny machine cache: " + path);
    }
    table.k_bits.emplace(std::move(key), static_cast<int>(k));
  }
  return table;
}

TinyMachineTable load_or_build_tiny_table(const std::string& path, int max_program_bits,
                                          std::uint64_t step_budget) {
  if (!path.empty()) {
    std::ifstream probe(path, std::ios::binary);
    if (probe.good()) {
      probe.close();
      TinyMachineTable cached = load_tiny_table(path);
      if (cached.max_program_bits == max_program_bits && cached.step_budget == step_budget) {
        return cached;
      }
      // Key mismatch: fall through and rebuild the file below.
    }
  }
  TinyMachineTable table = enumerate_tiny_machine(max_program_bits, step_budget);
  if (!path.empty()) {
    save_tiny_table(table, path);
  }
  return table;
}

TinyMachineModel::TinyMachineModel(std::shared_ptr<const TinyMachineTable> table)
    : table_(std::move(table)) {
  if (!table_) {
    throw std::invalid_argument("tiny machine model requires a table");
  }
}

std::string TinyMachineModel::id() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "tiny/%s/L%d/b%llu", TinyMachineTable::kInstructionSet,
                table_->max_program_bits,
                static_cast<unsigned long long>(table_->step_budget));
  return buf;
}

double TinyMachineModel::base_complexity(const Bits& x, const std::string&) const {
  auto it = table_->k_bits.find(x.str());
  if (it != table_->k_bits.end()) return static_cast<double>(it->second);
  // Above the enumeration horizon: length-model fallback.
  return static_cast<double>(x.size());
}

double TinyMachineModel::conditional_complexity(const Bits& y, const Bits& x,
                                                const std::string& side) const {
  return y == x ? 0.0 : base_complexity(y, side);
}

std::unique_ptr<ComplexityModel> TinyMachineModel::clone() const {
  return std::make_unique<TinyMachineModel>(table_);  // table shared read-only
}

std::unique_ptr<ComplexityModel> make_model(const std::string& name,
                                            const ModelOptions& options) {
  if (name == "length") return std::make_unique<LengthModel>();
  if (name == "zero") return std::make_unique<ZeroModel>();
  if (name == "codec") return std::make_unique<CodecModel>();
  if (name == "tiny") {
    auto table = std::make_shared<TinyMachineTable>(load_or_build_tiny_table(
        options.tiny_cache_path, options.tiny_max_program_bits, options.tiny_step_budget));
    return std::make_unique<TinyMachineModel>(std::move(table));
  }
  throw std::invalid_argument("unknown complexity model '" + name +
                              "' (expected length|zero|codec|tiny)");
}

}  // namespace qsig
