#include "qsig/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace qsig {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void dump_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::runtime_error("complex entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

// Splits a CSV data line on commas; no quoting — the formats here never
// need it.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PureState read_state_json(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
    throw std::runtime_error("state file " + path + " lacks an amplitudes array");
  }
  const auto& amps = j["amplitudes"];
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = parse_complex(amps[i]);
  }
  PureState s(std::move(v));
  if (j.contains("qubits") && j["qubits"].get<int>() != s.qubits()) {
    throw std::runtime_error("state file " + path + " qubit count does not match amplitudes");
  }
  return s;
}

void write_state_json(const PureState& s, const std::string& path) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    amps.push_back(complex_to_json(s.amplitudes()(i)));
  }
  dump_json(json{{"qubits", s.qubits()}, {"amplitudes", std::move(amps)}}, path);
}

PovmSet read_povm_json(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty()) {
    throw std::runtime_error("povm file " + path + " lacks an elements array");
  }
  std::vector<CMatrix> elements;
  for (const auto& ej : j["elements"]) {
    const Eigen::Index d = static_cast<Eigen::Index>(ej.size());
    CMatrix e(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = ej[static_cast<std::size_t>(r)];
      if (static_cast<Eigen::Index>(row.size()) != d) {
        throw std::runtime_error("povm file " + path + " element is not square");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        e(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
      }
    }
    elements.push_back(std::move(e));
  }
  if (j.contains("dimension") &&
      j["dimension"].get<Eigen::Index>() != elements.front().rows()) {
    throw std::runtime_error("povm file " + path + " dimension does not match elements");
  }
  return validate_povm(elements);
}

void write_povm_json(const PovmSet& e, const std::string& path) {
  json elements = json::array();
  for (int k = 0; k < e.outcome_count(); ++k) {
    json m = json::array();
    for (Eigen::Index r = 0; r < e.dim(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < e.dim(); ++c) {
        row.push_back(complex_to_json(e.element(k)(r, c)));
      }
      m.push_back(std::move(row));
    }
    elements.push_back(std::move(m));
  }
  dump_json(json{{"dimension", e.dim()}, {"elements", std::move(elements)}}, path);
}

FiniteProbability read_probability_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint64_t> idx;
  std::vector<double> w;
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    if (!header_skipped && line.rfind("index,", 0) == 0) {
      header_skipped = true;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw std::runtime_error("malformed probability row in " + path + ": " + line);
    }
    idx.push_back(std::stoull(fields[0]));
    w.push_back(std::stod(fields[1]));
  }
  return FiniteProbability(std::move(idx), std::move(w));
}

void write_probability_csv(const FiniteProbability& p, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "index,weight\n";
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    out << p.indices()[i] << ',' << format_double(p.weights()[i]) << '\n';
  }
}

ChannelKernel read_kernel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::map<std::uint64_t, std::pair<std::vector<std::uint64_t>, std::vector<double>>> raw;
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    if (!header_skipped && line.rfind("in_index,", 0) == 0) {
      header_skipped = true;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw std::runtime_error("malformed kernel row in " + path + ": " + line);
    }
    auto& row = raw[std::stoull(fields[0])];
    row.first.push_back(std::stoull(fields[1]));
    row.second.push_back(std::stod(fields[2]));
  }
  std::map<std::uint64_t, FiniteProbability> rows;
  for (auto& [z, data] : raw) {
    rows.emplace(z, FiniteProbability(std::move(data.first), std::move(data.second)));
  }
  return ChannelKernel(std::move(rows));
}

void write_kernel_csv(const ChannelKernel& f, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "in_index,out_index,weight\n";
  for (const auto& [z, row] : f.rows()) {
    for (std::size_t i = 0; i < row.support_size(); ++i) {
      out << z << ',' << row.indices()[i] << ',' << format_double(row.weights()[i]) << '\n';
    }
  }
}

}  // namespace qsig
