#pragma once
//
// File formats: the JSON machine file, complexity-report JSON, trajectory
// dumps, exact-distribution CSV, and atomic writes. Loaders validate at a
// looser tolerance (1e-9) than the in-memory invariants and renormalize
// emission rows, so that files with shortened decimal probabilities load.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qasym/errors.hpp"
#include "qasym/machines.hpp"

namespace qasym {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Machine files
// ---------------------------------------------------------------------------

inline nlohmann::json machine_to_json(const UnifilarMachine& m) {
  nlohmann::json j;
  j["alphabet"] = m.alphabet();
  j["states"] = m.states();
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 0; i < m.num_states(); ++i)
    for (const Transition& e : m.edges_from(static_cast<int>(i)))
      edges.push_back({{"from", m.states()[i]},
                       {"symbol", m.alphabet()[e.symbol]},
                       {"prob", e.prob},
                       {"to", m.states()[e.next]}});
  j["transitions"] = edges;
  return j;
}

inline UnifilarMachine machine_from_json(const nlohmann::json& j) {
  if (!j.contains("alphabet") || !j.contains("states") ||
      !j.contains("transitions"))
    throw ValidationError(
        "machine file: alphabet, states and transitions are required");
  std::vector<std::string> alphabet =
      j.at("alphabet").get<std::vector<std::string>>();
  std::vector<std::string> states =
      j.at("states").get<std::vector<std::string>>();
  std::map<std::string, int> sym_idx, state_idx;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (!sym_idx.emplace(alphabet[i], static_cast<int>(i)).second)
      throw ValidationError("machine file: duplicate symbol " + alphabet[i]);
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!state_idx.emplace(states[i], static_cast<int>(i)).second)
      throw ValidationError("machine file: duplicate state " + states[i]);

  std::vector<std::vector<Transition>> edges(states.size());
  for (const auto& e : j.at("transitions")) {
    const auto from = state_idx.find(e.at("from").get<std::string>());
    const auto sym = sym_idx.find(e.at("symbol").get<std::string>());
    const auto to = state_idx.find(e.at("to").get<std::string>());
    if (from == state_idx.end() || to == state_idx.end())
      throw ValidationError("machine file: transition references unknown state");
    if (sym == sym_idx.end())
      throw ValidationError("machine file: transition references unknown symbol");
    const double prob = e.at("prob").get<double>();
    if (!(prob > 0.0 && prob <= 1.0 + 1e-9))
      throw ValidationError("machine file: probability " + format_double(prob) +
                            " outside (0,1]");
    edges[from->second].push_back({sym->second, prob, to->second});
  }

  // Accept rows within 1e-9 of stochastic; renormalize exactly.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    double row = 0.0;
    for (const Transition& e : edges[i]) row += e.prob;
    if (std::abs(row - 1.0) > 1e-9)
      throw ValidationError("machine file: emissions of state " + states[i] +
                            " sum to " + format_double(row));
    for (Transition& e : edges[i]) e.prob /= row;
  }
  return UnifilarMachine(std::move(alphabet), std::move(states),
                         std::move(edges));
}

// ---------------------------------------------------------------------------
// Atomic writes and loading
// ---------------------------------------------------------------------------

/// Writes via a temp file and rename so failures leave no partial output.
inline void atomic_write_text(const std::string& path,
                              const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush())
      throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void save_machine(const UnifilarMachine& m, const std::string& path) {
  atomic_write_text(path, machine_to_json(m).dump(2) + "\n");
}

inline UnifilarMachine load_machine(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("machine file " + path + ": " + e.what());
  }
  return machine_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline nlohmann::json report_to_json(const ComplexityReport& r) {
  return nlohmann::json{{"c_mu_forward", r.c_mu_forward},
                        {"c_mu_reverse", r.c_mu_reverse},
                        {"d_mu_forward", r.d_mu_forward},
                        {"d_mu_reverse", r.d_mu_reverse},
                        {"excess_entropy", r.excess_entropy},
                        {"excess_converged", r.excess_converged},
                        {"excess_horizon", r.excess_horizon},
                        {"cq_bar_forward", r.cq_bar_forward},
                        {"cq_bar_reverse", r.cq_bar_reverse},
                        {"dq_bar_forward", r.dq_bar_forward},
                        {"dq_bar_reverse", r.dq_bar_reverse},
                        {"delta_c_mu", r.delta_c_mu},
                        {"delta_cq_bar", r.delta_cq_bar},
                        {"gram_forward_converged", r.gram_forward_converged},
                        {"gram_reverse_converged", r.gram_reverse_converged},
                        {"result2_ok", r.result2_ok},
                        {"result3_ok", r.result3_ok}};
}

// ---------------------------------------------------------------------------
// Hashing and dumps
// ---------------------------------------------------------------------------

/// FNV-1a over the canonical machine serialization; stable across runs.
inline std::string machine_hash(const UnifilarMachine& m) {
  std::string canon;
  for (const auto& s : m.alphabet()) canon += s + '\x1f';
  canon += '\x1e';
  for (const auto& s : m.states()) canon += s + '\x1f';
  canon += '\x1e';
  for (std::size_t i = 0; i < m.num_states(); ++i)
    for (const Transition& e : m.edges_from(static_cast<int>(i)))
      canon += std::to_string(i) + ',' + std::to_string(e.symbol) + ',' +
               format_double(e.prob) + ',' + std::to_string(e.next) + ';';
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

/// One symbol per line, preceded by a header naming machine, seed, length.
inline std::string trajectory_text(const UnifilarMachine& m,
                                   std::uint64_t seed,
                                   const std::vector<int>& symbols) {
  std::string out;
  out += "# machine: " + machine_hash(m) + "\n";
  out += "# seed: " + std::to_string(seed) + "\n";
  out += "# length: " + std::to_string(symbols.size()) + "\n";
  for (int s : symbols) out += m.alphabet()[s] + "\n";
  return out;
}

/// word,probability rows. Symbols are concatenated when the alphabet is all
/// single characters, otherwise joined with '|'.
inline std::string distribution_csv(
    const UnifilarMachine& m, const std::map<std::vector<int>, double>& dist) {
  bool single = true;
  for (const auto& s : m.alphabet())
    if (s.size() != 1) single = false;
  std::string out = "word,probability\n";
  for (const auto& [w, p] : dist) {
    std::string word;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (!single && k) word += '|';
      word += m.alphabet()[w[k]];
    }
    out += word + "," + format_double(p) + "\n";
  }
  return out;
}

}  // namespace qasym
