#pragma once
//
// Time reversal of stationary unifilar generators. The reversed process is
// obtained in three steps: reverse every edge with stationary weighting
// (giving a generally non-unifilar presentation), determinize it by
// expanding the reachable belief states over forward machine states, and
// minimize the result. The composition yields the reverse epsilon-machine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qasym/detail/scc.hpp"
#include "qasym/errors.hpp"
#include "qasym/machines.hpp"

namespace qasym {

inline constexpr double kDefaultBeliefMergeTol = 1e-9;
inline constexpr std::size_t kDefaultBeliefBudget = 10000;

/// A distribution over forward-machine states, canonicalized by rounding to
/// 12 decimals so that equal beliefs hash to the same key.
struct BeliefState {
  std::vector<double> distribution;

  std::string canonical_key() const {
    std::string key;
    char buf[32];
    for (double v : distribution) {
      std::snprintf(buf, sizeof buf, "%.12f", v);
      key += buf;
      key += ';';
    }
    return key;
  }

  double linf_distance(const BeliefState& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < distribution.size(); ++i)
      d = std::max(d, std::abs(distribution[i] - other.distribution[i]));
    return d;
  }
};

/// Edge-reversed presentation with stationary weighting:
/// Mtilde^x[j][i] = pi_i * M^x[i][j] / pi_j. The output generates exactly
/// the word distribution P-(w) = P(reverse(w)).
inline GeneralHMM reverse_presentation(const UnifilarMachine& m) {
  m.require_valid();
  const auto& pi = m.stationary();
  const std::size_t n = m.num_states();
  for (std::size_t i = 0; i < n; ++i)
    if (!(pi[i] > 0.0))
      throw ValidationError("reverse_presentation: state " + m.states()[i] +
                            " has zero stationary mass");
  GeneralHMM h;
  h.alphabet = m.alphabet();
  h.states = m.states();
  h.symbol_matrices.assign(
      m.alphabet_size(),
      std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (std::size_t x = 0; x < m.alphabet_size(); ++x) {
    auto fwd = m.symbol_matrix(static_cast<int>(x));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        h.symbol_matrices[x][j][i] = pi[i] * fwd[i][j] / pi[j];
  }
  h.require_valid();
  return h;
}

/// True iff some (symbol, target) pair has two positive-probability
/// predecessor states, i.e. the presentation is not unifilar.
inline bool hmm_is_unifilar(const GeneralHMM& h) {
  const std::size_t n = h.states.size();
  for (const auto& mx : h.symbol_matrices)
    for (std::size_t i = 0; i < n; ++i) {
      int targets = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (mx[i][j] > 0.0) ++targets;
      if (targets > 1) return false;
    }
  return true;
}

/// Mixed-state determinization: breadth-first expansion of belief states
/// from the stationary belief. On symbol x a belief b maps to b' with
/// b' proportional to b M^x and transition probability |b M^x|_1. The
/// result is restricted to the unique terminal strongly-connected component
/// of the reachable belief graph and is unifilar by construction.
inline UnifilarMachine determinize(
    const GeneralHMM& h, double merge_tol = kDefaultBeliefMergeTol,
    std::size_t max_states = kDefaultBeliefBudget) {
  h.require_valid();
  const std::size_t n = h.states.size();
  const int a = static_cast<int>(h.alphabet.size());

  auto start = stationary_distribution(h.total_matrix());
  std::vector<BeliefState> beliefs{BeliefState{start.entries()}};
  std::vector<std::string> keys{beliefs[0].canonical_key()};

  auto find_or_insert = [&](BeliefState b) -> int {
    const std::string key = b.canonical_key();
    for (std::size_t k = 0; k < beliefs.size(); ++k)
      if (keys[k] == key || beliefs[k].linf_distance(b) <= merge_tol)
        return static_cast<int>(k);
    if (beliefs.size() >= max_states)
      throw BudgetError("determinize: belief budget of " +
                        std::to_string(max_states) +
                        " states exceeded; the mixed-state set may not be finite");
    beliefs.push_back(std::move(b));
    keys.push_back(key);
    return static_cast<int>(beliefs.size()) - 1;
  };

  struct BeliefEdge {
    int symbol;
    double prob;
    int next;
  };
  std::vector<std::vector<BeliefEdge>> graph;
  for (std::size_t bi = 0; bi < beliefs.size(); ++bi) {
    graph.resize(std::max(graph.size(), bi + 1));
    const std::vector<double> b = beliefs[bi].distribution;
    for (int x = 0; x < a; ++x) {
      const auto& mx = h.symbol_matrices[x];
      std::vector<double> u(n, 0.0);
      double px = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (b[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) u[j] += b[i] * mx[i][j];
      }
      for (double v : u) px += v;
      if (px <= 1e-14) continue;
      for (double& v : u) v /= px;
      const int next = find_or_insert(BeliefState{std::move(u)});
      graph.resize(std::max(graph.size(), beliefs.size()));
      graph[bi].push_back({x, px, next});
    }
  }

  std::vector<std::vector<int>> adj(beliefs.size());
  for (std::size_t bi = 0; bi < graph.size(); ++bi)
    for (const auto& e : graph[bi]) adj[bi].push_back(e.next);
  auto terminal = detail::terminal_components(adj);
  if (terminal.size() != 1)
    throw std::runtime_error("determinize: belief graph has " +
                             std::to_string(terminal.size()) +
                             " terminal components, expected one");

  std::vector<int> keep = terminal[0];
  std::sort(keep.begin(), keep.end());  // stable discovery order
  std::vector<int> new_index(beliefs.size(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) new_index[keep[k]] = static_cast<int>(k);

  std::vector<std::string> state_names;
  std::vector<std::vector<Transition>> edges(keep.size());
  state_names.reserve(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    state_names.push_back("b" + std::to_string(k));
    for (const auto& e : graph[keep[k]])
      edges[k].push_back({e.symbol, e.prob, new_index[e.next]});
  }
  UnifilarMachine out(h.alphabet, std::move(state_names), std::move(edges));
  out.require_valid();
  return out;
}

/// The reverse epsilon-machine: minimize(determinize(reverse_presentation)).
inline UnifilarMachine reverse_epsilon_machine(
    const UnifilarMachine& m, double merge_tol = kDefaultBeliefMergeTol,
    std::size_t max_states = kDefaultBeliefBudget, int check_horizon = 12) {
  return minimize(determinize(reverse_presentation(m), merge_tol, max_states),
                  check_horizon);
}

}  // namespace qasym
