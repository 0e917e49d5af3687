#pragma once
//
// Edge-emitting hidden-Markov generators. UnifilarMachine is the central
// representation: a finite-state generator whose (state, emitted symbol)
// pair determines the successor state. Operations cover validation, word
// probabilities, block/excess entropy by exact enumeration, future morphs
// and their Bhattacharyya fidelities, Moore-style minimization, and the
// classical complexity measures.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qasym/detail/scc.hpp"
#include "qasym/errors.hpp"
#include "qasym/numerics.hpp"

namespace qasym {

inline constexpr double kEmissionRowTol = 1e-12;
inline constexpr std::size_t kDefaultEnumerationCap = 50000000;

/// One outgoing edge: emit `symbol` with probability `prob`, move to `next`.
struct Transition {
  int symbol;
  double prob;
  int next;
};

class UnifilarMachine {
 public:
  UnifilarMachine(std::vector<std::string> alphabet,
                  std::vector<std::string> states,
                  std::vector<std::vector<Transition>> edges)
      : alphabet_(std::move(alphabet)),
        states_(std::move(states)),
        edges_(std::move(edges)) {
    build_tables();
    violations_ = compute_violations();
    if (violations_.empty())
      stationary_ = stationary_distribution(state_transition_matrix());
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::vector<Transition>>& edges() const { return edges_; }
  const std::vector<Transition>& edges_from(int s) const { return edges_[s]; }

  int symbol_index(const std::string& sym) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == sym) return static_cast<int>(i);
    return -1;
  }
  int state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (states_[i] == name) return static_cast<int>(i);
    return -1;
  }

  double emission_prob(int state, int symbol) const {
    return emis_[static_cast<std::size_t>(state) * alphabet_.size() + symbol];
  }
  int successor(int state, int symbol) const {
    return succ_[static_cast<std::size_t>(state) * alphabet_.size() + symbol];
  }

  /// Diagnostic validation; an empty list means the machine is usable.
  const std::vector<std::string>& validate() const { return violations_; }

  void require_valid() const {
    if (violations_.empty()) return;
    std::string msg = "invalid machine:";
    for (const auto& v : violations_) msg += "\n  " + v;
    throw ValidationError(msg);
  }

  const ProbabilityVector& stationary() const {
    require_valid();
    return *stationary_;
  }

  /// Row-stochastic state transition matrix T = sum_x M^x.
  std::vector<std::vector<double>> state_transition_matrix() const {
    const std::size_t n = states_.size();
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (const Transition& e : edges_[i]) t[i][e.next] += e.prob;
    return t;
  }

  /// M^x with M^x[i][j] = P(emit x, go to j | in i).
  std::vector<std::vector<double>> symbol_matrix(int symbol) const {
    const std::size_t n = states_.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (const Transition& e : edges_[i])
        if (e.symbol == symbol) m[i][e.next] += e.prob;
    return m;
  }

 private:
  void build_tables() {
    const std::size_t n = states_.size(), a = alphabet_.size();
    succ_.assign(n * a, -1);
    emis_.assign(n * a, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const Transition& e : edges_[i]) {
        if (e.symbol < 0 || e.symbol >= static_cast<int>(a)) continue;
        const std::size_t k = i * a + e.symbol;
        succ_[k] = e.next;
        emis_[k] = e.prob;
      }
  }

  std::vector<std::string> compute_violations() const {
    std::vector<std::string> out;
    const int n = static_cast<int>(states_.size());
    const int a = static_cast<int>(alphabet_.size());
    if (n == 0) {
      out.push_back("machine has no states");
      return out;
    }
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      std::vector<char> seen(a, 0);
      for (const Transition& e : edges_[i]) {
        if (e.symbol < 0 || e.symbol >= a) {
          out.push_back("state " + states_[i] + ": unknown symbol index");
          continue;
        }
        if (e.next < 0 || e.next >= n)
          out.push_back("state " + states_[i] + ": dangling successor for symbol " +
                        alphabet_[e.symbol]);
        if (!(e.prob > 0.0) || e.prob > 1.0 + kEmissionRowTol)
          out.push_back("state " + states_[i] + ": probability " +
                        std::to_string(e.prob) + " outside (0,1] for symbol " +
                        alphabet_[e.symbol]);
        if (seen[e.symbol])
          out.push_back("state " + states_[i] +
                        ": duplicate edge for symbol " + alphabet_[e.symbol]);
        seen[e.symbol] = 1;
        row += e.prob;
      }
      if (std::abs(row - 1.0) > kEmissionRowTol)
        out.push_back("state " + states_[i] + ": emission row sum " +
                      std::to_string(row));
    }
    if (!out.empty()) return out;

    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
      for (const Transition& e : edges_[i]) adj[i].push_back(e.next);
    auto terminal = detail::terminal_components(adj);
    if (terminal.size() > 1) {
      std::string msg = "multiple recurrent classes:";
      for (const auto& c : terminal) {
        msg += " {";
        for (std::size_t k = 0; k < c.size(); ++k)
          msg += (k ? "," : "") + states_[c[k]];
        msg += "}";
      }
      out.push_back(msg);
    } else if (terminal.size() == 1 &&
               terminal[0].size() != static_cast<std::size_t>(n)) {
      std::string msg = "unreachable or transient states outside the recurrent class:";
      std::vector<char> in_class(n, 0);
      for (int v : terminal[0]) in_class[v] = 1;
      for (int i = 0; i < n; ++i)
        if (!in_class[i]) msg += " " + states_[i];
      out.push_back(msg);
    }
    return out;
  }

  std::vector<std::string> alphabet_, states_;
  std::vector<std::vector<Transition>> edges_;
  std::vector<int> succ_;
  std::vector<double> emis_;
  std::vector<std::string> violations_;
  std::optional<ProbabilityVector> stationary_;
};

/// Non-unifilar edge-emitting presentation: one matrix per symbol,
/// M^x[i][j] = P(emit x, go to j | in i).
struct GeneralHMM {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::vector<std::vector<std::vector<double>>> symbol_matrices;

  std::vector<std::vector<double>> total_matrix() const {
    const std::size_t n = states.size();
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (const auto& m : symbol_matrices)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] += m[i][j];
    return t;
  }

  void require_valid() const {
    const std::size_t n = states.size();
    if (symbol_matrices.size() != alphabet.size())
      throw ValidationError("GeneralHMM: one matrix per symbol required");
    for (const auto& m : symbol_matrices) {
      if (m.size() != n) throw ValidationError("GeneralHMM: bad matrix size");
      for (const auto& row : m) {
        if (row.size() != n) throw ValidationError("GeneralHMM: bad row size");
        for (double e : row)
          if (!(e >= -kEmissionRowTol) || !std::isfinite(e))
            throw ValidationError("GeneralHMM: negative or non-finite entry");
      }
    }
    auto t = total_matrix();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (double e : t[i]) s += e;
      if (std::abs(s - 1.0) > kEmissionRowTol)
        throw ValidationError("GeneralHMM: row " + std::to_string(i) +
                              " of the summed matrix is not stochastic");
    }
  }
};

/// P(word) generated by an HMM from its stationary state mixture.
inline double hmm_stationary_word_probability(const GeneralHMM& h,
                                              const std::vector<int>& word) {
  h.require_valid();
  std::vector<double> v = stationary_distribution(h.total_matrix()).entries();
  const std::size_t n = h.states.size();
  for (int x : word) {
    if (x < 0 || x >= static_cast<int>(h.alphabet.size()))
      throw std::invalid_argument("hmm word probability: unknown symbol");
    std::vector<double> next(n, 0.0);
    const auto& mx = h.symbol_matrices[x];
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += v[i] * mx[i][j];
    }
    v.swap(next);
  }
  double p = 0.0;
  for (double e : v) p += e;
  return p;
}

/// Forward presentation of a unifilar machine as a GeneralHMM.
inline GeneralHMM hmm_from_machine(const UnifilarMachine& m) {
  GeneralHMM h;
  h.alphabet = m.alphabet();
  h.states = m.states();
  h.symbol_matrices.resize(m.alphabet_size());
  for (std::size_t x = 0; x < m.alphabet_size(); ++x)
    h.symbol_matrices[x] = m.symbol_matrix(static_cast<int>(x));
  return h;
}

// ---------------------------------------------------------------------------
// Word probabilities
// ---------------------------------------------------------------------------

/// P(word | start): product of emission probabilities along the unique
/// unifilar path; zero once the path breaks.
inline double word_probability(const UnifilarMachine& m, int start,
                               const std::vector<int>& word) {
  m.require_valid();
  double p = 1.0;
  int s = start;
  for (int x : word) {
    if (x < 0 || x >= static_cast<int>(m.alphabet_size()))
      throw std::invalid_argument("word_probability: unknown symbol index " +
                                  std::to_string(x));
    const double e = m.emission_prob(s, x);
    if (e <= 0.0) return 0.0;
    p *= e;
    s = m.successor(s, x);
  }
  return p;
}

inline double word_probability(const UnifilarMachine& m,
                               const std::string& start,
                               const std::vector<std::string>& word) {
  const int s = m.state_index(start);
  if (s < 0)
    throw std::invalid_argument("word_probability: unknown state " + start);
  std::vector<int> idx;
  idx.reserve(word.size());
  for (const auto& sym : word) {
    const int x = m.symbol_index(sym);
    if (x < 0)
      throw std::invalid_argument("word_probability: unknown symbol " + sym);
    idx.push_back(x);
  }
  return word_probability(m, s, idx);
}

/// P(word) under the stationary state mixture.
inline double stationary_word_probability(const UnifilarMachine& m,
                                          const std::vector<int>& word) {
  const auto& pi = m.stationary();
  double p = 0.0;
  for (std::size_t i = 0; i < m.num_states(); ++i)
    if (pi[i] > 0.0)
      p += pi[i] * word_probability(m, static_cast<int>(i), word);
  return p;
}

// ---------------------------------------------------------------------------
// Block entropy and excess entropy
// ---------------------------------------------------------------------------

namespace detail {

/// Depth-first walk over positive-probability words of a fixed length,
/// carrying the state-indexed probability mass of each word prefix.
/// `visit` receives the total probability of each full-length word.
template <typename Visitor>
void walk_words(const UnifilarMachine& m,
                const std::vector<std::pair<int, double>>& start_mass,
                int length, std::size_t cap, std::size_t& nodes,
                Visitor&& visit) {
  const int a = static_cast<int>(m.alphabet_size());
  // Per-depth workspaces holding the child mass lists per symbol.
  struct Level {
    std::vector<std::vector<std::pair<int, double>>> child;
  };
  std::vector<Level> levels(length + 1);
  for (auto& lv : levels) lv.child.resize(a);

  auto rec = [&](auto&& self, const std::vector<std::pair<int, double>>& mass,
                 int depth) -> void {
    if (depth == length) {
      double total = 0.0;
      for (const auto& [s, w] : mass) total += w;
      visit(total);
      return;
    }
    Level& lv = levels[depth];
    for (auto& c : lv.child) c.clear();
    for (const auto& [s, w] : mass)
      for (const Transition& e : m.edges_from(s)) {
        auto& list = lv.child[e.symbol];
        bool found = false;
        for (auto& entry : list)
          if (entry.first == e.next) {
            entry.second += w * e.prob;
            found = true;
            break;
          }
        if (!found) list.emplace_back(e.next, w * e.prob);
      }
    for (int x = 0; x < a; ++x) {
      if (lv.child[x].empty()) continue;
      if (++nodes > cap)
        throw EnumerationCapError(
            "word enumeration exceeded cap of " + std::to_string(cap) +
            " positive-probability words");
      self(self, lv.child[x], depth + 1);
    }
  };
  rec(rec, start_mass, 0);
}

}  // namespace detail

/// H(X_{0:L}) in bits by exact enumeration of positive-probability words
/// from the stationary mixture.
inline double block_entropy(const UnifilarMachine& m, int length,
                            std::size_t cap = kDefaultEnumerationCap) {
  m.require_valid();
  if (length < 0) throw std::invalid_argument("block_entropy: negative horizon");
  if (length == 0) return 0.0;
  const auto& pi = m.stationary();
  std::vector<std::pair<int, double>> start;
  for (std::size_t i = 0; i < m.num_states(); ++i)
    if (pi[i] > 0.0) start.emplace_back(static_cast<int>(i), pi[i]);
  double h = 0.0;
  std::size_t nodes = 0;
  detail::walk_words(m, start, length, cap, nodes,
                     [&](double p) { h += xlog2x(p); });
  return h;
}

struct ExcessEntropySeries {
  std::vector<double> values;  // E_L for L = 1..horizon
  bool converged = false;
  int horizon = 0;

  double last() const { return values.empty() ? 0.0 : values.back(); }
};

/// E_L = 2 H(X_{0:L}) - H(X_{0:2L}) for L = 1.. until |E_L - E_{L-1}| < tol
/// or L_max is reached. Enumeration-cap overruns end the series early with
/// converged = false.
inline ExcessEntropySeries excess_entropy_estimate(
    const UnifilarMachine& m, int l_max, double tol = 1e-6,
    std::size_t cap = kDefaultEnumerationCap) {
  m.require_valid();
  if (l_max < 1) throw std::invalid_argument("excess_entropy_estimate: L_max < 1");
  ExcessEntropySeries out;
  std::map<int, double> h_cache;
  auto h = [&](int l) {
    auto it = h_cache.find(l);
    if (it != h_cache.end()) return it->second;
    const double v = block_entropy(m, l, cap);
    h_cache[l] = v;
    return v;
  };
  for (int l = 1; l <= l_max; ++l) {
    double e;
    try {
      e = 2.0 * h(l) - h(2 * l);
    } catch (const EnumerationCapError&) {
      break;
    }
    out.values.push_back(e);
    out.horizon = l;
    if (l >= 2 && std::abs(out.values[l - 1] - out.values[l - 2]) < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical complexities
// ---------------------------------------------------------------------------

/// Shannon entropy of the machine's own stationary state distribution.
/// Equals the statistical complexity when the machine is a minimal
/// epsilon-machine; minimize() first if that is not known.
inline double statistical_complexity(const UnifilarMachine& m) {
  return shannon_entropy(m.stationary());
}

/// log2 of the number of states.
inline double topological_complexity(const UnifilarMachine& m) {
  m.require_valid();
  return std::log2(static_cast<double>(m.num_states()));
}

// ---------------------------------------------------------------------------
// Future morphs and fidelities
// ---------------------------------------------------------------------------

/// Conditional word distributions per state, all lengths 1..horizon.
struct MorphTable {
  int horizon = 0;
  // by_state[i] maps a word (symbol indices) to P(word | state i).
  std::vector<std::map<std::vector<int>, double>> by_state;
};

inline MorphTable future_morphs(const UnifilarMachine& m, int horizon,
                                std::size_t cap = kDefaultEnumerationCap) {
  m.require_valid();
  if (horizon < 1) throw std::invalid_argument("future_morphs: horizon < 1");
  MorphTable t;
  t.horizon = horizon;
  t.by_state.resize(m.num_states());
  std::size_t nodes = 0;
  for (std::size_t i = 0; i < m.num_states(); ++i) {
    // Iterative frontier expansion; every prefix is itself a morph entry.
    std::vector<std::pair<std::vector<int>, std::pair<int, double>>> frontier;
    frontier.push_back({{}, {static_cast<int>(i), 1.0}});
    for (int depth = 0; depth < horizon; ++depth) {
      std::vector<std::pair<std::vector<int>, std::pair<int, double>>> next;
      for (const auto& [word, sp] : frontier)
        for (const Transition& e : m.edges_from(sp.first)) {
          if (++nodes > cap)
            throw EnumerationCapError("future_morphs exceeded cap of " +
                                      std::to_string(cap));
          std::vector<int> w = word;
          w.push_back(e.symbol);
          const double p = sp.second * e.prob;
          t.by_state[i][w] += p;
          next.push_back({std::move(w), {e.next, p}});
        }
      frontier.swap(next);
    }
  }
  return t;
}

/// Bhattacharyya fidelity between the future morphs of two states,
/// F_ij(l) = sum_{|w|=l} sqrt(P_i(w) P_j(w)), returned for l = 1..horizon.
struct FidelitySeries {
  std::vector<double> values;
  double final_value() const { return values.empty() ? 1.0 : values.back(); }
};

inline FidelitySeries morph_fidelity(const UnifilarMachine& m, int i, int j,
                                     int horizon) {
  m.require_valid();
  const std::size_t n = m.num_states();
  if (i < 0 || j < 0 || i >= static_cast<int>(n) || j >= static_cast<int>(n))
    throw std::invalid_argument("morph_fidelity: state out of range");
  const int a = static_cast<int>(m.alphabet_size());
  std::vector<double> f(n * n, 1.0), g(n * n, 0.0);
  FidelitySeries out;
  for (int l = 1; l <= horizon; ++l) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (int x = 0; x < a; ++x) {
          const double pu = m.emission_prob(static_cast<int>(u), x);
          const double pv = m.emission_prob(static_cast<int>(v), x);
          if (pu > 0.0 && pv > 0.0)
            s += std::sqrt(pu * pv) *
                 f[m.successor(static_cast<int>(u), x) * n +
                   m.successor(static_cast<int>(v), x)];
        }
        g[u * n + v] = s;
      }
    f.swap(g);
    out.values.push_back(f[static_cast<std::size_t>(i) * n + j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimization and isomorphism
// ---------------------------------------------------------------------------

namespace detail {

inline bool emission_rows_equal(const UnifilarMachine& m, int u, int v,
                                double tol) {
  for (std::size_t x = 0; x < m.alphabet_size(); ++x)
    if (std::abs(m.emission_prob(u, static_cast<int>(x)) -
                 m.emission_prob(v, static_cast<int>(x))) > tol)
      return false;
  return true;
}

}  // namespace detail

/// Moore-style partition refinement to the minimal equivalent machine.
/// States are first grouped by emission distribution (within tol), then the
/// partition is refined by successor-block agreement until stable. Merged
/// blocks take the first-listed state's name. Morph agreement of merged
/// states is re-verified up to `check_horizon` (shrunk if enumeration would
/// be too large); states whose morphs differ only beyond that horizon would
/// be merged, which for valid machines cannot happen since refinement is
/// exact on finite unifilar generators.
inline UnifilarMachine minimize(const UnifilarMachine& m,
                                int check_horizon = 12, double tol = 1e-9) {
  m.require_valid();
  const int n = static_cast<int>(m.num_states());
  const int a = static_cast<int>(m.alphabet_size());

  std::vector<int> block(n, -1);
  std::vector<int> reps;
  for (int s = 0; s < n; ++s) {
    for (std::size_t b = 0; b < reps.size(); ++b)
      if (detail::emission_rows_equal(m, reps[b], s, tol)) {
        block[s] = static_cast<int>(b);
        break;
      }
    if (block[s] < 0) {
      block[s] = static_cast<int>(reps.size());
      reps.push_back(s);
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // signature: current block plus successor blocks over the alphabet
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> next_block(n, -1);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig{block[s]};
      for (int x = 0; x < a; ++x)
        sig.push_back(m.emission_prob(s, x) > tol ? block[m.successor(s, x)]
                                                  : -1);
      auto [it, inserted] =
          sig_to_block.try_emplace(sig, static_cast<int>(sig_to_block.size()));
      next_block[s] = it->second;
    }
    if (sig_to_block.size() != reps.size()) changed = true;
    // renumber blocks by first-listed representative order
    std::vector<int> renumber(sig_to_block.size(), -1);
    reps.clear();
    for (int s = 0; s < n; ++s)
      if (renumber[next_block[s]] < 0) {
        renumber[next_block[s]] = static_cast<int>(reps.size());
        reps.push_back(s);
      }
    for (int s = 0; s < n; ++s) block[s] = renumber[next_block[s]];
  }

  std::vector<std::string> q_states;
  q_states.reserve(reps.size());
  for (int r : reps) q_states.push_back(m.states()[r]);
  std::vector<std::vector<Transition>> q_edges(reps.size());
  for (std::size_t b = 0; b < reps.size(); ++b)
    for (const Transition& e : m.edges_from(reps[b]))
      q_edges[b].push_back({e.symbol, e.prob, block[e.next]});
  UnifilarMachine q(m.alphabet(), std::move(q_states), std::move(q_edges));
  q.require_valid();

  // Verify that merged states had matching morphs up to the check horizon.
  bool any_merge = false;
  for (int s = 0; s < n; ++s)
    if (s != reps[block[s]]) any_merge = true;
  if (any_merge && check_horizon > 0) {
    for (int h = check_horizon; h >= 1; --h) {
      try {
        auto morphs = future_morphs(m, h, 2000000);
        for (int s = 0; s < n; ++s) {
          const int r = reps[block[s]];
          if (s == r) continue;
          const auto& ma = morphs.by_state[r];
          const auto& mb = morphs.by_state[s];
          for (const auto& [w, p] : ma) {
            auto it = mb.find(w);
            const double pb = it == mb.end() ? 0.0 : it->second;
            if (std::abs(p - pb) > tol * 10)
              throw std::runtime_error(
                  "minimize: merged states " + m.states()[r] + " and " +
                  m.states()[s] + " have diverging morphs");
          }
        }
        break;
      } catch (const EnumerationCapError&) {
        continue;  // horizon too deep for this alphabet; retry shallower
      }
    }
  }
  return q;
}

/// True iff the machines are identical up to a relabelling of states.
/// Symbols are matched by name; emission probabilities within tol.
inline bool machines_isomorphic(const UnifilarMachine& a,
                                const UnifilarMachine& b, double tol = 1e-9) {
  if (a.num_states() != b.num_states()) return false;
  if (a.alphabet_size() != b.alphabet_size()) return false;
  const int n = static_cast<int>(a.num_states());
  const int asz = static_cast<int>(a.alphabet_size());
  std::vector<int> sym_map(asz, -1);
  for (int x = 0; x < asz; ++x) {
    sym_map[x] = b.symbol_index(a.alphabet()[x]);
    if (sym_map[x] < 0) return false;
  }
  for (int b0 = 0; b0 < n; ++b0) {
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    std::vector<int> queue{0};
    map[0] = b0;
    used[b0] = 1;
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      const int u = queue[qi], v = map[u];
      for (int x = 0; x < asz && ok; ++x) {
        const double pa = a.emission_prob(u, x);
        const double pb = b.emission_prob(v, sym_map[x]);
        if (std::abs(pa - pb) > tol) {
          ok = false;
          break;
        }
        if (pa > tol) {
          const int su = a.successor(u, x), sv = b.successor(v, sym_map[x]);
          if (map[su] < 0) {
            if (used[sv]) {
              ok = false;
              break;
            }
            map[su] = sv;
            used[sv] = 1;
            queue.push_back(su);
          } else if (map[su] != sv) {
            ok = false;
          }
        }
      }
    }
    if (ok && queue.size() == static_cast<std::size_t>(n)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bidirectional complexity report
// ---------------------------------------------------------------------------

/// All complexity measures of one process, in bits, both time directions.
struct ComplexityReport {
  double c_mu_forward = 0.0, c_mu_reverse = 0.0;
  double d_mu_forward = 0.0, d_mu_reverse = 0.0;
  double excess_entropy = 0.0;
  bool excess_converged = false;
  int excess_horizon = 0;
  double cq_bar_forward = 0.0, cq_bar_reverse = 0.0;
  double dq_bar_forward = 0.0, dq_bar_reverse = 0.0;
  double delta_c_mu = 0.0, delta_cq_bar = 0.0;
  bool gram_forward_converged = true, gram_reverse_converged = true;
  bool result2_ok = false, result3_ok = false;
};

}  // namespace qasym
