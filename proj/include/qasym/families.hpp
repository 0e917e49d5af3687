#pragma once
//
// Closed-form generators for the process families analyzed by this library:
// the perturbed coin, the heralding coin (forward and reverse), the n-m
// flower process, and deterministic cycles.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qasym/machines.hpp"
#include "qasym/reversal.hpp"

namespace qasym {

struct HeraldingParams {
  double p;  // flip probability out of the 0/2 state
  double q;  // flip probability out of the 1 state

  void require_valid() const {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0))
      throw std::invalid_argument(
          "heralding/perturbed coin parameters must lie strictly in (0,1)");
  }
};

/// Two-state coin in a box: flips from state s0 with probability p and from
/// state s1 with probability q, emitting the new coin face each step.
inline UnifilarMachine perturbed_coin(double p, double q) {
  HeraldingParams{p, q}.require_valid();
  std::vector<std::vector<Transition>> edges(2);
  edges[0] = {{0, 1.0 - p, 0}, {1, p, 1}};
  edges[1] = {{0, q, 0}, {1, 1.0 - q, 1}};
  UnifilarMachine m({"0", "1"}, {"s0", "s1"}, std::move(edges));
  m.require_valid();
  return m;
}

/// The perturbed coin with the first 0 of every run of 0s rewritten to 2:
/// state s0 holds pasts ending in 0 or 2, state s1 pasts ending in 1.
inline UnifilarMachine heralding_coin(double p, double q) {
  HeraldingParams{p, q}.require_valid();
  std::vector<std::vector<Transition>> edges(2);
  edges[0] = {{0, 1.0 - p, 0}, {1, p, 1}};
  edges[1] = {{1, 1.0 - q, 1}, {2, q, 0}};
  UnifilarMachine m({"0", "1", "2"}, {"s0", "s1"}, std::move(edges));
  m.require_valid();
  return m;
}

/// Stationary distribution of the reverse heralding coin over states
/// labelled by last emitted symbol: ((q-pq)/(p+q), p/(p+q), pq/(p+q)).
inline std::vector<double> heralding_reverse_stationary(double p, double q) {
  HeraldingParams{p, q}.require_valid();
  return {(q - p * q) / (p + q), p / (p + q), p * q / (p + q)};
}

/// Reverse epsilon-machine of the heralding coin, built through the full
/// reversal pipeline and relabelled so that state s<x> is the one entered by
/// emitting symbol x. The construction is cross-checked against the
/// closed-form stationary distribution.
inline UnifilarMachine heralding_coin_reverse(double p, double q) {
  UnifilarMachine rev = reverse_epsilon_machine(heralding_coin(p, q));
  if (rev.num_states() != 3)
    throw std::runtime_error("heralding_coin_reverse: expected 3 states, got " +
                             std::to_string(rev.num_states()));

  // Each state is entered by exactly one symbol; label states by it.
  const int n = 3;
  std::vector<int> entering_symbol(n, -1);
  for (int i = 0; i < n; ++i)
    for (const Transition& e : rev.edges_from(i)) {
      if (entering_symbol[e.next] >= 0 && entering_symbol[e.next] != e.symbol)
        throw std::runtime_error(
            "heralding_coin_reverse: a state is entered by two symbols");
      entering_symbol[e.next] = e.symbol;
    }

  // Reorder states so that state k is the one entered by symbol k.
  std::vector<int> new_of_old(n, -1);
  std::vector<char> used(n, 0);
  for (int i = 0; i < n; ++i) {
    const int k = entering_symbol[i];
    if (k < 0 || k >= n || used[k])
      throw std::runtime_error("heralding_coin_reverse: bad entry structure");
    used[k] = 1;
    new_of_old[i] = k;
  }
  std::vector<std::string> names(n);
  std::vector<std::vector<Transition>> edges(n);
  for (int i = 0; i < n; ++i) {
    const int k = new_of_old[i];
    names[k] = "s" + rev.alphabet()[k];
    for (const Transition& e : rev.edges_from(i))
      edges[k].push_back({e.symbol, e.prob, new_of_old[e.next]});
  }
  UnifilarMachine out(rev.alphabet(), std::move(names), std::move(edges));
  out.require_valid();

  const auto expected = heralding_reverse_stationary(p, q);
  for (int i = 0; i < n; ++i)
    if (std::abs(out.stationary()[i] - expected[i]) > 1e-9)
      throw std::runtime_error(
          "heralding_coin_reverse: stationary distribution mismatch at state " +
          out.states()[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Flower process
// ---------------------------------------------------------------------------

struct FlowerParams {
  int n = 0;                               // number of dice
  int m = 0;                               // sides per die
  std::vector<std::vector<double>> biases; // n rows of m probabilities
  double min_row_gap = 1e-3;               // required pairwise Linf gap

  void require_valid() const {
    if (n < 2 || m < 2)
      throw std::invalid_argument("flower: need n >= 2 and m >= 2");
    if (biases.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("flower: need one bias row per die");
    for (const auto& row : biases) {
      if (row.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("flower: bias row of wrong width");
      ProbabilityVector::checked(row);
    }
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        double gap = 0.0;
        for (int j = 0; j < m; ++j)
          gap = std::max(gap, std::abs(biases[i][j] - biases[k][j]));
        if (gap < min_row_gap)
          throw std::invalid_argument(
              "flower: bias rows " + std::to_string(i + 1) + " and " +
              std::to_string(k + 1) + " are duplicates within " +
              std::to_string(min_row_gap));
      }
  }
};

namespace detail {

inline std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int d : primes) {
      if (d * d > c) break;
      if (c % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace detail

/// Default "spread" bias rows. For two-sided dice, die i lands on side 1
/// with probability i/(n+1). For m >= 3 the rows come from a Kronecker
/// low-discrepancy sequence: w_ij = 1 + frac(i * sqrt(prime_j)), normalized
/// per row, which keeps all rows distinct and away from the simplex boundary.
inline std::vector<std::vector<double>> flower_spread_biases(int n, int m) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(m));
  if (m == 2) {
    for (int i = 1; i <= n; ++i) {
      rows[i - 1][0] = static_cast<double>(i) / (n + 1);
      rows[i - 1][1] = 1.0 - rows[i - 1][0];
    }
    return rows;
  }
  const auto primes = detail::first_primes(m);
  for (int i = 1; i <= n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double root = std::sqrt(static_cast<double>(primes[j]));
      const double frac = i * root - std::floor(i * root);
      rows[i - 1][j] = 1.0 + frac;
      sum += rows[i - 1][j];
    }
    for (int j = 0; j < m; ++j) rows[i - 1][j] /= sum;
  }
  return rows;
}

/// Hub-and-dice process: the hub picks a die uniformly, emitting its index;
/// the die is rolled, emitting the outcome shifted past the die indices.
/// Alphabet: "1".."n" for die choices, "n+1".."n+m" for outcomes.
inline UnifilarMachine flower(const FlowerParams& params) {
  params.require_valid();
  const int n = params.n, m = params.m;
  std::vector<std::string> alphabet;
  for (int x = 1; x <= n + m; ++x) alphabet.push_back(std::to_string(x));
  std::vector<std::string> states{"H"};
  for (int i = 1; i <= n; ++i) states.push_back("d" + std::to_string(i));
  std::vector<std::vector<Transition>> edges(n + 1);
  for (int i = 1; i <= n; ++i) {
    edges[0].push_back({i - 1, 1.0 / n, i});
    for (int j = 0; j < m; ++j)
      if (params.biases[i - 1][j] > 0.0)
        edges[i].push_back({n + j, params.biases[i - 1][j], 0});
  }
  UnifilarMachine machine(std::move(alphabet), std::move(states),
                          std::move(edges));
  machine.require_valid();
  return machine;
}

inline UnifilarMachine flower(int n, int m) {
  return flower(FlowerParams{n, m, flower_spread_biases(n, m)});
}

/// Deterministic k-cycle: state t emits symbol t and moves to t+1 mod k.
inline UnifilarMachine cycle(int k) {
  if (k < 1) throw std::invalid_argument("cycle: need k >= 1");
  std::vector<std::string> alphabet, states;
  std::vector<std::vector<Transition>> edges(k);
  for (int t = 0; t < k; ++t) {
    alphabet.push_back(std::to_string(t));
    states.push_back("c" + std::to_string(t));
    edges[t].push_back({t, 1.0, (t + 1) % k});
  }
  UnifilarMachine m(std::move(alphabet), std::move(states), std::move(edges));
  m.require_valid();
  return m;
}

}  // namespace qasym
