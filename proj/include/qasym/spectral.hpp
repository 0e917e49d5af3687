#pragma once
//
// q-machine analysis. The overlaps of the q-machine memory states obey a
// closed recursion driven by the machine's transition structure; iterating
// it to a fixed point gives the Gram matrix of the memory states, and the
// spectrum of rho = sum_i pi_i |S_i><S_i| follows from the weighted Gram.
// analyze_bidirectional assembles the full two-direction complexity report.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qasym/machines.hpp"
#include "qasym/numerics.hpp"
#include "qasym/reversal.hpp"

namespace qasym {

inline constexpr double kDefaultGramTol = 1e-13;
inline constexpr std::size_t kDefaultGramMaxIter = 10000;
inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr double kGramPsdTol = 1e-9;

/// Pairwise overlaps <S_i|S_j> of the q-machine memory states.
struct GramMatrix {
  std::vector<std::vector<double>> entries;  // symmetric, unit diagonal
  std::size_t dimension = 0;
  std::size_t iterations_used = 0;
  bool converged = false;

  double at(std::size_t i, std::size_t j) const { return entries[i][j]; }

  SymmetricMatrix to_symmetric() const {
    return SymmetricMatrix::checked(entries);
  }
};

/// Fixed point of G'_ij = sum_x sqrt(P(x|i) P(x|j)) G_{d(i,x) d(j,x)}
/// starting from the identity. Convergence is declared when the largest
/// entrywise change drops below tol; a capped run returns the partial
/// matrix with converged = false. Positive semidefiniteness is verified.
inline GramMatrix gram_fixed_point(const UnifilarMachine& m,
                                   double tol = kDefaultGramTol,
                                   std::size_t max_iter = kDefaultGramMaxIter) {
  m.require_valid();
  const std::size_t n = m.num_states();
  GramMatrix g;
  g.dimension = n;
  g.entries.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) g.entries[i][i] = 1.0;

  std::vector<std::vector<double>> next(n, std::vector<double>(n, 1.0));
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i][i] = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (const Transition& ei : m.edges_from(static_cast<int>(i))) {
          const double pj = m.emission_prob(static_cast<int>(j), ei.symbol);
          if (pj > 0.0)
            s += std::sqrt(ei.prob * pj) *
                 g.entries[ei.next][m.successor(static_cast<int>(j), ei.symbol)];
        }
        next[i][j] = next[j][i] = s;
        delta = std::max(delta, std::abs(s - g.entries[i][j]));
      }
    }
    g.entries.swap(next);
    g.iterations_used = iter;
    if (delta < tol) {
      g.converged = true;
      break;
    }
  }

  const auto spec = symmetric_eigenvalues(g.to_symmetric());
  if (spec.values.back() < -kGramPsdTol)
    throw ValidationError("gram_fixed_point: matrix is not PSD, min eigenvalue " +
                          std::to_string(spec.values.back()));
  return g;
}

/// Spectrum of rho = sum_i pi_i |S_i><S_i| together with its entropy and
/// numerical rank. Computed from M_ij = sqrt(pi_i pi_j) G_ij, which shares
/// the nonzero spectrum of rho.
struct QuantumSpectrum {
  Spectrum spectrum;
  double entropy = 0.0;   // bits
  int rank_at_tol = 0;
};

inline QuantumSpectrum qmachine_spectrum(const UnifilarMachine& m,
                                         const GramMatrix& g,
                                         double rank_tol = kDefaultRankTol) {
  m.require_valid();
  const std::size_t n = m.num_states();
  if (g.dimension != n)
    throw std::invalid_argument("qmachine_spectrum: Gram dimension mismatch");
  const auto& pi = m.stationary();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w[i][j] = std::sqrt(pi[i] * pi[j]) * g.entries[i][j];
  auto spec = symmetric_eigenvalues(SymmetricMatrix::checked(w));
  for (double v : spec.values)
    if (v < -kGramPsdTol)
      throw ValidationError(
          "qmachine_spectrum: Gram is not PSD beyond tolerance");
  QuantumSpectrum out;
  for (double& v : spec.values) v = std::clamp(v, 0.0, 1.0);
  out.spectrum = std::move(spec);
  out.entropy = von_neumann_entropy(out.spectrum);
  out.rank_at_tol = 0;
  for (double v : out.spectrum.values)
    if (v > rank_tol) ++out.rank_at_tol;
  return out;
}

/// q-machine complexity bound: S(rho) in bits.
inline double qmachine_complexity(const UnifilarMachine& m) {
  return qmachine_spectrum(m, gram_fixed_point(m)).entropy;
}

/// q-machine state complexity bound: log2 of the rank of rho.
inline double qmachine_dimension(const UnifilarMachine& m) {
  return std::log2(
      static_cast<double>(qmachine_spectrum(m, gram_fixed_point(m)).rank_at_tol));
}

// ---------------------------------------------------------------------------
// Bidirectional analysis
// ---------------------------------------------------------------------------

struct AnalysisConfig {
  double gram_tol = kDefaultGramTol;
  std::size_t gram_max_iter = kDefaultGramMaxIter;
  double belief_merge_tol = kDefaultBeliefMergeTol;
  std::size_t belief_budget = kDefaultBeliefBudget;
  double rank_tol = kDefaultRankTol;
  int excess_l_max = 12;
  double excess_tol = 1e-6;
  std::size_t enum_cap = kDefaultEnumerationCap;
  int minimize_check_horizon = 12;
};

/// Full two-direction report: classical and q-machine complexities of the
/// process generated by m, its time reversal, and the recorded inequality
/// checks. Throws BudgetError if the reversal exceeds its state budget;
/// non-convergence of the excess-entropy series or Gram iterations is
/// reported through flags instead of failing.
inline ComplexityReport analyze_bidirectional(const UnifilarMachine& m,
                                              const AnalysisConfig& cfg = {}) {
  m.require_valid();
  const UnifilarMachine fwd = minimize(m, cfg.minimize_check_horizon);
  const UnifilarMachine rev = reverse_epsilon_machine(
      fwd, cfg.belief_merge_tol, cfg.belief_budget, cfg.minimize_check_horizon);

  ComplexityReport r;
  r.c_mu_forward = statistical_complexity(fwd);
  r.c_mu_reverse = statistical_complexity(rev);
  r.d_mu_forward = topological_complexity(fwd);
  r.d_mu_reverse = topological_complexity(rev);

  const auto excess =
      excess_entropy_estimate(fwd, cfg.excess_l_max, cfg.excess_tol, cfg.enum_cap);
  r.excess_entropy = excess.last();
  r.excess_converged = excess.converged;
  r.excess_horizon = excess.horizon;

  const auto gf = gram_fixed_point(fwd, cfg.gram_tol, cfg.gram_max_iter);
  const auto gr = gram_fixed_point(rev, cfg.gram_tol, cfg.gram_max_iter);
  r.gram_forward_converged = gf.converged;
  r.gram_reverse_converged = gr.converged;

  const auto sf = qmachine_spectrum(fwd, gf, cfg.rank_tol);
  const auto sr = qmachine_spectrum(rev, gr, cfg.rank_tol);
  r.cq_bar_forward = sf.entropy;
  r.cq_bar_reverse = sr.entropy;
  r.dq_bar_forward = std::log2(static_cast<double>(sf.rank_at_tol));
  r.dq_bar_reverse = std::log2(static_cast<double>(sr.rank_at_tol));

  r.delta_c_mu = std::abs(r.c_mu_reverse - r.c_mu_forward);
  r.delta_cq_bar = std::abs(r.cq_bar_reverse - r.cq_bar_forward);

  r.result2_ok = std::max(r.cq_bar_forward, r.cq_bar_reverse) <=
                 std::min(r.c_mu_forward, r.c_mu_reverse) + 1e-9;
  r.result3_ok = std::max(r.dq_bar_forward, r.dq_bar_reverse) <=
                 std::min(r.d_mu_forward, r.d_mu_reverse) + 1e-9;
  return r;
}

}  // namespace qasym
