#pragma once
//
// Closed forms and optimality probes specific to the heralding coin: the
// causal-asymmetry formula, the closed-form quantum complexity shared by
// both temporal directions, the optimal forward/retro memory states, and a
// randomized numerical probe of the majorization argument that proves the
// retro model optimal.

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "qasym/families.hpp"
#include "qasym/numerics.hpp"

namespace qasym {

/// Classical causal asymmetry of the heralding coin,
/// (1 - pi1-) h(gamma) with gamma = pi2- / (1 - pi1-).
inline double heralding_delta_cmu(double p, double q) {
  const auto pi = heralding_reverse_stationary(p, q);
  const double gamma = pi[2] / (1.0 - pi[1]);
  return (1.0 - pi[1]) * binary_entropy(gamma);
}

/// Quantum statistical complexity of the heralding coin, identical in both
/// temporal directions: h((1 + sqrt(c)) / 2) with
/// c = (p^2 (1 + 4(1-q)q) - 2pq + q^2) / (p+q)^2.
inline double heralding_cq_closed_form(double p, double q) {
  HeraldingParams{p, q}.require_valid();
  const double c =
      (p * p * (1.0 + 4.0 * (1.0 - q) * q) - 2.0 * p * q + q * q) /
      ((p + q) * (p + q));
  return binary_entropy((1.0 + std::sqrt(c)) / 2.0);
}

/// Optimal forward memory states over the basis (|0>,|1>,|2>):
/// |s0+> = sqrt(1-p)|0> + sqrt(p)|1>, |s1+> = sqrt(q)|2> + sqrt(1-q)|1>.
inline std::vector<std::vector<double>> optimal_forward_states(double p,
                                                               double q) {
  HeraldingParams{p, q}.require_valid();
  return {{std::sqrt(1.0 - p), std::sqrt(p), 0.0},
          {0.0, std::sqrt(1.0 - q), std::sqrt(q)}};
}

/// Optimal retrocausal memory states over (|0>,|1>):
/// |s0-> = |0>, |s1-> = sqrt(q)|0> + sqrt(1-q)|1>, |s2-> = |1>.
inline std::vector<std::vector<double>> optimal_retro_states(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("optimal_retro_states: q outside (0,1)");
  return {{1.0, 0.0}, {std::sqrt(q), std::sqrt(1.0 - q)}, {0.0, 1.0}};
}

/// von Neumann entropy of the ensemble rho = sum_i w_i |v_i><v_i|.
inline double ensemble_entropy(const std::vector<std::vector<double>>& states,
                               const std::vector<double>& weights) {
  if (states.size() != weights.size())
    throw std::invalid_argument("ensemble_entropy: size mismatch");
  const std::size_t d = states.empty() ? 0 : states[0].size();
  std::vector<std::vector<double>> rho(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        rho[r][c] += weights[i] * states[i][r] * states[i][c];
  auto spec = symmetric_eigenvalues(SymmetricMatrix::checked(rho));
  for (double& v : spec.values) v = std::clamp(v, 0.0, 1.0);
  return von_neumann_entropy(spec);
}

// ---------------------------------------------------------------------------
// Majorization probe
// ---------------------------------------------------------------------------

/// Candidate retro memory state
///   |psi1> = r sin(theta) e^{i omega} |0> + sqrt(1-r^2) e^{i alpha} |1>
///          + r cos(theta) |2>,
/// constrained by the morph-fidelity bounds r sin(theta) <= sqrt(q) and
/// sqrt(1-r^2) <= sqrt(1-q).
struct CandidateRetroState {
  double r = 0.0;
  double theta = 0.0;
  double omega = 0.0;
  double alpha = 0.0;

  bool satisfies_constraints(double q, double slack = 1e-12) const {
    if (!(r >= 0.0 && r <= 1.0) || !(theta >= 0.0 && theta <= M_PI / 2 + 1e-12))
      return false;
    return r * std::sin(theta) <= std::sqrt(q) + slack &&
           std::sqrt(1.0 - r * r) <= std::sqrt(1.0 - q) + slack;
  }

  std::vector<std::complex<double>> vector() const {
    const std::complex<double> i(0.0, 1.0);
    return {r * std::sin(theta) * std::exp(i * omega),
            std::sqrt(1.0 - r * r) * std::exp(i * alpha),
            r * std::cos(theta)};
  }

  /// The candidate that reproduces the optimal retro state |s1->.
  static CandidateRetroState optimal(double q) {
    return {std::sqrt(q), M_PI / 2, 0.0, 0.0};
  }
};

struct MajorizationVerdict {
  Spectrum lambda_reverse;    // spectrum of the optimal-ensemble rho-
  Spectrum lambda_candidate;  // spectrum of the candidate ensemble
  bool majorized = false;
  bool entropy_ordered = false;
  double entropy_reverse = 0.0;
  double entropy_candidate = 0.0;
};

namespace detail {

/// Eigenvalues of a complex Hermitian matrix through its real embedding
/// [[Re, -Im], [Im, Re]], whose spectrum is that of H with each eigenvalue
/// doubled.
inline Spectrum hermitian_eigenvalues(
    const std::vector<std::vector<std::complex<double>>>& h) {
  const std::size_t n = h.size();
  std::vector<std::vector<double>> big(2 * n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big[i][j] = h[i][j].real();
      big[i + n][j + n] = h[i][j].real();
      big[i][j + n] = -h[i][j].imag();
      big[i + n][j] = h[i][j].imag();
    }
  auto spec = symmetric_eigenvalues(SymmetricMatrix::checked(big));
  std::vector<double> vals;
  for (std::size_t k = 0; k < n; ++k) vals.push_back(spec.values[2 * k]);
  return Spectrum{vals};
}

}  // namespace detail

/// Tests the majorization claim behind the retro model's optimality: for a
/// constrained candidate |psi1>, the spectrum of the optimal ensemble must
/// majorize that of the candidate ensemble
///   rho^psi = pi0- |0><0| + pi2- |1><1| + pi1- |psi1><psi1|,
/// which in turn forces S(rho-) <= S(rho^psi).
inline MajorizationVerdict majorization_probe(double p, double q,
                                              const CandidateRetroState& cand) {
  HeraldingParams{p, q}.require_valid();
  if (!cand.satisfies_constraints(q))
    throw std::invalid_argument(
        "majorization_probe: fidelity constraint violated");
  const auto pi = heralding_reverse_stationary(p, q);

  // Optimal ensemble in the 3-dimensional basis; its support is 2-dim.
  std::vector<std::vector<double>> retro3 = {
      {1.0, 0.0, 0.0},
      {std::sqrt(q), std::sqrt(1.0 - q), 0.0},
      {0.0, 1.0, 0.0}};
  std::vector<std::vector<double>> rho_rev(3, std::vector<double>(3, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        rho_rev[r][c] += pi[i] * retro3[i][r] * retro3[i][c];

  const auto psi = cand.vector();
  std::vector<std::vector<std::complex<double>>> rho_cand(
      3, std::vector<std::complex<double>>(3, 0.0));
  rho_cand[0][0] += pi[0];
  rho_cand[1][1] += pi[2];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      rho_cand[r][c] += pi[1] * psi[r] * std::conj(psi[c]);

  MajorizationVerdict v;
  v.lambda_reverse = symmetric_eigenvalues(SymmetricMatrix::checked(rho_rev));
  v.lambda_candidate = detail::hermitian_eigenvalues(rho_cand);
  for (double& x : v.lambda_reverse.values) x = std::clamp(x, 0.0, 1.0);
  for (double& x : v.lambda_candidate.values) x = std::clamp(x, 0.0, 1.0);
  v.majorized = majorizes(v.lambda_reverse, v.lambda_candidate);
  v.entropy_reverse = von_neumann_entropy(v.lambda_reverse);
  v.entropy_candidate = von_neumann_entropy(v.lambda_candidate);
  v.entropy_ordered = v.entropy_reverse <= v.entropy_candidate + 1e-9;
  return v;
}

/// Rejection-samples a candidate uniformly over (r, theta, omega, alpha)
/// within the fidelity-constraint region.
inline CandidateRetroState sample_constrained_candidate(double q,
                                                        std::mt19937_64& rng) {
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (;;) {
    CandidateRetroState c{unit(), unit() * (M_PI / 2), unit() * 2.0 * M_PI,
                          unit() * 2.0 * M_PI};
    if (c.satisfies_constraints(q)) return c;
  }
}

}  // namespace qasym
