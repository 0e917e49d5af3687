#pragma once
//
// Statevector simulation of q-machines. A machine's memory states are
// embedded as real unit vectors reproducing the Gram fixed point; one
// generation step is the isometry
//     |S_i> (x) |blank>  ->  sum_x sqrt(T^x_i) |S_{d(i,x)}> (x) |x>,
// completed to a unitary on the memory (x) output registers. Measuring the
// output register in the computational basis emits a symbol and leaves the
// memory synchronized with the machine. The explicit three-qubit gate
// sequence for the reverse heralding coin is also provided.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qasym/families.hpp"
#include "qasym/machines.hpp"
#include "qasym/spectral.hpp"

namespace qasym {

using Amplitude = std::complex<double>;

/// Amplitudes over memory (x) output, indexed mem * output_dim + out.
struct StateVector {
  std::size_t memory_dim = 0;
  std::size_t output_dim = 0;
  std::vector<Amplitude> amplitudes;

  double norm() const {
    double s = 0.0;
    for (const Amplitude& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }
  void require_normalized(double tol = 1e-10) const {
    if (std::abs(norm() - 1.0) > tol)
      throw ValidationError("StateVector: norm " + std::to_string(norm()));
  }
};

/// Unitary dilation of one generation step.
struct StepOperator {
  std::size_t memory_dim = 0;
  std::size_t output_dim = 0;
  std::vector<Amplitude> unitary;                 // dim() x dim(), row-major
  std::vector<std::vector<double>> memory_states; // per machine state
  std::vector<int> symbol_to_outcome;             // alphabet -> output index
  std::vector<int> outcome_to_symbol;             // output index -> symbol/-1
  int blank_outcome = 0;

  std::size_t dim() const { return memory_dim * output_dim; }

  /// max |(U^dag U - I)_{ij}|
  double unitarity_defect() const {
    const std::size_t n = dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Amplitude s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          s += std::conj(unitary[k * n + i]) * unitary[k * n + j];
        worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    return worst;
  }

  /// Composite vector for memory state v and a blank output register.
  std::vector<Amplitude> inject(const std::vector<Amplitude>& v) const {
    std::vector<Amplitude> c(dim(), 0.0);
    for (std::size_t k = 0; k < memory_dim; ++k)
      c[k * output_dim + blank_outcome] = v[k];
    return c;
  }

  std::vector<Amplitude> apply(const std::vector<Amplitude>& c) const {
    const std::size_t n = dim();
    std::vector<Amplitude> y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      Amplitude s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += unitary[r * n + k] * c[k];
      y[r] = s;
    }
    return y;
  }

  /// Unnormalized post-measurement memory vector for one output index.
  std::vector<Amplitude> project_outcome(const std::vector<Amplitude>& y,
                                         int outcome) const {
    std::vector<Amplitude> z(memory_dim);
    for (std::size_t k = 0; k < memory_dim; ++k)
      z[k] = y[k * output_dim + outcome];
    return z;
  }
};

// ---------------------------------------------------------------------------
// Embedding and dilation
// ---------------------------------------------------------------------------

/// Real unit vectors realizing a converged Gram matrix, in dimension equal
/// to its numerical rank: G = V^T V via the eigendecomposition.
inline std::vector<std::vector<double>> memory_embedding(
    const GramMatrix& g, double rank_tol = kDefaultRankTol) {
  const std::size_t n = g.dimension;
  auto eig = jacobi_eigen(g.to_symmetric());
  if (eig.values.back() < -kGramPsdTol)
    throw ValidationError("memory_embedding: Gram is not PSD, min eigenvalue " +
                          std::to_string(eig.values.back()));
  std::size_t rank = 0;
  for (double v : eig.values)
    if (v > rank_tol) ++rank;
  std::vector<std::vector<double>> s(n, std::vector<double>(rank, 0.0));
  for (std::size_t k = 0; k < rank; ++k) {
    const double scale = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) s[i][k] = scale * eig.vectors[k][i];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < rank; ++k) dot += s[i][k] * s[j][k];
      if (std::abs(dot - g.entries[i][j]) > 1e-9)
        throw ValidationError(
            "memory_embedding: factorization does not reproduce the Gram "
            "matrix; overlaps may be unconverged");
    }
  return s;
}

namespace detail {

inline double rdot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Builds the step unitary for a machine from an embedding of its memory
/// states. The isometry on span{|S_i>(x)|blank>} is well defined exactly
/// because the Gram fixed-point equation makes it inner-product preserving;
/// it is completed to a unitary by Gram-Schmidt over the remaining basis
/// vectors in index order.
inline StepOperator build_step_operator(
    const UnifilarMachine& m, const std::vector<std::vector<double>>& embedding) {
  m.require_valid();
  const std::size_t n = m.num_states();
  if (embedding.size() != n)
    throw std::invalid_argument("build_step_operator: embedding size mismatch");
  const std::size_t d = embedding[0].size();
  const std::size_t a = m.alphabet_size();
  const std::size_t big = d * a;

  StepOperator op;
  op.memory_dim = d;
  op.output_dim = a;
  op.memory_states = embedding;
  op.blank_outcome = 0;
  op.symbol_to_outcome.resize(a);
  op.outcome_to_symbol.resize(a);
  for (std::size_t x = 0; x < a; ++x) {
    op.symbol_to_outcome[x] = static_cast<int>(x);
    op.outcome_to_symbol[x] = static_cast<int>(x);
  }

  // Image of |S_i> (x) |blank> under one generation step.
  std::vector<std::vector<double>> targets(n, std::vector<double>(big, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (const Transition& e : m.edges_from(static_cast<int>(i))) {
      const auto& succ = embedding[e.next];
      const double w = std::sqrt(e.prob);
      for (std::size_t k = 0; k < d; ++k)
        targets[i][k * a + e.symbol] += w * succ[k];
    }

  // Orthonormalize the memory states, carrying their targets along with the
  // same coefficients; the resulting target frame must be orthonormal.
  std::vector<std::vector<double>> basis, images;
  for (std::size_t i = 0; i < n && basis.size() < d; ++i) {
    std::vector<double> q = embedding[i], y = targets[i];
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const double coef = detail::rdot(basis[c], embedding[i]);
      for (std::size_t k = 0; k < d; ++k) q[k] -= coef * basis[c][k];
      for (std::size_t k = 0; k < big; ++k) y[k] -= coef * images[c][k];
    }
    const double nrm = std::sqrt(detail::rdot(q, q));
    if (nrm < 1e-8) continue;
    for (double& v : q) v /= nrm;
    for (double& v : y) v /= nrm;
    basis.push_back(std::move(q));
    images.push_back(std::move(y));
  }
  if (basis.size() != d)
    throw std::runtime_error(
        "build_step_operator: memory states do not span the embedding space");
  for (std::size_t c = 0; c < images.size(); ++c)
    for (std::size_t c2 = 0; c2 <= c; ++c2) {
      const double dot = detail::rdot(images[c], images[c2]);
      if (std::abs(dot - (c == c2 ? 1.0 : 0.0)) > 1e-9)
        throw std::runtime_error(
            "build_step_operator: isometry violation above 1e-9; "
            "the Gram matrix is likely unconverged");
    }

  // Column for input (k, blank): expand e_k over the memory basis.
  std::vector<std::vector<double>> columns(big, std::vector<double>(big, 0.0));
  std::vector<char> assigned(big, 0);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t col = k * a + 0;  // blank outcome is 0
    for (std::size_t c = 0; c < d; ++c) {
      const double coef = basis[c][k];
      for (std::size_t r = 0; r < big; ++r)
        columns[col][r] += coef * images[c][r];
    }
    assigned[col] = 1;
  }

  // Complete the remaining columns by Gram-Schmidt over standard basis
  // vectors in index order, re-orthogonalizing once for stability.
  std::size_t candidate = 0;
  for (std::size_t col = 0; col < big; ++col) {
    if (assigned[col]) continue;
    while (true) {
      if (candidate >= big)
        throw std::runtime_error("build_step_operator: completion failed");
      std::vector<double> v(big, 0.0);
      v[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c2 = 0; c2 < big; ++c2) {
          if (!assigned[c2] && c2 != col) continue;
          if (c2 == col) continue;
          const double coef = detail::rdot(columns[c2], v);
          for (std::size_t r = 0; r < big; ++r) v[r] -= coef * columns[c2][r];
        }
      const double nrm = std::sqrt(detail::rdot(v, v));
      if (nrm < 1e-6) continue;  // already spanned, try the next basis vector
      for (double& e : v) e /= nrm;
      columns[col] = std::move(v);
      assigned[col] = 1;
      break;
    }
  }

  op.unitary.assign(big * big, 0.0);
  for (std::size_t col = 0; col < big; ++col)
    for (std::size_t r = 0; r < big; ++r)
      op.unitary[r * big + col] = columns[col][r];
  return op;
}

/// Convenience: Gram fixed point, embedding, and dilation in one call.
inline StepOperator dilate(const UnifilarMachine& m,
                           double gram_tol = kDefaultGramTol,
                           double rank_tol = kDefaultRankTol) {
  auto g = gram_fixed_point(m, gram_tol);
  if (!g.converged)
    throw std::runtime_error("dilate: Gram iteration did not converge");
  return build_step_operator(m, memory_embedding(g, rank_tol));
}

// ---------------------------------------------------------------------------
// Exact distributions and sampling
// ---------------------------------------------------------------------------

/// Distribution over length-L words by branch propagation (no sampling).
inline std::map<std::vector<int>, double> exact_word_distribution(
    const StepOperator& op, int initial_state, int length) {
  if (length < 1)
    throw std::invalid_argument("exact_word_distribution: length < 1");
  if (initial_state < 0 ||
      initial_state >= static_cast<int>(op.memory_states.size()))
    throw std::invalid_argument("exact_word_distribution: bad initial state");
  std::map<std::vector<int>, double> dist;
  std::vector<Amplitude> start(op.memory_states[initial_state].begin(),
                               op.memory_states[initial_state].end());

  auto rec = [&](auto&& self, const std::vector<Amplitude>& mem,
                 std::vector<int>& word, int depth) -> void {
    if (depth == length) {
      double mass = 0.0;
      for (const Amplitude& z : mem) mass += std::norm(z);
      dist[word] += mass;
      return;
    }
    const auto y = op.apply(op.inject(mem));
    for (std::size_t o = 0; o < op.output_dim; ++o) {
      const int sym = op.outcome_to_symbol[o];
      if (sym < 0) continue;
      auto z = op.project_outcome(y, static_cast<int>(o));
      double mass = 0.0;
      for (const Amplitude& e : z) mass += std::norm(e);
      if (mass <= 1e-24) continue;
      word.push_back(sym);
      self(self, z, word, depth + 1);
      word.pop_back();
    }
  };
  std::vector<int> word;
  rec(rec, start, word, 0);
  return dist;
}

namespace detail {

inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Seeded, reproducible trajectory: repeated apply-measure steps with
/// inverse-CDF sampling over outcomes in stable index order. The generator
/// is std::mt19937_64; uniforms are (x >> 11) * 2^-53.
inline std::vector<int> sample_trajectory(const StepOperator& op,
                                          int initial_state, int length,
                                          std::uint64_t seed) {
  if (initial_state < 0 ||
      initial_state >= static_cast<int>(op.memory_states.size()))
    throw std::invalid_argument("sample_trajectory: bad initial state");
  std::mt19937_64 rng(seed);
  std::vector<Amplitude> mem(op.memory_states[initial_state].begin(),
                             op.memory_states[initial_state].end());
  std::vector<int> out;
  out.reserve(length);
  for (int t = 0; t < length; ++t) {
    const auto y = op.apply(op.inject(mem));
    const double u = detail::unit_double(rng());
    double cum = 0.0;
    int chosen = -1;
    double chosen_mass = 0.0;
    std::vector<Amplitude> chosen_mem;
    for (std::size_t o = 0; o < op.output_dim; ++o) {
      if (op.outcome_to_symbol[o] < 0) continue;
      auto z = op.project_outcome(y, static_cast<int>(o));
      double mass = 0.0;
      for (const Amplitude& e : z) mass += std::norm(e);
      if (mass <= 0.0) continue;
      cum += mass;
      chosen = static_cast<int>(o);
      chosen_mass = mass;
      chosen_mem = std::move(z);
      if (u < cum) break;
    }
    if (chosen < 0) throw std::runtime_error("sample_trajectory: no outcome");
    const double inv = 1.0 / std::sqrt(chosen_mass);
    for (Amplitude& e : chosen_mem) e *= inv;
    mem = std::move(chosen_mem);
    out.push_back(op.outcome_to_symbol[chosen]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Heralding-coin circuits
// ---------------------------------------------------------------------------

/// Forward heralding-coin step operator on a 2-dimensional memory and
/// 3-dimensional output register, with memory states realizing the
/// overlap <s0|s1> = sqrt(p(1-q)) of the optimal forward model.
inline StepOperator heralding_forward_circuit(double p, double q) {
  return dilate(heralding_coin(p, q));
}

namespace detail {

using Mat = std::vector<Amplitude>;  // 8x8 row-major

inline Mat mat_identity8() {
  Mat m(64, 0.0);
  for (int i = 0; i < 8; ++i) m[i * 8 + i] = 1.0;
  return m;
}

inline Mat mat_mul8(const Mat& a, const Mat& b) {
  Mat c(64, 0.0);
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      const Amplitude aik = a[i * 8 + k];
      if (aik == Amplitude{}) continue;
      for (int j = 0; j < 8; ++j) c[i * 8 + j] += aik * b[k * 8 + j];
    }
  return c;
}

/// Single-qubit gate g on the given bit (2 = memory, 1, 0 = output bits),
/// applied only when the control bit has the given value (-1: no control).
inline Mat controlled_gate8(const double g[2][2], int target_bit,
                            int control_bit, int control_value) {
  Mat m(64, 0.0);
  for (int col = 0; col < 8; ++col) {
    const int tb = (col >> target_bit) & 1;
    const bool active = control_bit < 0 ||
                        ((col >> control_bit) & 1) == control_value;
    if (!active) {
      m[col * 8 + col] = 1.0;
      continue;
    }
    for (int tb2 = 0; tb2 < 2; ++tb2) {
      const int row = (col & ~(1 << target_bit)) | (tb2 << target_bit);
      m[row * 8 + col] += g[tb2][tb];
    }
  }
  return m;
}

inline Mat swap_bits8(int bit_a, int bit_b) {
  Mat m(64, 0.0);
  for (int col = 0; col < 8; ++col) {
    const int a = (col >> bit_a) & 1, b = (col >> bit_b) & 1;
    int row = col & ~(1 << bit_a) & ~(1 << bit_b);
    row |= (b << bit_a) | (a << bit_b);
    m[row * 8 + col] = 1.0;
  }
  return m;
}

}  // namespace detail

/// Reverse heralding-coin step operator assembled from the explicit
/// three-qubit gate sequence: a control-on-zero U_p on the first output
/// qubit, a controlled U_q on the second, a CX between the output qubits,
/// and a final swap that moves the refreshed memory back to the memory
/// register. Outcomes 00 / 01 / 10 of the output register map to symbols
/// 0 / 1 / 2; outcome 11 never occurs. Memory states are
/// |s0> = |0>, |s1> = sqrt(q)|0> + sqrt(1-q)|1>, |s2> = |1>.
inline StepOperator heralding_retro_circuit(double p, double q) {
  HeraldingParams{p, q}.require_valid();
  const double up[2][2] = {{std::sqrt(1 - p), -std::sqrt(p)},
                           {std::sqrt(p), std::sqrt(1 - p)}};
  const double uq[2][2] = {{std::sqrt(q), -std::sqrt(1 - q)},
                           {std::sqrt(1 - q), std::sqrt(q)}};
  const double px[2][2] = {{0.0, 1.0}, {1.0, 0.0}};

  // Bits: 2 = memory, 1 = first output qubit, 0 = second output qubit.
  auto u = detail::controlled_gate8(up, 1, 2, 0);
  u = detail::mat_mul8(detail::controlled_gate8(uq, 0, 2, 1), u);
  u = detail::mat_mul8(detail::controlled_gate8(px, 0, 1, 1), u);
  u = detail::mat_mul8(detail::swap_bits8(2, 0), u);

  StepOperator op;
  op.memory_dim = 2;
  op.output_dim = 4;
  op.unitary = std::move(u);
  op.blank_outcome = 0;
  op.memory_states = {{1.0, 0.0},
                      {std::sqrt(q), std::sqrt(1 - q)},
                      {0.0, 1.0}};
  op.symbol_to_outcome = {0, 1, 2};
  op.outcome_to_symbol = {0, 1, 2, -1};
  return op;
}

}  // namespace qasym
