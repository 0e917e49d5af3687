#pragma once
//
// Shared numerical kernels: entropies, a cyclic Jacobi eigensolver for small
// dense symmetric matrices, stationary distributions of row-stochastic
// matrices, and the majorization partial order on spectra.
//
// Every entropy in this library is measured in bits (base-2 logarithm).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qasym/detail/scc.hpp"
#include "qasym/errors.hpp"

namespace qasym {

inline constexpr double kProbTol = 1e-12;
inline constexpr double kSpectrumSumTol = 1e-9;
inline constexpr double kEigenNegClamp = 1e-10;

/// -x log2(x), with 0 log 0 == 0.
inline double xlog2x(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

/// Binary entropy h(x) in bits; accepts [0,1] with 1e-12 slack.
inline double binary_entropy(double x) {
  if (!(x >= -kProbTol && x <= 1.0 + kProbTol))
    throw std::invalid_argument("binary_entropy: argument " +
                                std::to_string(x) + " outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  return xlog2x(x) + xlog2x(1.0 - x);
}

/// A discrete distribution: nonnegative entries summing to 1 within 1e-12.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  static ProbabilityVector checked(std::vector<double> entries) {
    double sum = 0.0;
    for (double& e : entries) {
      if (!(e >= -kProbTol))
        throw ValidationError("ProbabilityVector: negative entry " +
                              std::to_string(e));
      if (e < 0.0) e = 0.0;
      sum += e;
    }
    if (std::abs(sum - 1.0) > kProbTol)
      throw ValidationError("ProbabilityVector: entries sum to " +
                            std::to_string(sum) + ", expected 1");
    ProbabilityVector p;
    p.entries_ = std::move(entries);
    return p;
  }

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::vector<double> entries_;
};

/// Shannon entropy in bits; zero entries contribute nothing.
inline double shannon_entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (double e : p.entries()) h += xlog2x(e);
  return h;
}

/// Dense real symmetric matrix; construction symmetrizes after checking the
/// asymmetry stays within 1e-12.
class SymmetricMatrix {
 public:
  static SymmetricMatrix checked(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
      if (row.size() != n)
        throw ValidationError("SymmetricMatrix: matrix is not square");
    SymmetricMatrix s;
    s.n_ = n;
    s.a_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(m[i][j]))
          throw ValidationError("SymmetricMatrix: non-finite entry");
        if (std::abs(m[i][j] - m[j][i]) > 1e-12)
          throw ValidationError("SymmetricMatrix: entries (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ") break symmetry");
        s.a_[i * n + j] = 0.5 * (m[i][j] + m[j][i]);
      }
    return s;
  }

  static SymmetricMatrix identity(std::size_t n) {
    SymmetricMatrix s;
    s.n_ = n;
    s.a_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) s.a_[i * n + i] = 1.0;
    return s;
  }

  std::size_t dim() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Real eigenvalues sorted descending.
struct Spectrum {
  std::vector<double> values;

  static Spectrum from_unsorted(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Spectrum{std::move(v)};
  }
  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

struct EigenDecomposition {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi diagonalization. Sweeps until the off-diagonal Frobenius
/// norm drops below 1e-14, capped at 100 sweeps.
inline EigenDecomposition jacobi_eigen(const SymmetricMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
  };

  constexpr double kOffTol = 1e-14;
  constexpr std::size_t kMaxSweeps = 100;
  std::size_t sweep = 0;
  while (off_norm() > kOffTol) {
    if (++sweep > kMaxSweeps)
      throw std::runtime_error(
          "jacobi_eigen: no convergence after 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] > a[y * n + y];
  });

  EigenDecomposition d;
  d.sweeps = sweep;
  d.values.reserve(n);
  d.vectors.reserve(n);
  for (std::size_t k : order) {
    d.values.push_back(a[k * n + k]);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
    d.vectors.push_back(std::move(col));
  }
  return d;
}

inline Spectrum symmetric_eigenvalues(const SymmetricMatrix& m) {
  return Spectrum{jacobi_eigen(m).values};
}

/// von Neumann entropy of a density-operator spectrum, in bits. Eigenvalues
/// within -1e-10 of zero are clamped; the spectrum must sum to 1 within 1e-6.
inline double von_neumann_entropy(const Spectrum& s) {
  if (std::abs(s.sum() - 1.0) > 1e-6)
    throw ValidationError("von_neumann_entropy: spectrum sums to " +
                          std::to_string(s.sum()) + ", expected 1");
  double h = 0.0;
  for (double lambda : s.values) {
    if (lambda < -kEigenNegClamp || lambda > 1.0 + kEigenNegClamp)
      throw ValidationError("von_neumann_entropy: eigenvalue " +
                            std::to_string(lambda) + " outside [0,1]");
    h += xlog2x(std::clamp(lambda, 0.0, 1.0));
  }
  return h;
}

/// True iff a majorizes b: every prefix sum of a reaches the corresponding
/// prefix sum of b (1e-9 slack). Spectra are padded with zeros to equal
/// length; totals must agree within 1e-9.
inline bool majorizes(const Spectrum& a, const Spectrum& b) {
  if (std::abs(a.sum() - b.sum()) > 1e-9)
    throw std::invalid_argument("majorizes: totals differ by " +
                                std::to_string(std::abs(a.sum() - b.sum())));
  const std::size_t n = std::max(a.values.size(), b.values.size());
  double pa = 0.0, pb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pa += i < a.values.size() ? a.values[i] : 0.0;
    pb += i < b.values.size() ? b.values[i] : 0.0;
    if (pa < pb - 1e-9) return false;
  }
  return true;
}

namespace detail {

/// Gaussian elimination with partial pivoting; solves in place.
inline bool solve_linear(std::vector<std::vector<double>>& a,
                         std::vector<double>& b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return true;
}

}  // namespace detail

/// Stationary distribution of a row-stochastic matrix with a single recurrent
/// communicating class. Solves the null space of (T - I) directly, falling
/// back to damped power iteration, which also handles periodic chains.
inline ProbabilityVector stationary_distribution(
    const std::vector<std::vector<double>>& t) {
  const std::size_t n = t.size();
  if (n == 0) throw ValidationError("stationary_distribution: empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i].size() != n)
      throw ValidationError("stationary_distribution: matrix is not square");
    double row = 0.0;
    for (double e : t[i]) {
      if (!(e >= -kProbTol))
        throw ValidationError("stationary_distribution: negative entry in row " +
                              std::to_string(i));
      row += e;
    }
    if (std::abs(row - 1.0) > 1e-9)
      throw ValidationError("stationary_distribution: row " +
                            std::to_string(i) + " sums to " +
                            std::to_string(row));
  }

  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t[i][j] > 0.0) adj[i].push_back(static_cast<int>(j));
  auto terminal = detail::terminal_components(adj);
  if (terminal.size() > 1) {
    std::string msg = "stationary_distribution: " +
                      std::to_string(terminal.size()) +
                      " recurrent classes:";
    for (const auto& comp : terminal) {
      msg += " {";
      for (std::size_t k = 0; k < comp.size(); ++k)
        msg += (k ? "," : "") + std::to_string(comp[k]);
      msg += "}";
    }
    throw ValidationError(msg);
  }

  auto residual = [&](const std::vector<double>& pi) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += pi[i] * t[i][j];
      worst = std::max(worst, std::abs(s - pi[j]));
    }
    return worst;
  };
  auto finish = [&](std::vector<double> pi) {
    for (double& x : pi) x = std::max(x, 0.0);
    double s = 0.0;
    for (double x : pi) s += x;
    for (double& x : pi) x /= s;
    return ProbabilityVector::checked(std::move(pi));
  };

  // pi T = pi  <=>  (T' - I) pi = 0, with one row replaced by normalization.
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = t[j][i] - (i == j ? 1.0 : 0.0);
  std::vector<double> b(n, 0.0);
  a[n - 1].assign(n, 1.0);
  b[n - 1] = 1.0;
  if (detail::solve_linear(a, b)) {
    bool nonneg = true;
    for (double x : b)
      if (x < -1e-9) nonneg = false;
    if (nonneg && residual(b) < 1e-12) return finish(std::move(b));
  }

  // Damped power iteration: iterating (I + T)/2 removes periodicity.
  std::vector<double> v(n, 1.0 / static_cast<double>(n)), w(n);
  for (std::size_t iter = 0; iter < 1000000; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += v[i] * t[i][j];
      w[j] = 0.5 * (s + v[j]);
    }
    double norm = 0.0, delta = 0.0;
    for (double x : w) norm += x;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] /= norm;
      delta = std::max(delta, std::abs(w[j] - v[j]));
    }
    v.swap(w);
    if (delta < 1e-14) break;
  }
  if (residual(v) >= 1e-12)
    throw std::runtime_error(
        "stationary_distribution: power iteration did not reach 1e-12");
  return finish(std::move(v));
}

}  // namespace qasym
