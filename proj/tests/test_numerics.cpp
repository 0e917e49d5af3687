#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "qasym/numerics.hpp"

using namespace qasym;

namespace {

// Closed-form 2x2 symmetric eigenvalues, (tr +- sqrt(tr^2 - 4 det)) / 2.
std::pair<double, double> eig2x2(double a, double b, double d) {
  const double tr = a + d;
  const double det = a * d - b * b;
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

double det3_shifted(const std::vector<std::vector<double>>& m, double lambda) {
  const double a = m[0][0] - lambda, b = m[0][1], c = m[0][2];
  const double d = m[1][0], e = m[1][1] - lambda, f = m[1][2];
  const double g = m[2][0], h = m[2][1], i = m[2][2] - lambda;
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

SymmetricMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = u(rng);
  return SymmetricMatrix::checked(m);
}

// Random orthogonal matrix as a product of Givens rotations.
std::vector<std::vector<double>> random_orthogonal(std::mt19937_64& rng,
                                                   std::size_t n) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) q[i][i] = 1.0;
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t r = p + 1; r < n; ++r) {
      const double th = angle(rng);
      const double c = std::cos(th), s = std::sin(th);
      for (std::size_t k = 0; k < n; ++k) {
        const double qp = q[k][p], qr = q[k][r];
        q[k][p] = c * qp - s * qr;
        q[k][r] = s * qp + c * qr;
      }
    }
  return q;
}

std::vector<double> random_density_spectrum(std::mt19937_64& rng,
                                            std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (double& x : v) {
    x = u(rng);
    s += x;
  }
  for (double& x : v) x /= s;
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0).margin(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // Direct evaluation of -x log2 x - (1-x) log2 (1-x) at x = 0.75.
  CHECK(binary_entropy(0.75) ==
        Catch::Approx(0.8112781244591328).margin(1e-6));
  CHECK(binary_entropy(0.3) == binary_entropy(0.7));
  CHECK_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
  CHECK_NOTHROW(binary_entropy(1.0 + 5e-13));
}

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(ProbabilityVector::checked({1.0, 0.0, 0.0})) == 0.0);
  CHECK(shannon_entropy(ProbabilityVector::checked({0.25, 0.5, 0.25})) ==
        Catch::Approx(1.5).margin(1e-12));
  const double third = 1.0 / 3.0;
  CHECK(shannon_entropy(ProbabilityVector::checked({third, third, third})) ==
        Catch::Approx(std::log2(3.0)).margin(1e-12));
  CHECK_THROWS_AS(ProbabilityVector::checked({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(ProbabilityVector::checked({1.1, -0.1}), ValidationError);
}

TEST_CASE("symmetric eigenvalues against closed forms") {
  auto id3 = symmetric_eigenvalues(SymmetricMatrix::identity(3));
  REQUIRE(id3.values.size() == 3);
  for (double v : id3.values) CHECK(v == Catch::Approx(1.0).margin(1e-12));

  // rho of the reverse heralding coin at p=0.2, q=0.6.
  const double b = 0.25 * std::sqrt(0.24);
  auto s = symmetric_eigenvalues(
      SymmetricMatrix::checked({{0.75, b}, {b, 0.25}}));
  auto [hi, lo] = eig2x2(0.75, b, 0.25);
  CHECK(s.values[0] == Catch::Approx(hi).margin(1e-10));
  CHECK(s.values[1] == Catch::Approx(lo).margin(1e-10));
  CHECK(s.values[0] == Catch::Approx(0.77839).margin(1e-4));
  CHECK(s.values[1] == Catch::Approx(0.22161).margin(1e-4));

  auto r = symmetric_eigenvalues(
      SymmetricMatrix::checked({{0.5, 0.5}, {0.5, 0.5}}));
  CHECK(r.values[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(r.values[1] == Catch::Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(SymmetricMatrix::checked({{0.0, 1.0}, {0.5, 0.0}}),
                  ValidationError);
}

TEST_CASE("eigenvalues satisfy the characteristic polynomial, dim 3") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    auto m = random_symmetric(rng, 3);
    std::vector<std::vector<double>> raw(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) raw[i][j] = m.at(i, j);
    auto spec = symmetric_eigenvalues(m);
    for (double lambda : spec.values)
      CHECK(std::abs(det3_shifted(raw, lambda)) < 1e-10);
  }
}

TEST_CASE("eigenvalue sum equals trace, dims 2..16") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 16; ++n) {
    auto m = random_symmetric(rng, n);
    auto spec = symmetric_eigenvalues(m);
    CHECK(spec.sum() == Catch::Approx(m.trace()).margin(1e-10));
  }
}

TEST_CASE("spectrum invariant under orthogonal basis change") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rep % 5;
    auto m = random_symmetric(rng, n);
    auto q = random_orthogonal(rng, n);
    std::vector<std::vector<double>> rot(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            s += q[i][a] * m.at(a, b) * q[j][b];
        rot[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rot[j][i] = rot[i][j];
    auto s1 = symmetric_eigenvalues(m);
    auto s2 = symmetric_eigenvalues(SymmetricMatrix::checked(rot));
    for (std::size_t k = 0; k < n; ++k)
      CHECK(s1.values[k] == Catch::Approx(s2.values[k]).margin(1e-9));
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(Spectrum{{1.0, 0.0}}) == 0.0);
  CHECK(von_neumann_entropy(Spectrum{{0.75, 0.25}}) ==
        Catch::Approx(binary_entropy(0.75)).margin(1e-12));
  CHECK(von_neumann_entropy(Spectrum{{0.5, 0.5}}) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(von_neumann_entropy(Spectrum{{1.0 + 1e-11, -1e-11}}) >= 0.0);
  CHECK_THROWS_AS(von_neumann_entropy(Spectrum{{0.6, 0.3}}), ValidationError);
}

TEST_CASE("majorization") {
  const double third = 1.0 / 3.0;
  CHECK(majorizes(Spectrum{{1.0, 0.0, 0.0}}, Spectrum{{third, third, third}}));
  CHECK_FALSE(majorizes(Spectrum{{0.5, 0.5}}, Spectrum{{0.6, 0.4}}));
  CHECK(majorizes(Spectrum{{0.6, 0.4}}, Spectrum{{0.6, 0.4}}));
  CHECK(majorizes(Spectrum{{0.7, 0.3}}, Spectrum{{0.7, 0.2, 0.1}}));
  CHECK_THROWS_AS(majorizes(Spectrum{{1.0}}, Spectrum{{0.5, 0.4}}),
                  std::invalid_argument);
}

TEST_CASE("mutual majorization implies equality") {
  std::mt19937_64 rng(17);
  int both_ways = 0;
  for (int rep = 0; rep < 400; ++rep) {
    auto a = Spectrum{random_density_spectrum(rng, 4)};
    auto b = Spectrum{random_density_spectrum(rng, 4)};
    if (rep % 7 == 0) b = a;  // force some equal pairs into the mix
    if (majorizes(a, b) && majorizes(b, a)) {
      ++both_ways;
      for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i] == Catch::Approx(b.values[i]).margin(1e-9));
    }
  }
  CHECK(both_ways > 0);
}

TEST_CASE("majorization implies entropy ordering (Schur concavity)") {
  std::mt19937_64 rng(19);
  int hits = 0;
  for (int rep = 0; rep < 400; ++rep) {
    auto a = Spectrum{random_density_spectrum(rng, 5)};
    auto b = Spectrum{random_density_spectrum(rng, 5)};
    if (majorizes(a, b)) {
      ++hits;
      CHECK(von_neumann_entropy(a) <= von_neumann_entropy(b) + 1e-9);
    }
  }
  CHECK(hits > 0);
}

TEST_CASE("stationary distribution") {
  auto one = stationary_distribution({{1.0}});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 1.0);

  // Perturbed coin with p = q = 0.3 is symmetric.
  auto pc = stationary_distribution({{0.7, 0.3}, {0.3, 0.7}});
  CHECK(pc[0] == Catch::Approx(0.5).margin(1e-12));
  CHECK(pc[1] == Catch::Approx(0.5).margin(1e-12));

  // Two-state heralding chain at p=0.2, q=0.6: pi_1 = p/(p+q).
  auto hc = stationary_distribution({{0.8, 0.2}, {0.6, 0.4}});
  CHECK(hc[0] == Catch::Approx(0.75).margin(1e-12));
  CHECK(hc[1] == Catch::Approx(0.25).margin(1e-12));

  // Period-2 chain still has a unique stationary distribution.
  auto per = stationary_distribution({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(per[0] == Catch::Approx(0.5).margin(1e-12));

  // Two disconnected cycles: multiple recurrent classes.
  CHECK_THROWS_AS(stationary_distribution({{0.0, 1.0, 0.0, 0.0},
                                           {1.0, 0.0, 0.0, 0.0},
                                           {0.0, 0.0, 0.0, 1.0},
                                           {0.0, 0.0, 1.0, 0.0}}),
                  ValidationError);
  CHECK_THROWS_AS(stationary_distribution({{0.5, 0.4}, {0.5, 0.5}}),
                  ValidationError);
}

TEST_CASE("stationary residual below 1e-12 on random chains") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rep % 6;
    std::vector<std::vector<double>> t(n, std::vector<double>(n));
    for (auto& row : t) {
      double s = 0.0;
      for (double& x : row) {
        x = u(rng);
        s += x;
      }
      for (double& x : row) x /= s;
    }
    auto pi = stationary_distribution(t);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += pi[i] * t[i][j];
      CHECK(std::abs(s - pi[j]) < 1e-12);
    }
  }
}
