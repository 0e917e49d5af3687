#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qasym/families.hpp"
#include "qasym/spectral.hpp"

using namespace qasym;

namespace {

// 2x2 oracle for the heralding q-machine spectrum: eigenvalues (1 +- sqrt(c))/2
// of [[pi0, sqrt(pi0 pi1) F], [sqrt(pi0 pi1) F, pi1]] with F = sqrt(p(1-q)).
double heralding_cq_oracle(double p, double q) {
  const double pi0 = q / (p + q), pi1 = p / (p + q);
  const double f = std::sqrt(p * (1 - q));
  const double diff = pi0 - pi1;
  const double c = diff * diff + 4.0 * pi0 * pi1 * f * f;
  const double hi = (1.0 + std::sqrt(c)) / 2.0;
  return binary_entropy(hi);
}

}  // namespace

TEST_CASE("gram fixed point") {
  auto gc = gram_fixed_point(cycle(3));
  CHECK(gc.converged);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(gc.at(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));

  for (auto [p, q] : {std::pair{0.5, 0.5}, {0.2, 0.6}, {0.75, 0.3}}) {
    auto g = gram_fixed_point(heralding_coin(p, q));
    CHECK(g.converged);
    CHECK(g.iterations_used <= 2);  // value settles after one iteration
    CHECK(g.at(0, 1) == Catch::Approx(std::sqrt(p * (1 - q))).margin(1e-12));
  }

  auto gp = gram_fixed_point(perturbed_coin(0.3, 0.3));
  CHECK(gp.converged);
  CHECK(gp.at(0, 1) == Catch::Approx(2.0 * std::sqrt(0.21)).margin(1e-12));
  CHECK(gp.at(0, 1) == Catch::Approx(0.91652).margin(1e-5));
}

TEST_CASE("gram iteration is monotone from the identity and bounded") {
  for (const auto& m : {heralding_coin(0.3, 0.7), perturbed_coin(0.4, 0.25),
                        flower(4, 2)}) {
    std::vector<GramMatrix> partials;
    for (std::size_t cap = 1; cap <= 10; ++cap)
      partials.push_back(gram_fixed_point(m, 0.0, cap));  // forced cap runs
    for (std::size_t k = 0; k < partials.size(); ++k) {
      const auto& g = partials[k];
      CHECK_FALSE(g.converged);
      for (std::size_t i = 0; i < g.dimension; ++i)
        for (std::size_t j = 0; j < g.dimension; ++j) {
          CHECK(g.at(i, j) >= -1e-15);
          CHECK(g.at(i, j) <= 1.0 + 1e-12);
          if (k > 0) CHECK(g.at(i, j) >= partials[k - 1].at(i, j) - 1e-15);
        }
    }
  }
}

TEST_CASE("gram overlaps never exceed morph fidelities") {
  for (const auto& m : {heralding_coin(0.35, 0.6), perturbed_coin(0.3, 0.3),
                        flower(4, 2)}) {
    auto g = gram_fixed_point(m);
    const int n = static_cast<int>(m.num_states());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto fid = morph_fidelity(m, i, j, 12);
        for (double f : fid.values) CHECK(g.at(i, j) <= f + 1e-9);
      }
  }
  // Equality at the deepest horizon for the two coin families.
  for (const auto& m : {heralding_coin(0.35, 0.6), perturbed_coin(0.3, 0.3)}) {
    auto g = gram_fixed_point(m);
    auto fid = morph_fidelity(m, 0, 1, 40);
    CHECK(g.at(0, 1) == Catch::Approx(fid.final_value()).margin(1e-6));
  }
}

TEST_CASE("qmachine spectrum") {
  auto h = heralding_coin(0.5, 0.5);
  auto sh = qmachine_spectrum(h, gram_fixed_point(h));
  REQUIRE(sh.spectrum.values.size() == 2);
  CHECK(sh.spectrum.values[0] == Catch::Approx(0.75).margin(1e-12));
  CHECK(sh.spectrum.values[1] == Catch::Approx(0.25).margin(1e-12));
  CHECK(sh.entropy == Catch::Approx(0.8112781244591328).margin(1e-9));
  CHECK(sh.rank_at_tol == 2);

  auto c = cycle(3);
  auto sc = qmachine_spectrum(c, gram_fixed_point(c));
  for (double v : sc.spectrum.values)
    CHECK(v == Catch::Approx(1.0 / 3.0).margin(1e-12));
  CHECK(sc.entropy == Catch::Approx(std::log2(3.0)).margin(1e-12));
  CHECK(sc.rank_at_tol == 3);
}

TEST_CASE("qmachine complexity equals the 2x2 oracle") {
  for (auto [p, q] : {std::pair{0.2, 0.6}, {0.5, 0.5}, {0.7, 0.35}}) {
    CHECK(qmachine_complexity(heralding_coin(p, q)) ==
          Catch::Approx(heralding_cq_oracle(p, q)).margin(1e-9));
  }
  CHECK(qmachine_complexity(heralding_coin(0.2, 0.6)) ==
        Catch::Approx(0.7631).margin(1e-4));
  for (int k : {2, 3, 5})
    CHECK(qmachine_complexity(cycle(k)) ==
          Catch::Approx(std::log2(double(k))).margin(1e-12));
}

TEST_CASE("forward and reverse q-machine complexities coincide") {
  for (auto [p, q] : {std::pair{0.2, 0.6}, {0.5, 0.5}, {0.35, 0.8}}) {
    const double fwd = qmachine_complexity(heralding_coin(p, q));
    const double rev = qmachine_complexity(heralding_coin_reverse(p, q));
    CHECK(fwd == Catch::Approx(rev).margin(1e-9));
  }
}

TEST_CASE("forward and reverse q-machine spectra agree after padding") {
  for (const auto& m : {heralding_coin(0.3, 0.7), perturbed_coin(0.3, 0.3),
                        flower(8, 2), flower(8, 3), cycle(5)}) {
    auto fwd = qmachine_spectrum(m, gram_fixed_point(m));
    auto rev_machine = reverse_epsilon_machine(m);
    auto rev = qmachine_spectrum(rev_machine, gram_fixed_point(rev_machine));
    const std::size_t n =
        std::max(fwd.spectrum.values.size(), rev.spectrum.values.size());
    for (std::size_t k = 0; k < n; ++k) {
      const double a = k < fwd.spectrum.values.size() ? fwd.spectrum.values[k] : 0.0;
      const double b = k < rev.spectrum.values.size() ? rev.spectrum.values[k] : 0.0;
      CHECK(a == Catch::Approx(b).margin(1e-8));
    }
  }
}

TEST_CASE("flower q-machine stays within a qutrit") {
  auto f = flower(64, 2);
  auto s = qmachine_spectrum(f, gram_fixed_point(f));
  CHECK(s.rank_at_tol <= 3);
  CHECK(s.entropy <= std::log2(3.0) + 1e-9);
}

TEST_CASE("cq_bar never exceeds c_mu, strictly so with overlap") {
  for (const auto& m : {heralding_coin(0.3, 0.7), perturbed_coin(0.4, 0.25),
                        flower(4, 2), cycle(4)}) {
    auto g = gram_fixed_point(m);
    const double cq = qmachine_spectrum(m, g).entropy;
    const double cmu = statistical_complexity(m);
    CHECK(cq <= cmu + 1e-9);
    double max_off = 0.0;
    for (std::size_t i = 0; i < g.dimension; ++i)
      for (std::size_t j = i + 1; j < g.dimension; ++j)
        max_off = std::max(max_off, g.at(i, j));
    if (max_off > 1e-6) CHECK(cq < cmu - 1e-9);
  }
}

TEST_CASE("analyze_bidirectional on the heralding coin") {
  auto r = analyze_bidirectional(heralding_coin(0.5, 0.5));
  CHECK(r.c_mu_forward == Catch::Approx(1.0).margin(1e-9));
  CHECK(r.c_mu_reverse == Catch::Approx(1.5).margin(1e-9));
  CHECK(r.d_mu_forward == Catch::Approx(1.0).margin(1e-12));
  CHECK(r.d_mu_reverse == Catch::Approx(std::log2(3.0)).margin(1e-12));
  CHECK(r.cq_bar_forward == Catch::Approx(0.8112781244591328).margin(1e-9));
  CHECK(r.cq_bar_reverse == Catch::Approx(0.8112781244591328).margin(1e-9));
  CHECK(r.delta_c_mu == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.delta_cq_bar < 1e-9);
  CHECK(r.excess_converged);
  CHECK(r.excess_entropy <= r.cq_bar_forward + 1e-6);
  CHECK(r.cq_bar_forward <= r.c_mu_forward + 1e-9);
  CHECK(r.c_mu_forward <= r.c_mu_reverse + 1e-9);
  CHECK(r.result2_ok);
  CHECK(r.result3_ok);
  CHECK(r.dq_bar_reverse == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("analyze_bidirectional on deterministic cycles") {
  auto r = analyze_bidirectional(cycle(3));
  const double l3 = std::log2(3.0);
  CHECK(r.c_mu_forward == Catch::Approx(l3).margin(1e-9));
  CHECK(r.c_mu_reverse == Catch::Approx(l3).margin(1e-9));
  CHECK(r.d_mu_forward == Catch::Approx(l3).margin(1e-9));
  CHECK(r.d_mu_reverse == Catch::Approx(l3).margin(1e-9));
  CHECK(r.cq_bar_forward == Catch::Approx(l3).margin(1e-9));
  CHECK(r.cq_bar_reverse == Catch::Approx(l3).margin(1e-9));
  CHECK(r.excess_converged);
  CHECK(r.excess_entropy == Catch::Approx(l3).margin(1e-6));
  CHECK(r.delta_c_mu < 1e-9);
  CHECK(r.delta_cq_bar < 1e-9);
}

TEST_CASE("analyze_bidirectional on a flower process") {
  AnalysisConfig cfg;
  cfg.excess_l_max = 3;
  auto r = analyze_bidirectional(flower(8, 2), cfg);
  CHECK(r.c_mu_forward == Catch::Approx(1.0 + 1.5).margin(1e-9));
  CHECK(r.d_mu_forward == Catch::Approx(std::log2(9.0)).margin(1e-9));
  CHECK(r.d_mu_reverse <= std::log2(3.0) + 1e-9);
  CHECK(r.cq_bar_forward <= std::log2(3.0) + 1e-9);
  CHECK(r.cq_bar_reverse == Catch::Approx(r.cq_bar_forward).margin(1e-8));
  CHECK(r.result2_ok);
  CHECK(r.result3_ok);
}

TEST_CASE("excess entropy stays below cq_bar on the test family") {
  for (const auto& m : {heralding_coin(0.3, 0.7), heralding_coin(0.5, 0.5),
                        perturbed_coin(0.3, 0.3), cycle(4)}) {
    auto est = excess_entropy_estimate(m, 10);
    REQUIRE(est.converged);
    CHECK(est.last() <= qmachine_complexity(m) + 1e-6);
  }
}
