#include "cohere/gdc_twoqubit.hpp"
#include "cohere/measures.hpp"
#include "cohere/named_states.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace cohere;

namespace {

const double kS2 = 1.0 / std::sqrt(2.0);

double maximal_value() {
  return std::log2(3.0) - 2.0 * (oracle::binary(1.0 / 3.0) - oracle::binary((3.0 + std::sqrt(5.0)) / 6.0));
}

CoefficientMatrix random_cm(std::mt19937_64& rng) { return CoefficientMatrix(oracle::ginibre(2, 2, rng).normalized()); }

}  // namespace

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(c_dc_closed_form(coefficient_matrix(states::graph())), 2.0, 1e-12);
  EXPECT_NEAR(c_dc_closed_form(coefficient_matrix(states::plus_plus())), 0.0, 1e-12);
  Eigen::Matrix2d bad;
  bad << 1, 1, 0, 0;
  EXPECT_THROW(c_dc_closed_form(bad), InvalidState);
}

TEST(ClosedForm, MatchesDenseOracle) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 300; ++t) {
    const auto psi = random_cm(rng);
    EXPECT_NEAR(c_dc_closed_form(psi), oracle::distributed_pure(psi.to_state().amplitudes(), 2, 2), 1e-10);
  }
}

TEST(ClosedForm, MaximallyEntangledFormula) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 200; ++t) {
    const CoefficientMatrix psi(oracle::haar_unitary(2, rng) * kS2);
    const double p = 2.0 * std::norm(psi(0, 0));
    EXPECT_NEAR(c_dc_closed_form(psi), 1.0 + oracle::binary(p), 1e-10);
  }
}

TEST(Exact, Examples) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) EXPECT_NEAR(c_gdc_exact(CoefficientMatrix(oracle::haar_unitary(2, rng) * kS2)).c_gdc, 0.0, 1e-10);

  const auto r = c_gdc_exact(states::maximal_gdc());
  EXPECT_NEAR(r.c_gdc, maximal_value(), 1e-12);
  EXPECT_NEAR(r.c_gdc, 0.8485, 5e-5);
  EXPECT_NEAR(r.c_gdc, 0.8484664, 1e-6);
  EXPECT_EQ(r.optimal_arrangement, TwoQubitArrangement::identity);
  EXPECT_NEAR(r.det_abs_sq, 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(r.marginal_entropies[0], oracle::binary((3.0 + std::sqrt(5.0)) / 6.0), 1e-12);
  EXPECT_NEAR(r.dephased_entropies[2], std::log2(3.0), 1e-12);

  EXPECT_EQ(c_gdc_exact(basis_state({2, 2}, 0)).c_gdc, 0.0);
  EXPECT_THROW(c_gdc_exact(states::qutrit_example()), DimensionMismatch);
}

TEST(Exact, MatchesAllPermutations) {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 200; ++t) {
    const auto psi = random_cm(rng);
    EXPECT_NEAR(c_gdc_exact(psi).c_gdc, oracle::brute_force_c_gdc_2x2(psi.to_state().amplitudes()), 1e-10);
  }
}

TEST(Exact, PhaseInvariance) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < 100; ++t) {
    const auto psi = random_cm(rng);
    CMatrix ph = psi.entries();
    for (int k = 0; k < 4; ++k) ph(k / 2, k % 2) *= std::polar(1.0, angle(rng));
    EXPECT_NEAR(c_gdc_exact(psi).c_gdc, c_gdc_exact(CoefficientMatrix(ph)).c_gdc, 1e-13);
  }
}

TEST(Exact, RelabelingInvariance) {
  std::mt19937_64 rng(56);
  for (int t = 0; t < 100; ++t) {
    const auto psi = random_cm(rng);
    const double v = c_gdc_exact(psi).c_gdc;
    CMatrix rows = psi.entries(), cols = psi.entries();
    rows.row(0).swap(rows.row(1));
    cols.col(0).swap(cols.col(1));
    EXPECT_NEAR(c_gdc_exact(CoefficientMatrix(rows)).c_gdc, v, 1e-12);
    EXPECT_NEAR(c_gdc_exact(CoefficientMatrix(cols)).c_gdc, v, 1e-12);
    EXPECT_NEAR(c_gdc_exact(CoefficientMatrix(CMatrix(psi.entries().transpose()))).c_gdc, v, 1e-12);
  }
}

TEST(Exact, BoundedByIdentityArrangement) {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 200; ++t) {
    const auto psi = random_cm(rng);
    const auto r = c_gdc_exact(psi);
    EXPECT_LE(r.c_gdc, c_dc_closed_form(psi) + 1e-15);
    EXPECT_LE(r.c_gdc, r.c_dc + 1e-15);
    EXPECT_GE(r.c_gdc, 0.0);
  }
}

// Over phases, the determinant modulus is smallest when all phases cancel.
TEST(Exact, PhaseStrippingDeterminant) {
  std::mt19937_64 rng(58);
  for (int t = 0; t < 200; ++t) {
    const auto psi = random_cm(rng);
    const double expected = std::pow(std::abs(psi(0, 0)) * std::abs(psi(1, 1)) - std::abs(psi(0, 1)) * std::abs(psi(1, 0)), 2);
    EXPECT_NEAR(oracle::min_det_sq_phase_grid(psi.to_state().amplitudes()), expected, 1e-3);
  }
}

TEST(Scan, Examples) {
  EXPECT_NEAR(c_gdc_exact(rank_three_state(std::numbers::pi / 2, std::numbers::pi / 4)).c_gdc, 0.0, 1e-12);
  EXPECT_NEAR(c_gdc_exact(rank_three_state(std::acos(1.0 / std::sqrt(3.0)), std::numbers::pi / 4)).c_gdc, maximal_value(), 1e-12);
  const auto z = rank_three_state(0.0, 0.3);
  EXPECT_NEAR(std::abs(z(1, 0)), 1.0, 1e-15);
  EXPECT_EQ(c_gdc_exact(z).c_gdc, 0.0);
}

TEST(Scan, GridLayout) {
  const auto pts = scan_rank_three(3, 4);
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_EQ(pts[0].theta, 0.0);
  EXPECT_EQ(pts[3].phi, std::numbers::pi / 2);
  EXPECT_EQ(pts[4].theta, std::numbers::pi / 4);
  EXPECT_EQ(pts[11].theta, std::numbers::pi / 2);
  EXPECT_THROW(scan_rank_three(1, 5), std::invalid_argument);
  const auto corners = scan_rank_three(2, 2);
  for (const auto& p : corners) EXPECT_EQ(p.c_gdc, 0.0);
}

TEST(Scan, ScheduleIndependent) {
  setenv("COHERE_THREADS", "1", 1);
  const auto serial = scan_rank_three(21, 17);
  setenv("COHERE_THREADS", "7", 1);
  const auto parallel = scan_rank_three(21, 17);
  unsetenv("COHERE_THREADS");
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].theta, parallel[k].theta);
    EXPECT_EQ(serial[k].phi, parallel[k].phi);
    EXPECT_EQ(serial[k].c_gdc, parallel[k].c_gdc);
  }
}

TEST(FindMax, RecoversMaximalState) {
  const auto r = find_max_gdc(64, 42);
  EXPECT_NEAR(r.value, maximal_value(), 1e-4);
  EXPECT_EQ(coherence_rank(r.state.to_state(), 1e-3), 3);
  std::vector<double> m;
  for (int k = 0; k < 4; ++k) m.push_back(std::abs(r.state.slot(static_cast<std::size_t>(k))));
  std::sort(m.begin(), m.end());
  EXPECT_NEAR(m[0], 0.0, 1e-3);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(m[static_cast<std::size_t>(k)], 1.0 / std::sqrt(3.0), 1e-3);
}

TEST(FindMax, DeterministicAcrossThreads) {
  setenv("COHERE_THREADS", "1", 1);
  const auto a = find_max_gdc(8, 7);
  setenv("COHERE_THREADS", "4", 1);
  const auto b = find_max_gdc(8, 7);
  unsetenv("COHERE_THREADS");
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.angles, b.angles);
  EXPECT_EQ(a.best_restart, b.best_restart);
}
