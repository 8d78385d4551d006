#include "cohere/gdc_decide.hpp"
#include "cohere/incoherent_unitary.hpp"
#include "cohere/named_states.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cohere;

namespace {

const double kS2 = 1.0 / std::sqrt(2.0);

CoefficientMatrix cm(const PureState& p) { return coefficient_matrix(p); }

// Ψ = U / sqrt 2 for a Haar unitary U.
CoefficientMatrix random_maximally_entangled(std::mt19937_64& rng) {
  return CoefficientMatrix(oracle::haar_unitary(2, rng) * kS2);
}

}  // namespace

TEST(AbsRearranged, Examples) {
  const auto bell = cm(states::bell());
  const RMatrix id = abs_rearranged(bell, identity_arrangement(4));
  EXPECT_NEAR(id(0, 0), kS2, 1e-15);
  EXPECT_NEAR(id(1, 1), kS2, 1e-15);
  EXPECT_EQ(id(0, 1), 0.0);
  const RMatrix sw = abs_rearranged(bell, {0, 3, 2, 1});
  EXPECT_NEAR(sw(0, 1), kS2, 1e-15);
  EXPECT_EQ(sw(1, 1), 0.0);
  const RMatrix pp = abs_rearranged(cm(states::plus_plus()), {3, 1, 0, 2});
  EXPECT_LT((pp.array() - 0.5).abs().maxCoeff(), 1e-15);
  EXPECT_THROW(abs_rearranged(bell, {0, 0, 1, 2}), std::invalid_argument);
}

TEST(MaxOverlap, Examples) {
  const auto bell = max_localizable_overlap(cm(states::bell()));
  EXPECT_NEAR(bell.max_overlap, 1.0, 1e-12);
  EXPECT_TRUE(bell.is_zero);

  const auto r3 = max_localizable_overlap(cm(states::maximal_gdc()));
  EXPECT_NEAR(r3.max_overlap, std::sqrt((3.0 + std::sqrt(5.0)) / 6.0), 1e-12);
  EXPECT_NEAR(r3.max_overlap, oracle::brute_force_overlap(states::maximal_gdc().amplitudes(), 2, 2), 1e-12);
  EXPECT_FALSE(r3.is_zero);
  EXPECT_TRUE(r3.exhaustive);

  std::mt19937_64 rng(31);
  const auto prod = tensor_product(oracle::random_pure({3}, rng), oracle::random_pure({2}, rng));
  EXPECT_NEAR(max_localizable_overlap(cm(prod)).max_overlap, 1.0, 1e-12);
}

TEST(MaxOverlap, WitnessAttainsValue) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    const auto psi = cm(oracle::random_pure({2 + t % 2, 3}, rng));
    const auto d = max_localizable_overlap(psi);
    ASSERT_TRUE(d.witness_permutation);
    EXPECT_NEAR(largest_singular_value(abs_rearranged(psi, *d.witness_permutation)), d.max_overlap, 1e-12);
  }
}

TEST(MaxOverlap, ExhaustiveMatchesAllPermutations) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 40; ++t) {
    const int rows = 2, cols = 2 + t % 2;
    const auto psi = oracle::random_pure({rows, cols}, rng);
    EXPECT_NEAR(max_localizable_overlap(cm(psi)).max_overlap, oracle::brute_force_overlap(psi.amplitudes(), rows, cols), 1e-12);
  }
  for (int t = 0; t < 3; ++t) {
    const auto psi = oracle::random_pure({3, 3}, rng);
    EXPECT_NEAR(max_localizable_overlap(cm(psi)).max_overlap, oracle::brute_force_overlap(psi.amplitudes(), 3, 3), 1e-12);
  }
}

// Phases included: every slot permutation, a 64-point phase grid per entry,
// maximized over product states.
TEST(MaxOverlap, PhaseGridOracle2x2) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 4; ++t) {
    const auto psi = oracle::random_pure({2, 2}, rng);
    EXPECT_NEAR(max_localizable_overlap(cm(psi)).max_overlap, oracle::brute_force_overlap_phases_2x2(psi.amplitudes()), 1e-6);
  }
}

TEST(MaxOverlap, StochasticPathIsLowerBound) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 5; ++t) {
    const auto psi = cm(oracle::random_pure({3, 3}, rng));
    const auto exact = max_localizable_overlap(psi);
    DecideOptions opt;
    opt.budget = 20;
    opt.seed = static_cast<std::uint64_t>(t);
    const auto approx = max_localizable_overlap(psi, opt);
    EXPECT_FALSE(approx.exhaustive);
    EXPECT_LE(approx.arrangements_tested, 20u);
    EXPECT_LE(approx.max_overlap, exact.max_overlap + 1e-12);
    const auto again = max_localizable_overlap(psi, opt);
    EXPECT_EQ(again.max_overlap, approx.max_overlap);
    EXPECT_EQ(again.witness_permutation, approx.witness_permutation);
  }
}

TEST(MaxOverlap, InvariantUnderIncoherentUnitaries) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 50; ++t) {
    const Dims dims{2, 2 + t % 2};
    const auto psi = oracle::random_pure(dims, rng);
    std::vector<std::size_t> perm(static_cast<std::size_t>(dims[0] * dims[1]));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_real_distribution<double> angle(0.0, 6.0);
    std::vector<double> ph(perm.size());
    for (double& x : ph) x = angle(rng);
    const auto moved = apply(IncoherentUnitary(dims, perm, ph), psi);
    EXPECT_NEAR(max_localizable_overlap(cm(moved)).max_overlap, max_localizable_overlap(cm(psi)).max_overlap, 1e-12);
  }
}

TEST(RankOne, Examples) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(rank_one_arrangement_exists(random_maximally_entangled(rng)));
  EXPECT_FALSE(rank_one_arrangement_exists(cm(states::qutrit_example())));
  const auto zero_plus = bipartite(2, 2, {kS2, kS2, 0, 0});
  const auto w = rank_one_arrangement_exists(cm(zero_plus));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, identity_arrangement(4));
}

TEST(RankOne, WitnessIsRankOne) {
  std::mt19937_64 rng(38);
  for (int t = 0; t < 100; ++t) {
    const int da = 2 + t % 3, db = 2 + (t / 3) % 3;
    const auto psi = cm(oracle::scrambled_product(da, db, rng));
    const auto w = rank_one_arrangement_exists(psi);
    ASSERT_TRUE(w) << da << "x" << db;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(abs_rearranged(psi, *w));
    EXPECT_LT(svd.singularValues()(1), 1e-9);
  }
}

TEST(RankOne, MatchesBruteForceWithZeros) {
  std::mt19937_64 rng(39);
  std::bernoulli_distribution drop(0.4);
  for (int t = 0; t < 200; ++t) {
    const int rows = 2, cols = 2 + t % 2;
    CVector v = oracle::random_vector(rows * cols, rng);
    if (t % 3 == 0) v = oracle::scrambled_product(rows, cols, rng).amplitudes();
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (drop(rng)) v(k) = 0.0;
    if (v.norm() == 0.0) v(0) = 1.0;
    const PureState psi({rows, cols}, v / v.norm());
    EXPECT_EQ(rank_one_arrangement_exists(cm(psi)).has_value(), oracle::brute_force_rank_one(psi.amplitudes(), rows, cols, 1e-9))
        << t;
  }
}

TEST(PrimeSupport, Examples) {
  const auto q = prime_support_shortcut(cm(states::qutrit_example()));
  ASSERT_TRUE(q);
  EXPECT_FALSE(*q);
  EXPECT_FALSE(prime_support_shortcut(cm(states::plus_plus())));
  const double s = 1.0 / std::sqrt(3.0);
  CVector v = CVector::Zero(9);
  v(0) = v(4) = v(8) = s;
  EXPECT_FALSE(prime_support_shortcut(cm(PureState({3, 3}, v))));
}

TEST(DetCriterion, Examples) {
  EXPECT_TRUE(two_qubit_det_criterion(cm(states::bell())));
  EXPECT_NEAR(two_qubit_det_value(cm(states::maximal_gdc())), -1.0 / 3.0, 1e-15);
  EXPECT_FALSE(two_qubit_det_criterion(cm(states::maximal_gdc())));
  EXPECT_TRUE(two_qubit_det_criterion(cm(states::plus_plus())));
  EXPECT_THROW(two_qubit_det_value(cm(states::qutrit_example())), DimensionMismatch);
}

TEST(Decide, ObservationOne) {
  std::mt19937_64 rng(40);
  for (int t = 0; t < 500; ++t) {
    const auto psi = random_maximally_entangled(rng);
    const auto d = decide_gdc(psi);
    EXPECT_TRUE(d.is_zero);
    EXPECT_NEAR(d.max_overlap, 1.0, 1e-9);
  }
}

TEST(Decide, QutritExample) {
  const auto d = decide_gdc(cm(states::qutrit_example()));
  EXPECT_FALSE(d.is_zero);
  EXPECT_EQ(d.shortcut_used, Shortcut::prime_support);
  EXPECT_STREQ(to_string(d.shortcut_used), "prime_support");
}

TEST(Decide, RankOneFallbackBeyondBudget) {
  std::mt19937_64 rng(41);
  DecideOptions opt;
  opt.budget = 3;
  for (int t = 0; t < 20; ++t) {
    const auto psi = cm(oracle::scrambled_product(3, 4, rng));
    const auto d = decide_gdc(psi, opt);
    EXPECT_TRUE(d.is_zero);
    EXPECT_NEAR(d.max_overlap, 1.0, 1e-9);
  }
}

// The three criteria agree on generic states and on states built to have
// vanishing GDC.
TEST(Decide, TheoremEquivalence) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 1000; ++t) {
    const int cols = 2 + t % 2;
    const bool constructed = (t / 2) % 2 == 0;
    const auto psi = cm(constructed ? oracle::scrambled_product(2, cols, rng) : oracle::random_pure({2, cols}, rng));
    const bool overlap = max_localizable_overlap(psi).is_zero;
    const bool rank_one = rank_one_arrangement_exists(psi).has_value();
    EXPECT_EQ(overlap, rank_one) << t;
    EXPECT_EQ(overlap, constructed) << t;
    if (cols == 2) {
      EXPECT_EQ(overlap, two_qubit_det_criterion(psi)) << t;
    }
    EXPECT_EQ(decide_gdc(psi).is_zero, constructed) << t;
  }
}
