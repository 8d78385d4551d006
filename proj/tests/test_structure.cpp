#include "cohere/named_states.hpp"
#include "cohere/structure.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cohere;

namespace {

SetPartition singletons(int d) {
  SetPartition p;
  for (int k = 0; k < d; ++k) p.push_back({k});
  return p;
}

SetPartition one_block(int d) {
  SetPartition p(1);
  for (int k = 0; k < d; ++k) p[0].push_back(k);
  return p;
}

DensityMatrix diagonal(int da, int db, std::mt19937_64& rng) {
  const auto p = oracle::random_probabilities(da * db, rng);
  CMatrix m = CMatrix::Zero(da * db, da * db);
  for (int k = 0; k < da * db; ++k) m(k, k) = p[static_cast<std::size_t>(k)];
  return {{da, db}, m};
}

}  // namespace

TEST(SetPartitions, BellNumbersCoarsestFirst) {
  const std::vector<std::size_t> bell{1, 2, 5, 15, 52};
  for (int n = 1; n <= 5; ++n) {
    const auto parts = set_partitions(n);
    EXPECT_EQ(parts.size(), bell[static_cast<std::size_t>(n - 1)]);
    EXPECT_EQ(parts.front().size(), 1u);
    EXPECT_EQ(parts.back().size(), static_cast<std::size_t>(n));
    for (std::size_t k = 1; k < parts.size(); ++k) EXPECT_LE(parts[k - 1].size(), parts[k].size());
    std::set<SetPartition> unique(parts.begin(), parts.end());
    EXPECT_EQ(unique.size(), parts.size());
  }
  EXPECT_TRUE(set_partitions(0).empty());
}

TEST(Invariance, Examples) {
  std::mt19937_64 rng(71);
  const auto bp = oracle::block_product_state(3, 2, rng);
  EXPECT_TRUE(check_invariance(bp, {one_block(3), one_block(2), {}}));
  const auto bell = projector(states::bell());
  EXPECT_FALSE(check_invariance(bell, {singletons(2), singletons(2), {}}));
  EXPECT_TRUE(check_invariance(bell, {one_block(2), one_block(2), {}}));
  EXPECT_TRUE(check_invariance(diagonal(2, 3, rng), {singletons(2), singletons(3), {}}));
  EXPECT_THROW(check_invariance(bell, {{{0}}, one_block(2), {}}), std::invalid_argument);
}

TEST(BlockProducts, Examples) {
  std::mt19937_64 rng(72);
  // Classical-quantum states pass the one-sided test on A but not on B
  // unless the conditional states coincide.
  const auto p = oracle::random_probabilities(2, rng);
  const CMatrix tau = oracle::random_mixed({3}, 2, rng).matrix();
  CMatrix same = CMatrix::Zero(6, 6), distinct = CMatrix::Zero(6, 6);
  for (int a = 0; a < 2; ++a) {
    CMatrix proj = CMatrix::Zero(2, 2);
    proj(a, a) = 1.0;
    same += p[static_cast<std::size_t>(a)] * detail::kron(proj, tau);
    distinct += p[static_cast<std::size_t>(a)] * detail::kron(proj, oracle::random_mixed({3}, 2, rng).matrix());
  }
  EXPECT_TRUE(check_block_products(DensityMatrix({2, 3}, same), {singletons(2), one_block(3), {}}));
  const DensityMatrix cq({2, 3}, distinct);
  EXPECT_FALSE(check_block_products(cq, {singletons(2), one_block(3), {}}));
  EXPECT_GT(delta_mutual_information(cq), 1e-6);

  const auto graph = projector(states::graph());
  for (const auto& pa : set_partitions(2))
    for (const auto& pb : set_partitions(2)) {
      const PartitionCertificate c{pa, pb, {}};
      EXPECT_FALSE(check_block_products(graph, c) && check_invariance(graph, c));
    }
  EXPECT_FALSE(check_block_products(graph, {one_block(2), one_block(2), {}}));

  const auto prod = tensor_product(oracle::random_mixed({2}, 2, rng), oracle::random_mixed({3}, 3, rng));
  EXPECT_TRUE(check_block_products(prod, {one_block(2), one_block(3), {}}));
}

TEST(Certificate, Examples) {
  std::mt19937_64 rng(73);
  const auto diag = diagonal(2, 2, rng);
  const auto c = find_zero_dc_certificate(diag);
  ASSERT_TRUE(c);
  EXPECT_TRUE(check_invariance(diag, *c));
  EXPECT_TRUE(check_block_products(diag, *c));
  EXPECT_EQ(c->partition_A, singletons(2));
  EXPECT_EQ(c->partition_B, singletons(2));

  const auto prod = tensor_product(oracle::random_mixed({3}, 3, rng), oracle::random_mixed({2}, 2, rng));
  const auto cp = find_zero_dc_certificate(prod);
  ASSERT_TRUE(cp);
  EXPECT_EQ(cp->partition_A, one_block(3));
  EXPECT_EQ(cp->partition_B, one_block(2));
  for (const auto& e : cp->block_factors) EXPECT_LE(e.reconstruction_error, 1e-8);

  EXPECT_FALSE(find_zero_dc_certificate(projector(states::bell())));
  EXPECT_THROW(find_zero_dc_certificate(maximally_mixed(6)), DimensionMismatch);
  EXPECT_THROW(find_zero_dc_certificate(tensor_product(maximally_mixed(6), maximally_mixed(2))), DimensionMismatch);
}

TEST(Certificate, SoundAndCompleteOnBlockProducts) {
  std::mt19937_64 rng(74);
  for (int t = 0; t < 200; ++t) {
    const int da = 2 + t % 3, db = 2 + (t / 3) % 3;
    const auto rho = oracle::block_product_state(da, db, rng);
    const auto c = find_zero_dc_certificate(rho);
    ASSERT_TRUE(c) << t;
    EXPECT_LE(delta_mutual_information(rho), 1e-8) << t;
    EXPECT_TRUE(check_invariance(rho, *c, {1e-9, 1e-8, 1e-12}));
    EXPECT_TRUE(check_block_products(rho, *c));
  }
}

TEST(Certificate, AbsentForGenericStates) {
  std::mt19937_64 rng(75);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const auto rho = oracle::random_mixed({2, 2}, 1 + t % 4, rng);
    if (delta_mutual_information(rho) <= 1e-4) continue;
    ++checked;
    EXPECT_FALSE(find_zero_dc_certificate(rho)) << t;
  }
  EXPECT_GE(checked, 190);
}

TEST(Certificate, PureStatesOnlyWhenProduct) {
  std::mt19937_64 rng(76);
  for (int t = 0; t < 100; ++t) {
    const int da = 2 + t % 2, db = 2 + (t / 2) % 2;
    const PureState psi = t % 3 == 0 ? tensor_product(oracle::random_pure({da}, rng), oracle::random_pure({db}, rng))
                                     : oracle::random_pure({da, db}, rng);
    const auto c = find_zero_dc_certificate(projector(psi));
    EXPECT_EQ(c.has_value(), schmidt_rank(psi) == 1) << t;
  }
}
