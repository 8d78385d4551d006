#pragma once

// Certificates of vanishing distributed coherence for bipartite mixed states.
//
// Delta I(A:B) = 0 iff there are partitions of the local incoherent labels,
// with diagonal projectors P^A_a and P^B_b, such that pinching by
// {P^A_a (x) P^B_b} leaves rho invariant and every one-sided block
// (P^A_a (x) 1) rho (P^A_a (x) 1), and likewise every (1 (x) P^B_b) block, is
// a product state.

#include "cohere/measures.hpp"
#include "cohere/state.hpp"

#include <optional>
#include <tuple>

namespace cohere {

using SetPartition = std::vector<std::vector<int>>;

enum class Side { A, B };

struct BlockEvidence {
  Side side = Side::A;
  int block = 0;
  double weight = 0.0;       // trace of the unnormalized block
  CMatrix marginal_a;        // of the normalized block, on the full local space
  CMatrix marginal_b;
  double reconstruction_error = 0.0;  // trace distance to marginal_a (x) marginal_b
};

struct PartitionCertificate {
  SetPartition partition_A;
  SetPartition partition_B;
  std::vector<BlockEvidence> block_factors;
};

struct StructureTolerance {
  double invariance = 1e-9;
  double product = 1e-8;
  double min_weight = 1e-12;  // lighter blocks are skipped
};

// All set partitions of {0..n-1}, coarsest first; equal block counts keep
// restricted-growth-string order.
inline std::vector<SetPartition> set_partitions(int n) {
  std::vector<SetPartition> out;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int max_block) -> void {
    if (pos == n) {
      SetPartition p(static_cast<std::size_t>(max_block + 1));
      for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(rgs[static_cast<std::size_t>(k)])].push_back(k);
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      self(self, pos + 1, std::max(max_block, b));
    }
  };
  if (n <= 0) return out;
  rgs[0] = 0;
  rec(rec, 1, 0);
  std::stable_sort(out.begin(), out.end(), [](const SetPartition& a, const SetPartition& b) { return a.size() < b.size(); });
  return out;
}

namespace detail {

inline std::vector<int> block_map(const SetPartition& p, int d) {
  std::vector<int> map(static_cast<std::size_t>(d), -1);
  for (std::size_t b = 0; b < p.size(); ++b)
    for (int k : p[b]) {
      if (k < 0 || k >= d || map[static_cast<std::size_t>(k)] != -1)
        throw std::invalid_argument("invalid partition: blocks must cover the labels disjointly");
      map[static_cast<std::size_t>(k)] = static_cast<int>(b);
    }
  for (int b : map)
    if (b < 0) throw std::invalid_argument("invalid partition: blocks must cover the labels disjointly");
  return map;
}

inline double trace_norm(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

// One-sided block for the labels of `side` in `block`, as a full-size
// matrix; fills weight, marginals and reconstruction error when nonempty.
inline BlockEvidence block_evidence(const DensityMatrix& rho, Side side, const std::vector<int>& map, int block) {
  const int db = rho.dims()[1];
  const auto n = static_cast<Eigen::Index>(rho.dimension());
  auto inside = [&](Eigen::Index label) {
    const int local = side == Side::A ? static_cast<int>(label / db) : static_cast<int>(label % db);
    return map[static_cast<std::size_t>(local)] == block;
  };
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    if (inside(r))
      for (Eigen::Index c = 0; c < n; ++c)
        if (inside(c)) m(r, c) = rho.matrix()(r, c);

  BlockEvidence e;
  e.side = side;
  e.block = block;
  e.weight = m.trace().real();
  if (e.weight <= 0.0) return e;
  m /= e.weight;
  const DensityMatrix blk(Trusted{}, rho.dims(), m);
  e.marginal_a = partial_trace(blk, {0}).matrix();
  e.marginal_b = partial_trace(blk, {1}).matrix();
  e.reconstruction_error = 0.5 * trace_norm(m - kron(e.marginal_a, e.marginal_b));
  return e;
}

inline void require_structure_dims(const DensityMatrix& rho) { require_bipartite(rho.dims(), "structure analysis"); }

inline bool side_products(const DensityMatrix& rho, Side side, const SetPartition& p, const StructureTolerance& t,
                          std::vector<BlockEvidence>* evidence) {
  const int d = side == Side::A ? rho.dims()[0] : rho.dims()[1];
  const std::vector<int> map = block_map(p, d);
  for (int b = 0; b < static_cast<int>(p.size()); ++b) {
    BlockEvidence e = block_evidence(rho, side, map, b);
    if (e.weight > t.min_weight && e.reconstruction_error > t.product) return false;
    if (evidence) evidence->push_back(std::move(e));
  }
  return true;
}

inline bool pinching_invariant(const DensityMatrix& rho, const SetPartition& pa, const SetPartition& pb, double tol) {
  const int da = rho.dims()[0], db = rho.dims()[1];
  const std::vector<int> ma = block_map(pa, da), mb = block_map(pb, db);
  const auto n = static_cast<Eigen::Index>(rho.dimension());
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const bool kept = ma[static_cast<std::size_t>(r / db)] == ma[static_cast<std::size_t>(c / db)] &&
                        mb[static_cast<std::size_t>(r % db)] == mb[static_cast<std::size_t>(c % db)];
      if (!kept && std::abs(rho.matrix()(r, c)) > tol) return false;
    }
  return true;
}

}  // namespace detail

inline bool check_invariance(const DensityMatrix& rho, const PartitionCertificate& cert,
                             const StructureTolerance& t = {}) {
  detail::require_structure_dims(rho);
  return detail::pinching_invariant(rho, cert.partition_A, cert.partition_B, t.invariance);
}

inline bool check_block_products(const DensityMatrix& rho, const PartitionCertificate& cert,
                                 const StructureTolerance& t = {}) {
  detail::require_structure_dims(rho);
  return detail::side_products(rho, Side::A, cert.partition_A, t, nullptr) &&
         detail::side_products(rho, Side::B, cert.partition_B, t, nullptr);
}

// Enumerates partition pairs ordered by total block count (then by each
// side's coarsest-first index) and returns the first that certifies
// Delta I = 0. `tol` bounds the block product error; the pinching tolerance
// is tol / 10.
inline std::optional<PartitionCertificate> find_zero_dc_certificate(const DensityMatrix& rho, double tol = 1e-8) {
  detail::require_structure_dims(rho);
  const int da = rho.dims()[0], db = rho.dims()[1];
  if (da > 5 || db > 5) throw DimensionMismatch("find_zero_dc_certificate: local dimensions above 5");
  const StructureTolerance t{tol / 10.0, tol};

  const auto parts_a = set_partitions(da), parts_b = set_partitions(db);
  std::vector<std::size_t> ok_a, ok_b;
  for (std::size_t k = 0; k < parts_a.size(); ++k)
    if (detail::side_products(rho, Side::A, parts_a[k], t, nullptr)) ok_a.push_back(k);
  for (std::size_t k = 0; k < parts_b.size(); ++k)
    if (detail::side_products(rho, Side::B, parts_b[k], t, nullptr)) ok_b.push_back(k);

  struct Pair {
    std::size_t blocks, a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t a : ok_a)
    for (std::size_t b : ok_b) pairs.push_back({parts_a[a].size() + parts_b[b].size(), a, b});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(x.blocks, x.a, x.b) < std::tie(y.blocks, y.a, y.b);
  });

  for (const Pair& p : pairs) {
    if (!detail::pinching_invariant(rho, parts_a[p.a], parts_b[p.b], t.invariance)) continue;
    PartitionCertificate cert{parts_a[p.a], parts_b[p.b], {}};
    detail::side_products(rho, Side::A, cert.partition_A, t, &cert.block_factors);
    detail::side_products(rho, Side::B, cert.partition_B, t, &cert.block_factors);
    return cert;
  }
  return std::nullopt;
}

}  // namespace cohere
