#pragma once

// Exact decision of vanishing genuine distributed coherence for bipartite
// pure states.
//
// A pure state can be decorrelated by an incoherent unitary iff some
// rearrangement of its coefficient moduli has largest singular value 1,
// equivalently rank one. Phases never matter: they can always be aligned
// with the best product state.

#include "cohere/arrangements.hpp"
#include "cohere/state.hpp"
#include "cohere/incoherent_unitary.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace cohere {

enum class Shortcut { none, prime_support, two_qubit_determinant };

inline const char* to_string(Shortcut s) {
  switch (s) {
    case Shortcut::prime_support: return "prime_support";
    case Shortcut::two_qubit_determinant: return "two_qubit_determinant";
    case Shortcut::none: break;
  }
  return "none";
}

struct GdcDecision {
  bool is_zero = false;
  double max_overlap = 0.0;
  std::optional<Arrangement> witness_permutation;
  Shortcut shortcut_used = Shortcut::none;
  // False when the arrangement search was not exhaustive, in which case
  // max_overlap is a lower bound.
  bool exhaustive = true;
  std::uint64_t arrangements_tested = 0;
};

struct DecideOptions {
  std::uint64_t budget = 100000;
  double tol = 1e-9;          // is_zero iff max_overlap >= 1 - tol
  double zero = tol::kZero;   // moduli, minors and determinant threshold
  std::uint64_t seed = 0;     // stochastic search beyond the budget
};

namespace detail {

inline std::vector<double> slot_moduli(const CoefficientMatrix& psi) {
  std::vector<double> v(static_cast<std::size_t>(psi.rows() * psi.cols()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::abs(psi.slot(k));
  return v;
}

inline RMatrix arranged(const std::vector<double>& values, const Arrangement& a, int rows, int cols) {
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = values[a[static_cast<std::size_t>(i * cols + j)]];
  return m;
}

inline bool all_minors_vanish(const RMatrix& m, double zero) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = i + 1; k < m.rows(); ++k)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index l = j + 1; l < m.cols(); ++l)
          if (std::abs(m(i, j) * m(k, l) - m(i, l) * m(k, j)) > zero) return false;
  return true;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline std::uint64_t tableau_count_or_max(int rows, int cols) {
  try {
    return arrangement_count_N(rows, cols);
  } catch (const std::overflow_error&) {
    return std::numeric_limits<std::uint64_t>::max();
  }
}

}  // namespace detail

inline RMatrix abs_rearranged(const CoefficientMatrix& psi, const Arrangement& pi) {
  const auto n = static_cast<std::size_t>(psi.rows() * psi.cols());
  if (!is_bijection(pi, n)) throw std::invalid_argument("abs_rearranged: arrangement is not a bijection on slots");
  return detail::arranged(detail::slot_moduli(psi), pi, psi.rows(), psi.cols());
}

// max over arrangements of the largest singular value of the rearranged
// moduli. By the rearrangement inequality the optimum places the sorted
// moduli along some standard Young tableau of the grid, so exhaustive search
// enumerates those N tableaux. Beyond the budget a seeded random-transposition
// ascent gives a lower bound.
inline GdcDecision max_localizable_overlap(const CoefficientMatrix& psi, const DecideOptions& opt = {}) {
  const int rows = psi.rows(), cols = psi.cols();
  const auto n = static_cast<std::size_t>(rows * cols);
  const std::vector<double> values = detail::slot_moduli(psi);
  const std::vector<std::size_t> sorted = slots_by_value(values);

  GdcDecision out;
  double best = -1.0;
  Arrangement best_arr;
  auto consider = [&](const Arrangement& a) {
    const double s = largest_singular_value(detail::arranged(values, a, rows, cols));
    ++out.arrangements_tested;
    if (s > best || (s == best && a < best_arr)) {
      best = s;
      best_arr = a;
    }
  };

  if (detail::tableau_count_or_max(rows, cols) <= opt.budget) {
    Arrangement a(n);
    enumerate_tableaux(
        rows, cols, [](int, int, const std::vector<int>&) { return true; },
        [&](const std::vector<int>& rank) {
          for (std::size_t cell = 0; cell < n; ++cell) a[cell] = sorted[static_cast<std::size_t>(rank[cell])];
          consider(a);
          return false;
        });
    out.exhaustive = true;
  } else {
    out.exhaustive = false;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Arrangement current(sorted.begin(), sorted.end());  // row-major staircase
    consider(current);
    double current_value = best;
    std::uint64_t stale = 0;
    while (out.arrangements_tested < opt.budget) {
      const std::size_t x = pick(rng), y = pick(rng);
      if (x == y) continue;
      std::swap(current[x], current[y]);
      const double s = largest_singular_value(detail::arranged(values, current, rows, cols));
      ++out.arrangements_tested;
      if (s > best) {
        best = s;
        best_arr = current;
      }
      if (s >= current_value) {
        stale = (s > current_value) ? 0 : stale + 1;
        current_value = s;
      } else {
        std::swap(current[x], current[y]);
        ++stale;
      }
      if (stale > 4 * n * n) {
        std::shuffle(current.begin(), current.end(), rng);
        current_value = largest_singular_value(detail::arranged(values, current, rows, cols));
        stale = 0;
      }
    }
  }
  out.max_overlap = std::min(1.0, best);
  out.witness_permutation = best_arr;
  out.is_zero = out.max_overlap >= 1.0 - opt.tol;
  return out;
}

// Searches for a rank-one rearrangement of the moduli. Zero moduli must form
// whole rows and columns, so the K nonzero moduli fill an r x c block with
// r c = K. Within the block, sorted rows and columns make the descending
// values trace a standard Young tableau; cells on the first row and column
// are free choices and every other cell is forced by its 2x2 minor with
// (0,0), which prunes the tableau search down to the staircase placements of
// the first row and column.
inline std::optional<Arrangement> rank_one_arrangement_exists(const CoefficientMatrix& psi,
                                                              double zero = tol::kZero) {
  const int rows = psi.rows(), cols = psi.cols();
  const auto n = static_cast<std::size_t>(rows * cols);
  const std::vector<double> values = detail::slot_moduli(psi);
  const std::vector<std::size_t> sorted = slots_by_value(values);
  std::size_t nonzero = 0;
  while (nonzero < n && values[sorted[nonzero]] > zero) ++nonzero;
  if (nonzero == 0) return std::nullopt;

  for (int r = 1; r <= rows; ++r) {
    if (nonzero % static_cast<std::size_t>(r) != 0) continue;
    const int c = static_cast<int>(nonzero / static_cast<std::size_t>(r));
    if (c > cols) continue;

    std::optional<Arrangement> found;
    auto value_at = [&](const std::vector<int>& rank, int cell) {
      return values[sorted[static_cast<std::size_t>(rank[static_cast<std::size_t>(cell)])]];
    };
    auto accept = [&](int cell, int k, const std::vector<int>& rank) {
      const int i = cell / c, j = cell % c;
      if (i == 0 || j == 0) return true;
      const double v = values[sorted[static_cast<std::size_t>(k)]];
      return std::abs(v * value_at(rank, 0) - value_at(rank, i * c) * value_at(rank, j)) <= zero;
    };
    auto visit = [&](const std::vector<int>& rank) {
      Arrangement a(n);
      std::size_t next_zero = nonzero;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          const auto cell = static_cast<std::size_t>(i * cols + j);
          if (i < r && j < c)
            a[cell] = sorted[static_cast<std::size_t>(rank[static_cast<std::size_t>(i * c + j)])];
          else
            a[cell] = sorted[next_zero++];
        }
      if (!detail::all_minors_vanish(detail::arranged(values, a, rows, cols), zero)) return false;
      found = std::move(a);
      return true;
    };
    enumerate_tableaux(r, c, accept, visit);
    if (found) return found;
  }
  return std::nullopt;
}

// Conclusive "nonzero" when the support size is a prime exceeding both local
// dimensions: a rank-one pattern has r c nonzero entries with r <= d_A and
// c <= d_B. Inconclusive otherwise.
inline std::optional<bool> prime_support_shortcut(const CoefficientMatrix& psi, double zero = tol::kZero) {
  const auto count = static_cast<std::uint64_t>((psi.entries().cwiseAbs().array() > zero).count());
  if (detail::is_prime(count) && count > static_cast<std::uint64_t>(std::max(psi.rows(), psi.cols())))
    return false;
  return std::nullopt;
}

// |psi_max||psi_min| - |psi_1||psi_2| == 0 for the sorted moduli.
inline double two_qubit_det_value(const CoefficientMatrix& psi) {
  if (psi.rows() != 2 || psi.cols() != 2) throw DimensionMismatch("two_qubit_det_criterion: need 2x2");
  std::array<double, 4> m{std::abs(psi(0, 0)), std::abs(psi(0, 1)), std::abs(psi(1, 0)), std::abs(psi(1, 1))};
  std::sort(m.begin(), m.end());
  return m[3] * m[0] - m[1] * m[2];
}

inline bool two_qubit_det_criterion(const CoefficientMatrix& psi, double zero = tol::kZero) {
  return std::abs(two_qubit_det_value(psi)) <= zero;
}

// Combined decision: prime-support shortcut, the two-qubit determinant
// criterion, then the overlap search backed by the exact rank-one test when
// the search was not exhaustive.
inline GdcDecision decide_gdc(const CoefficientMatrix& psi, const DecideOptions& opt = {}) {
  GdcDecision d = max_localizable_overlap(psi, opt);
  if (auto prime = prime_support_shortcut(psi, opt.zero)) {
    d.is_zero = *prime;
    d.shortcut_used = Shortcut::prime_support;
    return d;
  }
  if (psi.rows() == 2 && psi.cols() == 2) {
    d.is_zero = two_qubit_det_criterion(psi, opt.zero);
    d.shortcut_used = Shortcut::two_qubit_determinant;
    return d;
  }
  if (!d.exhaustive && !d.is_zero) {
    if (auto w = rank_one_arrangement_exists(psi, opt.zero)) {
      d.is_zero = true;
      d.max_overlap = std::min(1.0, largest_singular_value(abs_rearranged(psi, *w)));
      d.witness_permutation = std::move(w);
    }
  }
  return d;
}

}  // namespace cohere
