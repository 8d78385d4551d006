#pragma once

// Closed-form distributed coherence and exact genuine distributed coherence
// of two-qubit pure states.

#include "cohere/incoherent_unitary.hpp"
#include "cohere/measures.hpp"
#include "cohere/parallel.hpp"
#include "cohere/state.hpp"

#include <array>
#include <numbers>
#include <random>

namespace cohere {

enum class TwoQubitArrangement { identity, swap_01_11, swap_10_11 };

inline const char* to_string(TwoQubitArrangement a) {
  switch (a) {
    case TwoQubitArrangement::swap_01_11: return "swap_01_11";
    case TwoQubitArrangement::swap_10_11: return "swap_10_11";
    case TwoQubitArrangement::identity: break;
  }
  return "identity";
}

// Entropies entering the closed form; S(rho_AB) = 0 for a pure state and
// S(rho_A) = S(rho_B).
struct TwoQubitEntropies {
  double det_abs_sq = 0.0;
  double marginal = 0.0;    // S(rho_A) = S(rho_B)
  double dephased_a = 0.0;  // S(rho_A^d)
  double dephased_b = 0.0;  // S(rho_B^d)
  double dephased_ab = 0.0; // S(rho_AB^d)
  double c_dc = 0.0;
};

struct TwoQubitReport {
  double c_dc = 0.0;   // of the input state
  double c_gdc = 0.0;
  TwoQubitArrangement optimal_arrangement = TwoQubitArrangement::identity;
  double det_abs_sq = 0.0;                    // of the optimal arrangement
  std::array<double, 2> marginal_entropies{};  // S(xi_A), S(xi_B)
  std::array<double, 3> dephased_entropies{};  // S(xi_A^d), S(xi_B^d), S(xi_AB^d)
};

namespace detail {

template <typename Derived>
TwoQubitEntropies two_qubit_entropies(const Eigen::MatrixBase<Derived>& psi) {
  if (psi.rows() != 2 || psi.cols() != 2) throw DimensionMismatch("two-qubit closed form: need a 2x2 matrix");
  const double norm2 = psi.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kState) throw InvalidState("norm violation: coefficient matrix not normalized");

  TwoQubitEntropies e;
  e.det_abs_sq = std::norm(Complex(psi(0, 0) * psi(1, 1) - psi(0, 1) * psi(1, 0)));
  const double root = std::sqrt(std::max(0.0, 0.25 - e.det_abs_sq));
  e.marginal = binary_entropy(std::min(1.0, 0.5 + root));

  Eigen::Matrix2d p;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p(i, j) = std::norm(Complex(psi(i, j)));
  e.dephased_a = entropy_term(p(0, 0) + p(0, 1)) + entropy_term(p(1, 0) + p(1, 1));
  e.dephased_b = entropy_term(p(0, 0) + p(1, 0)) + entropy_term(p(0, 1) + p(1, 1));
  e.dephased_ab = entropy_term(p(0, 0)) + entropy_term(p(0, 1)) + entropy_term(p(1, 0)) + entropy_term(p(1, 1));
  e.c_dc = nonnegative(2.0 * e.marginal - e.dephased_a - e.dephased_b + e.dephased_ab, "c_dc_closed_form");
  return e;
}

}  // namespace detail

// Delta I = 2 h(1/2 + sqrt(1/4 - |det Psi|^2)) - S(rho_A^d) - S(rho_B^d) + S(rho_AB^d).
inline double c_dc_closed_form(const CoefficientMatrix& psi) { return detail::two_qubit_entropies(psi.entries()).c_dc; }

inline double c_dc_closed_form(const Eigen::Matrix2d& moduli) { return detail::two_qubit_entropies(moduli).c_dc; }

// Minimum of the closed form over the three canonical rearrangements of the
// moduli. Ties resolve to the first arrangement in (identity, swap_01_11,
// swap_10_11) order.
inline TwoQubitReport c_gdc_exact(const CoefficientMatrix& psi) {
  if (psi.rows() != 2 || psi.cols() != 2) throw DimensionMismatch("c_gdc_exact: need a 2x2 coefficient matrix");
  TwoQubitReport r;
  r.c_dc = c_dc_closed_form(psi);
  const auto arrangements = two_qubit_canonical_arrangements(psi.moduli());
  TwoQubitEntropies best;
  int best_index = -1;
  for (int k = 0; k < 3; ++k) {
    const TwoQubitEntropies e = detail::two_qubit_entropies(arrangements[static_cast<std::size_t>(k)]);
    if (best_index < 0 || e.c_dc < best.c_dc) {
      best = e;
      best_index = k;
    }
  }
  r.c_gdc = best.c_dc;
  r.optimal_arrangement = static_cast<TwoQubitArrangement>(best_index);
  r.det_abs_sq = best.det_abs_sq;
  r.marginal_entropies = {best.marginal, best.marginal};
  r.dephased_entropies = {best.dephased_a, best.dephased_b, best.dephased_ab};
  return r;
}

inline TwoQubitReport c_gdc_exact(const PureState& psi) { return c_gdc_exact(coefficient_matrix(psi)); }

// sin(t) cos(f)|00> + sin(t) sin(f)|01> + cos(t)|10>.
inline CoefficientMatrix rank_three_state(double theta, double phi) {
  CMatrix m(2, 2);
  m << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta), 0.0;
  return CoefficientMatrix(std::move(m));
}

struct ScanPoint {
  double theta = 0.0;
  double phi = 0.0;
  double c_gdc = 0.0;
};

inline double grid_angle(int index, int steps) {
  if (index == steps - 1) return std::numbers::pi / 2.0;
  return (std::numbers::pi / 2.0) * static_cast<double>(index) / static_cast<double>(steps - 1);
}

// Inclusive uniform grid over [0, pi/2]^2, row-major in theta then phi.
inline std::vector<ScanPoint> scan_rank_three(int theta_steps, int phi_steps) {
  if (theta_steps < 2 || phi_steps < 2) throw std::invalid_argument("scan_rank_three: steps must be >= 2");
  const auto total = static_cast<std::size_t>(theta_steps) * static_cast<std::size_t>(phi_steps);
  return parallel_map(total, [&](std::size_t k) {
    const int it = static_cast<int>(k / static_cast<std::size_t>(phi_steps));
    const int ip = static_cast<int>(k % static_cast<std::size_t>(phi_steps));
    const double theta = grid_angle(it, theta_steps), phi = grid_angle(ip, phi_steps);
    return ScanPoint{theta, phi, c_gdc_exact(rank_three_state(theta, phi)).c_gdc};
  });
}

// Nonnegative unit 4-vector from three angles in [0, pi/2].
inline Eigen::Matrix2d moduli_from_angles(const std::array<double, 3>& t) {
  Eigen::Matrix2d m;
  m(0, 0) = std::cos(t[0]);
  m(0, 1) = std::sin(t[0]) * std::cos(t[1]);
  m(1, 0) = std::sin(t[0]) * std::sin(t[1]) * std::cos(t[2]);
  m(1, 1) = std::sin(t[0]) * std::sin(t[1]) * std::sin(t[2]);
  return m.cwiseAbs();
}

struct MaxGdcResult {
  CoefficientMatrix state;
  double value = 0.0;
  std::array<double, 3> angles{};
  int best_restart = 0;
};

struct CoordinateSearch {
  double initial_step = std::numbers::pi / 8.0;
  double shrink = 0.5;
  double min_step = 1e-7;
};

// Multi-start coordinate ascent of c_gdc over nonnegative two-qubit moduli.
// Restart r draws its start from a generator seeded with (seed, r).
inline MaxGdcResult find_max_gdc(int restarts, std::uint64_t seed, const CoordinateSearch& cs = {}) {
  if (restarts < 1) throw std::invalid_argument("find_max_gdc: restarts must be >= 1");
  constexpr double lo = 0.0, hi = std::numbers::pi / 2.0;
  auto objective = [](const std::array<double, 3>& t) {
    return c_gdc_exact(CoefficientMatrix(moduli_from_angles(t).cast<Complex>())).c_gdc;
  };

  struct Local {
    std::array<double, 3> t{};
    double value = 0.0;
  };
  const auto results = parallel_map(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> start(lo, hi);
    Local cur;
    for (double& x : cur.t) x = start(rng);
    cur.value = objective(cur.t);
    for (double step = cs.initial_step; step >= cs.min_step;) {
      bool improved = false;
      for (std::size_t c = 0; c < 3; ++c) {
        for (double dir : {+1.0, -1.0}) {
          auto trial = cur.t;
          trial[c] = std::clamp(trial[c] + dir * step, lo, hi);
          const double v = objective(trial);
          if (v > cur.value) {
            cur.t = trial;
            cur.value = v;
            improved = true;
          }
        }
      }
      if (!improved) step *= cs.shrink;
    }
    return cur;
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].value > results[best].value) best = r;
  return {CoefficientMatrix(moduli_from_angles(results[best].t).cast<Complex>()), results[best].value,
          results[best].t, static_cast<int>(best)};
}

}  // namespace cohere
