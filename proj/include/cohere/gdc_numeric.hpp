#pragma once

// Upper bounds on genuine distributed coherence, min over incoherent
// unitaries U of C_DC(U rho U^dagger), for bipartite pure or mixed states.
//
// A candidate unitary is a cell arrangement (which source label lands on
// each output label) plus phases. Row and column permutations and phases of
// the form alpha_i + beta_j are local and leave C_DC unchanged, so the search
// runs over arrangements modulo row/column permutations and over the phases
// of the interior cells (i >= 1, j >= 1) only.

#include "cohere/arrangements.hpp"
#include "cohere/incoherent_unitary.hpp"
#include "cohere/measures.hpp"
#include "cohere/state.hpp"

#include <cstdint>
#include <numbers>
#include <random>
#include <variant>

namespace cohere {

struct SearchOptions {
  std::uint64_t budget = 100000;  // candidate arrangements evaluated
  int restarts = 16;              // phase restarts per refined candidate
  std::uint64_t seed = 0;
  double initial_phase_step = std::numbers::pi / 4.0;
  double min_phase_step = 1e-5;
};

struct SearchResult {
  double upper_bound = 0.0;
  IncoherentUnitary best_unitary;
  std::uint64_t evaluations = 0;
  bool exhaustive = false;
};

using BipartiteState = AnyState;

inline const Dims& dims_of(const BipartiteState& s) {
  return std::visit([](const auto& x) -> const Dims& { return x.dims(); }, s);
}

inline DensityMatrix as_density(const BipartiteState& s) {
  if (const auto* p = std::get_if<PureState>(&s)) return projector(*p);
  return std::get<DensityMatrix>(s);
}

inline double localization_residual(const BipartiteState& state, const IncoherentUnitary& u) {
  const DensityMatrix rho = as_density(state);
  const DensityMatrix xi = cohere::apply(u, rho);
  if (std::abs(rel_entropy_coherence(xi) - rel_entropy_coherence(rho)) > 1e-10)
    throw std::logic_error("localization_residual: incoherent unitary changed the global coherence");
  return distributed_coherence(xi);
}

namespace detail {

inline double local_coherence(const CMatrix& m) { return dephased_entropy(m) - von_neumann_entropy(m); }

// Evaluates C_DC of U rho U^dagger for candidates (arrangement, phases).
class CandidateEvaluator {
 public:
  explicit CandidateEvaluator(const BipartiteState& state) : dims_(dims_of(state)) {
    require_bipartite(dims_, "estimate_gdc");
    rows_ = dims_[0];
    cols_ = dims_[1];
    if (const auto* p = std::get_if<PureState>(&state)) {
      pure_ = true;
      amps_ = p->amplitudes();
      global_ = rel_entropy_coherence(*p);
    } else {
      rho_ = std::get<DensityMatrix>(state).matrix();
      global_ = rel_entropy_coherence(rho_);
    }
  }

  bool pure() const { return pure_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return static_cast<std::size_t>(rows_ * cols_); }
  double global() const { return global_; }
  std::uint64_t evaluations() const { return evaluations_; }

  // Output phase of every cell: for pure states the source phase is removed
  // first, so zero phases place the bare moduli.
  std::vector<double> output_phases(const Arrangement& a, const std::vector<double>& cell_phases) const {
    std::vector<double> ph(cell_phases);
    if (pure_)
      for (std::size_t c = 0; c < ph.size(); ++c) ph[c] -= std::arg(amps_(static_cast<Eigen::Index>(a[c])));
    return ph;
  }

  IncoherentUnitary unitary(const Arrangement& a, const std::vector<double>& cell_phases) const {
    std::vector<std::size_t> perm(size());
    for (std::size_t c = 0; c < size(); ++c) perm[a[c]] = c;
    return {dims_, std::move(perm), output_phases(a, cell_phases)};
  }

  double operator()(const Arrangement& a, const std::vector<double>& cell_phases) {
    ++evaluations_;
    double local = 0.0;
    if (pure_) {
      CMatrix xi(rows_, cols_);
      for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
          const auto c = static_cast<std::size_t>(i * cols_ + j);
          xi(i, j) = std::abs(amps_(static_cast<Eigen::Index>(a[c]))) * std::polar(1.0, cell_phases[c]);
        }
      local = local_coherence(xi * xi.adjoint()) + local_coherence(xi.transpose() * xi.conjugate());
    } else {
      const auto u = unitary(a, cell_phases);
      const CMatrix xi = cohere::apply(u, rho_);
      CMatrix ra = CMatrix::Zero(rows_, rows_), rb = CMatrix::Zero(cols_, cols_);
      for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < rows_; ++k)
          for (int j = 0; j < cols_; ++j) ra(i, k) += xi(i * cols_ + j, k * cols_ + j);
      for (int j = 0; j < cols_; ++j)
        for (int l = 0; l < cols_; ++l)
          for (int i = 0; i < rows_; ++i) rb(j, l) += xi(i * cols_ + j, i * cols_ + l);
      local = local_coherence(ra) + local_coherence(rb);
    }
    return std::max(0.0, global_ - local);
  }

 private:
  Dims dims_;
  int rows_ = 0, cols_ = 0;
  bool pure_ = false;
  CVector amps_;
  CMatrix rho_;
  double global_ = 0.0;
  std::uint64_t evaluations_ = 0;
};

inline std::vector<std::size_t> interior_cells(int rows, int cols) {
  std::vector<std::size_t> cells;
  for (int i = 1; i < rows; ++i)
    for (int j = 1; j < cols; ++j) cells.push_back(static_cast<std::size_t>(i * cols + j));
  return cells;
}

}  // namespace detail

// Candidates form one stream per state and the budget truncates it: the
// canonical arrangements (modulo local relabelings, with equal moduli merged
// for pure states) when there are at most kExhaustiveLimit of them, otherwise
// a seeded random-transposition descent. Every candidate that improves the
// running best is then refined by coordinate descent over its interior
// phases, restart 0 from zero phases and the others from random phases.
// Since a smaller budget sees a prefix of the same stream, the bound never
// increases with budget or restarts. Pure two-qubit states need no phase
// search: real nonnegative amplitudes are optimal there, and that is the only
// case reported exhaustive.
inline constexpr std::uint64_t kExhaustiveLimit = 100000;

inline SearchResult estimate_gdc(const BipartiteState& state, const SearchOptions& opt = {}) {
  const Dims& dims = dims_of(state);
  detail::require_bipartite(dims, "estimate_gdc");
  if (dims[0] > 6 || dims[1] > 6) throw std::invalid_argument("estimate_gdc: scope guard, dimensions above 6x6");
  if (opt.budget < 1) throw std::invalid_argument("estimate_gdc: budget must be >= 1");

  detail::CandidateEvaluator eval(state);
  const int rows = eval.rows(), cols = eval.cols();
  const std::size_t n = eval.size();
  const bool two_qubit_pure = eval.pure() && rows == 2 && cols == 2;

  std::vector<int> slot_class(n);
  if (eval.pure()) {
    const auto& amps = std::get<PureState>(state).amplitudes();
    std::vector<double> moduli(n);
    for (std::size_t s = 0; s < n; ++s) moduli[s] = std::abs(amps(static_cast<Eigen::Index>(s)));
    slot_class = value_classes(moduli, 1e-12);
  } else {
    std::iota(slot_class.begin(), slot_class.end(), 0);
  }
  const std::vector<int> counts = class_counts(slot_class);

  struct Candidate {
    Arrangement arrangement;
    std::vector<double> phases;  // per cell
    double value;
  };
  std::vector<Candidate> records;
  const std::vector<double> zero_phases(n, 0.0);
  double running = std::numeric_limits<double>::infinity();
  auto consider = [&](const Arrangement& a, const std::vector<double>& phases) {
    const double v = eval(a, phases);
    if (v < running) {
      running = v;
      records.push_back({a, phases, v});
    }
    return v;
  };

  // The untouched input is always a candidate.
  {
    const Arrangement id = identity_arrangement(n);
    std::vector<double> own(n, 0.0);
    if (eval.pure()) {
      const auto& amps = std::get<PureState>(state).amplitudes();
      for (std::size_t c = 0; c < n; ++c) own[c] = std::arg(amps(static_cast<Eigen::Index>(c)));
    }
    consider(id, own);
  }

  bool permutations_exhausted = false;
  std::uint64_t candidates = 1;
  if (n <= 12 && count_canonical_fillings(rows, cols, counts, kExhaustiveLimit) <= kExhaustiveLimit) {
    permutations_exhausted = !enumerate_canonical_fillings(rows, cols, counts, [&](const std::vector<int>& cell_class) {
      if (candidates >= opt.budget) return true;
      consider(arrangement_from_classes(cell_class, slot_class), zero_phases);
      ++candidates;
      return false;
    });
  } else {
    std::seed_seq seq{opt.seed, std::uint64_t{0x9e3779b97f4a7c15ULL}};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Arrangement current = identity_arrangement(n);
    double current_value = consider(current, zero_phases);
    std::uint64_t stale = 0;
    while (candidates < opt.budget) {
      const std::size_t x = pick(rng), y = pick(rng);
      if (x == y) continue;
      std::swap(current[x], current[y]);
      const double v = consider(current, zero_phases);
      ++candidates;
      if (v <= current_value) {
        stale = v < current_value ? 0 : stale + 1;
        current_value = v;
      } else {
        std::swap(current[x], current[y]);
        ++stale;
      }
      if (stale > 4 * n * n && candidates < opt.budget) {
        std::shuffle(current.begin(), current.end(), rng);
        current_value = consider(current, zero_phases);
        ++candidates;
        stale = 0;
      }
    }
  }

  Candidate best = records.back();
  const auto cells = detail::interior_cells(rows, cols);
  if (!two_qubit_pure && !cells.empty()) {
    for (std::size_t r = 0; r < records.size(); ++r) {
      for (int restart = 0; restart < opt.restarts; ++restart) {
        std::seed_seq seq{opt.seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(restart)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<double> ph = records[r].phases;
        if (restart > 0)
          for (std::size_t c : cells) ph[c] = angle(rng);
        double value = eval(records[r].arrangement, ph);
        for (double step = opt.initial_phase_step; step >= opt.min_phase_step;) {
          bool improved = false;
          for (std::size_t c : cells)
            for (double dir : {+1.0, -1.0}) {
              auto trial = ph;
              trial[c] += dir * step;
              const double v = eval(records[r].arrangement, trial);
              if (v < value) {
                ph = std::move(trial);
                value = v;
                improved = true;
              }
            }
          if (!improved) step *= 0.5;
        }
        if (value < best.value) best = {records[r].arrangement, ph, value};
      }
    }
  }

  return {best.value, eval.unitary(best.arrangement, best.phases), eval.evaluations(),
          permutations_exhausted && two_qubit_pure};
}

}  // namespace cohere
