#pragma once

// Enumeration of arrangements of coefficient moduli over a d_A x d_B grid.
//
// An arrangement maps each cell (i, j), flattened as i * d_B + j, to the
// source slot whose modulus is placed there.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cohere {

using Arrangement = std::vector<std::size_t>;

inline bool is_bijection(const Arrangement& a, std::size_t n) {
  if (a.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t s : a) {
    if (s >= n || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

inline Arrangement identity_arrangement(std::size_t n) {
  Arrangement a(n);
  std::iota(a.begin(), a.end(), std::size_t{0});
  return a;
}

// Slots ordered by value descending; ties keep ascending slot order.
inline std::vector<std::size_t> slots_by_value(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

// Groups values that agree within `eps` into classes, numbered 0, 1, ... in
// descending value order. Returns the class of every slot.
inline std::vector<int> value_classes(const std::vector<double>& values, double eps) {
  const auto order = slots_by_value(values);
  std::vector<int> cls(values.size(), 0);
  int current = -1;
  double anchor = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double v = values[order[k]];
    if (current < 0 || anchor - v > eps) {
      ++current;
      anchor = v;
    }
    cls[order[k]] = current;
  }
  return cls;
}

// Visits every standard Young tableau of the rectangle rows x cols. The
// visitor receives `rank`, where rank[cell] = k means the cell holds the
// k-th entry (0-based) of the filling order. `accept(cell, k, rank)` may
// reject a partial placement to prune the search; a visitor returning true
// stops the enumeration. Returns true if stopped early.
template <typename Accept, typename Visit>
bool enumerate_tableaux(int rows, int cols, Accept&& accept, Visit&& visit) {
  const int n = rows * cols;
  std::vector<int> rank(static_cast<std::size_t>(n), -1);
  std::vector<int> filled(static_cast<std::size_t>(rows), 0);

  auto rec = [&](auto&& self, int k) -> bool {
    if (k == n) return visit(static_cast<const std::vector<int>&>(rank));
    for (int i = 0; i < rows; ++i) {
      const int j = filled[static_cast<std::size_t>(i)];
      if (j >= cols) continue;
      if (i > 0 && filled[static_cast<std::size_t>(i - 1)] <= j) continue;
      const int cell = i * cols + j;
      rank[static_cast<std::size_t>(cell)] = k;
      if (accept(cell, k, static_cast<const std::vector<int>&>(rank))) {
        ++filled[static_cast<std::size_t>(i)];
        const bool stop = self(self, k + 1);
        --filled[static_cast<std::size_t>(i)];
        if (stop) {
          rank[static_cast<std::size_t>(cell)] = -1;
          return true;
        }
      }
      rank[static_cast<std::size_t>(cell)] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

// Canonical representatives of fillings of a rows x cols grid with a
// multiset of value classes, modulo row and column permutations: class 0 (the
// largest value) at (0,0), and the first row and first column non-increasing
// in value. `counts[c]` is the multiplicity of class c. The visitor receives
// the class of every cell; returning true stops the enumeration.
template <typename Visit>
bool enumerate_canonical_fillings(int rows, int cols, std::vector<int> counts, Visit&& visit) {
  const int n = rows * cols;
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  // Fill order: first row, then first column, then the interior row-major.
  std::vector<int> order;
  for (int j = 0; j < cols; ++j) order.push_back(j);
  for (int i = 1; i < rows; ++i) order.push_back(i * cols);
  for (int i = 1; i < rows; ++i)
    for (int j = 1; j < cols; ++j) order.push_back(i * cols + j);

  const int nclass = static_cast<int>(counts.size());
  auto rec = [&](auto&& self, int pos) -> bool {
    if (pos == n) return visit(static_cast<const std::vector<int>&>(cls));
    const int cell = order[static_cast<std::size_t>(pos)];
    const int i = cell / cols, j = cell % cols;
    int lo = 0, hi = nclass - 1;
    if (cell == 0) {
      hi = 0;
    } else if (i == 0) {
      lo = cls[static_cast<std::size_t>(cell - 1)];
    } else if (j == 0) {
      lo = cls[static_cast<std::size_t>(cell - cols)];
    }
    for (int c = lo; c <= hi; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) continue;
      --counts[static_cast<std::size_t>(c)];
      cls[static_cast<std::size_t>(cell)] = c;
      const bool stop = self(self, pos + 1);
      ++counts[static_cast<std::size_t>(c)];
      if (stop) return true;
    }
    cls[static_cast<std::size_t>(cell)] = -1;
    return false;
  };
  if (counts.empty() || counts[0] == 0) throw std::invalid_argument("enumerate_canonical_fillings: no values");
  return rec(rec, 0);
}

// Number of canonical fillings, saturating at limit + 1.
inline std::uint64_t count_canonical_fillings(int rows, int cols, const std::vector<int>& counts,
                                              std::uint64_t limit) {
  std::uint64_t count = 0;
  enumerate_canonical_fillings(rows, cols, counts, [&](const std::vector<int>&) { return ++count > limit; });
  return count;
}

// Maps a per-cell class assignment back to source slots, taking the slots of
// each class in ascending order as cells are visited row-major.
inline Arrangement arrangement_from_classes(const std::vector<int>& cell_class, const std::vector<int>& slot_class) {
  int nclass = 0;
  for (int c : slot_class) nclass = std::max(nclass, c + 1);
  std::vector<std::vector<std::size_t>> pools(static_cast<std::size_t>(nclass));
  for (std::size_t s = 0; s < slot_class.size(); ++s) pools[static_cast<std::size_t>(slot_class[s])].push_back(s);
  std::vector<std::size_t> next(static_cast<std::size_t>(nclass), 0);
  Arrangement a(cell_class.size());
  for (std::size_t cell = 0; cell < cell_class.size(); ++cell) {
    const auto c = static_cast<std::size_t>(cell_class[cell]);
    a[cell] = pools[c][next[c]++];
  }
  return a;
}

inline std::vector<int> class_counts(const std::vector<int>& slot_class) {
  int nclass = 0;
  for (int c : slot_class) nclass = std::max(nclass, c + 1);
  std::vector<int> counts(static_cast<std::size_t>(nclass), 0);
  for (int c : slot_class) ++counts[static_cast<std::size_t>(c)];
  return counts;
}

}  // namespace cohere
