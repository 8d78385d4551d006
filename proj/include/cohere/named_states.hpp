#pragma once

// States that appear throughout the examples and tests.

#include "cohere/incoherent_unitary.hpp"
#include "cohere/state.hpp"

#include <map>
#include <string>

namespace cohere::states {

inline PureState plus_plus() { return bipartite(2, 2, {0.5, 0.5, 0.5, 0.5}); }

// (|00> + |11>) / sqrt2
inline PureState bell() {
  const double s = 1.0 / std::sqrt(2.0);
  return bipartite(2, 2, {s, 0.0, 0.0, s});
}

// (|0+> + |1->) / sqrt2
inline PureState graph() { return bipartite(2, 2, {0.5, 0.5, 0.5, -0.5}); }

// (|00> + |01> + |10>) / sqrt3
inline PureState maximal_gdc() { return maximal_gdc_state(); }

// sum_i |ii> / sqrt d
inline PureState max_entangled(int d) {
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState({d, d}, std::move(v));
}

// (|++> + i|--> + |22>) / sqrt3 on two qutrits.
inline PureState qutrit_example() {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState plus = qudit({s, s, 0.0}), minus = qudit({s, -s, 0.0}), two = qudit({0.0, 0.0, 1.0});
  const CVector v = (tensor_product(plus, plus).amplitudes() + Complex(0.0, 1.0) * tensor_product(minus, minus).amplitudes() +
                     tensor_product(two, two).amplitudes()) /
                    std::sqrt(3.0);
  return PureState({3, 3}, v);
}

inline const std::map<std::string, PureState (*)()>& catalog() {
  static const std::map<std::string, PureState (*)()> names{
      {"plus-plus", &plus_plus}, {"bell", &bell}, {"graph", &graph},
      {"maximal-gdc", &maximal_gdc}, {"qutrit-example", &qutrit_example}};
  return names;
}

}  // namespace cohere::states
