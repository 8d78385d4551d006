#pragma once

// Entropic coherence and correlation quantifiers, in bits.

#include "cohere/state.hpp"

#include <string>
#include <vector>

namespace cohere {

namespace detail {

// Clamps float noise in [-kClamp, 0) to zero and rejects anything below.
inline double nonnegative(double value, const char* what) {
  if (value < -tol::kClamp) throw NumericalError(std::string(what) + ": negative value " + std::to_string(value));
  return value < 0.0 ? 0.0 : value;
}

inline void require_bipartite(const Dims& dims, const char* what) {
  if (dims.size() != 2) throw DimensionMismatch(std::string(what) + ": state is not bipartite");
}

inline double dephased_entropy(const CMatrix& m) { return shannon_entropy(m.diagonal().real()); }

}  // namespace detail

// Relative entropy of coherence, S(rho^d) - S(rho).
inline double rel_entropy_coherence(const CMatrix& m) {
  return detail::nonnegative(detail::dephased_entropy(m) - von_neumann_entropy(m), "rel_entropy_coherence");
}

inline double rel_entropy_coherence(const DensityMatrix& rho) { return rel_entropy_coherence(rho.matrix()); }

inline double rel_entropy_coherence(const PureState& psi) {
  // S(psi) = 0 for a pure state.
  return detail::nonnegative(shannon_entropy(psi.amplitudes().cwiseAbs2()), "rel_entropy_coherence");
}

inline double mutual_information(const DensityMatrix& rho) {
  detail::require_bipartite(rho.dims(), "mutual_information");
  const double sa = von_neumann_entropy(partial_trace(rho, {0}));
  const double sb = von_neumann_entropy(partial_trace(rho, {1}));
  return detail::nonnegative(sa + sb - von_neumann_entropy(rho), "mutual_information");
}

// C(rho) - sum_i C(rho_i) over all subsystems.
inline double distributed_coherence(const DensityMatrix& rho) {
  if (rho.dims().size() < 2) throw DimensionMismatch("distributed_coherence: need at least two subsystems");
  double value = rel_entropy_coherence(rho);
  for (int k = 0; k < static_cast<int>(rho.dims().size()); ++k)
    value -= rel_entropy_coherence(partial_trace(rho, {k}));
  return detail::nonnegative(value, "distributed_coherence");
}

inline double distributed_coherence(const PureState& psi) { return distributed_coherence(projector(psi)); }

// I_rho(A:B) - I_{rho^d}(A:B).
inline double delta_mutual_information(const DensityMatrix& rho) {
  detail::require_bipartite(rho.dims(), "delta_mutual_information");
  return detail::nonnegative(mutual_information(rho) - mutual_information(dephase(rho)), "delta_mutual_information");
}

struct MeasureReport {
  double global_coherence = 0.0;
  std::vector<double> local_coherences;
  double distributed_coherence = 0.0;
  double mutual_information = 0.0;
  double dephased_mutual_information = 0.0;
};

inline MeasureReport measure_report(const DensityMatrix& rho) {
  detail::require_bipartite(rho.dims(), "measure_report");
  const DensityMatrix rho_a = partial_trace(rho, {0});
  const DensityMatrix rho_b = partial_trace(rho, {1});

  const double s = von_neumann_entropy(rho);
  const double sa = von_neumann_entropy(rho_a), sb = von_neumann_entropy(rho_b);
  const double sd = detail::dephased_entropy(rho.matrix());
  const double sda = detail::dephased_entropy(rho_a.matrix());
  const double sdb = detail::dephased_entropy(rho_b.matrix());

  MeasureReport r;
  r.global_coherence = detail::nonnegative(sd - s, "global coherence");
  r.local_coherences = {detail::nonnegative(sda - sa, "local coherence"),
                        detail::nonnegative(sdb - sb, "local coherence")};
  r.mutual_information = detail::nonnegative(sa + sb - s, "mutual_information");
  r.dephased_mutual_information = detail::nonnegative(sda + sdb - sd, "dephased mutual_information");
  r.distributed_coherence = detail::nonnegative(
      r.global_coherence - r.local_coherences[0] - r.local_coherences[1], "distributed_coherence");
  return r;
}

}  // namespace cohere
