#pragma once

// Incoherent unitaries: a permutation of product-basis labels followed by a
// phase per output label,
//
//   U |k> = exp(i phase[perm[k]]) |perm[k]>.
//
// Stored structurally; `dense()` builds the matrix for checking purposes.

#include "cohere/state.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace cohere {

class IncoherentUnitary {
 public:
  IncoherentUnitary(Dims dims, std::vector<std::size_t> permutation, std::vector<double> phases)
      : dims_(std::move(dims)), perm_(std::move(permutation)), phases_(std::move(phases)) {
    detail::validate_dims(dims_);
    const std::size_t n = total_dimension(dims_);
    if (perm_.size() != n || phases_.size() != n)
      throw DimensionMismatch("IncoherentUnitary: permutation and phases must cover every label");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm_) {
      if (p >= n || seen[p]) throw std::invalid_argument("IncoherentUnitary: permutation is not a bijection");
      seen[p] = true;
    }
    for (double& ph : phases_) ph = wrap(ph);
  }

  static IncoherentUnitary identity(const Dims& dims) {
    const std::size_t n = total_dimension(dims);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return {dims, std::move(p), std::vector<double>(n, 0.0)};
  }

  static IncoherentUnitary permutation(const Dims& dims, std::vector<std::size_t> perm) {
    const std::size_t n = perm.size();
    return {dims, std::move(perm), std::vector<double>(n, 0.0)};
  }

  static IncoherentUnitary phase_gate(const Dims& dims, std::vector<double> phases) {
    const std::size_t n = total_dimension(dims);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return {dims, std::move(p), std::move(phases)};
  }

  const Dims& dims() const { return dims_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<double>& phases() const { return phases_; }
  std::size_t dimension() const { return perm_.size(); }

  CMatrix dense() const {
    const auto n = static_cast<Eigen::Index>(perm_.size());
    CMatrix u = CMatrix::Zero(n, n);
    for (std::size_t k = 0; k < perm_.size(); ++k)
      u(static_cast<Eigen::Index>(perm_[k]), static_cast<Eigen::Index>(k)) = std::polar(1.0, phases_[perm_[k]]);
    return u;
  }

  // Phases in [0, 2pi).
  static double wrap(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phase, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
  }

 private:
  Dims dims_;
  std::vector<std::size_t> perm_;
  std::vector<double> phases_;
};

namespace detail {

inline void require_same_dims(const Dims& a, const Dims& b, const char* what) {
  if (a != b) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

}  // namespace detail

inline CVector apply(const IncoherentUnitary& u, const CVector& v) {
  CVector out(v.size());
  for (std::size_t k = 0; k < u.dimension(); ++k) {
    const std::size_t m = u.perm()[k];
    out(static_cast<Eigen::Index>(m)) = std::polar(1.0, u.phases()[m]) * v(static_cast<Eigen::Index>(k));
  }
  return out;
}

inline PureState apply(const IncoherentUnitary& u, const PureState& psi) {
  detail::require_same_dims(u.dims(), psi.dims(), "apply");
  return {detail::Trusted{}, psi.dims(), cohere::apply(u, psi.amplitudes())};
}

inline CMatrix apply(const IncoherentUnitary& u, const CMatrix& m) {
  const std::size_t n = u.dimension();
  std::vector<Complex> ph(n);
  for (std::size_t k = 0; k < n; ++k) ph[k] = std::polar(1.0, u.phases()[k]);
  CMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t pr = u.perm()[r];
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t pc = u.perm()[c];
      out(static_cast<Eigen::Index>(pr), static_cast<Eigen::Index>(pc)) =
          ph[pr] * std::conj(ph[pc]) * m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline DensityMatrix apply(const IncoherentUnitary& u, const DensityMatrix& rho) {
  detail::require_same_dims(u.dims(), rho.dims(), "apply");
  return {detail::Trusted{}, rho.dims(), cohere::apply(u, rho.matrix())};
}

// compose(u1, u2) acts as u1 after u2.
inline IncoherentUnitary compose(const IncoherentUnitary& u1, const IncoherentUnitary& u2) {
  detail::require_same_dims(u1.dims(), u2.dims(), "compose");
  const std::size_t n = u1.dimension();
  std::vector<std::size_t> perm(n);
  std::vector<double> phases(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t mid = u2.perm()[k];
    const std::size_t out = u1.perm()[mid];
    perm[k] = out;
    phases[out] = u1.phases()[out] + u2.phases()[mid];
  }
  return {u1.dims(), std::move(perm), std::move(phases)};
}

inline IncoherentUnitary invert(const IncoherentUnitary& u) {
  const std::size_t n = u.dimension();
  std::vector<std::size_t> perm(n);
  std::vector<double> phases(n);
  for (std::size_t k = 0; k < n; ++k) {
    perm[u.perm()[k]] = k;
    phases[k] = -u.phases()[u.perm()[k]];
  }
  return {u.dims(), std::move(perm), std::move(phases)};
}

// Controlled shift |i>|j> -> |i>|j + i mod d_B>.
inline IncoherentUnitary generalized_cnot(int da, int db) {
  if (da < 2 || db < 2) throw std::invalid_argument("generalized_cnot: dimensions must be >= 2");
  std::vector<std::size_t> perm(static_cast<std::size_t>(da * db));
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) perm[static_cast<std::size_t>(i * db + j)] = static_cast<std::size_t>(i * db + (j + i) % db);
  return IncoherentUnitary::permutation({da, db}, std::move(perm));
}

// Phase pi on |11> of two qubits.
inline IncoherentUnitary controlled_phase() {
  return IncoherentUnitary::phase_gate({2, 2}, {0.0, 0.0, 0.0, std::numbers::pi});
}

inline IncoherentUnitary label_swap(const Dims& dims, std::size_t a, std::size_t b) {
  auto p = IncoherentUnitary::identity(dims).perm();
  std::swap(p.at(a), p.at(b));
  return IncoherentUnitary::permutation(dims, std::move(p));
}

// ---------------------------------------------------------------------------
// Arrangement counts, evaluated exactly through prime factorizations so that
// intermediate factorials never overflow.

namespace detail {

using Factorization = std::map<std::uint64_t, long>;

inline void add_factors(Factorization& f, std::uint64_t n, long sign) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      f[p] += sign;
      n /= p;
    }
  if (n > 1) f[n] += sign;
}

inline void add_factorial(Factorization& f, std::uint64_t n, long sign) {
  for (std::uint64_t k = 2; k <= n; ++k) add_factors(f, k, sign);
}

inline std::uint64_t evaluate(const Factorization& f) {
  std::uint64_t out = 1;
  for (auto [p, e] : f) {
    if (e < 0) throw std::logic_error("arrangement count: non-integral quotient");
    for (long k = 0; k < e; ++k)
      if (__builtin_mul_overflow(out, p, &out))
        throw std::overflow_error("arrangement count exceeds 64-bit range; use big integers");
  }
  return out;
}

inline void require_positive(int da, int db) {
  if (da < 1 || db < 1) throw std::invalid_argument("arrangement count: dimensions must be >= 1");
}

}  // namespace detail

// (d_A d_B)! / prod_{i,j} (i + j - 1): the hook-length count of standard
// Young tableaux of rectangular shape d_A x d_B.
inline std::uint64_t arrangement_count_N(int da, int db) {
  detail::require_positive(da, db);
  detail::Factorization f;
  detail::add_factorial(f, static_cast<std::uint64_t>(da) * static_cast<std::uint64_t>(db), +1);
  for (int i = 1; i <= da; ++i)
    for (int j = 1; j <= db; ++j) detail::add_factors(f, static_cast<std::uint64_t>(i + j - 1), -1);
  return detail::evaluate(f);
}

// (d_A + d_B - 2)! / ((d_A - 1)! (d_B - 1)!).
inline std::uint64_t arrangement_count_Nprime(int da, int db) {
  detail::require_positive(da, db);
  detail::Factorization f;
  detail::add_factorial(f, static_cast<std::uint64_t>(da + db - 2), +1);
  detail::add_factorial(f, static_cast<std::uint64_t>(da - 1), -1);
  detail::add_factorial(f, static_cast<std::uint64_t>(db - 1), -1);
  return detail::evaluate(f);
}

// The identity, (0,1)<->(1,1) and (1,0)<->(1,1) rearrangements of a 2x2
// moduli matrix, in that order.
inline std::array<Eigen::Matrix2d, 3> two_qubit_canonical_arrangements(const RMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionMismatch("two_qubit_canonical_arrangements: need 2x2");
  Eigen::Matrix2d a = m;
  Eigen::Matrix2d b = a, c = a;
  std::swap(b(0, 1), b(1, 1));
  std::swap(c(1, 0), c(1, 1));
  return {a, b, c};
}

// ---------------------------------------------------------------------------
// Two independent CNOTs turn the rank-three two-qubit state on A1A2 into a
// state that, after grouping A1A2 -> A and B1B2 -> B, is (|00>+|11>+|22>)/sqrt3.

struct EmbeddingResult {
  bool passed = false;
  PureState four_qubit;  // dims {2,2,2,2}, order A1 A2 B1 B2
  PureState regrouped;   // dims {4,4}
  double max_error = 0.0;
};

inline PureState maximal_gdc_state() {
  const double s = 1.0 / std::sqrt(3.0);
  return bipartite(2, 2, {s, s, s, 0.0});
}

inline EmbeddingResult embed_four_qubit(const PureState& alice_pair) {
  detail::require_same_dims(alice_pair.dims(), {2, 2}, "embed_four_qubit");
  const Dims dims{2, 2, 2, 2};
  const PureState input = tensor_product(alice_pair, basis_state({2, 2}, 0));

  // Label bits (a1 a2 b1 b2), a1 most significant.
  std::vector<std::size_t> perm(16);
  for (std::size_t k = 0; k < 16; ++k) {
    const std::size_t a1 = (k >> 3) & 1, a2 = (k >> 2) & 1, b1 = (k >> 1) & 1, b2 = k & 1;
    perm[k] = (a1 << 3) | (a2 << 2) | ((b1 ^ a1) << 1) | (b2 ^ a2);
  }
  const auto cnots = IncoherentUnitary::permutation(dims, std::move(perm));
  PureState out = cohere::apply(cnots, input);

  const double s = 1.0 / std::sqrt(3.0);
  CVector expected = CVector::Zero(16);
  expected(0b0000) = s;
  expected(0b0101) = s;
  expected(0b1010) = s;

  // Grouping pairs into 4-level labels leaves the row-major index unchanged.
  PureState regrouped(detail::Trusted{}, {4, 4}, out.amplitudes());
  CVector qutrit = CVector::Zero(16);
  for (int i = 0; i < 3; ++i) qutrit(i * 4 + i) = s;

  const double err1 = (out.amplitudes() - expected).cwiseAbs().maxCoeff();
  const double err2 = (regrouped.amplitudes() - qutrit).cwiseAbs().maxCoeff();
  const double err = std::max(err1, err2);
  return {err <= 1e-12, std::move(out), std::move(regrouped), err};
}

inline bool four_qubit_embedding_check(const PureState& alice_pair = maximal_gdc_state()) {
  return embed_four_qubit(alice_pair).passed;
}

}  // namespace cohere
