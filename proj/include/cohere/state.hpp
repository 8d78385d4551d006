#pragma once

// Dense state representations over a product incoherent basis.
//
// Basis convention: row-major with the last subsystem index running fastest,
// so for two subsystems the label of |i>|j> is i * d_B + j.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cohere {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using Dims = std::vector<int>;

// Raised when a value violates a state invariant. The message names the
// violated invariant ("norm violation", "trace violation", ...).
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity that should be nonnegative came out more negative than float
// noise allows.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kState = 1e-9;       // norm, trace, hermiticity
inline constexpr double kZero = 1e-9;        // zero amplitudes / singular values
inline constexpr double kNegativeEig = 1e-9; // eigenvalues below -this are invalid
inline constexpr double kClamp = 1e-10;      // quantifiers in [-kClamp, 0) clamp to 0
}  // namespace tol

inline std::size_t total_dimension(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

namespace detail {

inline void validate_dims(const Dims& dims) {
  if (dims.empty()) throw InvalidState("dimension violation: no subsystems");
  for (int d : dims) {
    if (d < 2) throw InvalidState("dimension violation: subsystem dimension must be >= 2");
  }
}

struct Trusted {};

}  // namespace detail

class PureState {
 public:
  PureState(Dims dims, CVector amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    detail::validate_dims(dims_);
    if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_)) {
      throw InvalidState("length violation: amplitude count must equal the product of dims");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > tol::kState) {
      throw InvalidState("norm violation: amplitudes must have unit Euclidean norm");
    }
  }

  // Rescales to unit norm before validating.
  static PureState normalized(Dims dims, CVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw InvalidState("norm violation: zero vector");
    return PureState(std::move(dims), amplitudes / n);
  }

  PureState(detail::Trusted, Dims dims, CVector amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {}

  const Dims& dims() const { return dims_; }
  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  Complex operator[](std::size_t k) const { return amplitudes_(static_cast<Eigen::Index>(k)); }

 private:
  Dims dims_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  DensityMatrix(Dims dims, CMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    detail::validate_dims(dims_);
    const auto n = static_cast<Eigen::Index>(total_dimension(dims_));
    if (matrix_.rows() != n || matrix_.cols() != n) {
      throw InvalidState("length violation: matrix side must equal the product of dims");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::kState) {
      throw InvalidState("hermiticity violation: matrix must be Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > tol::kState) {
      throw InvalidState("trace violation: trace must be 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::kNegativeEig) {
      throw InvalidState("positivity violation: negative eigenvalue");
    }
  }

  // Skips validation; for results of operations that preserve validity.
  DensityMatrix(detail::Trusted, Dims dims, CMatrix matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

  static DensityMatrix from_pure(const PureState& psi) {
    return {detail::Trusted{}, psi.dims(), psi.amplitudes() * psi.amplitudes().adjoint()};
  }

  const Dims& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Dims dims_;
  CMatrix matrix_;
};

inline DensityMatrix projector(const PureState& psi) { return DensityMatrix::from_pure(psi); }

using AnyState = std::variant<PureState, DensityMatrix>;

// The d_A x d_B matrix of amplitudes of a bipartite pure state.
class CoefficientMatrix {
 public:
  explicit CoefficientMatrix(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) throw InvalidState("dimension violation: empty coefficient matrix");
  }

  const CMatrix& entries() const { return entries_; }
  RMatrix moduli() const { return entries_.cwiseAbs(); }
  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }
  Complex operator()(int i, int j) const { return entries_(i, j); }

  // Slot k = i * cols + j, matching the basis label of |i>|j>.
  Complex slot(std::size_t k) const {
    const auto c = static_cast<std::size_t>(cols());
    return entries_(static_cast<Eigen::Index>(k / c), static_cast<Eigen::Index>(k % c));
  }

  PureState to_state() const {
    CVector v(entries_.size());
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) v(i * cols() + j) = entries_(i, j);
    return PureState({rows(), cols()}, std::move(v));
  }

 private:
  CMatrix entries_;
};

namespace detail {

template <typename M>
M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// -x log2 x with the 0 log 0 = 0 convention.
inline double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

}  // namespace detail

inline PureState tensor_product(const PureState& a, const PureState& b) {
  CVector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  return {detail::Trusted{}, detail::concat(a.dims(), b.dims()), std::move(v)};
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return {detail::Trusted{}, detail::concat(a.dims(), b.dims()), detail::kron(a.matrix(), b.matrix())};
}

inline AnyState tensor_product(const AnyState& a, const AnyState& b) {
  if (a.index() != b.index()) throw std::invalid_argument("tensor_product: operands must be of the same kind");
  if (const auto* pa = std::get_if<PureState>(&a)) return tensor_product(*pa, std::get<PureState>(b));
  return tensor_product(std::get<DensityMatrix>(a), std::get<DensityMatrix>(b));
}

// Traces out every subsystem not listed in `keep`. Kept subsystems retain
// their original relative order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const Dims& dims = rho.dims();
  const int n = static_cast<int>(dims.size());
  if (keep.empty()) throw DimensionMismatch("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw DimensionMismatch("partial_trace: duplicate subsystem index");
  for (int k : keep)
    if (k < 0 || k >= n) throw DimensionMismatch("partial_trace: invalid subsystem index");

  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;
  Dims out_dims;
  for (int k : keep) out_dims.push_back(dims[k]);

  const std::size_t total = rho.dimension();
  // For each full label, the index into the kept and traced factors.
  std::vector<std::size_t> kept_index(total), traced_index(total);
  for (std::size_t label = 0; label < total; ++label) {
    std::size_t rem = label, kept_stride = 1, traced_stride = 1, ki = 0, ti = 0;
    for (int s = n - 1; s >= 0; --s) {
      const auto d = static_cast<std::size_t>(dims[s]);
      const std::size_t digit = rem % d;
      rem /= d;
      if (kept[s]) {
        ki += digit * kept_stride;
        kept_stride *= d;
      } else {
        ti += digit * traced_stride;
        traced_stride *= d;
      }
    }
    kept_index[label] = ki;
    traced_index[label] = ti;
  }

  const std::size_t out_n = total_dimension(out_dims);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_n), static_cast<Eigen::Index>(out_n));
  const CMatrix& m = rho.matrix();
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      if (traced_index[r] == traced_index[c])
        out(static_cast<Eigen::Index>(kept_index[r]), static_cast<Eigen::Index>(kept_index[c])) +=
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return {detail::Trusted{}, std::move(out_dims), std::move(out)};
}

inline DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix d = rho.matrix().diagonal().real().cast<Complex>().asDiagonal();
  return {detail::Trusted{}, rho.dims(), std::move(d)};
}

// Shannon entropy (bits) of a probability vector, entries in [-1e-9, 0)
// treated as zero.
inline double shannon_entropy(const Eigen::VectorXd& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -tol::kNegativeEig) throw InvalidState("positivity violation: negative probability");
    s += detail::entropy_term(std::clamp(p(i), 0.0, 1.0));
  }
  return s;
}

inline double von_neumann_entropy(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return shannon_entropy(es.eigenvalues());
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

inline double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) throw std::domain_error("binary_entropy: p outside [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  return detail::entropy_term(p) + detail::entropy_term(1.0 - p);
}

// Spectral norm. Closed form for 2x2, otherwise the top eigenvalue of the
// smaller Gram matrix.
template <typename Derived>
double largest_singular_value(const Eigen::MatrixBase<Derived>& m) {
  using std::abs;
  if (m.size() == 0) return 0.0;
  if (m.rows() == 2 && m.cols() == 2) {
    const double fro2 = m.squaredNorm();
    const double det = abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const double disc = std::max(0.0, (fro2 - 2.0 * det) * (fro2 + 2.0 * det));
    return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
  }
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat gram = m.rows() <= m.cols() ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
  if (gram.rows() == 1) return std::sqrt(std::max(0.0, std::real(gram(0, 0))));
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline CoefficientMatrix coefficient_matrix(const PureState& psi) {
  if (psi.dims().size() != 2) throw DimensionMismatch("coefficient_matrix: state is not bipartite");
  const int da = psi.dims()[0], db = psi.dims()[1];
  CMatrix m(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) m(i, j) = psi.amplitudes()(i * db + j);
  return CoefficientMatrix(std::move(m));
}

inline int schmidt_rank(const PureState& psi, double zero = tol::kZero) {
  const CMatrix m = coefficient_matrix(psi).entries();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return static_cast<int>((svd.singularValues().array() > zero).count());
}

inline int coherence_rank(const PureState& psi, double zero = tol::kZero) {
  return static_cast<int>((psi.amplitudes().cwiseAbs().array() > zero).count());
}

// Computational basis state |k> on `dims`.
inline PureState basis_state(const Dims& dims, std::size_t label) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  v(static_cast<Eigen::Index>(label)) = 1.0;
  return PureState(dims, std::move(v));
}

inline PureState qudit(const std::vector<Complex>& amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return PureState::normalized({static_cast<int>(amps.size())}, std::move(v));
}

inline PureState bipartite(int da, int db, const std::vector<Complex>& amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return PureState::normalized({da, db}, std::move(v));
}

inline DensityMatrix maximally_mixed(int d) {
  CMatrix m = CMatrix::Identity(d, d) / static_cast<double>(d);
  return {detail::Trusted{}, {d}, std::move(m)};
}

}  // namespace cohere
