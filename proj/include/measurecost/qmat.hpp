#pragma once

// Dense complex linear algebra and entropy primitives. Everything here is
// header-only and templated on the real scalar type; the rest of the library
// uses the double-precision aliases at the bottom.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace measurecost {

using Index = Eigen::Index;

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Numerical tolerances. Energies are in units of k_B T throughout (beta = 1).
namespace tol {
inline constexpr double herm = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-10;
inline constexpr double eig = 1e-9;
inline constexpr double p0 = 1e-12;  // below this an outcome has no post-state
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Derived>
using RealOf = typename Derived::RealScalar;

template <typename Derived>
ComplexMatrixT<RealOf<Derived>> dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Largest absolute entry of m - m^dagger.
template <typename Derived>
RealOf<Derived> hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<RealOf<Derived>>::infinity();
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tolerance = tol::herm) {
  if (m.rows() != m.cols()) return false;
  const auto scale = std::max<RealOf<Derived>>(1, m.size() ? m.cwiseAbs().maxCoeff() : 0);
  return hermiticity_defect(m) <= tolerance * scale;
}

/// (m + m^dagger) / 2
template <typename Derived>
ComplexMatrixT<RealOf<Derived>> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  ComplexMatrixT<RealOf<Derived>> h = (m + m.adjoint()) * RealOf<Derived>(0.5);
  return h;
}

/// max |U^dagger U - I|
template <typename Derived>
RealOf<Derived> unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Real = RealOf<Derived>;
  if (u.rows() != u.cols()) return std::numeric_limits<Real>::infinity();
  ComplexMatrixT<Real> g = u.adjoint() * u;
  g.diagonal().array() -= Real(1);
  return g.size() ? g.cwiseAbs().maxCoeff() : Real(0);
}

/// Kronecker product with (i*rows_b + k, j*cols_b + l) indexing.
template <typename DerivedA, typename DerivedB>
ComplexMatrixT<RealOf<DerivedA>> tensor_product(const Eigen::MatrixBase<DerivedA>& a_expr,
                                                const Eigen::MatrixBase<DerivedB>& b_expr) {
  const auto& a = a_expr.derived().eval();
  const auto& b = b_expr.derived().eval();
  ComplexMatrixT<RealOf<DerivedA>> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real = double>
ComplexMatrixT<Real> tensor_product(std::span<const ComplexMatrixT<Real>> factors) {
  ComplexMatrixT<Real> out = ComplexMatrixT<Real>::Identity(1, 1);
  for (const auto& f : factors) out = tensor_product(out, f);
  return out;
}

/// Trace over every factor not listed in `keep`. Factors are ordered with the
/// first one most significant. The kept factors stay in their original order.
template <typename Derived>
ComplexMatrixT<RealOf<Derived>> partial_trace(const Eigen::MatrixBase<Derived>& m_expr,
                                              std::span<const Index> dims,
                                              std::span<const Index> keep) {
  using Real = RealOf<Derived>;
  const auto& m = m_expr.derived().eval();
  const Index total =
      std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<Index>());
  if (m.rows() != m.cols() || m.rows() != total)
    throw DimensionError("partial_trace: factor dimensions do not match the matrix");

  const auto n = static_cast<Index>(dims.size());
  std::vector<bool> kept(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: keep index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }

  std::vector<Index> stride(dims.size(), 1);
  for (Index f = n - 2; f >= 0; --f)
    stride[static_cast<std::size_t>(f)] =
        stride[static_cast<std::size_t>(f + 1)] * dims[static_cast<std::size_t>(f + 1)];

  // Offsets into the full index contributed by kept and traced multi-indices.
  auto offsets = [&](bool want_kept) {
    std::vector<Index> offs{0};
    for (Index f = 0; f < n; ++f) {
      const auto fs = static_cast<std::size_t>(f);
      if (kept[fs] != want_kept) continue;
      std::vector<Index> next;
      next.reserve(offs.size() * static_cast<std::size_t>(dims[fs]));
      for (Index o : offs)
        for (Index v = 0; v < dims[fs]; ++v) next.push_back(o + v * stride[fs]);
      offs = std::move(next);
    }
    return offs;
  };
  const auto keep_off = offsets(true);
  const auto trace_off = offsets(false);

  const auto dk = static_cast<Index>(keep_off.size());
  ComplexMatrixT<Real> out = ComplexMatrixT<Real>::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j) {
      std::complex<Real> acc = 0;
      for (Index t : trace_off)
        acc += m(keep_off[static_cast<std::size_t>(i)] + t, keep_off[static_cast<std::size_t>(j)] + t);
      out(i, j) = acc;
    }
  return out;
}

template <typename Derived>
ComplexMatrixT<RealOf<Derived>> partial_trace(const Eigen::MatrixBase<Derived>& m,
                                              std::initializer_list<Index> dims,
                                              std::initializer_list<Index> keep) {
  return partial_trace(m, std::span<const Index>(dims.begin(), dims.size()),
                       std::span<const Index>(keep.begin(), keep.size()));
}

template <typename Real>
struct EigenDecomposition {
  RealVectorT<Real> values;      // ascending
  ComplexMatrixT<Real> vectors;  // columns are eigenvectors
};

template <typename Derived>
EigenDecomposition<RealOf<Derived>> hermitian_eig(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  if (!is_hermitian(m)) throw NotHermitianError("hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
RealVectorT<RealOf<Derived>> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> solver(hermitian_part(m),
                                                             Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// -sum x ln x over a spectrum, with 0 ln 0 = 0 and values below tol::psd
/// treated as zero.
template <typename Range>
double spectrum_entropy(const Range& values) {
  double s = 0;
  for (auto v : values) {
    const double x = static_cast<double>(v);
    if (x > tol::psd) s -= x * std::log(x);
  }
  return s;
}

/// Von Neumann entropy (nats) of a Hermitian PSD matrix that is not validated
/// as a state, e.g. a marginal produced internally.
template <typename Derived>
RealOf<Derived> entropy(const Eigen::MatrixBase<Derived>& m) {
  const auto w = hermitian_eigenvalues(m);
  return spectrum_entropy(std::span<const RealOf<Derived>>(w.data(), static_cast<std::size_t>(w.size())));
}

/// Number of eigenvalues above tol::psd.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& m, double cutoff = tol::psd) {
  const auto w = hermitian_eigenvalues(m);
  return (w.array() > cutoff).count();
}

/// Largest singular value.
template <typename Derived>
RealOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealOf<Derived>;
  if (m.size() == 0) return 0;
  if (m.rows() == m.cols() && is_hermitian(m)) return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<ComplexMatrixT<Real>> svd(m.eval());
  return svd.singularValues()(0);
}

/// Matrix function f(m) for Hermitian m via the spectral decomposition.
template <typename Derived, typename F>
ComplexMatrixT<RealOf<Derived>> hermitian_function(const Eigen::MatrixBase<Derived>& m, F f) {
  const auto eig = hermitian_eig(m);
  RealVectorT<RealOf<Derived>> fv = eig.values.unaryExpr(f);
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

// ---------------------------------------------------------------------------
// Validated value types

template <typename Real>
class BasicProbDist {
 public:
  BasicProbDist() = default;

  explicit BasicProbDist(std::vector<Real> weights) : weights_(std::move(weights)) {
    Real sum = 0;
    for (auto& w : weights_) {
      if (!std::isfinite(w) || w < -tol::psd) throw InvalidStateError("ProbDist: negative or non-finite weight");
      if (w < 0) w = 0;
      sum += w;
    }
    if (std::abs(sum - 1) > tol::trace) throw InvalidStateError("ProbDist: weights do not sum to 1");
  }

  std::size_t size() const { return weights_.size(); }
  Real operator[](std::size_t k) const { return weights_[k]; }
  std::span<const Real> weights() const { return weights_; }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

 private:
  std::vector<Real> weights_;
};

template <typename Real>
class BasicDensityMatrix {
 public:
  BasicDensityMatrix() = default;

  /// Validates Hermiticity, positivity and unit trace.
  explicit BasicDensityMatrix(ComplexMatrixT<Real> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) throw DimensionError("DensityMatrix: must be square and non-empty");
    if (!m_.allFinite()) throw InvalidStateError("DensityMatrix: non-finite entries");
    if (!is_hermitian(m_)) throw InvalidStateError("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace() - std::complex<Real>(1)) > tol::trace)
      throw InvalidStateError("DensityMatrix: trace is not 1");
    m_ = hermitian_part(m_);
    if (hermitian_eigenvalues(m_).minCoeff() < -tol::psd)
      throw InvalidStateError("DensityMatrix: negative eigenvalue");
  }

  /// Skips the spectral check for states produced by trusted internal
  /// computation; the matrix is only symmetrized.
  static BasicDensityMatrix trusted(const ComplexMatrixT<Real>& m) {
    BasicDensityMatrix r;
    r.m_ = hermitian_part(m);
    return r;
  }

  static BasicDensityMatrix pure(const ComplexVectorT<Real>& psi) {
    if (std::abs(psi.squaredNorm() - 1) > tol::trace) throw InvalidStateError("pure state is not normalized");
    return trusted(psi * psi.adjoint());
  }

  static BasicDensityMatrix maximally_mixed(Index d) {
    return trusted(ComplexMatrixT<Real>::Identity(d, d) / Real(d));
  }

  static BasicDensityMatrix diagonal(std::span<const Real> p) {
    ComplexMatrixT<Real> m = ComplexMatrixT<Real>::Zero(static_cast<Index>(p.size()), static_cast<Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = p[i];
    return BasicDensityMatrix(std::move(m));
  }

  Index dim() const { return m_.rows(); }
  const ComplexMatrixT<Real>& matrix() const { return m_; }

 private:
  ComplexMatrixT<Real> m_;
};

template <typename Real>
class BasicHamiltonian {
 public:
  BasicHamiltonian() = default;

  explicit BasicHamiltonian(ComplexMatrixT<Real> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("Hamiltonian: must be square");
    if (!m_.allFinite()) throw NotHermitianError("Hamiltonian: non-finite entries");
    if (!is_hermitian(m_)) throw NotHermitianError("Hamiltonian: not Hermitian");
    m_ = hermitian_part(m_);
  }

  static BasicHamiltonian zero(Index d) { return BasicHamiltonian(ComplexMatrixT<Real>::Zero(d, d)); }

  Index dim() const { return m_.rows(); }
  const ComplexMatrixT<Real>& matrix() const { return m_; }
  bool is_zero() const { return m_.size() == 0 || m_.cwiseAbs().maxCoeff() == 0; }

 private:
  ComplexMatrixT<Real> m_;
};

// ---------------------------------------------------------------------------
// Information-theoretic quantities (nats)

template <typename Real>
Real von_neumann_entropy(const BasicDensityMatrix<Real>& rho) {
  return entropy(rho.matrix());
}

template <typename Real>
Real shannon_entropy(std::span<const Real> p) {
  return static_cast<Real>(spectrum_entropy(p));
}

template <typename Real>
Real shannon_entropy(const BasicProbDist<Real>& p) {
  return shannon_entropy(p.weights());
}

/// D(rho || sigma) = tr[rho (ln rho - ln sigma)]; +inf when supp(rho) is not
/// contained in supp(sigma).
template <typename Real>
Real relative_entropy(const BasicDensityMatrix<Real>& rho, const BasicDensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  const auto a = hermitian_eig(rho.matrix());
  const auto b = hermitian_eig(sigma.matrix());
  // overlap(i, j) = |<a_i|b_j>|^2
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> overlap =
      (a.vectors.adjoint() * b.vectors).cwiseAbs2();
  Real d = -static_cast<Real>(spectrum_entropy(std::span<const Real>(a.values.data(), static_cast<std::size_t>(a.values.size()))));
  for (Index j = 0; j < b.values.size(); ++j) {
    Real weight = 0;
    for (Index i = 0; i < a.values.size(); ++i)
      if (a.values(i) > tol::psd) weight += a.values(i) * overlap(i, j);
    if (b.values(j) <= tol::psd) {
      if (weight > tol::eig) return std::numeric_limits<Real>::infinity();
      continue;
    }
    d -= weight * std::log(b.values(j));
  }
  return std::max<Real>(d, 0);
}

/// S(A) + S(B) - S(AB) for a state on A (x) B.
template <typename Derived>
RealOf<Derived> mutual_information(const Eigen::MatrixBase<Derived>& rho_ab, Index dim_a, Index dim_b) {
  if (rho_ab.rows() != dim_a * dim_b || rho_ab.cols() != dim_a * dim_b)
    throw DimensionError("mutual_information: bipartite dimensions do not match");
  const Index dims[] = {dim_a, dim_b};
  const Index keep_a[] = {0};
  const Index keep_b[] = {1};
  return entropy(partial_trace(rho_ab, dims, keep_a)) + entropy(partial_trace(rho_ab, dims, keep_b)) -
         entropy(rho_ab);
}

template <typename Real>
Real mutual_information(const BasicDensityMatrix<Real>& rho_ab, Index dim_a, Index dim_b) {
  return mutual_information(rho_ab.matrix(), dim_a, dim_b);
}

/// tr[H rho]
template <typename DerivedH, typename DerivedR>
RealOf<DerivedH> energy(const Eigen::MatrixBase<DerivedH>& h, const Eigen::MatrixBase<DerivedR>& rho) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) throw DimensionError("energy: dimension mismatch");
  return (h.cwiseProduct(rho.transpose())).sum().real();
}

/// F(rho) = tr[rho H] - S(rho) with beta = 1.
template <typename Real>
Real free_energy(const BasicDensityMatrix<Real>& rho, const BasicHamiltonian<Real>& h) {
  if (rho.dim() != h.dim()) throw DimensionError("free_energy: dimension mismatch");
  return energy(h.matrix(), rho.matrix()) - von_neumann_entropy(rho);
}

/// exp(-H) / tr exp(-H)
template <typename Real>
BasicDensityMatrix<Real> thermal_state(const BasicHamiltonian<Real>& h) {
  const auto eig = hermitian_eig(h.matrix());
  const Real shift = eig.values.minCoeff();
  RealVectorT<Real> w = (-(eig.values.array() - shift)).exp().matrix();
  w /= w.sum();
  return BasicDensityMatrix<Real>::trusted(eig.vectors * w.asDiagonal() * eig.vectors.adjoint());
}

/// Projector onto the support of rho (eigenvalues above tol::psd).
template <typename Derived>
ComplexMatrixT<RealOf<Derived>> support_projector(const Eigen::MatrixBase<Derived>& rho) {
  const auto eig = hermitian_eig(rho);
  RealVectorT<RealOf<Derived>> mask = (eig.values.array() > tol::psd).template cast<RealOf<Derived>>().matrix();
  return eig.vectors * mask.asDiagonal() * eig.vectors.adjoint();
}

// ---------------------------------------------------------------------------
// Double-precision aliases used by the rest of the library.

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using RealVector = RealVectorT<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using Hamiltonian = BasicHamiltonian<double>;
using ProbDist = BasicProbDist<double>;

/// Standard-basis projector |i><j| on a d-dimensional space.
inline ComplexMatrix matrix_unit(Index d, Index i, Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1;
  return m;
}

namespace pauli {
inline ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix X() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix Y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline ComplexMatrix Z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
/// Tensor product of single-qubit Paulis from a string such as "XZZXI".
inline ComplexMatrix string(std::string_view s) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : s) {
    switch (c) {
      case 'I': out = tensor_product(out, I()); break;
      case 'X': out = tensor_product(out, X()); break;
      case 'Y': out = tensor_product(out, Y()); break;
      case 'Z': out = tensor_product(out, Z()); break;
      default: throw std::invalid_argument("pauli::string: unknown symbol");
    }
  }
  return out;
}
}  // namespace pauli

}  // namespace measurecost
