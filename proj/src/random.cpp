#include "measurecost/random.hpp"

namespace measurecost {

ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order keeps draws reproducible across Eigen versions.
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (rows < cols) throw DimensionError("random_isometry: rows must be >= cols");
  const ComplexMatrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  // Fix the phase freedom so the distribution does not depend on QR sign conventions.
  const ComplexMatrix r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_unitary(Index d, Rng& rng) { return random_isometry(d, d, rng); }

ComplexMatrix random_hermitian(Index d, Rng& rng, double scale) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  return hermitian_part(g) * scale;
}

ComplexVector random_pure_vector(Index d, Rng& rng) {
  ComplexVector v = gaussian_matrix(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_pure_state(Index d, Rng& rng) { return DensityMatrix::pure(random_pure_vector(d, rng)); }

DensityMatrix random_mixed_state(Index d, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

std::vector<DensityMatrix> sample_states(Index d, std::uint64_t seed, int pure, int mixed) {
  Rng rng(seed);
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(pure + mixed));
  for (int i = 0; i < pure; ++i) out.push_back(random_pure_state(d, rng));
  for (int i = 0; i < mixed; ++i) out.push_back(random_mixed_state(d, rng));
  return out;
}

}  // namespace measurecost
