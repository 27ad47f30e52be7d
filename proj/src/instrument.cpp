#include "measurecost/instrument.hpp"

#include "measurecost/random.hpp"

#include <cmath>
#include <string>

namespace measurecost {

namespace {

constexpr Index kMaxDim = 1024;

ComplexMatrix completeness_sum(Index d, const std::vector<KrausList>& outcomes) {
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& kl : outcomes)
    for (const auto& m : kl) sum.noalias() += m.adjoint() * m;
  return sum;
}

}  // namespace

QuantumInstrument::QuantumInstrument(Index system_dim, std::vector<KrausList> outcomes)
    : system_dim_(system_dim), outcomes_(std::move(outcomes)) {
  if (system_dim_ < 1) throw InvalidInstrumentError("instrument: system dimension must be >= 1");
  if (outcomes_.empty()) throw InvalidInstrumentError("instrument: no outcomes");
  for (std::size_t k = 0; k < outcomes_.size(); ++k) {
    if (outcomes_[k].empty())
      throw InvalidInstrumentError("instrument: outcome " + std::to_string(k) + " has no Kraus operators");
    for (const auto& m : outcomes_[k]) {
      if (m.rows() != system_dim_ || m.cols() != system_dim_)
        throw DimensionError("instrument: Kraus operator has wrong shape");
      if (!m.allFinite()) throw InvalidInstrumentError("instrument: non-finite Kraus entry");
    }
  }
  if (completeness_defect() > tol::trace)
    throw InvalidInstrumentError("instrument: Kraus operators violate completeness");
}

double QuantumInstrument::completeness_defect() const {
  ComplexMatrix sum = completeness_sum(system_dim_, outcomes_);
  sum.diagonal().array() -= 1.0;
  return sum.cwiseAbs().maxCoeff();
}

ComplexMatrix apply_outcome(const KrausList& kraus, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : kraus) out.noalias() += m * rho * m.adjoint();
  return out;
}

ComplexMatrix apply_channel(const QuantumInstrument& instr, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& kl : instr.outcomes()) out += apply_outcome(kl, rho);
  return out;
}

MeasurementResult apply(const QuantumInstrument& instr, const DensityMatrix& rho) {
  if (rho.dim() != instr.system_dim()) throw DimensionError("apply: state and instrument dimensions differ");
  std::vector<double> p;
  std::vector<std::optional<DensityMatrix>> posts;
  ComplexMatrix avg = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& kl : instr.outcomes()) {
    const ComplexMatrix unnorm = apply_outcome(kl, rho.matrix());
    const double pk = std::max(0.0, unnorm.trace().real());
    p.push_back(pk);
    avg += unnorm;
    if (pk > tol::p0)
      posts.emplace_back(DensityMatrix::trusted(unnorm / pk));
    else
      posts.emplace_back(std::nullopt);
  }
  return {ProbDist(std::move(p)), std::move(posts), DensityMatrix::trusted(avg)};
}

Povm povm_of(const QuantumInstrument& instr) {
  Povm povm;
  for (const auto& kl : instr.outcomes()) {
    ComplexMatrix e = ComplexMatrix::Zero(instr.system_dim(), instr.system_dim());
    for (const auto& m : kl) e.noalias() += m.adjoint() * m;
    povm.elements.push_back(hermitian_part(e));
  }
  return povm;
}

namespace {

// Columns are vec(M_i) (column-major); the Choi matrix of T_k is K K^dagger.
ComplexMatrix stacked_kraus(const KrausList& kraus, Index d) {
  ComplexMatrix k(d * d, static_cast<Index>(kraus.size()));
  for (std::size_t i = 0; i < kraus.size(); ++i)
    k.col(static_cast<Index>(i)) = Eigen::Map<const ComplexVector>(kraus[i].data(), d * d);
  return k;
}

}  // namespace

Index kraus_rank(const KrausList& kraus, Index system_dim) {
  const ComplexMatrix k = stacked_kraus(kraus, system_dim);
  // Nonzero Choi eigenvalues equal those of the small Gram matrix K^dagger K.
  const ComplexMatrix gram = k.adjoint() * k;
  return numerical_rank(gram, tol::psd);
}

KrausList minimal_kraus(const KrausList& kraus, Index system_dim) {
  const ComplexMatrix k = stacked_kraus(kraus, system_dim);
  const ComplexMatrix gram = k.adjoint() * k;
  const auto eig = hermitian_eig(gram);
  KrausList out;
  // Descending eigenvalue order so the dominant operator comes first.
  for (Index j = eig.values.size() - 1; j >= 0; --j) {
    if (eig.values(j) <= tol::psd) continue;
    // K v_j has norm sqrt(lambda_j); it is already the Choi-eigenvector scaled
    // by sqrt(lambda_j), i.e. a valid Kraus operator.
    ComplexVector col = k * eig.vectors.col(j);
    out.push_back(Eigen::Map<const ComplexMatrix>(col.data(), system_dim, system_dim));
  }
  if (out.empty()) out.push_back(ComplexMatrix::Zero(system_dim, system_dim));
  return out;
}

Index inefficiency(const QuantumInstrument& instr) {
  Index worst = 1;
  for (const auto& kl : instr.outcomes()) worst = std::max(worst, kraus_rank(kl, instr.system_dim()));
  return worst;
}

namespace {

bool is_projector(const ComplexMatrix& p, double tolerance) {
  if (!is_hermitian(p, tolerance)) return false;
  return (p * p - p).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace

bool is_projective(const QuantumInstrument& instr) {
  for (const auto& kl : instr.outcomes()) {
    const auto reduced = minimal_kraus(kl, instr.system_dim());
    if (reduced.size() != 1) return false;
    const ComplexMatrix& m = reduced[0];
    const ComplexMatrix e = m.adjoint() * m;
    if (!is_projector(e, 1e-8)) return false;
    // The minimal Kraus operator is only fixed up to a global phase: M = e^{i phi} P.
    Index r = 0, c = 0;
    if (e.cwiseAbs().maxCoeff(&r, &c) <= tol::psd) continue;
    const Complex phase = m(r, c) / e(r, c);
    if (std::abs(std::abs(phase) - 1.0) > 1e-8) return false;
    if ((m - phase * e).cwiseAbs().maxCoeff() > 1e-8) return false;
  }
  return true;
}

std::vector<ComplexMatrix> projectors_of(const QuantumInstrument& instr) {
  if (!is_projective(instr)) throw InvalidInstrumentError("instrument is not projective");
  return povm_of(instr).elements;
}

QuantumInstrument projective_instrument(const std::vector<ComplexMatrix>& projectors) {
  if (projectors.empty()) throw InvalidInstrumentError("projective_instrument: empty family");
  const Index d = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  std::vector<KrausList> outcomes;
  for (const auto& p : projectors) {
    if (p.rows() != d || p.cols() != d) throw DimensionError("projective_instrument: shape mismatch");
    if (!is_projector(p, tol::trace)) throw InvalidInstrumentError("projective_instrument: not a projector");
    sum += p;
    outcomes.push_back({p});
  }
  sum.diagonal().array() -= 1.0;
  if (sum.cwiseAbs().maxCoeff() > tol::trace)
    throw InvalidInstrumentError("projective_instrument: projectors do not sum to identity");
  return QuantumInstrument(d, std::move(outcomes));
}

QuantumInstrument computational_basis_instrument(Index d) {
  std::vector<ComplexMatrix> ps;
  for (Index k = 0; k < d; ++k) ps.push_back(matrix_unit(d, k, k));
  return projective_instrument(ps);
}

QuantumInstrument mixing_qubit_instrument() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<KrausList> outcomes;
  for (Index k = 0; k < 2; ++k) {
    KrausList kl;
    for (Index i = 0; i < 2; ++i) kl.push_back(matrix_unit(2, i, k) * s);
    outcomes.push_back(std::move(kl));
  }
  return QuantumInstrument(2, std::move(outcomes));
}

Channel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1]");
  ComplexMatrix j1 = ComplexMatrix::Zero(2, 2);
  j1(0, 1) = std::sqrt(gamma);
  // sqrt(1 - J1^dag J1) = diag(1, sqrt(1 - gamma))
  ComplexMatrix j2 = ComplexMatrix::Zero(2, 2);
  j2(0, 0) = 1.0;
  j2(1, 1) = std::sqrt(1.0 - gamma);
  return Channel(2, {KrausList{j1, j2}});
}

Channel channel_tensor_power(const Channel& ch, int n) {
  if (n < 1) throw std::invalid_argument("channel_tensor_power: n must be >= 1");
  if (ch.outcome_count() != 1) throw InvalidInstrumentError("channel_tensor_power: expects a single-outcome channel");
  Index dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= ch.system_dim();
    if (dim > kMaxDim) throw DimensionError("channel_tensor_power: output dimension exceeds 2^10");
  }
  KrausList acc{ComplexMatrix::Identity(1, 1)};
  for (int i = 0; i < n; ++i) {
    KrausList next;
    next.reserve(acc.size() * ch.outcome(0).size());
    for (const auto& a : acc)
      for (const auto& b : ch.outcome(0)) next.push_back(tensor_product(a, b));
    acc = std::move(next);
  }
  return Channel(dim, {std::move(acc)});
}

QuantumInstrument random_instrument(Index system_dim, std::size_t outcome_count,
                                    std::size_t kraus_per_outcome, std::uint64_t seed) {
  if (system_dim < 1 || outcome_count < 1 || kraus_per_outcome < 1)
    throw std::invalid_argument("random_instrument: counts must be >= 1");
  Rng rng(seed);
  const auto blocks = static_cast<Index>(outcome_count * kraus_per_outcome);
  const ComplexMatrix v = random_isometry(system_dim * blocks, system_dim, rng);
  std::vector<KrausList> outcomes(outcome_count);
  Index b = 0;
  for (auto& kl : outcomes)
    for (std::size_t i = 0; i < kraus_per_outcome; ++i, ++b) kl.push_back(v.middleRows(b * system_dim, system_dim));
  return QuantumInstrument(system_dim, std::move(outcomes));
}

QuantumInstrument random_projective_instrument(Index system_dim, std::size_t outcome_count, std::uint64_t seed) {
  if (outcome_count < 1 || static_cast<Index>(outcome_count) > system_dim)
    throw std::invalid_argument("random_projective_instrument: need 1 <= outcomes <= dimension");
  Rng rng(seed);
  const ComplexMatrix u = random_unitary(system_dim, rng);
  // Every group gets one vector, the rest are assigned uniformly at random.
  std::vector<std::size_t> group(static_cast<std::size_t>(system_dim));
  std::uniform_int_distribution<std::size_t> pick(0, outcome_count - 1);
  for (std::size_t i = 0; i < group.size(); ++i) group[i] = i < outcome_count ? i : pick(rng);
  std::vector<ComplexMatrix> projectors(outcome_count, ComplexMatrix::Zero(system_dim, system_dim));
  for (Index i = 0; i < system_dim; ++i)
    projectors[group[static_cast<std::size_t>(i)]] += u.col(i) * u.col(i).adjoint();
  std::vector<KrausList> outcomes;
  for (auto& p : projectors) outcomes.push_back({hermitian_part(p)});
  return QuantumInstrument(system_dim, std::move(outcomes));
}

QuantumInstrument remix_kraus(const QuantumInstrument& instr, std::size_t extra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<KrausList> outcomes;
  for (const auto& kl : instr.outcomes()) {
    const auto r = static_cast<Index>(kl.size());
    const ComplexMatrix w = random_isometry(r + static_cast<Index>(extra), r, rng);
    KrausList mixed;
    for (Index j = 0; j < w.rows(); ++j) {
      ComplexMatrix m = ComplexMatrix::Zero(instr.system_dim(), instr.system_dim());
      for (Index i = 0; i < r; ++i) m += w(j, i) * kl[static_cast<std::size_t>(i)];
      mixed.push_back(std::move(m));
    }
    outcomes.push_back(std::move(mixed));
  }
  return QuantumInstrument(instr.system_dim(), std::move(outcomes));
}

}  // namespace measurecost
