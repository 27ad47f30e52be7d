#include "measurecost/device.hpp"

#include "measurecost/random.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace measurecost {

MemoryLayout::MemoryLayout(std::vector<Index> block_dims) : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) throw DimensionError("MemoryLayout: no blocks");
  offsets_.reserve(block_dims_.size());
  for (Index d : block_dims_) {
    if (d < 1) throw DimensionError("MemoryLayout: block dimensions must be >= 1");
    offsets_.push_back(total_dim_);
    total_dim_ += d;
  }
}

std::size_t MemoryLayout::block_of(Index m) const {
  if (m < 0 || m >= total_dim_) throw DimensionError("MemoryLayout: index out of range");
  std::size_t k = 0;
  while (k + 1 < offsets_.size() && offsets_[k + 1] <= m) ++k;
  return k;
}

ComplexMatrix MemoryLayout::projector(std::size_t k) const {
  ComplexMatrix q = ComplexMatrix::Zero(total_dim_, total_dim_);
  q.diagonal().segment(offsets_[k], block_dims_[k]).setOnes();
  return q;
}

bool MemoryLayout::is_block_diagonal(const ComplexMatrix& h, double tolerance) const {
  if (h.rows() != total_dim_ || h.cols() != total_dim_) return false;
  for (Index i = 0; i < total_dim_; ++i)
    for (Index j = 0; j < total_dim_; ++j)
      if (block_of(i) != block_of(j) && std::abs(h(i, j)) > tolerance) return false;
  return true;
}

MeasurementDevice::MeasurementDevice(Index system_dim, MemoryLayout layout, DensityMatrix rho_m,
                                     ComplexMatrix u_sm, Hamiltonian h_s, Hamiltonian h_m)
    : system_dim_(system_dim),
      layout_(std::move(layout)),
      rho_m_(std::move(rho_m)),
      u_sm_(std::move(u_sm)),
      h_s_(std::move(h_s)),
      h_m_(std::move(h_m)) {
  const Index dm = layout_.total_dim();
  if (system_dim_ < 1) throw DimensionError("device: system dimension must be >= 1");
  if (rho_m_.dim() != dm) throw DimensionError("device: rho_M does not match the memory layout");
  if (h_s_.dim() != system_dim_) throw DimensionError("device: H_S has wrong dimension");
  if (h_m_.dim() != dm) throw DimensionError("device: H_M has wrong dimension");
  if (u_sm_.rows() != system_dim_ * dm || u_sm_.cols() != system_dim_ * dm)
    throw DimensionError("device: U_SM has wrong dimension");
  if (unitarity_defect(u_sm_) > tol::trace) throw InvalidStateError("device: U_SM is not unitary");
  if (!layout_.is_block_diagonal(h_m_.matrix())) throw InvalidStateError("device: H_M must commute with every Q_k");
}

MeasurementDevice MeasurementDevice::with_memory_hamiltonian(Hamiltonian h_m) const {
  return MeasurementDevice(system_dim_, layout_, rho_m_, u_sm_, h_s_, std::move(h_m));
}

MeasurementDevice MeasurementDevice::with_system_hamiltonian(Hamiltonian h_s) const {
  return MeasurementDevice(system_dim_, layout_, rho_m_, u_sm_, std::move(h_s), h_m_);
}

MeasurementDevice MeasurementDevice::with_unitary(ComplexMatrix u_sm) const {
  return MeasurementDevice(system_dim_, layout_, rho_m_, std::move(u_sm), h_s_, h_m_);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kCompletionCutoff = 1e-6;

// Appends standard-basis candidates to the orthonormal columns q[0, n) until
// the basis is complete. Two projection passes keep the basis orthonormal.
void complete_basis(ComplexMatrix& q, Index n, Completion order) {
  const Index dim = q.rows();
  for (Index step = 0; step < dim && n < dim; ++step) {
    const Index j = order == Completion::ascending ? step : dim - 1 - step;
    ComplexVector v = ComplexVector::Zero(dim);
    v(j) = 1.0;
    for (int pass = 0; pass < 2 && n > 0; ++pass) {
      const ComplexVector c = q.leftCols(n).adjoint() * v;
      v.noalias() -= q.leftCols(n) * c;
    }
    const double norm = v.norm();
    if (norm < kCompletionCutoff) continue;
    q.col(n++) = v / norm;
  }
  if (n != dim) throw std::runtime_error("canonical_device: basis completion failed");
}

}  // namespace

MeasurementDevice canonical_device(const QuantumInstrument& instr, const Hamiltonian& h_s,
                                   std::optional<Hamiltonian> h_m, Completion completion) {
  const Index ds = instr.system_dim();
  if (h_s.dim() != ds) throw DimensionError("canonical_device: H_S has wrong dimension");
  std::vector<KrausList> minimal;
  std::vector<Index> dims;
  for (const auto& kl : instr.outcomes()) {
    minimal.push_back(minimal_kraus(kl, ds));
    dims.push_back(static_cast<Index>(minimal.back().size()));
  }
  MemoryLayout layout(dims);
  const Index dm = layout.total_dim();
  const Index dim = ds * dm;

  // Columns (s, m0 = 0) are fixed by the instrument; they are orthonormal by completeness.
  ComplexMatrix fixed = ComplexMatrix::Zero(dim, ds);
  for (Index s = 0; s < ds; ++s)
    for (std::size_t k = 0; k < minimal.size(); ++k)
      for (std::size_t i = 0; i < minimal[k].size(); ++i) {
        const Index m = layout.offset(k) + static_cast<Index>(i);
        for (Index a = 0; a < ds; ++a) fixed(a * dm + m, s) = minimal[k][i](a, s);
      }

  ComplexMatrix basis(dim, dim);
  basis.leftCols(ds) = fixed;
  complete_basis(basis, ds, completion);

  ComplexMatrix u(dim, dim);
  Index next = ds;
  for (Index s = 0; s < ds; ++s)
    for (Index m = 0; m < dm; ++m) u.col(s * dm + m) = m == 0 ? basis.col(s) : basis.col(next++);

  ComplexVector m0 = ComplexVector::Zero(dm);
  m0(0) = 1.0;
  Hamiltonian hm = h_m ? *h_m : Hamiltonian::zero(dm);
  return MeasurementDevice(ds, layout, DensityMatrix::pure(m0), std::move(u), h_s, std::move(hm));
}

MeasurementDevice canonical_device(const QuantumInstrument& instr) {
  return canonical_device(instr, Hamiltonian::zero(instr.system_dim()));
}

// ---------------------------------------------------------------------------

namespace {

// Returns A with A A^dagger = rho, keeping only the nonzero part of the spectrum.
ComplexMatrix square_root_factor(const ComplexMatrix& rho) {
  const auto eig = hermitian_eig(rho);
  std::vector<Index> keep;
  for (Index j = 0; j < eig.values.size(); ++j)
    if (eig.values(j) > 1e-15) keep.push_back(j);
  ComplexMatrix a(rho.rows(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    a.col(static_cast<Index>(c)) = eig.vectors.col(keep[c]) * std::sqrt(eig.values(keep[c]));
  return a;
}

// U (A_S x A_M): a factor of the joint state after the interaction.
ComplexMatrix evolved_factor(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  if (rho_s.dim() != dev.system_dim()) throw DimensionError("measurement: state dimension does not match device");
  const ComplexMatrix a = tensor_product(square_root_factor(rho_s.matrix()), square_root_factor(dev.rho_m().matrix()));
  return dev.u_sm() * a;
}

// Keeps only the rows whose memory index lies in block k.
ComplexMatrix restrict_to_block(const ComplexMatrix& b, const MemoryLayout& layout, std::size_t k) {
  const Index dm = layout.total_dim();
  const Index ds = b.rows() / dm;
  ComplexMatrix out = ComplexMatrix::Zero(b.rows(), b.cols());
  for (Index s = 0; s < ds; ++s)
    out.middleRows(s * dm + layout.offset(k), layout.block_dim(k)) =
        b.middleRows(s * dm + layout.offset(k), layout.block_dim(k));
  return out;
}

}  // namespace

StepOutcome measurement_step(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  const ComplexMatrix b = evolved_factor(dev, rho_s);
  const Index ds = dev.system_dim();
  const Index dm = dev.memory_dim();
  const std::array<Index, 2> dims{ds, dm};
  const std::array<Index, 1> keep_s{0};
  const std::array<Index, 1> keep_m{1};

  StepOutcome out;
  out.system_dim = ds;
  out.layout = dev.layout();
  out.joint = ComplexMatrix::Zero(ds * dm, ds * dm);
  std::vector<double> p;
  for (std::size_t k = 0; k < dev.layout().block_count(); ++k) {
    const ComplexMatrix bk = restrict_to_block(b, dev.layout(), k);
    const ComplexMatrix unnorm = bk * bk.adjoint();
    const double pk = bk.squaredNorm();
    p.push_back(pk);
    out.joint += unnorm;
    if (pk > tol::p0) {
      const ComplexMatrix joint_k = unnorm / pk;
      out.system_post.emplace_back(DensityMatrix::trusted(partial_trace(joint_k, dims, keep_s)));
      out.memory_post.emplace_back(DensityMatrix::trusted(partial_trace(joint_k, dims, keep_m)));
      out.joint_post.emplace_back(joint_k);
    } else {
      out.system_post.emplace_back(std::nullopt);
      out.memory_post.emplace_back(std::nullopt);
      out.joint_post.emplace_back(std::nullopt);
    }
  }
  out.probs = ProbDist(std::move(p));
  out.system = DensityMatrix::trusted(partial_trace(out.joint, dims, keep_s));
  out.memory = DensityMatrix::trusted(partial_trace(out.joint, dims, keep_m));
  return out;
}

MemoryMarginals memory_marginals(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  const ComplexMatrix b = evolved_factor(dev, rho_s);
  const Index ds = dev.system_dim();
  const Index dm = dev.memory_dim();
  const auto& layout = dev.layout();

  MemoryMarginals out;
  out.before_readout = ComplexMatrix::Zero(dm, dm);
  for (Index s = 0; s < ds; ++s) {
    const auto rows = b.middleRows(s * dm, dm);
    out.before_readout.noalias() += rows * rows.adjoint();
  }
  out.after_readout = ComplexMatrix::Zero(dm, dm);
  std::vector<double> p;
  for (std::size_t k = 0; k < layout.block_count(); ++k) {
    const Index o = layout.offset(k);
    const Index n = layout.block_dim(k);
    out.after_readout.block(o, o, n, n) = out.before_readout.block(o, o, n, n);
    p.push_back(std::max(0.0, out.before_readout.block(o, o, n, n).trace().real()));
  }
  out.probs = ProbDist(std::move(p));

  // tr_M: contract the memory index of B B^dagger.
  out.system = ComplexMatrix::Zero(ds, ds);
  for (Index a = 0; a < ds; ++a)
    for (Index c = 0; c <= a; ++c) {
      const Complex v = (b.middleRows(a * dm, dm).cwiseProduct(b.middleRows(c * dm, dm).conjugate())).sum();
      out.system(a, c) = v;
      out.system(c, a) = std::conj(v);
    }
  return out;
}

double verify_implementation(const MeasurementDevice& dev, const QuantumInstrument& instr) {
  const Index ds = dev.system_dim();
  const Index dm = dev.memory_dim();
  const auto& layout = dev.layout();
  if (instr.system_dim() != ds || instr.outcome_count() != layout.block_count())
    return std::numeric_limits<double>::infinity();

  // rho_M = sum_j mu_j phi_j phi_j^dagger. For each (a, j), W_{a,j} = U(|a> x phi_j)
  // reshaped to ds x dm so that the realized map on |a><b| for outcome k is
  // sum_j mu_j W_{a,j}[:, block k] W_{b,j}[:, block k]^dagger.
  const auto eig = hermitian_eig(dev.rho_m().matrix());
  std::vector<Index> support;
  for (Index j = 0; j < eig.values.size(); ++j)
    if (eig.values(j) > 1e-15) support.push_back(j);

  std::vector<std::vector<ComplexMatrix>> w(static_cast<std::size_t>(ds));
  for (Index a = 0; a < ds; ++a)
    for (Index j : support) {
      const ComplexVector col = dev.u_sm().middleCols(a * dm, dm) * eig.vectors.col(j);
      ComplexMatrix wa(ds, dm);
      for (Index s = 0; s < ds; ++s) wa.row(s) = col.segment(s * dm, dm).transpose() * std::sqrt(eig.values(j));
      w[static_cast<std::size_t>(a)].push_back(std::move(wa));
    }

  double worst = 0.0;
  for (std::size_t k = 0; k < layout.block_count(); ++k) {
    const Index o = layout.offset(k);
    const Index n = layout.block_dim(k);
    const auto& kraus = instr.outcome(k);
    for (Index a = 0; a < ds; ++a)
      for (Index c = 0; c < ds; ++c) {
        ComplexMatrix realized = ComplexMatrix::Zero(ds, ds);
        for (std::size_t j = 0; j < support.size(); ++j)
          realized.noalias() += w[static_cast<std::size_t>(a)][j].middleCols(o, n) *
                                w[static_cast<std::size_t>(c)][j].middleCols(o, n).adjoint();
        ComplexMatrix target = ComplexMatrix::Zero(ds, ds);
        for (const auto& m : kraus) target.noalias() += m.col(a) * m.col(c).adjoint();
        worst = std::max(worst, (realized - target).cwiseAbs().maxCoeff());
      }
  }
  return worst;
}

ComplexMatrix apply_feedback(const StepOutcome& step, const std::vector<ComplexMatrix>& unitaries) {
  const auto& layout = step.layout;
  const Index ds = step.system_dim;
  const Index dm = layout.total_dim();
  if (unitaries.size() != layout.block_count()) throw DimensionError("apply_feedback: one unitary per outcome required");

  // (V_k x I) X with X given as a (ds*dm) x n matrix in system-major order.
  auto left_system = [&](const ComplexMatrix& v, const ComplexMatrix& x) {
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (Index a = 0; a < ds; ++a)
      for (Index b = 0; b < ds; ++b)
        if (v(a, b) != Complex(0)) out.middleRows(a * dm, dm) += v(a, b) * x.middleRows(b * dm, dm);
    return out;
  };

  ComplexMatrix out = ComplexMatrix::Zero(ds * dm, ds * dm);
  for (std::size_t k = 0; k < layout.block_count(); ++k) {
    const auto& v = unitaries[k];
    if (v.rows() != ds || v.cols() != ds) throw DimensionError("apply_feedback: unitary has wrong dimension");
    // Q_k rho'_SM Q_k, via row and column masks.
    ComplexMatrix masked = restrict_to_block(step.joint, layout, k);
    masked = restrict_to_block(ComplexMatrix(masked.adjoint()), layout, k).adjoint();
    const ComplexMatrix left = left_system(v, masked);
    out += left_system(v, ComplexMatrix(left.adjoint())).adjoint();
  }
  return out;
}

// ---------------------------------------------------------------------------

ComplexMatrix heisenberg_weyl(Index d, Index l, Index m) {
  ComplexMatrix v = ComplexMatrix::Zero(d, d);
  for (Index r = 0; r < d; ++r) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r * m) / static_cast<double>(d);
    v((l + r) % d, r) = std::polar(1.0, angle);
  }
  return v;
}

namespace {

ComplexMatrix assemble_dephasing_unitary(const MemoryLayout& layout, const std::vector<ComplexMatrix>& vs) {
  ComplexMatrix u = ComplexMatrix::Zero(layout.total_dim() * vs.front().rows(), layout.total_dim() * vs.front().rows());
  for (std::size_t k = 0; k < vs.size(); ++k) u += tensor_product(layout.projector(k), vs[k]);
  return u;
}

}  // namespace

DephasingDevice dephasing_device(const MemoryLayout& layout, Index d_e) {
  const auto kcount = static_cast<Index>(layout.block_count());
  if (d_e < 1 || d_e * d_e < kcount) throw DimensionError("dephasing_device: need d_E^2 >= number of blocks");
  DephasingDevice out;
  for (Index k = 0; k < kcount; ++k) out.unitaries.push_back(heisenberg_weyl(d_e, k / d_e, k % d_e));
  out.u_me = assemble_dephasing_unitary(layout, out.unitaries);
  out.h_e = Hamiltonian::zero(d_e);
  out.sigma_e = DensityMatrix::maximally_mixed(d_e);
  return out;
}

DephasingDevice random_thermal_dephasing(const MemoryLayout& layout, const Hamiltonian& h_e, std::uint64_t seed) {
  const Index d_e = h_e.dim();
  const auto kcount = static_cast<Index>(layout.block_count());
  if (d_e < kcount) throw DimensionError("random_thermal_dephasing: need d_E >= number of blocks");
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  DephasingDevice out;
  out.h_e = h_e;
  out.sigma_e = thermal_state(h_e);
  const ComplexMatrix r = hermitian_eig(out.sigma_e.matrix()).vectors;
  const ComplexMatrix w = random_unitary(d_e, rng);
  const ComplexMatrix shift = heisenberg_weyl(d_e, 1, 0);
  ComplexMatrix shift_power = ComplexMatrix::Identity(d_e, d_e);
  for (Index k = 0; k < kcount; ++k) {
    ComplexMatrix phases = ComplexMatrix::Zero(d_e, d_e);
    for (Index i = 0; i < d_e; ++i) phases(i, i) = std::polar(1.0, angle(rng));
    out.unitaries.push_back(w * r * shift_power * phases * r.adjoint());
    shift_power = shift * shift_power;
  }
  out.u_me = assemble_dephasing_unitary(layout, out.unitaries);
  return out;
}

double dephasing_channel_residual(const MemoryLayout& layout, const DephasingDevice& dev) {
  const Index dm = layout.total_dim();
  const Index de = dev.sigma_e.dim();
  const std::array<Index, 2> dims{dm, de};
  const std::array<Index, 1> keep_m{0};
  double worst = 0.0;
  for (Index a = 0; a < dm; ++a)
    for (Index b = 0; b < dm; ++b) {
      const ComplexMatrix x = matrix_unit(dm, a, b);
      const ComplexMatrix realized =
          partial_trace(dev.u_me * tensor_product(x, dev.sigma_e.matrix()) * dev.u_me.adjoint(), dims, keep_m);
      const ComplexMatrix target = layout.block_of(a) == layout.block_of(b) ? x : ComplexMatrix::Zero(dm, dm);
      worst = std::max(worst, (realized - target).cwiseAbs().maxCoeff());
    }
  return worst;
}

double dephasing_energy_cost(const MemoryLayout& layout, const Hamiltonian& h_m, const DephasingDevice& dev,
                             const DensityMatrix& sigma_m) {
  const Index dm = layout.total_dim();
  const Index de = dev.sigma_e.dim();
  if (h_m.dim() != dm || sigma_m.dim() != dm) throw DimensionError("dephasing_energy_cost: dimension mismatch");
  const ComplexMatrix h_me = tensor_product(h_m.matrix(), ComplexMatrix::Identity(de, de)) +
                             tensor_product(ComplexMatrix::Identity(dm, dm), dev.h_e.matrix());
  const ComplexMatrix before = tensor_product(sigma_m.matrix(), dev.sigma_e.matrix());
  const ComplexMatrix after = dev.u_me * before * dev.u_me.adjoint();
  return energy(h_me, after) - energy(h_me, before);
}

// ---------------------------------------------------------------------------

MemoryStructureReport memory_structure_check(const MeasurementDevice& dev, const QuantumInstrument& instr,
                          const std::vector<DensityMatrix>& samples) {
  if (!is_projective(instr)) throw PreconditionError("memory_structure_check: instrument is not projective");
  if (!(verify_implementation(dev, instr) <= kImplementationTolerance))
    throw PreconditionError("memory_structure_check: device does not implement the instrument");

  const auto projectors = projectors_of(instr);
  const double s_m = von_neumann_entropy(dev.rho_m());
  MemoryStructureReport report;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const auto& p = projectors[k];
    Index best = 0;
    p.colwise().norm().maxCoeff(&best);
    const ComplexVector psi = p.col(best) / p.col(best).norm();
    const auto marg = memory_marginals(dev, DensityMatrix::pure(psi));
    const DensityMatrix sigma = DensityMatrix::trusted(marg.before_readout);
    const ComplexMatrix q = dev.layout().projector(k);
    report.orthogonality_residual =
        std::max(report.orthogonality_residual, (q * sigma.matrix() * q - sigma.matrix()).cwiseAbs().maxCoeff());
    report.entropy_residual = std::max(report.entropy_residual, std::abs(von_neumann_entropy(sigma) - s_m));
    report.sigma.push_back(sigma);
  }
  for (const auto& rho : samples) {
    const auto marg = memory_marginals(dev, rho);
    ComplexMatrix predicted = ComplexMatrix::Zero(dev.memory_dim(), dev.memory_dim());
    for (std::size_t k = 0; k < projectors.size(); ++k)
      predicted += energy(projectors[k], rho.matrix()) * report.sigma[k].matrix();
    report.decomposition_residual =
        std::max(report.decomposition_residual, (marg.after_readout - predicted).cwiseAbs().maxCoeff());
  }
  return report;
}

}  // namespace measurecost
