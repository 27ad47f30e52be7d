#include "measurecost/energetics.hpp"

#include <cmath>
#include <limits>

namespace measurecost {

double delta_E_S(const Hamiltonian& h_s, const DensityMatrix& rho_s, const DensityMatrix& rho_s_post) {
  if (h_s.dim() != rho_s.dim() || rho_s.dim() != rho_s_post.dim()) throw DimensionError("delta_E_S: dimension mismatch");
  return energy(h_s.matrix(), rho_s_post.matrix()) - energy(h_s.matrix(), rho_s.matrix());
}

double cost_exact(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  const auto marg = memory_marginals(dev, rho_s);
  const double de_s = energy(dev.h_s().matrix(), marg.system) - energy(dev.h_s().matrix(), rho_s.matrix());
  return de_s + entropy(marg.after_readout) - von_neumann_entropy(dev.rho_m());
}

EntropyDecomposition decomposition(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  const auto step = measurement_step(dev, rho_s);

  EntropyDecomposition d;
  const double s_s = von_neumann_entropy(rho_s);
  const double s_m = von_neumann_entropy(dev.rho_m());
  d.dS = s_s;
  for (std::size_t k = 0; k < step.probs.size(); ++k) {
    if (!step.joint_post[k]) continue;
    const double pk = step.probs[k];
    d.dS -= pk * von_neumann_entropy(*step.system_post[k]);
    d.I_avg += pk * (von_neumann_entropy(*step.system_post[k]) + von_neumann_entropy(*step.memory_post[k]) -
                     entropy(*step.joint_post[k]));
  }
  d.dF_M = free_energy(step.memory, dev.h_m()) - free_energy(dev.rho_m(), dev.h_m());
  d.D_Q = entropy(step.joint) - s_s - s_m;

  const double de_s = delta_E_S(dev.h_s(), rho_s, step.system);
  const double de_m = energy(dev.h_m().matrix(), step.memory.matrix()) - energy(dev.h_m().matrix(), dev.rho_m().matrix());
  d.E_M_step = de_s + de_m;
  d.residual = d.E_M_step - (de_s + d.dS + d.dF_M + d.I_avg + d.D_Q);
  return d;
}

namespace {

// S(rho_S) - sum_k p_k S(rho'_{S,k})
double post_entropy_gain(const MeasurementResult& r, const DensityMatrix& rho_s) {
  double gain = von_neumann_entropy(rho_s);
  for (std::size_t k = 0; k < r.probs.size(); ++k)
    if (r.post_states[k]) gain -= r.probs[k] * von_neumann_entropy(*r.post_states[k]);
  return gain;
}

}  // namespace

double bound_general(const QuantumInstrument& instr, const DensityMatrix& rho_s, const Hamiltonian& h_s) {
  const auto r = apply(instr, rho_s);
  return delta_E_S(h_s, rho_s, r.average_post) + post_entropy_gain(r, rho_s);
}

double cost_projective(const QuantumInstrument& instr, const DensityMatrix& rho_s, const Hamiltonian& h_s) {
  const auto projectors = projectors_of(instr);
  if (rho_s.dim() != instr.system_dim()) throw DimensionError("cost_projective: dimension mismatch");
  std::vector<double> p;
  for (const auto& pk : projectors) p.push_back(std::max(0.0, energy(pk, rho_s.matrix())));
  const auto r = apply(instr, rho_s);
  return delta_E_S(h_s, rho_s, r.average_post) + shannon_entropy(ProbDist(std::move(p)));
}

double ineff_bound(const QuantumInstrument& instr, const DensityMatrix& rho_s, const Hamiltonian& h_s) {
  const auto r = apply(instr, rho_s);
  return delta_E_S(h_s, rho_s, r.average_post) - std::log(static_cast<double>(inefficiency(instr)));
}

double extractable(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  const auto marg = memory_marginals(dev, rho_s);
  const double de_s = energy(dev.h_s().matrix(), marg.system) - energy(dev.h_s().matrix(), rho_s.matrix());
  return de_s - cost_exact(dev, rho_s);
}

FaistComparison faist_compare(const QuantumInstrument& instr, const DensityMatrix& rho_s) {
  if (rho_s.dim() != instr.system_dim()) throw DimensionError("faist_compare: dimension mismatch");
  const Index d = instr.system_dim();
  const ComplexMatrix pi_s = support_projector(rho_s.matrix());

  // E(Pi_S) is block diagonal over the recorded outcomes, so its norm is the
  // largest block norm.
  double norm = 0.0;
  std::vector<Index> block_dims;
  std::vector<KrausList> minimal;
  for (const auto& kl : instr.outcomes()) {
    norm = std::max(norm, operator_norm(hermitian_part(apply_outcome(kl, pi_s))));
    minimal.push_back(minimal_kraus(kl, d));
    block_dims.push_back(static_cast<Index>(minimal.back().size()));
  }

  // Canonical memory state: <k,i| rho'_M |k,j> = tr[M_ki rho M_kj^dagger].
  const MemoryLayout layout(block_dims);
  ComplexMatrix rho_m = ComplexMatrix::Zero(layout.total_dim(), layout.total_dim());
  for (std::size_t k = 0; k < minimal.size(); ++k)
    for (std::size_t i = 0; i < minimal[k].size(); ++i)
      for (std::size_t j = 0; j < minimal[k].size(); ++j)
        rho_m(layout.offset(k) + static_cast<Index>(i), layout.offset(k) + static_cast<Index>(j)) =
            (minimal[k][i] * rho_s.matrix() * minimal[k][j].adjoint()).trace();
  const Index rank = numerical_rank(hermitian_part(rho_m), tol::psd);

  FaistComparison f;
  f.E0 = std::log(norm) + std::log(static_cast<double>(rank));
  f.E_iid = post_entropy_gain(apply(instr, rho_s), rho_s);
  return f;
}

SecondLawCheck second_law_check(const MeasurementDevice& dev, const DensityMatrix& rho_s) {
  const auto marg = memory_marginals(dev, rho_s);
  SecondLawCheck c;
  c.W_cost = cost_exact(dev, rho_s);
  c.dF_S = free_energy(DensityMatrix::trusted(marg.system), dev.h_s()) - free_energy(rho_s, dev.h_s());
  c.margin = c.W_cost - c.dF_S;
  return c;
}

EnergyReport energy_report(const MeasurementDevice& dev, const QuantumInstrument& instr, const DensityMatrix& rho_s) {
  EnergyReport r;
  r.decomposition = decomposition(dev, rho_s);
  const auto marg = memory_marginals(dev, rho_s);
  r.delta_E_S = energy(dev.h_s().matrix(), marg.system) - energy(dev.h_s().matrix(), rho_s.matrix());
  r.E_cost = cost_exact(dev, rho_s);
  r.E_M_step = r.decomposition.E_M_step;
  r.E_reset = -r.decomposition.dF_M;
  r.bound_general = bound_general(instr, rho_s, dev.h_s());
  if (is_projective(instr)) r.E_proj_exact = cost_projective(instr, rho_s, dev.h_s());
  r.ineff_bound = ineff_bound(instr, rho_s, dev.h_s());
  r.E_ext = r.delta_E_S - r.E_cost;
  r.faist = faist_compare(instr, rho_s);
  return r;
}

std::array<double, 14> report_values(const EnergyReport& r) {
  return {r.delta_E_S,
          r.E_cost,
          r.E_M_step,
          r.E_reset,
          r.bound_general,
          r.E_proj_exact.value_or(std::numeric_limits<double>::quiet_NaN()),
          r.ineff_bound,
          r.E_ext,
          r.decomposition.dS,
          r.decomposition.dF_M,
          r.decomposition.I_avg,
          r.decomposition.D_Q,
          r.faist.E0,
          r.faist.E_iid};
}

}  // namespace measurecost
