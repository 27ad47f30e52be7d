#pragma once

#include "measurecost/instrument.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace measurecost {

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Memory Hilbert space H_M = (+)_k H_k. Q_k projects onto block k.
class MemoryLayout {
 public:
  MemoryLayout() = default;
  explicit MemoryLayout(std::vector<Index> block_dims);

  std::size_t block_count() const { return block_dims_.size(); }
  Index total_dim() const { return total_dim_; }
  Index block_dim(std::size_t k) const { return block_dims_[k]; }
  Index offset(std::size_t k) const { return offsets_[k]; }
  const std::vector<Index>& block_dims() const { return block_dims_; }

  /// Outcome label of memory basis index m.
  std::size_t block_of(Index m) const;
  ComplexMatrix projector(std::size_t k) const;
  /// True when h has no matrix elements between different blocks.
  bool is_block_diagonal(const ComplexMatrix& h, double tolerance = tol::herm) const;

 private:
  std::vector<Index> block_dims_;
  std::vector<Index> offsets_;
  Index total_dim_ = 0;
};

/// Physical implementation (rho_M, U_SM, {Q_k}) together with H_S and H_M.
/// System is the first (most significant) tensor factor.
class MeasurementDevice {
 public:
  MeasurementDevice(Index system_dim, MemoryLayout layout, DensityMatrix rho_m, ComplexMatrix u_sm,
                    Hamiltonian h_s, Hamiltonian h_m);

  Index system_dim() const { return system_dim_; }
  Index memory_dim() const { return layout_.total_dim(); }
  const MemoryLayout& layout() const { return layout_; }
  const DensityMatrix& rho_m() const { return rho_m_; }
  const ComplexMatrix& u_sm() const { return u_sm_; }
  const Hamiltonian& h_s() const { return h_s_; }
  const Hamiltonian& h_m() const { return h_m_; }

  MeasurementDevice with_memory_hamiltonian(Hamiltonian h_m) const;
  MeasurementDevice with_system_hamiltonian(Hamiltonian h_s) const;
  /// Replaces U_SM; only unitarity is checked, so broken devices can be built.
  MeasurementDevice with_unitary(ComplexMatrix u_sm) const;

 private:
  Index system_dim_;
  MemoryLayout layout_;
  DensityMatrix rho_m_;
  ComplexMatrix u_sm_;
  Hamiltonian h_s_;
  Hamiltonian h_m_;
};

enum class Completion {
  ascending,   // standard-basis candidates in increasing index order
  descending,  // same candidates in decreasing order; a second valid extension
};

/// Minimal dilation: block k has dimension I(k) and rho_M = |m0><m0| with m0 the
/// first basis vector of block 0. U_SM maps |psi>|m0> to sum_{k,i} M_ki|psi>|k,i>
/// and is completed to a unitary by Gram-Schmidt over standard-basis columns.
MeasurementDevice canonical_device(const QuantumInstrument& instr, const Hamiltonian& h_s,
                                   std::optional<Hamiltonian> h_m = std::nullopt,
                                   Completion completion = Completion::ascending);

MeasurementDevice canonical_device(const QuantumInstrument& instr);

struct StepOutcome {
  ProbDist probs;
  std::vector<std::optional<ComplexMatrix>> joint_post;       // rho'_{SM,k}
  ComplexMatrix joint;                                        // rho'_SM
  DensityMatrix system;                                       // rho'_S
  DensityMatrix memory;                                       // rho'_M
  std::vector<std::optional<DensityMatrix>> system_post;      // rho'_{S,k}
  std::vector<std::optional<DensityMatrix>> memory_post;      // rho'_{M,k}
  Index system_dim = 0;
  MemoryLayout layout;
};

StepOutcome measurement_step(const MeasurementDevice& dev, const DensityMatrix& rho_s);

/// Memory-only view of the measurement step, without forming the joint state.
struct MemoryMarginals {
  ProbDist probs;
  ComplexMatrix before_readout;  // tr_S[U (rho_S x rho_M) U^dagger]
  ComplexMatrix after_readout;   // rho'_M = sum_k Q_k (before_readout) Q_k
  ComplexMatrix system;          // rho'_S
};

MemoryMarginals memory_marginals(const MeasurementDevice& dev, const DensityMatrix& rho_s);

inline constexpr double kImplementationTolerance = 1e-8;

/// Max deviation between tr_M[(1 x Q_k) U (X x rho_M) U^dagger (1 x Q_k)] and
/// T_k(X) over all matrix units X = |a><b| and outcomes k. Infinite when the
/// outcome counts or dimensions disagree.
double verify_implementation(const MeasurementDevice& dev, const QuantumInstrument& instr);

/// sum_k (V_k x Q_k) rho'_SM (V_k x Q_k)^dagger
ComplexMatrix apply_feedback(const StepOutcome& step, const std::vector<ComplexMatrix>& unitaries);

// ---------------------------------------------------------------------------
// Dephasing T_M(sigma) = sum_k Q_k sigma Q_k realized by U_ME = sum_k Q_k x V_k.

/// V_{l,m} = sum_r exp(2 pi i r m / d) |l + r mod d><r|
ComplexMatrix heisenberg_weyl(Index d, Index l, Index m);

struct DephasingDevice {
  ComplexMatrix u_me;
  Hamiltonian h_e;
  DensityMatrix sigma_e;
  std::vector<ComplexMatrix> unitaries;  // V_k per block
};

/// Zero-cost construction: H_E = 0, sigma_E = I/d_E, V_k the first K
/// Heisenberg-Weyl operators in (l, m) lexicographic order. Requires d_E^2 >= K.
DephasingDevice dephasing_device(const MemoryLayout& layout, Index d_e);

/// Admissible dilation with a thermal environment state of h_e: V_k = W R X^k D_k R^dagger
/// where R diagonalizes sigma_E, X is the cyclic shift and D_k random diagonal
/// phases. Requires d_E >= K.
DephasingDevice random_thermal_dephasing(const MemoryLayout& layout, const Hamiltonian& h_e,
                                         std::uint64_t seed);

/// Max deviation between tr_E[U (X x sigma_E) U^dagger] and T_M(X) over matrix units X.
double dephasing_channel_residual(const MemoryLayout& layout, const DephasingDevice& dev);

/// tr[H_ME (sigma'_ME - sigma_M x sigma_E)] with H_ME = H_M x 1 + 1 x H_E.
double dephasing_energy_cost(const MemoryLayout& layout, const Hamiltonian& h_m,
                             const DephasingDevice& dev, const DensityMatrix& sigma_m);

// ---------------------------------------------------------------------------

struct MemoryStructureReport {
  std::vector<DensityMatrix> sigma;      // sigma_{M,k}
  double decomposition_residual = 0;     // rho'_M vs sum_k tr[P_k rho] sigma_k
  double orthogonality_residual = 0;     // Q_k sigma_k Q_k vs sigma_k
  double entropy_residual = 0;           // S(sigma_k) vs S(rho_M)

  bool passed(double tolerance) const {
    return decomposition_residual <= tolerance && orthogonality_residual <= tolerance &&
           entropy_residual <= tolerance;
  }
};

/// Structure of the memory for an implementation of a projective measurement.
/// Throws PreconditionError when instr is not projective or dev does not implement it.
MemoryStructureReport memory_structure_check(const MeasurementDevice& dev, const QuantumInstrument& instr,
                          const std::vector<DensityMatrix>& samples);

}  // namespace measurecost
