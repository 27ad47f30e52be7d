#pragma once

#include "measurecost/qmat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace measurecost {

class InvalidInstrumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using KrausList = std::vector<ComplexMatrix>;

/// A quantum instrument given by outcome-indexed Kraus lists {M_ki}.
/// Completeness sum_{k,i} M_ki^dagger M_ki = I is checked on construction.
class QuantumInstrument {
 public:
  QuantumInstrument() = default;
  QuantumInstrument(Index system_dim, std::vector<KrausList> outcomes);

  Index system_dim() const { return system_dim_; }
  std::size_t outcome_count() const { return outcomes_.size(); }
  const std::vector<KrausList>& outcomes() const { return outcomes_; }
  const KrausList& outcome(std::size_t k) const { return outcomes_[k]; }

  /// max |sum M^dagger M - I|
  double completeness_defect() const;

 private:
  Index system_dim_ = 0;
  std::vector<KrausList> outcomes_;
};

/// A channel is a single-outcome instrument.
using Channel = QuantumInstrument;

struct Povm {
  std::vector<ComplexMatrix> elements;
};

struct MeasurementResult {
  ProbDist probs;
  // Empty where p_k <= tol::p0.
  std::vector<std::optional<DensityMatrix>> post_states;
  DensityMatrix average_post;
};

MeasurementResult apply(const QuantumInstrument& instr, const DensityMatrix& rho);

/// sum_{k,i} M_ki rho M_ki^dagger without normalization or validation.
ComplexMatrix apply_channel(const QuantumInstrument& instr, const ComplexMatrix& rho);

/// T_k(rho) = sum_i M_ki rho M_ki^dagger.
ComplexMatrix apply_outcome(const KrausList& kraus, const ComplexMatrix& rho);

Povm povm_of(const QuantumInstrument& instr);

/// Minimal Kraus rank of T_k from the spectrum of its Choi matrix.
Index kraus_rank(const KrausList& kraus, Index system_dim);

/// Max over outcomes of the minimal Kraus rank.
Index inefficiency(const QuantumInstrument& instr);

/// A Kraus list of minimal length representing the same map T_k.
KrausList minimal_kraus(const KrausList& kraus, Index system_dim);

/// True when every outcome has a single Kraus operator that is an orthogonal
/// projector (up to Kraus freedom, i.e. after reduction to minimal form).
bool is_projective(const QuantumInstrument& instr);

/// The projectors P_k of a projective instrument, in outcome order.
std::vector<ComplexMatrix> projectors_of(const QuantumInstrument& instr);

QuantumInstrument projective_instrument(const std::vector<ComplexMatrix>& projectors);

/// Computational-basis measurement {|k><k|} on a d-level system.
QuantumInstrument computational_basis_instrument(Index d);

/// The qubit instrument {M_ki = |i><k| / sqrt 2}: records k and outputs I/2.
QuantumInstrument mixing_qubit_instrument();

/// Amplitude damping with Kraus operators sqrt(g)|0><1| and sqrt(1 - J1^dag J1).
Channel amplitude_damping(double gamma);

/// n-fold tensor power of a channel. Throws when the output dimension exceeds 2^10.
Channel channel_tensor_power(const Channel& ch, int n);

/// Random instrument whose Kraus operators are blocks of a random isometry
/// C^d -> C^(d * outcomes * kraus_per_outcome). Deterministic per seed.
QuantumInstrument random_instrument(Index system_dim, std::size_t outcome_count,
                                    std::size_t kraus_per_outcome, std::uint64_t seed);

/// Projective measurement in a random basis whose d basis vectors are split
/// into `outcome_count` nonempty groups of random sizes.
QuantumInstrument random_projective_instrument(Index system_dim, std::size_t outcome_count, std::uint64_t seed);

/// Same instrument with each Kraus list {M_i} replaced by {sum_i W_ji M_i} for a
/// random isometry W adding `extra` operators per outcome.
QuantumInstrument remix_kraus(const QuantumInstrument& instr, std::size_t extra, std::uint64_t seed);

}  // namespace measurecost
