#pragma once

#include "measurecost/energetics.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace measurecost {

// ---------------------------------------------------------------------------
// Zeno stabilization with H_S = E sigma_X, theta = E t / hbar, N measurements.

struct ZenoConfig {
  double theta_total = 1.0;
  int steps = 1000;
};

struct ZenoResult {
  std::vector<double> eps;        // eps_1 .. eps_N
  std::vector<double> step_cost;  // H({eps_n, 1 - eps_n})
  double total_cost = 0;
  double fidelity = 1;            // 1 - eps_N
  double asymptotic_cost = 0;     // (theta^2 / 2) ln[4.5 / (1 - F)]
};

ZenoResult zeno_run(const ZenoConfig& cfg);

/// eps_n = (1 - cos(2 theta / N)^n) / 2
double zeno_closed_form(double theta_total, int steps, int n);

/// (theta^2 / 2) ln[4.5 / (1 - F)]
double zeno_asymptotic(double theta_total, double fidelity);

/// Max |cost_exact - H(eps_n)| over the sampled steps (1-based), using the
/// canonical z-basis device on diag(1 - eps_n, eps_n).
double zeno_device_crosscheck(const ZenoConfig& cfg, const std::vector<int>& sample_steps);

// ---------------------------------------------------------------------------
// Five-qubit code. Qubit 1 is the most significant tensor factor.

std::pair<ComplexVector, ComplexVector> qec5_codewords();

/// S^1..S^4 = XZZXI, IXZZX, XIXZZ, ZXIXZ
std::array<ComplexMatrix, 4> qec5_stabilizers();

/// Joint syndrome projectors P_s, s = 0..15. Bit j of s (s^1 most significant)
/// is 1 when S^j has eigenvalue -1.
std::vector<ComplexMatrix> qec5_syndrome_projectors();

QuantumInstrument qec5_syndrome_instrument();

/// Syndrome of a Pauli string against S^1..S^4.
int pauli_syndrome(const std::string& pauli);

/// Correction label per syndrome: "IIIII" for s = 0, otherwise the unique
/// single-qubit Pauli with that syndrome. Throws if the map is not a bijection.
std::array<std::string, 16> qec5_correction_table();

struct Qec5Result {
  double gamma = 0;
  ProbDist p_s;
  double E_proj = 0;
  double E_sep = 0;
  double E_SU = 0;
  double E_Lan = 0;
  double recovered_fidelity = 1;
};

/// alpha_0 |0_L> + alpha_1 |1_L>. Throws InvalidStateError when not normalized.
ComplexVector qec5_logical_state(Complex alpha0, Complex alpha1);

/// One result per gamma. Throws InvalidStateError when psi is outside the code space.
std::vector<Qec5Result> qec5_sweep(const ComplexVector& psi, const std::vector<double>& gammas, int jobs = 1);

Qec5Result qec5_point(const ComplexVector& psi, double gamma);

struct Qec5Gap {
  double I12 = 0;     // I(S^1 : S^2)
  double I12_3 = 0;   // I(S^1 S^2 : S^3)
  double I123_4 = 0;  // I(S^1 S^2 S^3 : S^4)
  double residual = 0;  // (E_sep - E_proj) - sum
};

Qec5Gap qec5_gap_decomposition(const Qec5Result& result);

// ---------------------------------------------------------------------------
// Work extraction pair. Memory M_A x M_B (index a * 2 + b), rho_M = |0><0| x I/2,
// Q_k = |k><k| x I.

struct WorkextDevices {
  MeasurementDevice efficient;    // CNOT from S onto M_A
  MeasurementDevice inefficient;  // the same, followed by SWAP(S, M_B)
  QuantumInstrument efficient_instrument;
  QuantumInstrument inefficient_instrument;
};

WorkextDevices workext_devices();

struct WorkextReports {
  EnergyReport efficient;
  EnergyReport inefficient;
  ProbDist efficient_probs;
  ProbDist inefficient_probs;
};

WorkextReports workext_pair(const DensityMatrix& rho_s);

}  // namespace measurecost
