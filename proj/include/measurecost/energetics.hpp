#pragma once

#include "measurecost/device.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace measurecost {

// All quantities are in units of k_B T (beta = 1).

/// tr[H_S (rho' - rho)]
double delta_E_S(const Hamiltonian& h_s, const DensityMatrix& rho_s, const DensityMatrix& rho_s_post);

/// E_cost = dE_S + S(rho'_M) - S(rho_M), with the reset at the Landauer value -dF_M.
double cost_exact(const MeasurementDevice& dev, const DensityMatrix& rho_s);

struct EntropyDecomposition {
  double dS = 0;     // S(rho_S) - sum_k p_k S(rho'_{S,k})
  double dF_M = 0;   // F(rho'_M) - F(rho_M)
  double I_avg = 0;  // sum_k p_k I(S:M | k)
  double D_Q = 0;    // S(rho'_SM) - S(rho_S x rho_M)
  double E_M_step = 0;
  double residual = 0;  // E_M_step - (dE_S + dS + dF_M + I_avg + D_Q)
};

EntropyDecomposition decomposition(const MeasurementDevice& dev, const DensityMatrix& rho_s);

/// dE_S + S(rho_S) - sum_k p_k S(rho'_{S,k})
double bound_general(const QuantumInstrument& instr, const DensityMatrix& rho_s, const Hamiltonian& h_s);

/// dE_S + H({tr[rho_S P_k]}). Throws InvalidInstrumentError for non-projective input.
double cost_projective(const QuantumInstrument& instr, const DensityMatrix& rho_s, const Hamiltonian& h_s);

/// dE_S - ln I with I the inefficiency of the instrument.
double ineff_bound(const QuantumInstrument& instr, const DensityMatrix& rho_s, const Hamiltonian& h_s);

/// dE_S - E_cost
double extractable(const MeasurementDevice& dev, const DensityMatrix& rho_s);

struct FaistComparison {
  double E0 = 0;     // ln ||E(Pi_S)||_inf + ln rank(rho'_M)
  double E_iid = 0;  // S(rho_S) - sum_k p_k S(rho'_{S,k})
};

/// Single-shot (epsilon = 0) and i.i.d. estimates with H_S = 0. rho'_M is the
/// memory state of the canonical device.
FaistComparison faist_compare(const QuantumInstrument& instr, const DensityMatrix& rho_s);

struct SecondLawCheck {
  double W_cost = 0;
  double dF_S = 0;
  double margin = 0;  // W_cost - dF_S
};

SecondLawCheck second_law_check(const MeasurementDevice& dev, const DensityMatrix& rho_s);

struct EnergyReport {
  double delta_E_S = 0;
  double E_cost = 0;
  double E_M_step = 0;
  double E_reset = 0;
  double bound_general = 0;
  std::optional<double> E_proj_exact;
  double ineff_bound = 0;
  double E_ext = 0;
  EntropyDecomposition decomposition;
  FaistComparison faist;
};

/// Full report for a device and the instrument it implements.
EnergyReport energy_report(const MeasurementDevice& dev, const QuantumInstrument& instr, const DensityMatrix& rho_s);

inline constexpr std::array<std::string_view, 14> kEnergyReportFields = {
    "delta_E_S", "E_cost", "E_M_step", "E_reset", "bound_general", "E_proj_exact", "ineff_bound",
    "E_ext",     "dS",     "dF_M",     "I_avg",   "D_Q",           "faist_E0",     "faist_iid"};

/// Values in kEnergyReportFields order; a missing E_proj_exact is NaN.
std::array<double, 14> report_values(const EnergyReport& report);

}  // namespace measurecost
