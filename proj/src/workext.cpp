#include "measurecost/protocols.hpp"

namespace measurecost {

namespace {

// Permutation unitary on S x M_A x M_B (index s * 4 + a * 2 + b).
template <typename F>
ComplexMatrix permutation(F map) {
  ComplexMatrix u = ComplexMatrix::Zero(8, 8);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto [s2, a2, b2] = map(s, a, b);
        u(s2 * 4 + a2 * 2 + b2, s * 4 + a * 2 + b) = 1.0;
      }
  return u;
}

}  // namespace

WorkextDevices workext_devices() {
  const MemoryLayout layout({2, 2});
  ComplexMatrix rho_m = ComplexMatrix::Zero(4, 4);
  rho_m(0, 0) = 0.5;
  rho_m(1, 1) = 0.5;

  const ComplexMatrix cnot = permutation([](int s, int a, int b) { return std::array<int, 3>{s, a ^ s, b}; });
  const ComplexMatrix swap_sb = permutation([](int s, int a, int b) { return std::array<int, 3>{b, a, s}; });

  const auto h_s = Hamiltonian::zero(2);
  const auto h_m = Hamiltonian::zero(4);
  return WorkextDevices{
      MeasurementDevice(2, layout, DensityMatrix(rho_m), cnot, h_s, h_m),
      MeasurementDevice(2, layout, DensityMatrix(rho_m), swap_sb * cnot, h_s, h_m),
      computational_basis_instrument(2),
      mixing_qubit_instrument(),
  };
}

WorkextReports workext_pair(const DensityMatrix& rho_s) {
  if (rho_s.dim() != 2) throw DimensionError("workext_pair: expects a qubit state");
  const auto devs = workext_devices();
  return WorkextReports{
      energy_report(devs.efficient, devs.efficient_instrument, rho_s),
      energy_report(devs.inefficient, devs.inefficient_instrument, rho_s),
      memory_marginals(devs.efficient, rho_s).probs,
      memory_marginals(devs.inefficient, rho_s).probs,
  };
}

}  // namespace measurecost
