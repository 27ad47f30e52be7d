#include "measurecost/verify.hpp"

#include "measurecost/protocols.hpp"
#include "measurecost/random.hpp"

#include <cmath>

namespace measurecost {

namespace {

constexpr int kInstruments = 20;

struct Case {
  QuantumInstrument instr;
  MeasurementDevice dev;
  DensityMatrix rho;
};

Case random_case(Rng& rng, bool projective) {
  std::uniform_int_distribution<int> dim(2, 5);
  std::uniform_int_distribution<int> outcomes(1, 3);
  std::uniform_int_distribution<int> kraus(1, 3);
  const Index d = dim(rng);
  const auto k = static_cast<std::size_t>(std::min<Index>(outcomes(rng), d));
  const std::uint64_t seed = rng();
  QuantumInstrument instr = projective ? random_projective_instrument(d, k, seed)
                                       : random_instrument(d, k, static_cast<std::size_t>(kraus(rng)), seed);
  Hamiltonian h_s(random_hermitian(d, rng));
  MeasurementDevice dev = canonical_device(instr, h_s);
  DensityMatrix rho = (rng() % 2) ? random_pure_state(d, rng) : random_mixed_state(d, rng);
  return {std::move(instr), std::move(dev), std::move(rho)};
}

// Random Hamiltonian commuting with every Q_k.
Hamiltonian block_hamiltonian(const MemoryLayout& layout, Rng& rng) {
  ComplexMatrix h = ComplexMatrix::Zero(layout.total_dim(), layout.total_dim());
  for (std::size_t k = 0; k < layout.block_count(); ++k)
    h.block(layout.offset(k), layout.offset(k), layout.block_dim(k), layout.block_dim(k)) =
        random_hermitian(layout.block_dim(k), rng);
  return Hamiltonian(h);
}

double shortfall(double value) { return std::max(0.0, -value); }

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
  Rng rng(options.seed);
  std::vector<PropertyResult> out;
  auto add = [&](std::string name, double residual, double tolerance) {
    out.push_back({std::move(name), residual, tolerance});
  };

  double implementation = 0, decomposition_eq = 0, nonneg_terms = 0, split = 0, hierarchy = 0, ineff = 0,
         second_law = 0, kraus_independence = 0, hm_independence = 0, extension = 0;
  for (int n = 0; n < kInstruments; ++n) {
    const auto c = random_case(rng, false);
    implementation = std::max(implementation, verify_implementation(c.dev, c.instr));
    const auto d = decomposition(c.dev, c.rho);
    decomposition_eq = std::max(decomposition_eq, std::abs(d.residual));
    nonneg_terms = std::max({nonneg_terms, shortfall(d.I_avg), shortfall(d.D_Q)});
    const auto report = energy_report(c.dev, c.instr, c.rho);
    split = std::max(split, std::abs(report.E_cost - (report.E_M_step + report.E_reset)));
    hierarchy = std::max(hierarchy, shortfall(report.E_cost - report.bound_general));
    ineff = std::max(ineff, shortfall(report.bound_general - report.ineff_bound));
    second_law = std::max(second_law, shortfall(second_law_check(c.dev, c.rho).margin));

    const auto remixed = remix_kraus(c.instr, 2, rng());
    const auto report2 = energy_report(canonical_device(remixed, c.dev.h_s()), remixed, c.rho);
    const auto a = report_values(report);
    const auto b = report_values(report2);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!std::isnan(a[i])) kraus_independence = std::max(kraus_independence, std::abs(a[i] - b[i]));

    const auto alt = c.dev.with_memory_hamiltonian(block_hamiltonian(c.dev.layout(), rng));
    hm_independence = std::max(hm_independence, std::abs(cost_exact(alt, c.rho) - report.E_cost));
    const auto desc = canonical_device(c.instr, c.dev.h_s(), std::nullopt, Completion::descending);
    extension = std::max(extension, std::abs(cost_exact(desc, c.rho) - report.E_cost));
  }
  if (options.inject_fault) {
    const auto c = random_case(rng, false);
    const Index dim = c.dev.u_sm().rows();
    const auto broken = c.dev.with_unitary(ComplexMatrix::Identity(dim, dim));
    implementation = std::max(implementation, verify_implementation(broken, c.instr));
  }

  double projective = 0, structure = 0;
  for (int n = 0; n < kInstruments; ++n) {
    const auto c = random_case(rng, true);
    const double exact = cost_exact(c.dev, c.rho);
    projective = std::max(projective, std::abs(exact - cost_projective(c.instr, c.rho, c.dev.h_s())));
    const auto report = memory_structure_check(c.dev, c.instr, {c.rho});
    structure = std::max({structure, report.decomposition_residual, report.orthogonality_residual, report.entropy_residual});
  }

  add("implementation: realized instrument matches target", implementation, kImplementationTolerance);
  add("entropy decomposition of the measurement energy", decomposition_eq, 1e-8);
  add("mutual information and correlation terms nonnegative", nonneg_terms, 1e-9);
  add("E_cost equals measurement plus reset energy", split, 1e-9);
  add("general lower bound", hierarchy, 1e-9);
  add("inefficiency bound below general bound", ineff, 1e-9);
  add("exact cost of projective measurements", projective, 1e-8);
  add("memory structure for projective measurements", structure, 1e-7);
  add("second law", second_law, 1e-9);
  add("Kraus representation independence", kraus_independence, 1e-8);
  add("memory Hamiltonian independence", hm_independence, 1e-9);
  add("unitary extension independence", extension, 1e-8);

  double deph_channel = 0, deph_cost = 0, deph_thermal = 0;
  for (Index k : {2, 4, 16})
    for (Index de : {2, 4}) {
      if (de * de < k) continue;
      const MemoryLayout layout(std::vector<Index>(static_cast<std::size_t>(k), 1));
      const auto dd = dephasing_device(layout, de);
      deph_channel = std::max(deph_channel, dephasing_channel_residual(layout, dd));
      const Hamiltonian h_m = block_hamiltonian(layout, rng);
      deph_cost = std::max(deph_cost, std::abs(dephasing_energy_cost(layout, h_m, dd, random_mixed_state(k, rng))));
    }
  for (int n = 0; n < 10; ++n) {
    const MemoryLayout layout({1, 2, 1});
    const Index de = 4;
    ComplexMatrix h = ComplexMatrix::Zero(de, de);
    std::uniform_real_distribution<double> level(0.0, 2.0);
    for (Index i = 0; i < de; ++i) h(i, i) = level(rng);
    const auto dd = random_thermal_dephasing(layout, Hamiltonian(h), rng());
    deph_channel = std::max(deph_channel, dephasing_channel_residual(layout, dd));
    deph_thermal = std::max(deph_thermal, shortfall(dephasing_energy_cost(layout, block_hamiltonian(layout, rng), dd,
                                                                          random_mixed_state(4, rng))));
  }
  add("dephasing channel equality", deph_channel, 1e-9);
  add("dephasing at zero energy cost", deph_cost, 1e-12);
  add("dephasing cost nonnegative for thermal environments", deph_thermal, 1e-9);

  const auto zeno = zeno_run({1.0, 100});
  double zeno_closed = 0;
  for (int n = 1; n <= 100; ++n)
    zeno_closed = std::max(zeno_closed, std::abs(zeno.eps[static_cast<std::size_t>(n - 1)] - zeno_closed_form(1.0, 100, n)));
  add("Zeno recursion closed form", zeno_closed, 1e-12);
  add("Zeno cost from device", zeno_device_crosscheck({1.0, 100}, {1, 10, 25, 50, 75, 100}), 1e-8);

  const auto psi = qec5_logical_state(1.0, 0.0);
  double chain = 0, gap = 0;
  for (double g : {0.0, 0.1, 0.3, 0.6, 1.0}) {
    const auto r = qec5_point(psi, g);
    chain = std::max({chain, shortfall(r.E_SU - r.E_Lan), shortfall(r.E_proj - r.E_SU), shortfall(r.E_sep - r.E_proj)});
    gap = std::max(gap, std::abs(qec5_gap_decomposition(r).residual));
  }
  add("error correction cost ordering", chain, 1e-9);
  add("separate versus joint syndrome gap", gap, 1e-9);
  return out;
}

}  // namespace measurecost
