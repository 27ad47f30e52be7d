#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <set>

using namespace measurecost;

TEST_CASE("Zeno: single step at theta = pi/2 ends in the wrong state") {
  const auto r = zeno_run({std::numbers::pi / 2, 1});
  CHECK(r.eps[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(r.total_cost) < 1e-12);
  CHECK(std::abs(r.fidelity) < 1e-15);
}

TEST_CASE("Zeno: recursion matches the closed form") {
  for (int steps : {1, 7, 100, 1000}) {
    const auto r = zeno_run({1.3, steps});
    for (int n = 1; n <= steps; ++n)
      CHECK(std::abs(r.eps[static_cast<std::size_t>(n - 1)] - zeno_closed_form(1.3, steps, n)) < 1e-12);
  }
}

TEST_CASE("Zeno: totals against direct summation") {
  // reference sums of binary entropies
  const auto r1000 = zeno_run({1.0, 1000});
  CHECK(r1000.total_cost == doctest::Approx(4.205250371404105).epsilon(1e-10));
  CHECK(r1000.eps.back() == doctest::Approx(0.0009990013316688612).epsilon(1e-10));
  CHECK(std::abs(r1000.total_cost - r1000.asymptotic_cost) / r1000.asymptotic_cost < 0.02);
  const auto r100 = zeno_run({1.0, 100});
  CHECK(r100.total_cost == doctest::Approx(3.0624234171286098).epsilon(1e-10));
  double sum = 0;
  for (double c : r100.step_cost) sum += c;
  CHECK(sum == doctest::Approx(r100.total_cost).epsilon(1e-14));
  CHECK(r100.fidelity == doctest::Approx(1 - r100.eps.back()));
}

TEST_CASE("Zeno: doubling N adds about (theta^2/2) ln 2") {
  const auto a = zeno_run({1.0, 2000});
  const auto b = zeno_run({1.0, 4000});
  CHECK(a.total_cost == doctest::Approx(4.551195539280508).epsilon(1e-10));
  CHECK((b.total_cost - a.total_cost) == doctest::Approx(0.5 * kLn2).epsilon(0.01));
}

TEST_CASE("Zeno: total cost grows with target fidelity") {
  double last_cost = -1, last_fidelity = -1;
  for (int steps : {10, 20, 50, 100, 200, 500, 1000, 5000}) {
    const auto r = zeno_run({1.0, steps});
    CHECK(r.fidelity > last_fidelity);
    CHECK(r.total_cost > last_cost);
    last_cost = r.total_cost;
    last_fidelity = r.fidelity;
  }
}

TEST_CASE("Zeno: invalid configurations") {
  CHECK_THROWS_AS(zeno_run({0.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(zeno_run({1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(zeno_device_crosscheck({1.0, 10}, {11}), std::invalid_argument);
}

TEST_CASE("Zeno: device cross-check") {
  CHECK(zeno_device_crosscheck({1.0, 100}, {1, 2, 3, 10, 20, 40, 60, 80, 99, 100}) < 1e-8);
  const auto dev = canonical_device(computational_basis_instrument(2));
  CHECK(std::abs(cost_exact(dev, diag_state({1.0, 0.0}))) < 1e-15);
  CHECK(cost_exact(dev, diag_state({0.5, 0.5})) == doctest::Approx(kLn2).epsilon(1e-14));
}

TEST_CASE("five-qubit codewords") {
  const auto [zero, one] = qec5_codewords();
  CHECK(zero.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(zero.dot(one)) < 1e-15);
  for (const auto& s : qec5_stabilizers()) {
    CHECK((s * zero - zero).norm() < 1e-14);
    CHECK((s * one - one).norm() < 1e-14);
  }
  // observed convention: X^5 maps |0_L> to +|1_L>
  CHECK((pauli::string("XXXXX") * zero - one).norm() < 1e-14);
}

TEST_CASE("syndrome measurement") {
  const auto stab = qec5_stabilizers();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(max_abs(stab[i] * stab[j] - stab[j] * stab[i]) < 1e-15);
  const auto ps = qec5_syndrome_projectors();
  ComplexMatrix sum = ComplexMatrix::Zero(32, 32);
  for (const auto& p : ps) {
    CHECK(p.trace().real() == doctest::Approx(2.0).epsilon(1e-14));
    sum += p;
  }
  CHECK(max_abs(sum - ComplexMatrix::Identity(32, 32)) < 1e-14);
  const auto [zero, one] = qec5_codewords();
  const ComplexMatrix code = zero * zero.adjoint() + one * one.adjoint();
  CHECK(max_abs(ps[0] - code) < 1e-10);
  const auto instr = qec5_syndrome_instrument();
  CHECK(instr.outcome_count() == 16);
  CHECK(is_projective(instr));
}

TEST_CASE("syndromes identify every single-qubit Pauli") {
  const auto table = qec5_correction_table();
  CHECK(table[0] == "IIIII");
  std::set<std::string> seen(table.begin(), table.end());
  CHECK(seen.size() == 16);
  CHECK(pauli_syndrome("XIIII") == 0b0001);  // anticommutes with S^4 only
  CHECK(pauli_syndrome("ZIIII") == 0b1010);
  const auto stab = qec5_stabilizers();
  for (int s = 1; s < 16; ++s) {
    const ComplexMatrix e = pauli::string(table[static_cast<std::size_t>(s)]);
    for (int j = 0; j < 4; ++j) {
      const bool anti = max_abs(stab[static_cast<std::size_t>(j)] * e + e * stab[static_cast<std::size_t>(j)]) < 1e-14;
      CHECK(anti == static_cast<bool>((s >> (3 - j)) & 1));
    }
  }
}

TEST_CASE("QEC sweep reference values") {
  const auto psi = qec5_logical_state(1.0, 0.0);
  const auto r = qec5_sweep(psi, {0.0, 0.05, 0.3, 0.8, 1.0});
  CHECK(std::abs(r[0].E_proj) < 1e-12);
  CHECK(std::abs(r[0].E_sep) < 1e-12);
  CHECK(std::abs(r[0].E_SU) < 1e-12);
  CHECK(std::abs(r[0].E_Lan) < 1e-12);
  CHECK(r[0].recovered_fidelity == doctest::Approx(1.0));

  struct Ref {
    double e_proj, e_sep, e_su, e_lan, fidelity;
  };
  // independent dense-matrix evaluation
  const std::array<Ref, 4> refs{{
      {0.6512166889613216, 1.0280832863775018, 0.5627584209850254, 0.5533771650450308, 0.9955429687499998},
      {2.1563482856420286, 2.532445064018135, 1.643634006077126, 1.5817060017391795, 0.8768124999999996},
      {2.768409501452194, 2.772460720874413, 0.9344305359708864, 0.8722635068603184, 0.5039999999999999},
      {2.772588722239781, 2.772588722239781, 0.0, -0.6615632381579821, 0.375},
  }};
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto& got = r[i + 1];
    CHECK(got.E_proj == doctest::Approx(refs[i].e_proj).epsilon(1e-9));
    CHECK(got.E_sep == doctest::Approx(refs[i].e_sep).epsilon(1e-9));
    CHECK(std::abs(got.E_SU - refs[i].e_su) < 1e-9);
    CHECK(got.E_Lan == doctest::Approx(refs[i].e_lan).epsilon(1e-9));
    CHECK(got.recovered_fidelity == doctest::Approx(refs[i].fidelity).epsilon(1e-9));
  }
  CHECK(r[4].E_proj == doctest::Approx(4 * kLn2).epsilon(1e-12));
}

TEST_CASE("QEC ordering chain and gap decomposition") {
  const std::vector<double> gammas{0.0, 0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 1.0};
  for (const auto& psi : {qec5_logical_state(1.0, 0.0), qec5_logical_state(0.6, Complex(0, 0.8))}) {
    for (const auto& r : qec5_sweep(psi, gammas)) {
      CHECK(r.E_Lan <= r.E_SU + 1e-9);
      CHECK(r.E_SU <= r.E_proj + 1e-9);
      CHECK(r.E_proj <= r.E_sep + 1e-9);
      const auto gap = qec5_gap_decomposition(r);
      CHECK(std::abs(gap.residual) < 1e-9);
      CHECK(gap.I12 >= -1e-12);
      CHECK(gap.I12_3 >= -1e-12);
      CHECK(gap.I123_4 >= -1e-12);
    }
  }
}

TEST_CASE("QEC gap at gamma = 0.3 by two routes") {
  const auto r = qec5_point(qec5_logical_state(1.0, 0.0), 0.3);
  const auto gap = qec5_gap_decomposition(r);
  CHECK(gap.I12 + gap.I12_3 + gap.I123_4 == doctest::Approx(2.532445064018135 - 2.1563482856420286).epsilon(1e-9));
  const auto zero = qec5_gap_decomposition(qec5_point(qec5_logical_state(1.0, 0.0), 0.0));
  CHECK(zero.I12 == 0.0);
  CHECK(zero.I12_3 == 0.0);
  CHECK(zero.I123_4 == 0.0);
}

TEST_CASE("QEC parallel sweep matches serial sweep") {
  const auto psi = qec5_logical_state(std::sqrt(0.5), std::sqrt(0.5));
  const std::vector<double> g{0.1, 0.2, 0.3, 0.4, 0.5};
  const auto a = qec5_sweep(psi, g, 1);
  const auto b = qec5_sweep(psi, g, 3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(a[i].E_proj == b[i].E_proj);
    CHECK(a[i].E_Lan == b[i].E_Lan);
  }
}

TEST_CASE("QEC input validation") {
  ComplexVector outside = ComplexVector::Zero(32);
  outside(1) = 1.0;
  CHECK_THROWS_AS(qec5_sweep(outside, {0.1}), InvalidStateError);
  CHECK_THROWS_AS(qec5_logical_state(1.0, 1.0), InvalidStateError);
  CHECK_THROWS(qec5_sweep(qec5_logical_state(1.0, 0.0), {1.5}));
}

TEST_CASE("syndrome distribution from the 16-outcome device") {
  const auto instr = qec5_syndrome_instrument();
  const auto dev = canonical_device(instr);
  CHECK(dev.memory_dim() == 16);
  const auto psi = qec5_logical_state(1.0, 0.0);
  const auto noise = channel_tensor_power(amplitude_damping(0.2), 5);
  const auto rho = DensityMatrix::trusted(apply_channel(noise, psi * psi.adjoint()));
  const auto marg = memory_marginals(dev, rho);
  const auto r = qec5_point(psi, 0.2);
  for (std::size_t s = 0; s < 16; ++s) CHECK(std::abs(marg.probs[s] - r.p_s[s]) < 1e-9);
  CHECK(cost_exact(dev, rho) == doctest::Approx(r.E_proj).epsilon(1e-9));
}

TEST_CASE("work extraction pair") {
  const auto devs = workext_devices();
  CHECK(verify_implementation(devs.efficient, devs.efficient_instrument) < 1e-14);
  CHECK(verify_implementation(devs.inefficient, devs.inefficient_instrument) < 1e-14);
  CHECK(inefficiency(devs.inefficient_instrument) == 2);

  const auto basis = workext_pair(pure({1.0, 0.0}));
  CHECK(basis.inefficient.E_ext == doctest::Approx(kLn2).epsilon(1e-13));
  CHECK(std::abs(basis.efficient.E_ext) < 1e-13);
  const auto plus = workext_pair(plus_state());
  CHECK(std::abs(plus.inefficient.E_ext) < 1e-13);
  CHECK(plus.efficient.E_ext == doctest::Approx(-kLn2).epsilon(1e-13));

  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_mixed_state(2, rng);
    const auto r = workext_pair(rho);
    for (std::size_t k = 0; k < 2; ++k) CHECK(r.efficient_probs[k] == doctest::Approx(r.inefficient_probs[k]));
    CHECK(r.efficient.E_ext == doctest::Approx(-shannon_entropy(r.efficient_probs)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(workext_pair(DensityMatrix::maximally_mixed(3)), DimensionError);
}
