// Acceptance gate: one PASS/FAIL line per criterion with the measured value and pinned tolerance.

#include "measurecost/device.hpp"
#include "measurecost/energetics.hpp"
#include "measurecost/instrument.hpp"
#include "measurecost/protocols.hpp"
#include "measurecost/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

using namespace measurecost;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, const char* title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

DensityMatrix pure_qubit(Complex a0, Complex a1) {
  ComplexVector v(2);
  v << a0, a1;
  return DensityMatrix::pure(v);
}

void criterion1() {
  const auto t0 = Clock::now();
  Rng rng(kDefaultSeed + 1);
  double worst = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Index d = 2 + static_cast<Index>(i % 7);
    const std::size_t k = 1 + (i * 5) % static_cast<std::size_t>(d);
    const auto instr = random_projective_instrument(d, k, 1000 + i);
    const Hamiltonian h(random_hermitian(d, rng));
    const auto rho = i % 2 ? random_pure_state(d, rng) : random_mixed_state(d, rng);
    const auto dev = canonical_device(instr, h);
    const auto post = apply(instr, rho);
    const double formula = delta_E_S(h, rho, post.average_post) + shannon_entropy(post.probs);
    worst = std::max(worst, std::abs(cost_exact(dev, rho) - formula));
  }
  const double t = seconds_since(t0);
  report(1, "projective exactness", worst <= 1e-8 && t < 10,
         fmt("max |E_cost - (dE_S + H(p))| = %.3g (tol 1e-8), %.2f s (limit 10 s)", worst, t));
}

void criterion2() {
  const auto t0 = Clock::now();
  Rng rng(kDefaultSeed + 2);
  double worst = 0, min_i = std::numeric_limits<double>::infinity(), min_q = min_i;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Index d = 2 + static_cast<Index>(i % 4);
    const auto instr = random_instrument(d, 1 + i % 4, 1 + (i / 4) % 4, 2000 + i);
    auto dev = canonical_device(instr, Hamiltonian(random_hermitian(d, rng)));
    const auto& layout = dev.layout();
    ComplexMatrix hm = ComplexMatrix::Zero(layout.total_dim(), layout.total_dim());
    for (std::size_t k = 0; k < layout.block_count(); ++k)
      hm.block(layout.offset(k), layout.offset(k), layout.block_dim(k), layout.block_dim(k)) =
          random_hermitian(layout.block_dim(k), rng);
    dev = dev.with_memory_hamiltonian(Hamiltonian(hm));
    const auto dec = decomposition(dev, random_mixed_state(d, rng));
    worst = std::max(worst, std::abs(dec.residual));
    min_i = std::min(min_i, dec.I_avg);
    min_q = std::min(min_q, dec.D_Q);
  }
  const double t = seconds_since(t0);
  // nonnegativity is checked to the entropy evaluation floor
  const bool ok = worst <= 1e-8 && min_i >= -1e-12 && min_q >= -1e-12 && t < 30;
  report(2, "entropy decomposition equality", ok,
         fmt("max residual %.3g (tol 1e-8), min I %.3g, min D_Q %.3g, %.2f s (limit 30 s)", worst, min_i, min_q, t));
}

void criterion3() {
  Rng rng(kDefaultSeed + 3);
  double m1 = std::numeric_limits<double>::infinity(), m2 = m1;
  Index max_ineff = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Index d = 2 + static_cast<Index>(i % 3);
    const auto instr = random_instrument(d, 1 + i % 3, 1 + (i / 3) % 4, 3000 + i);
    max_ineff = std::max(max_ineff, inefficiency(instr));
    const Hamiltonian h(random_hermitian(d, rng));
    const auto rho = i % 2 ? random_pure_state(d, rng) : random_mixed_state(d, rng);
    const double exact = cost_exact(canonical_device(instr, h), rho);
    const double general = bound_general(instr, rho, h);
    m1 = std::min(m1, exact - general);
    m2 = std::min(m2, general - ineff_bound(instr, rho, h));
  }
  report(3, "bound hierarchy", m1 >= -1e-9 && m2 >= -1e-9 && max_ineff == 4,
         fmt("min(E_cost - bound) %.3g, min(bound - ineff_bound) %.3g (tol -1e-9), max inefficiency %.0f", m1, m2,
             static_cast<double>(max_ineff)));
}

void criterion4() {
  const double ln2 = std::log(2.0);
  const double s = 1 / std::sqrt(2.0);
  const double e0 = workext_pair(pure_qubit(1, 0)).inefficient.E_ext;
  const double ep = workext_pair(pure_qubit(s, s)).inefficient.E_ext;
  Rng rng(kDefaultSeed + 4);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const auto r = workext_pair(i % 2 ? random_pure_state(2, rng) : random_mixed_state(2, rng));
    worst = std::max(worst, std::abs(r.efficient.E_ext + shannon_entropy(r.efficient_probs)));
  }
  const bool ok = std::abs(e0 - ln2) <= 1e-10 && std::abs(ep) <= 1e-10 && worst <= 1e-10;
  report(4, "work extraction", ok,
         fmt("inefficient |0>: %.12g (want ln 2), |+>: %.3g, efficient max |E_ext + H| %.3g (tol 1e-10)", e0, ep,
             worst));
}

void criterion5() {
  const auto t0 = Clock::now();
  const ZenoConfig cfg{1.0, 10000};
  const auto r = zeno_run(cfg);
  const double dev = std::abs(r.total_cost - r.asymptotic_cost) / r.asymptotic_cost;
  std::vector<int> steps;
  for (int i = 1; i <= 10; ++i) steps.push_back(i * 1000);
  const double cross = zeno_device_crosscheck(cfg, steps);
  const double t = seconds_since(t0);
  report(5, "Zeno asymptotics", dev <= 0.02 && cross <= 1e-8 && t < 5,
         fmt("total %.10g vs asymptotic %.10g, rel dev %.4g (tol 0.02); device residual %.3g (tol 1e-8); %.2f s", r.total_cost,
             r.asymptotic_cost, dev, cross) +
             fmt(" (limit 5 s)", t));
}

void criterion6(std::vector<Qec5Result>& out) {
  const auto t0 = Clock::now();
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i == 100 ? 1.0 : i / 100.0);
  out = qec5_sweep(qec5_logical_state(1, 0), grid);
  const double t = seconds_since(t0);
  const double e_first = out.front().E_proj, e_last = out.back().E_proj;
  bool chain = true, lan_negative = true;
  double lan_worst = -std::numeric_limits<double>::infinity(), first_negative = std::nan("");
  for (const auto& r : out) {
    chain = chain && r.E_Lan <= r.E_SU + 1e-9 && r.E_SU <= r.E_proj + 1e-9 && r.E_proj <= r.E_sep + 1e-9;
    if (r.gamma >= 0.8 - 1e-12) {
      lan_negative = lan_negative && r.E_Lan < 0;
      lan_worst = std::max(lan_worst, r.E_Lan);
    }
    if (std::isnan(first_negative) && r.E_Lan < 0) first_negative = r.gamma;
  }
  const bool endpoints = std::abs(e_first) <= 1e-12 && std::abs(e_last - 4 * std::log(2.0)) <= 1e-6;
  report(6, "QEC endpoints and shape", endpoints && lan_negative && chain && t < 60,
         fmt("E_proj(0) %.3g, E_proj(1)/ln2 %.9g (tol 1e-6); ", e_first, e_last / std::log(2.0)) +
             fmt("max E_Lan on gamma>=0.8 %.6g (want < 0), first grid point with E_Lan < 0: %.2f; ", lan_worst,
                 first_negative) +
             (chain ? "ordering chain holds" : "ordering chain broken") + fmt(" at 101 points; %.2f s (limit 60 s)", t));
}

void criterion7(const std::vector<Qec5Result>& sweep) {
  const auto& r = sweep[5];
  const double improvement = (r.E_proj - r.E_SU) / r.E_SU;
  report(7, "QEC improvement at gamma = 0.05", r.gamma == 0.05 && improvement >= 0.08 && improvement <= 0.25,
         fmt("(E_proj - E_SU)/E_SU = %.12g (window [0.08, 0.25])", improvement));
}

void criterion8() {
  double residual = 0, cost = 0;
  Rng rng(kDefaultSeed + 8);
  for (Index k : {2, 4, 16})
    for (Index de : {2, 4}) {
      if (de * de < k) continue;  // no unitary basis of that size
      const MemoryLayout layout(std::vector<Index>(static_cast<std::size_t>(k), 1));
      const auto dd = dephasing_device(layout, de);
      residual = std::max(residual, dephasing_channel_residual(layout, dd));
      ComplexMatrix h = random_hermitian(k, rng).diagonal().real().cast<Complex>().asDiagonal();
      cost = std::max(cost, std::abs(dephasing_energy_cost(layout, Hamiltonian(h), dd, random_mixed_state(k, rng))));
    }
  double thermal_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const MemoryLayout layout(i % 2 ? std::vector<Index>{1, 2} : std::vector<Index>{2, 1, 1});
    const Index de = 3 + static_cast<Index>(i % 2);
    ComplexMatrix he = ComplexMatrix::Zero(de, de);
    for (Index j = 0; j < de; ++j) he(j, j) = std::abs(random_hermitian(1, rng)(0, 0).real()) * static_cast<double>(j);
    const auto dd = random_thermal_dephasing(layout, Hamiltonian(he), 8000 + i);
    residual = std::max(residual, dephasing_channel_residual(layout, dd));
    const ComplexMatrix hm = random_hermitian(layout.total_dim(), rng).diagonal().real().cast<Complex>().asDiagonal();
    thermal_min = std::min(thermal_min, dephasing_energy_cost(layout, Hamiltonian(hm), dd,
                                                              random_mixed_state(layout.total_dim(), rng)));
  }
  report(8, "dephasing", residual <= 1e-9 && cost == 0 && thermal_min >= -1e-9,
         fmt("max channel residual %.3g (tol 1e-9), max |E_deph| Weyl %.3g (want 0), min thermal E_deph %.3g (tol -1e-9)",
             residual, cost, thermal_min));
}

void criterion9() {
  const auto t0 = Clock::now();
  const auto instr = qec5_syndrome_instrument();
  const auto dev = canonical_device(instr);
  const auto rep = memory_structure_check(dev, instr, sample_states(32, kDefaultSeed + 9, 6, 4));
  report(9, "memory structure, five-qubit syndrome device", rep.passed(1e-7) && dev.memory_dim() == 16,
         fmt("decomposition %.3g, orthogonality %.3g, entropy %.3g (tol 1e-7), %.2f s", rep.decomposition_residual,
             rep.orthogonality_residual, rep.entropy_residual, seconds_since(t0)));
}

void criterion10() {
  Rng rng(kDefaultSeed + 10);
  double margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Index d = 2 + static_cast<Index>(i % 3);
    const auto instr = random_instrument(d, 1 + i % 3, 1 + (i / 3) % 3, 10000 + i);
    const auto dev = canonical_device(instr, Hamiltonian(random_hermitian(d, rng)));
    margin = std::min(margin, second_law_check(dev, random_mixed_state(d, rng)).margin);
  }
  report(10, "second law", margin >= -1e-9, fmt("min(W - dF_S) %.3g (tol -1e-9)", margin));
}

void criterion11() {
  const auto z = computational_basis_instrument(2);
  const double s = 1 / std::sqrt(2.0);
  const auto plus = pure_qubit(s, s);
  const double e_proj = cost_projective(z, plus, Hamiltonian::zero(2));
  const auto f = faist_compare(z, plus);
  const bool ok = std::abs(e_proj - std::log(2.0)) <= 1e-10 && std::abs(f.E0) <= 1e-10 && std::abs(f.E_iid) <= 1e-10;
  report(11, "single-shot comparison on |+>", ok,
         fmt("(E_proj, E0, E_iid) = (%.12g, %.3g, %.3g), want (ln 2, 0, 0) within 1e-10", e_proj, f.E0, f.E_iid));
}

}  // namespace

int main() {
  std::vector<Qec5Result> sweep;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6(sweep);
  criterion7(sweep);
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
