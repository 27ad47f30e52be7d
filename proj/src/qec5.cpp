#include "measurecost/protocols.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <thread>

namespace measurecost {

namespace {

constexpr Index kDim = 32;
constexpr std::array<const char*, 4> kStabilizers = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
constexpr double kCodeSpaceTolerance = 1e-9;

ComplexVector from_bits(std::initializer_list<std::pair<int, const char*>> terms) {
  ComplexVector v = ComplexVector::Zero(kDim);
  for (const auto& [sign, bits] : terms) v(std::stoi(bits, nullptr, 2)) = 0.25 * sign;
  return v;
}

double entropy_of(std::span<const double> p) { return shannon_entropy(p); }

}  // namespace

std::pair<ComplexVector, ComplexVector> qec5_codewords() {
  const ComplexVector zero = from_bits({{1, "00000"},  {1, "10010"},  {1, "01001"},  {1, "10100"},
                                        {1, "01010"},  {1, "00101"},  {-1, "11011"}, {-1, "00110"},
                                        {-1, "11000"}, {-1, "11101"}, {-1, "00011"}, {-1, "11110"},
                                        {-1, "01111"}, {-1, "10001"}, {-1, "01100"}, {-1, "10111"}});
  const ComplexVector one = from_bits({{1, "11111"},  {1, "01101"},  {1, "10110"},  {1, "01011"},
                                       {1, "10101"},  {1, "11010"},  {-1, "00100"}, {-1, "11001"},
                                       {-1, "00111"}, {-1, "00010"}, {-1, "11100"}, {-1, "00001"},
                                       {-1, "10000"}, {-1, "01110"}, {-1, "10011"}, {-1, "01000"}});
  return {zero, one};
}

std::array<ComplexMatrix, 4> qec5_stabilizers() {
  std::array<ComplexMatrix, 4> s;
  for (std::size_t j = 0; j < 4; ++j) s[j] = pauli::string(kStabilizers[j]);
  return s;
}

std::vector<ComplexMatrix> qec5_syndrome_projectors() {
  const auto stab = qec5_stabilizers();
  const ComplexMatrix id = ComplexMatrix::Identity(kDim, kDim);
  std::vector<ComplexMatrix> out;
  out.reserve(16);
  for (int s = 0; s < 16; ++s) {
    ComplexMatrix p = id;
    for (int j = 0; j < 4; ++j) {
      const bool minus = (s >> (3 - j)) & 1;
      p = p * (0.5 * (id + (minus ? -1.0 : 1.0) * stab[static_cast<std::size_t>(j)]));
    }
    out.push_back(p);
  }
  return out;
}

QuantumInstrument qec5_syndrome_instrument() { return projective_instrument(qec5_syndrome_projectors()); }

int pauli_syndrome(const std::string& pauli) {
  if (pauli.size() != 5) throw std::invalid_argument("pauli_syndrome: expects 5 symbols");
  int s = 0;
  for (int j = 0; j < 4; ++j) {
    int clashes = 0;
    for (std::size_t q = 0; q < 5; ++q) {
      const char a = pauli[q];
      const char b = kStabilizers[static_cast<std::size_t>(j)][q];
      if (a != 'I' && b != 'I' && a != b) ++clashes;
    }
    if (clashes % 2) s |= 1 << (3 - j);
  }
  return s;
}

std::array<std::string, 16> qec5_correction_table() {
  std::array<std::string, 16> table;
  table[0] = "IIIII";
  for (std::size_t q = 0; q < 5; ++q)
    for (char p : {'X', 'Y', 'Z'}) {
      std::string label(5, 'I');
      label[q] = p;
      const int s = pauli_syndrome(label);
      if (s == 0 || !table[static_cast<std::size_t>(s)].empty())
        throw std::logic_error("qec5_correction_table: single-qubit errors are not uniquely identified");
      table[static_cast<std::size_t>(s)] = label;
    }
  return table;
}

ComplexVector qec5_logical_state(Complex alpha0, Complex alpha1) {
  if (std::abs(std::norm(alpha0) + std::norm(alpha1) - 1.0) > tol::trace)
    throw InvalidStateError("qec5: logical amplitudes are not normalized");
  const auto [zero, one] = qec5_codewords();
  return alpha0 * zero + alpha1 * one;
}

namespace {

struct Qec5Fixture {
  std::vector<ComplexMatrix> projectors;
  std::vector<ComplexMatrix> corrections;
};

const Qec5Fixture& fixture() {
  static const Qec5Fixture f = [] {
    Qec5Fixture out;
    out.projectors = qec5_syndrome_projectors();
    for (const auto& label : qec5_correction_table()) out.corrections.push_back(pauli::string(label));
    return out;
  }();
  return f;
}

void check_code_space(const ComplexVector& psi) {
  if (psi.size() != kDim) throw DimensionError("qec5: logical state must have dimension 32");
  if (std::abs(psi.squaredNorm() - 1.0) > tol::trace) throw InvalidStateError("qec5: state is not normalized");
  if ((fixture().projectors[0] * psi - psi).norm() > kCodeSpaceTolerance)
    throw InvalidStateError("qec5: state lies outside the code space");
}

}  // namespace

Qec5Result qec5_point(const ComplexVector& psi, double gamma) {
  check_code_space(psi);
  const auto& fx = fixture();
  const auto noise = channel_tensor_power(amplitude_damping(gamma), 5);
  const ComplexMatrix rho = hermitian_part(apply_channel(noise, psi * psi.adjoint()));
  const double s_rho = entropy(rho);

  Qec5Result r;
  r.gamma = gamma;
  std::vector<double> p(16);
  ComplexMatrix recovered = ComplexMatrix::Zero(kDim, kDim);
  double su = s_rho;
  for (std::size_t s = 0; s < 16; ++s) {
    const ComplexMatrix block = fx.projectors[s] * rho * fx.projectors[s];
    p[s] = std::max(0.0, block.trace().real());
    if (p[s] > tol::p0) su -= p[s] * entropy(ComplexMatrix(block / p[s]));
    recovered += fx.corrections[s] * block * fx.corrections[s].adjoint();
  }

  std::array<double, 4> sep_entropies{};
  for (int j = 0; j < 4; ++j) {
    std::array<double, 2> m{0.0, 0.0};
    for (int s = 0; s < 16; ++s) m[static_cast<std::size_t>((s >> (3 - j)) & 1)] += p[static_cast<std::size_t>(s)];
    sep_entropies[static_cast<std::size_t>(j)] = entropy_of(m);
  }

  r.E_proj = entropy_of(p);
  r.E_sep = sep_entropies[0] + sep_entropies[1] + sep_entropies[2] + sep_entropies[3];
  r.E_SU = su;
  r.E_Lan = s_rho - entropy(recovered);
  r.recovered_fidelity = (psi.adjoint() * recovered * psi)(0, 0).real();
  r.p_s = ProbDist(std::move(p));
  return r;
}

std::vector<Qec5Result> qec5_sweep(const ComplexVector& psi, const std::vector<double>& gammas, int jobs) {
  check_code_space(psi);
  for (double g : gammas)
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("qec5_sweep: gamma must lie in [0, 1]");
  std::vector<Qec5Result> out(gammas.size());
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || gammas.size() < 2) {
    for (std::size_t i = 0; i < gammas.size(); ++i) out[i] = qec5_point(psi, gammas[i]);
    return out;
  }
  fixture();
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, gammas.size()); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < gammas.size(); i = next++) out[i] = qec5_point(psi, gammas[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

Qec5Gap qec5_gap_decomposition(const Qec5Result& result) {
  if (result.p_s.size() != 16) throw DimensionError("qec5_gap_decomposition: expects 16 syndrome probabilities");
  // H of the marginal over the first `bits` syndrome bits (s^1 first).
  auto prefix_entropy = [&](int bits) {
    std::vector<double> m(static_cast<std::size_t>(1) << bits, 0.0);
    for (int s = 0; s < 16; ++s) m[static_cast<std::size_t>(s >> (4 - bits))] += result.p_s[static_cast<std::size_t>(s)];
    return entropy_of(m);
  };
  auto bit_entropy = [&](int j) {
    std::array<double, 2> m{0.0, 0.0};
    for (int s = 0; s < 16; ++s) m[static_cast<std::size_t>((s >> (3 - j)) & 1)] += result.p_s[static_cast<std::size_t>(s)];
    return entropy_of(m);
  };
  const double h1 = prefix_entropy(1), h12 = prefix_entropy(2), h123 = prefix_entropy(3), h1234 = prefix_entropy(4);
  Qec5Gap g;
  g.I12 = h1 + bit_entropy(1) - h12;
  g.I12_3 = h12 + bit_entropy(2) - h123;
  g.I123_4 = h123 + bit_entropy(3) - h1234;
  g.residual = (result.E_sep - result.E_proj) - (g.I12 + g.I12_3 + g.I123_4);
  return g;
}

}  // namespace measurecost
