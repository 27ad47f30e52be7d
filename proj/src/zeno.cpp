#include "measurecost/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace measurecost {

namespace {

void validate(const ZenoConfig& cfg) {
  if (!(cfg.theta_total > 0.0) || !std::isfinite(cfg.theta_total))
    throw std::invalid_argument("zeno: theta must be positive");
  if (cfg.steps < 1) throw std::invalid_argument("zeno: steps must be >= 1");
}

double binary_entropy(double e) {
  const std::array<double, 2> p{e, 1.0 - e};
  return shannon_entropy(std::span<const double>(p));
}

}  // namespace

ZenoResult zeno_run(const ZenoConfig& cfg) {
  validate(cfg);
  const double angle = cfg.theta_total / cfg.steps;
  const double c2 = std::cos(angle) * std::cos(angle);
  const double s2 = std::sin(angle) * std::sin(angle);

  ZenoResult r;
  r.eps.reserve(static_cast<std::size_t>(cfg.steps));
  r.step_cost.reserve(static_cast<std::size_t>(cfg.steps));
  double eps = 0.0;
  for (int n = 1; n <= cfg.steps; ++n) {
    eps = eps * c2 + (1.0 - eps) * s2;
    eps = std::clamp(eps, 0.0, 1.0);
    r.eps.push_back(eps);
    r.step_cost.push_back(binary_entropy(eps));
    r.total_cost += r.step_cost.back();
  }
  r.fidelity = 1.0 - eps;
  r.asymptotic_cost = zeno_asymptotic(cfg.theta_total, r.fidelity);
  return r;
}

double zeno_closed_form(double theta_total, int steps, int n) {
  return 0.5 * (1.0 - std::pow(std::cos(2.0 * theta_total / steps), n));
}

double zeno_asymptotic(double theta_total, double fidelity) {
  return 0.5 * theta_total * theta_total * std::log(4.5 / (1.0 - fidelity));
}

double zeno_device_crosscheck(const ZenoConfig& cfg, const std::vector<int>& sample_steps) {
  const auto run = zeno_run(cfg);
  const auto instr = computational_basis_instrument(2);
  const auto dev = canonical_device(instr);
  double worst = 0.0;
  for (int n : sample_steps) {
    if (n < 1 || n > cfg.steps) throw std::invalid_argument("zeno_device_crosscheck: step out of range");
    const double e = run.eps[static_cast<std::size_t>(n - 1)];
    const std::array<double, 2> diag{1.0 - e, e};
    const auto rho = DensityMatrix::diagonal(std::span<const double>(diag));
    worst = std::max(worst, std::abs(cost_exact(dev, rho) - run.step_cost[static_cast<std::size_t>(n - 1)]));
  }
  return worst;
}

}  // namespace measurecost
