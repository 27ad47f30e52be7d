// measurecost: command-line driver for the measurement energetics library.

#include "measurecost/io.hpp"
#include "measurecost/protocols.hpp"
#include "measurecost/random.hpp"
#include "measurecost/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

using namespace measurecost;

namespace {

enum Exit { kOk = 0, kIo = 1, kBadInput = 2, kPropertyFailure = 3 };

struct Config {
  std::string gammas = "0:1:101";
  double theta = 1.0;
  int steps = 1000;
  double a0re = 1.0, a0im = 0.0, a1re = 0.0, a1im = 0.0;
  std::optional<std::uint64_t> seed;
  std::string units = "nats";
  std::string out;
  std::string svg;
  int jobs = 1;
  bool inject_fault = false;
  std::string instrument_path;
  std::string state_path;
};

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("MEASURECOST_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("MEASURECOST_SEED is not an unsigned integer");
  }
  return kDefaultSeed;
}

double unit_scale(const Config& cfg) { return cfg.units == "bits" ? 1.0 / std::numbers::ln2 : 1.0; }

std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) throw InputError("--gammas expects a:b:n");
  double a = 0, b = 0;
  long n = 0;
  try {
    std::size_t u1 = 0, u2 = 0, u3 = 0;
    const std::string sa = spec.substr(0, c1), sb = spec.substr(c1 + 1, c2 - c1 - 1), sn = spec.substr(c2 + 1);
    a = std::stod(sa, &u1);
    b = std::stod(sb, &u2);
    n = std::stol(sn, &u3);
    if (u1 != sa.size() || u2 != sb.size() || u3 != sn.size()) throw InputError("");
  } catch (const std::exception&) {
    throw InputError("--gammas expects a:b:n");
  }
  if (n < 1 || n > 100000) throw InputError("--gammas: n must lie in [1, 100000]");
  if (!(a >= 0 && a <= 1 && b >= 0 && b <= 1)) throw InputError("--gammas: endpoints must lie in [0, 1]");
  std::vector<double> g;
  for (long i = 0; i < n; ++i) g.push_back(n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1)));
  return g;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file_atomic(path, content);
}

int cmd_qec5(const Config& cfg) {
  const auto gammas = parse_grid(cfg.gammas);
  const Complex a0(cfg.a0re, cfg.a0im), a1(cfg.a1re, cfg.a1im);
  const auto psi = qec5_logical_state(a0, a1);
  const auto results = qec5_sweep(psi, gammas, cfg.jobs);
  const double s = unit_scale(cfg);

  CsvTable table{{"gamma", "E_proj", "E_sep", "E_SU", "E_Lan", "fidelity", "I12", "I12_3", "I123_4"}, {}};
  std::vector<SvgSeries> series{{"E_proj", "red", {}, {}},
                                {"E_sep", "blue", {}, {}},
                                {"E_SU", "green", {}, {}},
                                {"E_Lan", "black", {}, {}}};
  for (const auto& r : results) {
    const auto gap = qec5_gap_decomposition(r);
    table.rows.push_back({r.gamma, r.E_proj * s, r.E_sep * s, r.E_SU * s, r.E_Lan * s, r.recovered_fidelity,
                          gap.I12 * s, gap.I12_3 * s, gap.I123_4 * s});
    const std::array<double, 4> e{r.E_proj, r.E_sep, r.E_SU, r.E_Lan};
    for (std::size_t i = 0; i < 4; ++i) {
      series[i].x.push_back(r.gamma);
      series[i].y.push_back(e[i] * s);
    }
  }
  emit(cfg.out, table.str());
  if (!cfg.svg.empty())
    write_file_atomic(cfg.svg, svg_line_plot("Energy cost of five-qubit error correction", "gamma",
                                             "energy [k_B T " + cfg.units + "]", series));
  return kOk;
}

int cmd_zeno(const Config& cfg) {
  if (!(cfg.theta > 0) || !std::isfinite(cfg.theta)) throw InputError("--theta must be positive");
  if (cfg.steps < 1) throw InputError("--steps must be >= 1");
  const auto r = zeno_run({cfg.theta, cfg.steps});
  const double s = unit_scale(cfg);
  CsvTable table{{"n", "eps_n", "step_cost", "cum_cost"}, {}};
  double cum = 0;
  for (std::size_t i = 0; i < r.eps.size(); ++i) {
    cum += r.step_cost[i];
    table.rows.push_back({static_cast<double>(i + 1), r.eps[i], r.step_cost[i] * s, cum * s});
  }
  emit(cfg.out, table.str());
  const bool csv_on_stdout = cfg.out.empty() || cfg.out == "-";
  std::ostream& summary = csv_on_stdout ? std::cerr : std::cout;
  const double deviation = (r.total_cost - r.asymptotic_cost) / r.asymptotic_cost;
  summary << "total " << format_number(r.total_cost * s) << "\n"
          << "asymptotic " << format_number(r.asymptotic_cost * s) << "\n"
          << "relative_deviation " << format_number(deviation) << "\n"
          << "fidelity " << format_number(r.fidelity) << "\n";
  return kOk;
}

int cmd_workext(const Config& cfg) {
  const Complex a0(cfg.a0re, cfg.a0im), a1(cfg.a1re, cfg.a1im);
  if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > tol::trace) throw InputError("amplitudes are not normalized");
  ComplexVector psi(2);
  psi << a0, a1;
  const auto r = workext_pair(DensityMatrix::pure(psi));
  const double s = unit_scale(cfg);
  const auto eff = report_values(r.efficient);
  const auto ineff = report_values(r.inefficient);
  std::printf("%-14s %18s %18s\n", "quantity", "efficient", "inefficient");
  for (std::size_t k = 0; k < 2; ++k)
    std::printf("%-14s %18s %18s\n", ("p_" + std::to_string(k)).c_str(), format_number(r.efficient_probs[k]).c_str(),
                format_number(r.inefficient_probs[k]).c_str());
  for (std::size_t i = 0; i < kEnergyReportFields.size(); ++i) {
    auto cell = [&](double v) { return std::isnan(v) ? std::string("n/a") : format_number(v * s); };
    std::printf("%-14s %18s %18s\n", std::string(kEnergyReportFields[i]).c_str(), cell(eff[i]).c_str(),
                cell(ineff[i]).c_str());
  }
  return kOk;
}

int cmd_verify(const Config& cfg) {
  const auto results = run_verification({resolve_seed(cfg), cfg.inject_fault});
  bool ok = true;
  for (const auto& p : results) {
    ok = ok && p.passed();
    std::printf("%s  %-55s residual=%-12s tol=%s\n", p.passed() ? "PASS" : "FAIL", p.name.c_str(),
                format_number(p.residual).c_str(), format_number(p.tolerance).c_str());
  }
  std::printf("%s\n", ok ? "all properties hold" : "property failure");
  return ok ? kOk : kPropertyFailure;
}

int cmd_faist(const Config& cfg) {
  const auto instr = parse_instrument(read_file(cfg.instrument_path));
  const auto rho = parse_state(read_file(cfg.state_path));
  if (rho.dim() != instr.system_dim()) throw InputError("state and instrument dimensions differ");
  const double s = unit_scale(cfg);
  const auto h0 = Hamiltonian::zero(instr.system_dim());
  const auto f = faist_compare(instr, rho);
  std::printf("%-14s %s\n", "E_proj",
              is_projective(instr) ? format_number(cost_projective(instr, rho, h0) * s).c_str() : "n/a");
  std::printf("%-14s %s\n", "bound_general", format_number(bound_general(instr, rho, h0) * s).c_str());
  std::printf("%-14s %s\n", "E0", format_number(f.E0 * s).c_str());
  std::printf("%-14s %s\n", "E_iid", format_number(f.E_iid * s).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy cost of quantum measurements"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (default from MEASURECOST_SEED or built-in)");
    sub->add_option("--units", cfg.units, "energy units")->check(CLI::IsMember({"nats", "bits"}));
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
  };
  auto add_alphas = [&](CLI::App* sub) {
    sub->add_option("--alpha0-re", cfg.a0re);
    sub->add_option("--alpha0-im", cfg.a0im);
    sub->add_option("--alpha1-re", cfg.a1re);
    sub->add_option("--alpha1-im", cfg.a1im);
  };

  auto* qec5 = app.add_subcommand("qec5", "five-qubit code cost sweep (CSV, optional SVG)");
  add_common(qec5);
  add_alphas(qec5);
  qec5->add_option("--gammas", cfg.gammas, "grid a:b:n");
  qec5->add_option("--out", cfg.out, "CSV path (stdout if omitted)");
  qec5->add_option("--svg", cfg.svg, "SVG plot path");

  auto* zeno = app.add_subcommand("zeno", "Zeno stabilization cost per step (CSV) and summary");
  add_common(zeno);
  zeno->add_option("--theta", cfg.theta, "E t / hbar");
  zeno->add_option("--steps", cfg.steps, "number of measurements N");
  zeno->add_option("--out", cfg.out, "CSV path (stdout if omitted)");

  auto* workext = app.add_subcommand("workext", "efficient and inefficient qubit devices side by side");
  add_common(workext);
  add_alphas(workext);

  auto* verify = app.add_subcommand("verify", "seeded property suites");
  add_common(verify);
  verify->add_flag("--inject-fault", cfg.inject_fault)->group("");

  auto* faist = app.add_subcommand("faist", "compare with single-shot and i.i.d. estimates");
  add_common(faist);
  faist->add_option("--instrument", cfg.instrument_path, "instrument JSON")->required();
  faist->add_option("--state", cfg.state_path, "state JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*qec5) return cmd_qec5(cfg);
    if (*zeno) return cmd_zeno(cfg);
    if (*workext) return cmd_workext(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*faist) return cmd_faist(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kBadInput;
}
