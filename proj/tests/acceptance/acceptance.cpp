// Copyright 2026 The floqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion.
//
//   floq_acceptance            all criteria
//   floq_acceptance 1 4 10     a subset

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "floq/app/commands.hpp"
#include "floq/errors.hpp"
#include "floq/heating.hpp"
#include "floq/kernels.hpp"
#include "floq/lemmas.hpp"
#include "floq/lieb_robinson.hpp"
#include "floq/linear_response.hpp"
#include "floq/magnus.hpp"

using namespace floq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

OperatorSum zz(int i, int j, double c) {
  PauliString s;
  s.set(i, Pauli::Z);
  s.set(j, Pauli::Z);
  return OperatorSum::from_string(s, c);
}

OperatorSum ising(int n, double alpha, double hx) {
  OperatorSum h;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) h += zz(i, j, std::pow(double(j - i), -alpha));
  for (int i = 0; i < n; ++i) h += OperatorSum::single(i, Pauli::X, hx);
  return h;
}

OperatorSum sum_x(int n) {
  OperatorSum v;
  for (int i = 0; i < n; ++i) v += OperatorSum::single(i, Pauli::X);
  return v;
}

// 8-site chain, alpha = 3, transverse field 0.5, drive 0.5 cos(omega t) sum X.
constexpr int kBenchSites = 8;
constexpr double kBenchAlpha = 3.0;
constexpr double kBenchDrive = 0.5;

FourierOperator bench_hamiltonian(double period) {
  const double w = 2.0 * std::numbers::pi / period;
  return FourierOperator::constant(w, ising(kBenchSites, kBenchAlpha, 0.5)) +
         FourierOperator::cosine(w, kBenchDrive, sum_x(kBenchSites));
}

struct BenchRun {
  double period;
  MagnusResult result;
  double max_residual;
};

const std::vector<BenchRun>& bench_runs() {
  static std::vector<BenchRun> runs = [] {
    std::vector<BenchRun> out;
    const Lattice lat = Lattice::chain(kBenchSites);
    for (double period : {0.2, 0.1, 0.05}) {
      MagnusConfig cfg;
      cfg.q_max = 3;
      cfg.report_orders = 5;
      cfg.period = period;
      cfg.kappa = 1.0;
      cfg.c = 10.0;
      auto h = bench_hamiltonian(period);
      auto r = build_effective(h, cfg, {kBenchAlpha, 1.0, 1, 1}, lat);
      const double m = max_residual_norm(r, h, all_sites(kBenchSites), 32);
      out.push_back({period, std::move(r), m});
    }
    return out;
  }();
  return runs;
}

Outcome order_scaling() {
  const auto t0 = Clock::now();
  const auto& runs = bench_runs();
  const double need = std::pow(2.0, 2.5);
  Outcome o{true, ""};
  for (std::size_t k = 1; k < runs.size(); ++k) {
    const double ratio = runs[k - 1].max_residual / runs[k].max_residual;
    o.pass = o.pass && ratio >= need;
    o.detail += fmt::format("T {}->{} ratio {:.4f}; ", runs[k - 1].period, runs[k].period, ratio);
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 120.0;
  o.detail += fmt::format("need >= {:.4f}, {:.1f} s", need, secs);
  return o;
}

Outcome identity() {
  double worst = 0.0;
  int checked = 0;
  for (const auto& run : bench_runs()) {
    const auto& res = run.result.identity_residuals;
    for (int q = 0; q < run.result.q_max && q < static_cast<int>(res.size()); ++q) {
      worst = std::max(worst, res[q]);
      ++checked;
    }
  }
  return {checked > 0 && worst < 1e-10,
          fmt::format("{} orders, worst coefficient {:.3e} (limit 1e-10)", checked, worst)};
}

Outcome certificates() {
  int checked = 0, failed = 0;
  double worst = 0.0;
  for (const auto& run : bench_runs())
    for (const auto& c : run.result.certificates) {
      if (c.q > 4) continue;
      ++checked;
      failed += !c.report.pass;
      worst = std::max(worst, c.report.worst_ratio);
    }
  return {checked == 15 && failed == 0,
          fmt::format("{} certificates (q <= 4, three periods), {} failed, worst ratio {:.4g}",
                      checked, failed, worst)};
}

Outcome lr_domination() {
  const auto t0 = Clock::now();
  const int n = 10;
  const Lattice lat = Lattice::chain(n);
  std::vector<double> times;
  for (int k = 0; k <= 12; ++k) times.push_back(0.25 * k);
  const auto a = OperatorSum::single(0, Pauli::X);
  std::vector<std::pair<double, OperatorSum>> targets;
  for (int r = 3; r <= 8; ++r) targets.push_back({double(r), OperatorSum::single(r, Pauli::X)});

  long checked = 0, violations = 0;
  std::map<std::string, int> kinds_used;
  double worst = 0.0;
  for (double alpha : {2.0, 3.0, 4.0}) {
    auto cone = measure_light_cone(ising(n, alpha, 0.5), a, targets, times, all_sites(n));
    for (auto kind : kAllBoundKinds) {
      if (is_conjectural(kind)) continue;
      for (const auto& pt : cone.grid) {
        const int r = static_cast<int>(pt.r);
        BoundParams p;
        try {
          p = BoundParams::from_lattice_constants(kind, lat, alpha, {0}, {r}, 0.5, 0.25, 0.9);
        } catch (const DomainError&) {
          continue;
        }
        if (!p.applicable()) continue;
        const double b = eval_bound(p, pt.t, pt.r);
        ++checked;
        ++kinds_used[fmt::format("{}@{}", bound_kind_name(kind), alpha)];
        if (b > 0.0) worst = std::max(worst, pt.value / b);
        if (pt.value > b * (1.0 + 1e-12)) ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && checked > 0 && secs < 600.0,
          fmt::format("{} (kind, alpha) pairs, {} points, {} violations, worst ratio {:.3e}, "
                      "{:.1f} s",
                      kinds_used.size(), checked, violations, worst, secs)};
}

Outcome hk_oracle() {
  const int n = 5;
  const Lattice lat = Lattice::chain(n);
  const auto h = ising(n, 2.0, 0.5);
  int checked = 0, failed = 0;
  for (int j = 1; j < n; ++j) {
    auto s = hk_series_oracle(h, lat, 2.0, {0}, {j}, 1.0, 3);
    for (int k = 0; k < 3; ++k) {
      ++checked;
      if (!(s.chain_sums[k] <= s.convolution_sums[k] * (1.0 + 1e-12))) ++failed;
    }
  }
  const double j2 = hopping_convolution(Lattice::chain(3), 2.0, 2, 0, 2);
  return {failed == 0 && j2 == 1.5,
          fmt::format("{} term comparisons, {} failed; J^2(0,2) on 3 sites = {:.17g}", checked,
                      failed, j2)};
}

Outcome response_domination() {
  const auto t0 = Clock::now();
  const int n = kBenchSites;
  const Lattice lat = Lattice::chain(n);
  ResponseConfig c;
  c.beta = 1.0;
  for (int s = 0; s < n; ++s) c.drive_sites.push_back({s, OperatorSum::single(s, Pauli::X)});
  for (int k = 0; k <= 28; ++k) c.omega_grid.push_back(0.5 * k);
  const auto r = response_binned(ising(n, kBenchAlpha, 0.5), c, lat, kBenchAlpha);

  long dom_fail = 0, pos_fail = 0, cs_fail = 0, bins = 0;
  for (int b = 0; b < r.n_bins(); ++b) {
    const double centre = 0.5 * (r.edges[b] + r.edges[b + 1]);
    if (centre < 2.0 || centre > 12.0) continue;
    ++bins;
    for (int i = 0; i < n; ++i) {
      const double sii = r.sigma[r.index(i, i, b)].real();
      if (sii < -1e-14) ++pos_fail;
      for (int j = 0; j < n; ++j) {
        const auto idx = r.index(i, j, b);
        if (std::abs(r.sigma[idx]) > r.pair_bound[idx] * (1.0 + 1e-12)) ++dom_fail;
        const double sjj = r.sigma[r.index(j, j, b)].real();
        if (std::norm(r.sigma[idx]) > sii * sjj * (1.0 + 1e-10) + 1e-28) ++cs_fail;
      }
    }
  }

  ResponseConfig two;
  two.beta = 1.0;
  two.drive_sites = {{0, OperatorSum::single(0, Pauli::X)}};
  two.omega_grid = {1.5, 2.5};
  const auto t = response_binned(OperatorSum::single(0, Pauli::Z), two, Lattice::chain(2), 3.0);
  const double level = t.sigma[0].real();
  const double err = std::abs(level - std::numbers::pi * std::tanh(1.0));
  const double secs = seconds_since(t0);
  return {dom_fail == 0 && pos_fail == 0 && cs_fail == 0 && err <= 1e-6 && secs < 300.0,
          fmt::format("{} bins: {} domination, {} sign, {} Cauchy-Schwarz failures; "
                      "two-level {:.7f} (err {:.1e}); {:.1f} s",
                      bins, dom_fail, pos_fail, cs_fail, level, err, secs)};
}

Outcome heating_monotone() {
  const auto t0 = Clock::now();
  HeatingExperiment e;
  e.h0 = ising(kBenchSites, kBenchAlpha, 0.5);
  e.drive = sum_x(kBenchSites);
  e.g = kBenchDrive;
  e.beta = 1.0;
  e.sites = all_sites(kBenchSites);
  e.periods = heating_period_grid(2000, 10'000'000'000LL, 90);
  e.fraction = 0.5;
  const auto s = frequency_scan(e, {4, 5, 6, 7, 8, 9});
  std::string ts;
  for (const auto& p : s.points)
    ts += p.t_star ? fmt::format("{}:{:.4g} ", p.omega, *p.t_star) : fmt::format("{}:none ", p.omega);
  const double secs = seconds_since(t0);
  return {s.spearman >= 0.9 && secs < 1800.0,
          fmt::format("t_* {}; Spearman {:.4f} (need >= 0.9); {:.1f} s", ts, s.spearman, secs)};
}

Outcome delta_envelopes() {
  const auto& run = bench_runs().front();
  const Lattice lat = Lattice::chain(kBenchSites);
  const auto gong = BoundParams::from_lattice_constants(BoundKind::Gong, lat, kBenchAlpha, {0},
                                                        {kBenchSites - 1});
  std::vector<EnvelopeParams> env = {
      {EnvelopeKind::Gong, kBenchAlpha, 1, gong.v},
      {EnvelopeKind::Conjectured, kBenchAlpha, 1, 0.0, 0.5, 1.0}};
  const auto tr = observable_delta(run.result, bench_hamiltonian(run.period),
                                   OperatorSum::single(0, Pauli::X), 500,
                                   all_sites(kBenchSites), env);
  Outcome o{tr.calibration_index.has_value(), ""};
  o.detail = tr.calibration_index
                 ? fmt::format("calibrated at n = {}; ", *tr.calibration_index)
                 : "delta_norm never reached 1e-3; ";
  for (const auto& e : env) {
    const auto d = envelope_domination(tr, e.kind);
    o.pass = o.pass && d.pass;
    o.detail += fmt::format("{} {} violations (worst ratio {:.3g}); ", envelope_kind_name(e.kind),
                            d.violations, d.worst_ratio);
  }
  o.detail += fmt::format("max delta_norm {:.3e}",
                          *std::max_element(tr.delta_norm.begin(), tr.delta_norm.end()));
  return o;
}

Outcome lemma_suites() {
  const auto t0 = Clock::now();
  auto reports = run_lemma_suite();
  auto closure = run_closure_suite(Lattice::chain(6), 3.0, 100, 20260101);
  reports.insert(reports.end(), closure.begin(), closure.end());
  std::size_t failed = 0;
  std::string first;
  for (const auto& r : reports)
    if (!r.pass) {
      if (!failed) first = fmt::format(" first: {} {}", r.lemma, r.point);
      ++failed;
    }
  const double secs = seconds_since(t0);
  return {failed == 0 && secs < 30.0,
          fmt::format("{} grid points, {} violations, {:.2f} s{}", reports.size(), failed, secs,
                      first)};
}

std::map<std::string, std::string> read_csvs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".csv") continue;
    std::ifstream f(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    out[entry.path().filename().string()] = s.str();
  }
  return out;
}

Outcome determinism() {
  const fs::path root =
      fs::temp_directory_path() / fmt::format("floq_acceptance_{}", static_cast<long>(getpid()));
  fs::remove_all(root);
  const fs::path configs = fs::path(FLOQ_SOURCE_DIR) / "configs";
  const std::map<std::string, std::pair<std::string, std::vector<std::string>>> jobs = {
      {"magnus", {"magnus.json", {"lattice.extents=[5]", "magnus.residual_samples=4"}}},
      {"lr-scan", {"lr_scan.json", {"lattice.extents=[6]", "lr.targets=[3,4,5]"}}},
      {"response", {"response.json", {"lattice.extents=[6]"}}},
      {"heat-scan",
       {"heat_scan.json",
        {"lattice.extents=[4]", "heating.dense_periods=50", "heating.max_periods=1000000",
         "heating.per_decade=10"}}},
      {"delta", {"delta.json", {"lattice.extents=[5]", "delta.periods=60"}}},
      {"lemmas", {"lemmas.json", {}}}};

  const int saved = kernels::thread_count();
  Outcome o{true, ""};
  std::size_t files = 0;
  for (const auto& [cmd, job] : jobs) {
    std::vector<std::map<std::string, std::string>> outputs;
    for (int run = 0; run < 3; ++run) {
      app::RunOptions opt;
      opt.subcommand = cmd;
      opt.config_path = (configs / job.first).string();
      opt.overrides = job.second;
      opt.threads = run == 2 ? 4 : 1;
      const fs::path out = root / fmt::format("{}_{}", cmd, run);
      opt.out_dir = out.string();
      std::ostringstream log;
      const int status = app::run(opt, log);
      if (status != app::kExitOk) {
        o.pass = false;
        o.detail += fmt::format("{} exited {}: {}; ", cmd, status, log.str());
        break;
      }
      outputs.push_back(read_csvs(out));
    }
    if (outputs.size() != 3) continue;
    for (std::size_t k = 1; k < outputs.size(); ++k)
      if (outputs[k] != outputs[0]) {
        o.pass = false;
        o.detail += fmt::format("{} differs (run {}); ", cmd, k);
      }
    files += outputs[0].size();
    if (outputs[0].empty()) {
      o.pass = false;
      o.detail += fmt::format("{} wrote no CSV; ", cmd);
    }
  }
  kernels::set_thread_count(saved);
  fs::remove_all(root);
  o.detail += fmt::format("{} subcommands, {} CSV files compared over runs at 1, 1, 4 threads",
                          jobs.size(), files);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Magnus order scaling", order_scaling},
      {"order identity residual", identity},
      {"G_q certificates", certificates},
      {"Lieb-Robinson domination", lr_domination},
      {"Hastings-Koma series oracle", hk_oracle},
      {"linear-response domination", response_domination},
      {"heating-frequency monotonicity", heating_monotone},
      {"delta envelope domination", delta_envelopes},
      {"lemma suites", lemma_suites},
      {"artifact determinism", determinism}};

  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("error: {}", e.what())};
    }
    failures += !o.pass;
    std::cout << fmt::format("criterion {:2d} {} {}: {}", id, o.pass ? "PASS" : "FAIL",
                             criteria[k].first, o.detail)
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
