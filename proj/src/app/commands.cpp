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

#include "floq/app/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <numbers>

#include "floq/app/config.hpp"
#include "floq/errors.hpp"
#include "floq/heating.hpp"
#include "floq/kernels.hpp"
#include "floq/lemmas.hpp"
#include "floq/lieb_robinson.hpp"
#include "floq/linear_response.hpp"
#include "floq/magnus.hpp"

namespace floq::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Artifact {
  std::string name;
  std::string content;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw Error("csv row width mismatch");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out_ += ',';
      out_ += cells[k];
    }
    out_ += '\n';
  }
  std::string str() const { return out_; }

 private:
  std::size_t width_;
  std::string out_;
};

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

std::vector<int> sites_of(const ExperimentConfig& cfg) {
  return all_sites(cfg.lattice.build().size());
}

double require_omega(const ExperimentConfig& cfg, const std::string& command) {
  if (!cfg.drive.omega)
    throw SchemaError("drive.omega", fmt::format("required by {}", command));
  return *cfg.drive.omega;
}

PowerLawSpec powerlaw_spec(const ExperimentConfig& cfg) {
  return {cfg.hamiltonian.alpha, cfg.hamiltonian.eta, cfg.lattice.dimension,
          cfg.hamiltonian.k};
}

FourierOperator driven(const ExperimentConfig& cfg, double omega) {
  auto h = FourierOperator::constant(omega, cfg.h0());
  if (cfg.drive.g != 0.0) h += FourierOperator::cosine(omega, cfg.drive.g, cfg.drive_operator());
  return h;
}

MagnusResult build_magnus(const ExperimentConfig& cfg, double omega) {
  MagnusConfig mc;
  mc.q_max = cfg.magnus.q_max;
  mc.report_orders = cfg.magnus.report_orders;
  mc.kappa = cfg.magnus.kappa;
  mc.c = cfg.magnus.c;
  mc.period = 2.0 * std::numbers::pi / omega;
  return build_effective(driven(cfg, omega), mc, powerlaw_spec(cfg), cfg.lattice.build());
}

std::vector<Artifact> cmd_magnus(const ExperimentConfig& cfg, json& extra) {
  const double omega = require_omega(cfg, "magnus");
  const auto r = build_magnus(cfg, omega);

  Csv orders({"q[order]", "local_norm[energy]", "lemma_bound[energy]", "certificate[pass/fail]",
              "worst_ratio[1]"});
  for (const auto& c : r.certificates)
    orders.row({std::to_string(c.q), num(c.local_norm), num(c.norm_bound),
                pass_fail(c.report.pass), num(c.report.worst_ratio)});

  Csv summary({"quantity", "value", "unit"});
  double max_identity = 0.0;
  for (double v : r.identity_residuals) max_identity = std::max(max_identity, v);
  summary.row({"period", num(r.period), "time"});
  summary.row({"q_max", std::to_string(r.q_max), "order"});
  summary.row({"omega_star", num(r.omega_star), "1"});
  summary.row({"lambda", num(r.lambda), "1"});
  summary.row({"kappa_prime", num(r.kappa_prime), "1"});
  summary.row({"identity_residual_max", num(max_identity), "energy"});
  summary.row({"v_prime_local_norm", num(r.v_prime_local_norm), "energy"});
  summary.row({"v_prime_bound", num(r.v_prime_bound), "energy"});
  if (cfg.magnus.residual_samples > 0)
    summary.row({"v_prime_exact_max",
                 num(max_residual_norm(r, driven(cfg, omega), sites_of(cfg),
                                       cfg.magnus.residual_samples)),
                 "energy"});
  extra["q_max"] = r.q_max;
  return {{"magnus.csv", orders.str()}, {"magnus_summary.csv", summary.str()}};
}

std::vector<BoundSpec> bounds_or_default(const ExperimentConfig& cfg) {
  if (!cfg.bounds.empty()) return cfg.bounds;
  std::vector<BoundSpec> out;
  for (auto k : kAllBoundKinds) out.push_back({k});
  return out;
}

std::vector<Artifact> cmd_lr_scan(const ExperimentConfig& cfg, json& extra) {
  const Lattice lat = cfg.lattice.build();
  const double alpha = cfg.hamiltonian.alpha;
  const auto h0 = cfg.h0();
  const OperatorSum source =
      cfg.lr.source.is_zero() ? OperatorSum::single(0, Pauli::X) : cfg.lr.source;
  std::vector<int> xs;
  for (int s = 0; s < lat.size(); ++s)
    if ((source.support_mask() >> s) & 1U) xs.push_back(s);
  const SiteSet x(xs);
  std::vector<int> targets = cfg.lr.targets;
  if (targets.empty())
    for (int s = 0; s < lat.size(); ++s)
      if (!x.contains(s)) targets.push_back(s);
  for (int t : targets)
    if (x.contains(t)) throw SchemaError("lr.targets", fmt::format("site {} overlaps the source", t));
  std::vector<double> times = cfg.lr.times;
  if (times.empty())
    for (int k = 0; k <= 12; ++k) times.push_back(0.25 * k);

  std::vector<std::vector<double>> measured(targets.size());
  if (cfg.lr.measure) {
    for (std::size_t a = 0; a < targets.size(); ++a) {
      const auto series = measure_commutator(
          h0, source, OperatorSum::single(targets[a], cfg.lr.target_pauli), times,
          sites_of(cfg));
      for (const auto& p : series.grid) measured[a].push_back(p.value);
    }
  }

  Csv csv({"kind", "t[time]", "r[sites]", "bound_value[1]", "measured_value[1]",
           "dominated[bool]"});
  json skipped = json::array();
  for (const auto& b : bounds_or_default(cfg)) {
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    std::string reason;
    for (std::size_t a = 0; a < targets.size() && ok; ++a) {
      const SiteSet y({targets[a]});
      const double r = set_distance(lat, x, y);
      try {
        auto p = BoundParams::from_lattice_constants(b.kind, lat, alpha, x, y, b.mu, b.xi,
                                                     b.sigma);
        p.beta_cone = b.beta_cone;
        p.validate();
        for (std::size_t k = 0; k < times.size(); ++k) {
          const double bound = eval_bound(p, times[k], r);
          std::string mv, dom;
          if (cfg.lr.measure) {
            mv = num(measured[a][k]);
            dom = measured[a][k] <= bound * (1.0 + 1e-12) ? "true" : "false";
          }
          rows.push_back({std::string(bound_kind_name(b.kind)), num(times[k]), num(r),
                          num(bound), mv, dom});
        }
      } catch (const DomainError& e) {
        ok = false;
        reason = e.what();
      }
    }
    if (!ok) {
      skipped.push_back({{"kind", bound_kind_name(b.kind)}, {"reason", reason}});
      continue;
    }
    for (const auto& row : rows) csv.row(row);
  }
  extra["skipped_kinds"] = skipped;
  return {{"lr_scan.csv", csv.str()}};
}

std::vector<Artifact> cmd_response(const ExperimentConfig& cfg, json&) {
  const Lattice lat = cfg.lattice.build();
  ResponseConfig rc;
  rc.beta = cfg.response.beta;
  std::vector<int> sites = cfg.response.sites;
  if (sites.empty()) sites = sites_of(cfg);
  for (int s : sites) rc.drive_sites.push_back({s, OperatorSum::single(s, cfg.response.pauli)});
  rc.omega_grid = cfg.response.edges;
  if (rc.omega_grid.empty())
    for (int k = 0; k <= 28; ++k) rc.omega_grid.push_back(0.5 * k);
  if (rc.omega_grid.size() < 2) throw SchemaError("response.edges", "need at least two edges");
  rc.k_grid.clear();
  for (int k = 0; k <= cfg.response.k_max; ++k) rc.k_grid.push_back(k);
  const auto r = response_binned(cfg.h0(), rc, lat, cfg.hamiltonian.alpha);

  Csv csv({"i", "j", "r_ij[sites]", "bin_lo[energy]", "bin_hi[energy]", "sigma[1]",
           "pair_bound[1]", "dominated[bool]"});
  for (int a = 0; a < r.n_ops(); ++a)
    for (int b = 0; b < r.n_ops(); ++b)
      for (int k = 0; k < r.n_bins(); ++k) {
        const auto idx = r.index(a, b, k);
        const bool dom = std::abs(r.sigma[idx]) <= r.pair_bound[idx] * (1.0 + 1e-12);
        csv.row({std::to_string(r.sites[a]), std::to_string(r.sites[b]),
                 num(lat.distance(r.sites[a], r.sites[b])), num(r.edges[k]),
                 num(r.edges[k + 1]), num(r.sigma[idx].real()), num(r.pair_bound[idx]),
                 dom ? "true" : "false"});
      }
  return {{"response.csv", csv.str()}};
}

std::vector<Artifact> cmd_heat_scan(const ExperimentConfig& cfg, json& extra) {
  if (cfg.drive.omegas.size() < 4)
    throw SchemaError("drive.omegas", "heat-scan needs at least 4 frequencies");
  HeatingExperiment ex;
  ex.h0 = cfg.h0();
  ex.drive = cfg.drive_operator();
  ex.g = cfg.drive.g;
  ex.beta = cfg.heating.beta;
  ex.sites = sites_of(cfg);
  ex.periods = heating_period_grid(cfg.heating.dense_periods, cfg.heating.max_periods,
                                   cfg.heating.per_decade);
  ex.fraction = cfg.heating.fraction;
  const auto scan = frequency_scan(ex, cfg.drive.omegas);

  std::vector<Artifact> out;
  Csv points({"omega[energy]", "t_star[time]", "crossed[bool]"});
  for (std::size_t k = 0; k < scan.points.size(); ++k) {
    const auto& p = scan.points[k];
    points.row({num(p.omega), p.t_star ? num(*p.t_star) : "none", p.t_star ? "true" : "false"});
    const auto& tr = scan.traces[k];
    Csv trace({"n[periods]", "t[time]", "energy[energy]"});
    for (std::size_t i = 0; i < tr.times.size(); ++i)
      trace.row({std::to_string(tr.periods[i]), num(tr.times[i]), num(tr.energy[i])});
    out.push_back({fmt::format("heat_trace_omega_{}.csv", num(p.omega)), trace.str()});
  }
  Csv fit({"quantity", "value", "unit"});
  fit.row({"spearman", num(scan.spearman), "1"});
  fit.row({"fit_available", scan.fit ? "true" : "false", "bool"});
  if (scan.fit) {
    fit.row({"slope", num(scan.fit->slope), "1/energy"});
    fit.row({"slope_stderr", num(scan.fit->slope_stderr), "1/energy"});
    fit.row({"intercept", num(scan.fit->intercept), "log(time)"});
    fit.row({"points", std::to_string(scan.fit->points), "count"});
  }
  if (!scan.traces.empty()) {
    fit.row({"e_initial", num(scan.traces.front().e_initial), "energy"});
    fit.row({"e_infinite", num(scan.traces.front().e_infinite), "energy"});
  }
  extra["spearman"] = scan.spearman;
  out.insert(out.begin(), {{"heat_scan.csv", points.str()}, {"heat_fit.csv", fit.str()}});
  return out;
}

std::vector<Artifact> cmd_delta(const ExperimentConfig& cfg, json&) {
  const double omega = require_omega(cfg, "delta");
  const Lattice lat = cfg.lattice.build();
  const OperatorSum o =
      cfg.delta.observable.is_zero() ? OperatorSum::single(0, Pauli::X) : cfg.delta.observable;
  std::vector<EnvelopeParams> env = cfg.delta.envelopes;
  if (env.empty()) env = {{EnvelopeKind::Gong}, {EnvelopeKind::Conjectured}};
  const auto gong = BoundParams::from_lattice_constants(BoundKind::Gong, lat, cfg.hamiltonian.alpha,
                                                        SiteSet({0}), SiteSet({lat.size() - 1}));
  for (auto& e : env) {
    e.alpha = cfg.hamiltonian.alpha;
    e.dimension = cfg.lattice.dimension;
    e.v = gong.v;
  }
  const auto r = build_magnus(cfg, omega);
  const auto trace =
      observable_delta(r, driven(cfg, omega), o, cfg.delta.periods, sites_of(cfg), env);

  std::vector<std::string> header = {"n[periods]", "t[time]", "delta_norm[1]"};
  for (const auto& e : env) header.push_back(fmt::format("envelope_{}[1]", envelope_kind_name(e.kind)));
  Csv csv(header);
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    std::vector<std::string> row = {std::to_string(trace.periods[k]), num(trace.times[k]),
                                    num(trace.delta_norm[k])};
    for (const auto& e : env) row.push_back(num(trace.envelopes.at(e.kind)[k]));
    csv.row(row);
  }
  Csv summary({"kind", "constant[1]", "calibration_n[periods]", "dominated[bool]",
               "worst_ratio[1]"});
  for (const auto& e : env) {
    const auto d = envelope_domination(trace, e.kind);
    summary.row({std::string(envelope_kind_name(e.kind)), num(trace.constants.at(e.kind)),
                 trace.calibration_index ? std::to_string(*trace.calibration_index) : "none",
                 trace.calibration_index ? (d.pass ? "true" : "false") : "uncalibrated",
                 num(d.worst_ratio)});
  }
  return {{"delta.csv", csv.str()}, {"delta_summary.csv", summary.str()}};
}

std::vector<Artifact> cmd_lemmas(const ExperimentConfig& cfg, json& extra) {
  auto reports = run_lemma_suite();
  const Lattice lat = cfg.lattice.build();
  if (lat.size() <= 10) {
    auto closure = run_closure_suite(lat, cfg.hamiltonian.alpha, 20, cfg.seed);
    reports.insert(reports.end(), closure.begin(), closure.end());
  }
  Csv csv({"lemma", "point", "lhs[1]", "rhs[1]", "pass[bool]"});
  int failures = 0;
  for (const auto& r : reports) {
    csv.row({r.lemma, "\"" + r.point + "\"", num(r.lhs), num(r.rhs), r.pass ? "true" : "false"});
    failures += !r.pass;
  }
  extra["lemma_failures"] = failures;
  return {{"lemmas.csv", csv.str()}};
}

int resolve_threads(const RunOptions& options) {
  if (options.threads) return *options.threads;
  if (const char* env = std::getenv("FLOQLAB_THREADS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw SchemaError("FLOQLAB_THREADS", fmt::format("not an integer: '{}'", env));
    }
  }
  return 0;
}

}  // namespace

int run(const RunOptions& options, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  std::string out_dir;
  int threads = 0;
  try {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), options.subcommand) ==
        kSubcommands.end())
      throw SchemaError("<subcommand>", fmt::format("unknown subcommand '{}'", options.subcommand));
    auto doc = read_config_file(options.config_path);
    for (const auto& s : options.overrides) apply_override(doc, s);
    cfg = parse_config(doc);
    out_dir = options.out_dir.value_or(cfg.output);
    threads = resolve_threads(options);
    if (threads < 0) throw SchemaError("--threads", "must be >= 0");
  } catch (const SchemaError& e) {
    log << "schema error at " << e.what() << "\n";
    return kExitSchema;
  }
  if (threads > 0) kernels::set_thread_count(threads);

  json extra = json::object();
  std::vector<Artifact> artifacts;
  try {
    const auto& c = options.subcommand;
    if (c == "magnus") artifacts = cmd_magnus(cfg, extra);
    else if (c == "lr-scan") artifacts = cmd_lr_scan(cfg, extra);
    else if (c == "response") artifacts = cmd_response(cfg, extra);
    else if (c == "heat-scan") artifacts = cmd_heat_scan(cfg, extra);
    else if (c == "delta") artifacts = cmd_delta(cfg, extra);
    else artifacts = cmd_lemmas(cfg, extra);
  } catch (const SchemaError& e) {
    log << "schema error at " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    log << options.subcommand << " failed: " << e.what() << "\n";
    return kExitModule;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"tool", "floqlab"},
                   {"version", FLOQ_VERSION},
                   {"subcommand", options.subcommand},
                   {"config_path", options.config_path},
                   {"overrides", options.overrides},
                   {"resolved_config", cfg.resolved},
                   {"seed", cfg.seed},
                   {"threads", kernels::thread_count()},
                   {"wall_time_seconds", wall},
                   {"results", extra}};
  json files = json::array();
  for (const auto& a : artifacts) files.push_back(a.name);
  manifest["artifacts"] = files;

  try {
    fs::create_directories(out_dir);
    for (const auto& a : artifacts) {
      std::ofstream f(fs::path(out_dir) / a.name, std::ios::binary);
      f << a.content;
      if (!f) throw Error(fmt::format("cannot write {}", a.name));
    }
    std::ofstream m(fs::path(out_dir) / "manifest.json", std::ios::binary);
    m << manifest.dump(2) << "\n";
  } catch (const std::exception& e) {
    log << "output failed: " << e.what() << "\n";
    return kExitModule;
  }
  log << fmt::format("{}: wrote {} files to {} in {:.2f} s\n", options.subcommand,
                     artifacts.size() + 1, out_dir, wall);
  return kExitOk;
}

}  // namespace floq::app
