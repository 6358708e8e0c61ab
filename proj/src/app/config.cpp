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

#include "floq/app/config.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

#include "floq/errors.hpp"

namespace floq::app {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string item(const std::string& path, std::size_t k) {
  return fmt::format("{}[{}]", path, k);
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::int64_t as_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15)
      return static_cast<std::int64_t>(v);
  }
  throw SchemaError(path, "expected an integer");
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected true or false");
  return j.get<bool>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::vector<double> doubles(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t k = 0; k < as_array(j, path).size(); ++k)
    out.push_back(as_double(j[k], item(path, k)));
  return out;
}

std::vector<int> ints(const json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t k = 0; k < as_array(j, path).size(); ++k)
    out.push_back(static_cast<int>(as_int(j[k], item(path, k))));
  return out;
}

Pauli pauli_letter(const json& j, const std::string& path) {
  const auto s = as_string(j, path);
  if (s == "X") return Pauli::X;
  if (s == "Y") return Pauli::Y;
  if (s == "Z") return Pauli::Z;
  throw SchemaError(path, fmt::format("expected \"X\", \"Y\" or \"Z\", got \"{}\"", s));
}

// Object view that records which keys were read.
class Object {
 public:
  Object(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }
  const json& at(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw SchemaError(path(key), "required field is missing");
    return j_.at(key);
  }
  std::string path(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key, double fallback) {
    return has(key) ? as_double(j_.at(key), path(key)) : fallback;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    return has(key) ? as_int(j_.at(key), path(key)) : fallback;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) throw SchemaError(path(key), "unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw SchemaError(path, what);
}

LatticeSpec parse_lattice(const json& j, const std::string& path) {
  Object o(j, path);
  LatticeSpec s;
  s.extents = ints(o.at("extents"), o.path("extents"));
  s.dimension = static_cast<int>(o.integer("dimension", static_cast<std::int64_t>(s.extents.size())));
  check(!s.extents.empty(), o.path("extents"), "needs at least one extent");
  check(s.dimension == static_cast<int>(s.extents.size()), o.path("dimension"),
        "must equal the number of extents");
  long sites = 1;
  for (std::size_t k = 0; k < s.extents.size(); ++k) {
    check(s.extents[k] >= 1, item(o.path("extents"), k), "extent must be >= 1");
    sites *= s.extents[k];
  }
  check(sites <= kMaxSites, o.path("extents"), fmt::format("at most {} sites", kMaxSites));
  if (o.has("boundary")) {
    const auto b = as_string(o.at("boundary"), o.path("boundary"));
    if (b == "open") s.boundary = Boundary::Open;
    else if (b == "periodic") s.boundary = Boundary::Periodic;
    else throw SchemaError(o.path("boundary"), "expected \"open\" or \"periodic\"");
  }
  o.finish();
  return s;
}

HamiltonianSpec parse_hamiltonian(const json& j, const std::string& path) {
  Object o(j, path);
  HamiltonianSpec s;
  if (o.has("family")) s.family = as_string(o.at("family"), o.path("family"));
  check(s.family == "powerlaw_ising" || s.family == "terms", o.path("family"),
        "expected \"powerlaw_ising\" or \"terms\"");
  s.alpha = o.number("alpha", s.alpha);
  check(s.alpha > 0.0, o.path("alpha"), "must be > 0");
  s.eta = o.number("eta", s.eta);
  check(s.eta > 0.0, o.path("eta"), "must be > 0");
  s.k = static_cast<int>(o.integer("k", s.k));
  check(s.k >= 1, o.path("k"), "must be >= 1");
  if (s.family == "powerlaw_ising") {
    s.coupling = o.number("coupling", s.coupling);
    s.transverse_field = o.number("transverse_field", s.transverse_field);
    s.longitudinal_field = o.number("longitudinal_field", s.longitudinal_field);
    check(!o.has("terms"), o.path("terms"), "only allowed with family \"terms\"");
  } else {
    s.terms = parse_operator(o.at("terms"), o.path("terms"));
    for (auto key : {"coupling", "transverse_field", "longitudinal_field"})
      check(!o.has(key), o.path(key), "only allowed with family \"powerlaw_ising\"");
  }
  o.finish();
  return s;
}

DriveSpec parse_drive(const json& j, const std::string& path) {
  Object o(j, path);
  DriveSpec s;
  s.g = o.number("g", s.g);
  if (o.has("omega")) {
    s.omega = as_double(o.at("omega"), o.path("omega"));
    check(*s.omega > 0.0, o.path("omega"), "must be > 0");
  }
  if (o.has("omegas")) {
    s.omegas = doubles(o.at("omegas"), o.path("omegas"));
    for (std::size_t k = 0; k < s.omegas.size(); ++k)
      check(s.omegas[k] > 0.0, item(o.path("omegas"), k), "must be > 0");
  }
  if (o.has("drive_operator"))
    s.drive_operator = parse_operator(o.at("drive_operator"), o.path("drive_operator"));
  o.finish();
  return s;
}

MagnusSpec parse_magnus(const json& j, const std::string& path) {
  Object o(j, path);
  MagnusSpec s;
  if (o.has("q_max")) {
    s.q_max = static_cast<int>(as_int(o.at("q_max"), o.path("q_max")));
    check(*s.q_max >= 1, o.path("q_max"), "must be >= 1");
  }
  if (o.has("report_orders")) {
    s.report_orders = static_cast<int>(as_int(o.at("report_orders"), o.path("report_orders")));
    check(*s.report_orders >= 0, o.path("report_orders"), "must be >= 0");
  }
  s.kappa = o.number("kappa", s.kappa);
  s.c = o.number("c", s.c);
  check(s.c > 0.0, o.path("c"), "must be > 0");
  s.residual_samples = static_cast<int>(o.integer("residual_samples", s.residual_samples));
  check(s.residual_samples >= 0, o.path("residual_samples"), "must be >= 0");
  o.finish();
  return s;
}

BoundSpec parse_bound(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return {bound_kind_from_name(j.get<std::string>())};
    } catch (const std::exception& e) {
      throw SchemaError(path, e.what());
    }
  }
  Object o(j, path);
  BoundSpec s{BoundKind::HK};
  try {
    s.kind = bound_kind_from_name(as_string(o.at("kind"), o.path("kind")));
  } catch (const Error& e) {
    throw SchemaError(o.path("kind"), e.what());
  }
  s.mu = o.number("mu", s.mu);
  s.xi = o.number("xi", s.xi);
  s.sigma = o.number("sigma", s.sigma);
  s.beta_cone = o.number("beta_cone", s.beta_cone);
  o.finish();
  return s;
}

LrSpec parse_lr(const json& j, const std::string& path) {
  Object o(j, path);
  LrSpec s;
  if (o.has("source")) s.source = parse_operator(o.at("source"), o.path("source"));
  if (o.has("target_pauli")) s.target_pauli = pauli_letter(o.at("target_pauli"), o.path("target_pauli"));
  if (o.has("targets")) s.targets = ints(o.at("targets"), o.path("targets"));
  if (o.has("times")) {
    s.times = doubles(o.at("times"), o.path("times"));
    for (std::size_t k = 0; k < s.times.size(); ++k)
      check(s.times[k] >= 0.0, item(o.path("times"), k), "must be >= 0");
  }
  if (o.has("measure")) s.measure = as_bool(o.at("measure"), o.path("measure"));
  o.finish();
  return s;
}

ResponseSpec parse_response(const json& j, const std::string& path) {
  Object o(j, path);
  ResponseSpec s;
  s.beta = o.number("beta", s.beta);
  if (o.has("pauli")) s.pauli = pauli_letter(o.at("pauli"), o.path("pauli"));
  if (o.has("sites")) s.sites = ints(o.at("sites"), o.path("sites"));
  if (o.has("edges")) {
    s.edges = doubles(o.at("edges"), o.path("edges"));
    for (std::size_t k = 1; k < s.edges.size(); ++k)
      check(s.edges[k] > s.edges[k - 1], item(o.path("edges"), k), "edges must increase");
  }
  s.k_max = static_cast<int>(o.integer("k_max", s.k_max));
  check(s.k_max >= 0 && s.k_max <= 16, o.path("k_max"), "must lie in [0, 16]");
  o.finish();
  return s;
}

HeatingSpec parse_heating(const json& j, const std::string& path) {
  Object o(j, path);
  HeatingSpec s;
  s.beta = o.number("beta", s.beta);
  s.fraction = o.number("fraction", s.fraction);
  check(s.fraction > 0.0 && s.fraction < 1.0, o.path("fraction"), "must lie in (0, 1)");
  s.dense_periods = o.integer("dense_periods", s.dense_periods);
  check(s.dense_periods >= 0, o.path("dense_periods"), "must be >= 0");
  s.max_periods = o.integer("max_periods", s.max_periods);
  check(s.max_periods >= s.dense_periods, o.path("max_periods"), "must be >= dense_periods");
  s.per_decade = static_cast<int>(o.integer("per_decade", s.per_decade));
  check(s.per_decade >= 1, o.path("per_decade"), "must be >= 1");
  o.finish();
  return s;
}

DeltaSpec parse_delta(const json& j, const std::string& path) {
  Object o(j, path);
  DeltaSpec s;
  if (o.has("observable")) s.observable = parse_operator(o.at("observable"), o.path("observable"));
  s.periods = o.integer("periods", s.periods);
  check(s.periods >= 0, o.path("periods"), "must be >= 0");
  if (o.has("envelopes")) {
    const auto& arr = as_array(o.at("envelopes"), o.path("envelopes"));
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto p = item(o.path("envelopes"), k);
      EnvelopeParams e;
      const json* name = &arr[k];
      std::optional<Object> eo;
      if (!arr[k].is_string()) {
        eo.emplace(arr[k], p);
        name = &eo->at("kind");
        e.sigma = eo->number("sigma", e.sigma);
        e.beta_cone = eo->number("beta_cone", e.beta_cone);
        eo->finish();
      }
      try {
        e.kind = envelope_kind_from_name(as_string(*name, p));
      } catch (const Error& err) {
        throw SchemaError(p, err.what());
      }
      s.envelopes.push_back(e);
    }
  }
  o.finish();
  return s;
}

}  // namespace

OperatorSum parse_operator(const json& node, const std::string& path) {
  std::vector<Term> terms;
  const auto& arr = as_array(node, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto p = item(path, k);
    Object o(arr[k], p);
    Complex c = 1.0;
    if (o.has("coefficient")) {
      const auto& cj = o.at("coefficient");
      if (cj.is_number()) {
        c = as_double(cj, o.path("coefficient"));
      } else {
        const auto v = doubles(cj, o.path("coefficient"));
        check(v.size() == 2, o.path("coefficient"), "expected [re, im]");
        c = {v[0], v[1]};
      }
    }
    Object letters(o.at("string"), o.path("string"));
    std::map<int, Pauli> m;
    for (const auto& [key, value] : o.at("string").items()) {
      const auto lp = letters.path(key);
      int site = -1;
      try {
        std::size_t used = 0;
        site = std::stoi(key, &used);
        if (used != key.size()) site = -1;
      } catch (const std::exception&) {
      }
      check(site >= 0 && site < kMaxSites, lp, "site key must be an integer in [0, 64)");
      letters.has(key);
      m[site] = pauli_letter(value, lp);
    }
    letters.finish();
    o.finish();
    terms.push_back({PauliString(m), c});
  }
  return OperatorSum(std::move(terms));
}

json operator_to_json(const OperatorSum& op) {
  json out = json::array();
  for (const auto& t : op.terms()) {
    json letters = json::object();
    for (int s : t.string.support())
      letters[std::to_string(s)] = std::string(1, pauli_char(t.string.at(s)));
    out.push_back({{"coefficient", {t.coefficient.real(), t.coefficient.imag()}},
                   {"string", letters}});
  }
  return out;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("<file>", fmt::format("cannot read '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw SchemaError("<file>", fmt::format("not valid JSON: {}", e.what()));
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw SchemaError("--set", fmt::format("expected key=value, got '{}'", assignment));
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::stringstream ks(key);
  std::string part, walked;
  std::vector<std::string> parts;
  while (std::getline(ks, part, '.')) parts.push_back(part);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    walked = join(walked, p);
    if (p.empty()) throw SchemaError(key, "empty path segment");
    const bool last = k + 1 == parts.size();
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(p);
      } catch (const std::exception&) {
        throw SchemaError(walked, "array index expected");
      }
      if (idx >= node->size()) throw SchemaError(walked, "array index out of range");
      node = &(*node)[idx];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw SchemaError(walked, "cannot descend into a scalar");
      node = &(*node)[p];
    }
    if (last) *node = value;
  }
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  Object o(doc, "");
  cfg.schema_version = static_cast<int>(as_int(o.at("schema_version"), "schema_version"));
  check(cfg.schema_version == kSchemaVersion, "schema_version",
        fmt::format("unsupported version (expected {})", kSchemaVersion));
  if (o.has("seed")) {
    const auto s = as_int(o.at("seed"), "seed");
    check(s >= 0, "seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  cfg.lattice = parse_lattice(o.at("lattice"), "lattice");
  const int n = [&] {
    int v = 1;
    for (int e : cfg.lattice.extents) v *= e;
    return v;
  }();
  cfg.hamiltonian = parse_hamiltonian(o.at("hamiltonian"), "hamiltonian");
  if (cfg.hamiltonian.family == "terms")
    for (const auto& t : cfg.hamiltonian.terms.terms())
      for (int s : t.string.support())
        check(s < n, "hamiltonian.terms", fmt::format("site {} outside the lattice", s));
  if (o.has("drive")) cfg.drive = parse_drive(o.at("drive"), "drive");
  if (o.has("magnus")) cfg.magnus = parse_magnus(o.at("magnus"), "magnus");
  if (o.has("bounds")) {
    const auto& arr = as_array(o.at("bounds"), "bounds");
    for (std::size_t k = 0; k < arr.size(); ++k)
      cfg.bounds.push_back(parse_bound(arr[k], item("bounds", k)));
  }
  if (o.has("lr")) cfg.lr = parse_lr(o.at("lr"), "lr");
  if (o.has("response")) cfg.response = parse_response(o.at("response"), "response");
  if (o.has("heating")) cfg.heating = parse_heating(o.at("heating"), "heating");
  if (o.has("delta")) cfg.delta = parse_delta(o.at("delta"), "delta");
  if (o.has("output")) cfg.output = as_string(o.at("output"), "output");
  o.finish();

  for (std::size_t k = 0; k < cfg.lr.targets.size(); ++k)
    check(cfg.lr.targets[k] >= 0 && cfg.lr.targets[k] < n, item("lr.targets", k),
          "site outside the lattice");
  for (std::size_t k = 0; k < cfg.response.sites.size(); ++k)
    check(cfg.response.sites[k] >= 0 && cfg.response.sites[k] < n, item("response.sites", k),
          "site outside the lattice");
  cfg.resolved = doc;
  return cfg;
}

OperatorSum ExperimentConfig::h0() const {
  if (hamiltonian.family == "terms") return hamiltonian.terms;
  const Lattice lat = lattice.build();
  OperatorSum h;
  const int n = lat.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PauliString s;
      s.set(i, Pauli::Z);
      s.set(j, Pauli::Z);
      h += OperatorSum::from_string(
          s, hamiltonian.coupling * std::pow(lat.distance(i, j), -hamiltonian.alpha));
    }
  for (int i = 0; i < n; ++i) {
    if (hamiltonian.transverse_field != 0.0)
      h += OperatorSum::single(i, Pauli::X, hamiltonian.transverse_field);
    if (hamiltonian.longitudinal_field != 0.0)
      h += OperatorSum::single(i, Pauli::Z, hamiltonian.longitudinal_field);
  }
  return h;
}

OperatorSum ExperimentConfig::drive_operator() const {
  if (drive.drive_operator) return *drive.drive_operator;
  OperatorSum v;
  for (int i = 0; i < lattice.build().size(); ++i) v += OperatorSum::single(i, Pauli::X);
  return v;
}

}  // namespace floq::app
