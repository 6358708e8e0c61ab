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

#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/heating.hpp"
#include "floq/lattice.hpp"
#include "floq/lieb_robinson.hpp"
#include "floq/pauli.hpp"

namespace floq::app {

inline constexpr int kSchemaVersion = 1;

/** Config problem located at a dotted field path. */
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct LatticeSpec {
  int dimension = 1;
  std::vector<int> extents;
  Boundary boundary = Boundary::Open;

  Lattice build() const { return Lattice(extents, boundary); }
};

struct HamiltonianSpec {
  /** "powerlaw_ising" or "terms" */
  std::string family = "powerlaw_ising";
  double alpha = 3.0;
  double coupling = 1.0;
  double transverse_field = 0.5;
  double longitudinal_field = 0.0;
  OperatorSum terms;
  double eta = 1.0;
  int k = 1;
};

struct DriveSpec {
  double g = 0.5;
  std::optional<double> omega;
  std::vector<double> omegas;
  /** Sum of X over all sites when absent. */
  std::optional<OperatorSum> drive_operator;
};

struct MagnusSpec {
  std::optional<int> q_max;
  std::optional<int> report_orders;
  double kappa = 1.0;
  double c = 10.0;
  int residual_samples = 0;
};

struct BoundSpec {
  BoundKind kind;
  double mu = 0.5;
  double xi = 0.5;
  double sigma = 0.5;
  double beta_cone = 1.0;
};

struct LrSpec {
  OperatorSum source;
  Pauli target_pauli = Pauli::X;
  std::vector<int> targets;
  std::vector<double> times;
  bool measure = true;
};

struct ResponseSpec {
  double beta = 1.0;
  Pauli pauli = Pauli::X;
  std::vector<int> sites;
  std::vector<double> edges;
  int k_max = 8;
};

struct HeatingSpec {
  double beta = 1.0;
  double fraction = 0.5;
  std::int64_t dense_periods = 2000;
  std::int64_t max_periods = 1000000000;
  int per_decade = 60;
};

struct DeltaSpec {
  OperatorSum observable;
  std::int64_t periods = 500;
  std::vector<EnvelopeParams> envelopes;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 0;
  LatticeSpec lattice;
  HamiltonianSpec hamiltonian;
  DriveSpec drive;
  MagnusSpec magnus;
  std::vector<BoundSpec> bounds;
  LrSpec lr;
  ResponseSpec response;
  HeatingSpec heating;
  DeltaSpec delta;
  std::string output = "out";
  /** Input after overrides, as validated. */
  nlohmann::json resolved;

  OperatorSum h0() const;
  OperatorSum drive_operator() const;
};

/** JSON with comments allowed; throws SchemaError. */
nlohmann::json read_config_file(const std::string& path);

/** Applies one "a.b.c=value" override; value parsed as JSON, else as string. */
void apply_override(nlohmann::json& doc, const std::string& assignment);

ExperimentConfig parse_config(const nlohmann::json& doc);

/** [{"coefficient": [re, im], "string": {"0": "X"}}] */
OperatorSum parse_operator(const nlohmann::json& node, const std::string& path);
nlohmann::json operator_to_json(const OperatorSum& op);

}  // namespace floq::app
