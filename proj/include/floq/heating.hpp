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
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "floq/dense.hpp"
#include "floq/magnus.hpp"

namespace floq {

struct HeatingTrace {
  std::vector<std::int64_t> periods;
  std::vector<double> times;
  std::vector<double> energy;
  double e_initial = 0.0;
  double e_infinite = 0.0;
};

/** <H0>(nT) in the Gibbs state of H0, for n = 0 .. n_periods. */
HeatingTrace run_heating(const FourierOperator& h, const OperatorSum& h0, double beta,
                         std::int64_t n_periods, const std::vector<int>& sites);

/** Same, sampled at the given strictly increasing period counts. */
HeatingTrace run_heating_at(const FourierOperator& h, const OperatorSum& h0,
                            double beta, const std::vector<std::int64_t>& periods,
                            const std::vector<int>& sites);

/** 0 .. dense, then `per_decade` log-spaced counts per decade up to n_max. */
std::vector<std::int64_t> heating_period_grid(std::int64_t dense, std::int64_t n_max,
                                              int per_decade);

/** First time with energy - e_initial >= fraction (e_infinite - e_initial). */
std::optional<double> heating_time(const HeatingTrace& trace, double fraction = 0.5);

struct HeatingExperiment {
  OperatorSum h0;
  OperatorSum drive;
  double g = 0.5;
  double beta = 1.0;
  std::vector<int> sites;
  std::vector<std::int64_t> periods;
  double fraction = 0.5;

  /** H0 + g cos(omega t) drive */
  FourierOperator hamiltonian(double omega) const;
};

struct ScanPoint {
  double omega;
  std::optional<double> t_star;
};

struct ScanFit {
  double intercept;
  double slope;
  double slope_stderr;
  int points;
};

struct ScanSummary {
  std::vector<ScanPoint> points;
  /** Present when at least three frequencies crossed. */
  std::optional<ScanFit> fit;
  /**
   * Rank correlation of (omega, log t_*); frequencies that never crossed rank
   * above every crossing, ties share the average rank.
   */
  double spearman = 0.0;
  /** One trace per frequency, in the order of `points`; empty from summarize_scan. */
  std::vector<HeatingTrace> traces;
};

ScanSummary summarize_scan(std::vector<ScanPoint> points);
ScanSummary frequency_scan(const HeatingExperiment& base, std::vector<double> omegas);

/** Spearman correlation with average ranks; +inf entries tie at the top. */
double spearman(const std::vector<double>& x, const std::vector<double>& y);

enum class EnvelopeKind { Gong, Else, Tran, Conjectured };

std::string_view envelope_kind_name(EnvelopeKind k);
EnvelopeKind envelope_kind_from_name(std::string_view name);

struct EnvelopeParams {
  EnvelopeKind kind = EnvelopeKind::Gong;
  double alpha = 0.0;
  int dimension = 1;
  /** Gong velocity */
  double v = 0.0;
  double sigma = 0.5;
  double beta_cone = 1.0;

  void validate() const;
};

/** (1/x) 2^x Gamma(x) */
double envelope_xi(double x);

/** Envelope shape with unit constant: e^{-kappa' omega_*} times the time factor. */
double envelope_shape(const EnvelopeParams& p, double suppression, double t);

struct DeltaTrace {
  std::vector<std::int64_t> periods;
  std::vector<double> times;
  std::vector<double> delta_norm;
  std::map<EnvelopeKind, std::vector<double>> envelopes;
  std::map<EnvelopeKind, double> constants;
  /** Index where delta_norm first reaches the calibration level, if any. */
  std::optional<std::size_t> calibration_index;
};

inline constexpr double kDeltaCalibrationLevel = 1e-3;

/**
 * ||U(nT)^dag O U(nT) - e^{inTH_*} O e^{-inTH_*}|| for n = 0 .. n_periods,
 * with each envelope scaled to meet delta_norm at the calibration point.
 */
DeltaTrace observable_delta(const MagnusResult& magnus, const FourierOperator& h,
                            const OperatorSum& o, std::int64_t n_periods,
                            const std::vector<int>& sites,
                            const std::vector<EnvelopeParams>& envelopes);

struct DominationReport {
  bool pass = true;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
};

/** delta_norm <= envelope from the calibration point on. */
DominationReport envelope_domination(const DeltaTrace& trace, EnvelopeKind kind,
                                     double rel_tol = 1e-12);

/** Averages over consecutive windows of `window` samples. */
std::vector<double> window_average(const std::vector<double>& v, std::size_t window);

}  // namespace floq
