// Copyright 2026 The qturbo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qturbo/error.hpp"
#include "qturbo/exit.hpp"
#include "qturbo/pipeline.hpp"

namespace qturbo {

/// First root of the hashing capacity, where it reaches zero.
inline constexpr double kHashingZero = 0.189289624915;

/// Quantum hashing capacity of the depolarizing channel in qubits per use.
inline double hashing_capacity(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw InvalidInput("hashing_capacity: p must lie in [0, 1)");
  return 1.0 - binary_entropy(p) - p * std::log2(3.0);
}

/// Largest p (on the decreasing branch below the first zero) at which the
/// hashing capacity still equals r.
inline double hashing_threshold(double rate, double tol = 1e-6) {
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidInput("hashing_threshold: rate must lie in (0, 1]");
  if (rate == 1.0) return 0.0;
  double lo = 0.0;
  double hi = 0.19;
  while (hashing_capacity(hi) > 0.0) hi += 1e-3;
  while (hi - lo > tol * 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (hashing_capacity(mid) > rate ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double round_to_decimals(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

/// D = p* - p. With `decimals` set, p* and D are quoted at that precision the
/// way tabulated thresholds are.
inline double distance_from_bound(double rate, double p_achieved, std::optional<int> decimals = std::nullopt) {
  if (!(p_achieved >= 0.0 && p_achieved < 1.0)) throw InvalidInput("distance_from_bound: p must lie in [0, 1)");
  const double threshold = hashing_threshold(rate);
  if (!decimals) return threshold - p_achieved;
  return round_to_decimals(round_to_decimals(threshold, *decimals) - p_achieved, *decimals);
}

inline double goodput(double rate, double qber) {
  if (!(qber >= 0.0 && qber <= 1.0)) throw InvalidInput("goodput: qber must lie in [0, 1]");
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidInput("goodput: rate must lie in (0, 1]");
  return rate * (1.0 - qber);
}

struct Requirement {
  enum class Kind { kBeatUncoded, kQberTarget };
  Kind kind = Kind::kBeatUncoded;
  double target = 0.0;

  static Requirement beat_uncoded() { return {Kind::kBeatUncoded, 0.0}; }
  static Requirement qber_at_most(double t) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidInput("QBER target must lie in (0, 1)");
    return {Kind::kQberTarget, t};
  }

  double limit(double p) const { return kind == Kind::kBeatUncoded ? p : target; }
  bool met(double p, double qber) const { return kind == Kind::kBeatUncoded ? qber < p : qber <= target; }
  std::string str() const {
    return kind == Kind::kBeatUncoded ? std::string("qber<uncoded") : "qber<=" + std::to_string(target);
  }
};

struct RateThreshold {
  double rate = 0.0;
  std::optional<double> p;  // empty when the sweep does not bracket the requirement from below
};

struct RateInterval {
  double rate = 0.0;
  double p_low = 0.0;
  double p_high = 0.0;
};

struct SwitchTable {
  Requirement requirement;
  std::vector<RateThreshold> thresholds;  // ascending rate
  std::vector<RateInterval> intervals;    // ascending p
};

/// Largest p meeting the requirement, interpolated on log10(qber) between the
/// last passing sweep point and its failing neighbour.
inline std::optional<double> threshold_for(std::vector<SweepRecord> sweep, const Requirement& req) {
  if (sweep.empty()) return std::nullopt;
  std::sort(sweep.begin(), sweep.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  std::optional<std::size_t> last_pass;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (req.met(sweep[i].p, sweep[i].qber)) last_pass = i;
  }
  if (!last_pass) return std::nullopt;
  const std::size_t i = *last_pass;
  if (i + 1 == sweep.size()) return sweep[i].p;
  const auto& a = sweep[i];
  const auto& b = sweep[i + 1];
  if (a.qber <= 0.0) return a.p;
  const double ga = std::log10(a.qber) - std::log10(req.limit(a.p));
  const double gb = std::log10(b.qber) - std::log10(req.limit(b.p));
  if (!(gb > ga)) return a.p;
  const double t = std::clamp(-ga / (gb - ga), 0.0, 1.0);
  return a.p + t * (b.p - a.p);
}

/// Per-rate thresholds plus the p intervals in which each rate is the
/// highest one meeting the requirement.
inline SwitchTable switching_points(const std::vector<SweepRecord>& records, const Requirement& req) {
  std::map<double, std::vector<SweepRecord>> by_rate;
  for (const auto& r : records) by_rate[r.rate].push_back(r);
  SwitchTable table;
  table.requirement = req;
  for (const auto& [rate, sweep] : by_rate) table.thresholds.push_back({rate, threshold_for(sweep, req)});
  double lower = 0.0;
  for (auto it = table.thresholds.rbegin(); it != table.thresholds.rend(); ++it) {
    if (!it->p || *it->p <= lower) continue;
    table.intervals.push_back({it->rate, lower, *it->p});
    lower = *it->p;
  }
  return table;
}

inline bool thresholds_decrease_with_rate(const SwitchTable& table) {
  for (std::size_t i = 1; i < table.thresholds.size(); ++i) {
    const auto& a = table.thresholds[i - 1].p;
    const auto& b = table.thresholds[i].p;
    if (!a || !b || !(*b < *a)) return false;
  }
  return true;
}

}  // namespace qturbo
