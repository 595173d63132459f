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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "qturbo/channel.hpp"
#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/pipeline.hpp"
#include "qturbo/qsbc.hpp"
#include "qturbo/qurc.hpp"
#include "qturbo/rng.hpp"

namespace qturbo {

inline constexpr double kMaxSymbolInformation = 2.0;  // bits per 4-ary Pauli symbol

inline double binary_entropy(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

/// Mutual information of the 4-ary symmetric a priori channel with flip
/// probability q: 2 - H_b(q) - q log2(3).
inline double apriori_mi(double q) {
  if (!(q >= 0.0 && q <= 0.75)) throw InvalidInput("apriori_mi: q must lie in [0, 3/4], got " + std::to_string(q));
  return kMaxSymbolInformation - binary_entropy(q) - q * std::log2(3.0);
}

/// Inverts apriori_mi by bisection.
inline double calibrate_q(double target_bits, double tol = 1e-9) {
  if (!(target_bits >= 0.0 && target_bits <= kMaxSymbolInformation)) {
    throw InvalidInput("calibrate_q: target must lie in [0, 2] bits");
  }
  if (target_bits >= kMaxSymbolInformation) return 0.0;
  if (target_bits <= 0.0) return 0.75;
  double lo = 0.0;   // apriori_mi(lo) = 2 > target
  double hi = 0.75;  // apriori_mi(hi) = 0 < target
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = apriori_mi(mid);
    if (std::abs(v - target_bits) < tol) return mid;
    (v > target_bits ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Observes each true symbol through the symmetric channel q and emits the
/// exact posterior for that observation.
inline std::vector<SymbolDistribution> generate_apriori(std::span<const PauliSymbol> truth, double q, RngStream& rng) {
  if (!(q >= 0.0 && q <= 0.75)) throw InvalidInput("generate_apriori: q must lie in [0, 3/4]");
  std::vector<SymbolDistribution> out(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto y = static_cast<unsigned>(truth[i]);
    const double u = rng.uniform();
    if (u >= 1.0 - q) {
      const auto shift = 1U + std::min(2U, static_cast<unsigned>((u - (1.0 - q)) / (q / 3.0)));
      y = (y + shift) % 4U;
    }
    SymbolDistribution d;
    d.fill(q / 3.0);
    d[y] = 1.0 - q;
    out[i] = d;
  }
  return out;
}

struct MiEstimate {
  double bits = 0.0;
  std::size_t floored = 0;  // symbols whose true-symbol probability hit the log floor
};

/// Sample estimate 2 + mean(log2 m_j(truth_j)), clamped to [0, 2].
inline MiEstimate measure_mi(std::span<const SymbolDistribution> messages, std::span<const PauliSymbol> truth) {
  if (messages.size() != truth.size()) throw InvalidInput("measure_mi: length mismatch");
  if (messages.empty()) throw InvalidInput("measure_mi: empty input");
  constexpr double kFloor = 1e-12;
  MiEstimate est;
  double acc = 0.0;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    double v = messages[i][static_cast<std::size_t>(truth[i])];
    if (v < kFloor) {
      v = kFloor;
      ++est.floored;
    }
    acc += std::log2(v);
  }
  est.bits = std::clamp(kMaxSymbolInformation + acc / static_cast<double>(messages.size()), 0.0, kMaxSymbolInformation);
  return est;
}

struct ExitPoint {
  double apriori_bits = 0.0;    // I_A
  double extrinsic_bits = 0.0;  // I_E
  std::size_t samples = 0;
};

namespace detail {

template <typename Fn>
void parallel_indices(std::size_t count, std::size_t workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  workers = std::min(std::max<std::size_t>(workers, 1), count);
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidInput("EXIT grid is empty");
  for (double g : grid) {
    if (!(g >= 0.0 && g <= kMaxSymbolInformation)) throw InvalidInput("EXIT grid values must lie in [0, 2] bits");
  }
}

/// Inner QURC decoder transfer curve at depolarizing probability p.
inline std::vector<ExitPoint> inner_exit_curve(double p, std::span<const double> grid, std::size_t samples_per_point,
                                               std::uint64_t seed, std::size_t block_length = 1000,
                                               QurcLayout layout = QurcLayout::kMemoryFirst, std::size_t workers = 1) {
  check_grid(grid);
  if (block_length == 0) throw InvalidInput("inner_exit_curve: block_length must be >= 1");
  const DepolarizingChannel channel(p);
  const QurcCode code(layout);
  std::vector<ExitPoint> out(grid.size());
  detail::parallel_indices(grid.size(), workers, [&](std::size_t g) {
    const double q = calibrate_q(grid[g]);
    auto truth_rng = RngStream::derive(seed, StreamTag::kChannel, g);
    auto apriori_rng = RngStream::derive(seed, StreamTag::kApriori, g);
    double weighted = 0.0;
    std::size_t done = 0;
    while (done < std::max<std::size_t>(samples_per_point, 1)) {
      const auto physical = channel.sample_sequence(block_length, truth_rng);
      const auto logical = code.propagate_inverse(physical).frames;
      const auto apriori = generate_apriori(logical, q, apriori_rng);
      const std::vector<SymbolDistribution> priors(block_length, channel.prior());
      const auto ext = inner_siso_decode(code.trellis(), priors, apriori);
      weighted += measure_mi(ext, logical).bits * static_cast<double>(block_length);
      done += block_length;
    }
    out[g] = {grid[g], weighted / static_cast<double>(done), done};
  });
  return out;
}

/// Outer QSBC decoder transfer curve, truth sampled uniformly per qubit.
inline std::vector<ExitPoint> outer_exit_curve(const std::string& rate, std::span<const double> grid,
                                               std::size_t samples_per_point, std::uint64_t seed,
                                               std::size_t workers = 1) {
  check_grid(grid);
  const auto code = QsbcCode::for_rate(rate);
  const std::size_t n = code.n();
  std::vector<ExitPoint> out(grid.size());
  detail::parallel_indices(grid.size(), workers, [&](std::size_t g) {
    const double q = calibrate_q(grid[g]);
    auto truth_rng = RngStream::derive(seed, StreamTag::kTruth, g);
    auto apriori_rng = RngStream::derive(seed, StreamTag::kApriori, g);
    double acc = 0.0;
    std::size_t done = 0;
    std::vector<PauliSymbol> truth(n);
    while (done < std::max<std::size_t>(samples_per_point, 1)) {
      for (auto& s : truth) s = static_cast<PauliSymbol>(truth_rng.below(4));
      const auto syndrome = code.syndrome_of(PauliOperator::from_symbols(truth));
      const auto apriori = generate_apriori(truth, q, apriori_rng);
      const auto r = code.decode(apriori, syndrome);
      acc += measure_mi(r.extrinsic, truth).bits * static_cast<double>(n);
      done += n;
    }
    out[g] = {grid[g], acc / static_cast<double>(done), done};
  });
  return out;
}

/// Piecewise-linear interpolation of a curve sampled on increasing I_A.
inline double interpolate_curve(std::span<const ExitPoint> curve, double x) {
  if (curve.empty()) throw InvalidInput("interpolate_curve: empty curve");
  if (x <= curve.front().apriori_bits) return curve.front().extrinsic_bits;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (x <= curve[i].apriori_bits) {
      const auto& a = curve[i - 1];
      const auto& b = curve[i];
      const double t = (x - a.apriori_bits) / (b.apriori_bits - a.apriori_bits);
      return a.extrinsic_bits + t * (b.extrinsic_bits - a.extrinsic_bits);
    }
  }
  return curve.back().extrinsic_bits;
}

/// A priori information the outer decoder needs to emit `target` bits, or
/// +inf if the curve never gets there. The curve is made monotone first.
inline double outer_demand(std::span<const ExitPoint> outer, double target) {
  std::vector<ExitPoint> mono(outer.begin(), outer.end());
  for (std::size_t i = 1; i < mono.size(); ++i) {
    mono[i].extrinsic_bits = std::max(mono[i].extrinsic_bits, mono[i - 1].extrinsic_bits);
  }
  if (target <= mono.front().extrinsic_bits) return 0.0;
  for (std::size_t i = 1; i < mono.size(); ++i) {
    if (target <= mono[i].extrinsic_bits) {
      const auto& a = mono[i - 1];
      const auto& b = mono[i];
      if (b.extrinsic_bits == a.extrinsic_bits) return a.apriori_bits;
      const double t = (target - a.extrinsic_bits) / (b.extrinsic_bits - a.extrinsic_bits);
      return a.apriori_bits + t * (b.apriori_bits - a.apriori_bits);
    }
  }
  return std::numeric_limits<double>::infinity();
}

struct TunnelReport {
  bool open = true;
  double min_margin_bits = std::numeric_limits<double>::infinity();  // min of inner - demand
  double first_crossing_norm = -1.0;  // normalized I where the tunnel closes, -1 if open
};

/// Checks inner(I) > outer^-1(I) for all normalized I in [0, max_norm].
inline TunnelReport check_tunnel(std::span<const ExitPoint> inner, std::span<const ExitPoint> outer,
                                 double max_norm = 0.95, std::size_t steps = 400) {
  TunnelReport rep;
  for (std::size_t s = 0; s <= steps; ++s) {
    const double x = kMaxSymbolInformation * max_norm * static_cast<double>(s) / static_cast<double>(steps);
    const double margin = interpolate_curve(inner, x) - outer_demand(outer, x);
    rep.min_margin_bits = std::min(rep.min_margin_bits, margin);
    if (margin <= 0.0 && rep.open) {
      rep.open = false;
      rep.first_crossing_norm = x / kMaxSymbolInformation;
    }
  }
  return rep;
}

struct TrajectoryPoint {
  std::size_t iteration = 0;
  DecoderStage stage = DecoderStage::kInner;
  double bits = 0.0;
};

inline const char* stage_name(DecoderStage s) { return s == DecoderStage::kInner ? "inner" : "outer"; }

/// Mutual information of every message bundle exchanged while decoding.
/// With frames > 1 the measurements are averaged over independent frames;
/// early stopping is disabled so every frame contributes all iterations.
inline std::vector<TrajectoryPoint> record_trajectory(SchemeConfig config, double p, std::uint64_t master_seed,
                                                      std::size_t frames = 1) {
  config.early_stop = false;
  const TurboScheme scheme(config);
  const std::size_t iters = config.iterations;
  std::vector<double> inner_sum(iters, 0.0);
  std::vector<double> outer_sum(iters, 0.0);
  (void)DepolarizingChannel(p);
  for (std::size_t f = 0; f < std::max<std::size_t>(frames, 1); ++f) {
    const auto physical = scheme.sample_physical(p, master_seed, f);
    const auto pi = scheme.interleaver_for(master_seed, f);
    const auto truth = scheme.truth_from_physical(physical, pi);
    scheme.decode(truth.syndromes, p, pi, [&](std::size_t it, DecoderStage stage, std::span<const SymbolDistribution> m) {
      if (stage == DecoderStage::kInner) {
        inner_sum[it - 1] += measure_mi(m, truth.inner_logical).bits;
      } else {
        outer_sum[it - 1] += measure_mi(m, truth.outer_physical).bits;
      }
    });
  }
  std::vector<TrajectoryPoint> out;
  const double denom = static_cast<double>(std::max<std::size_t>(frames, 1));
  for (std::size_t i = 0; i < iters; ++i) {
    out.push_back({i + 1, DecoderStage::kInner, inner_sum[i] / denom});
    out.push_back({i + 1, DecoderStage::kOuter, outer_sum[i] / denom});
  }
  return out;
}

}  // namespace qturbo
