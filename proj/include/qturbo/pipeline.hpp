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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "qturbo/channel.hpp"
#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/interleaver.hpp"
#include "qturbo/pauli.hpp"
#include "qturbo/qsbc.hpp"
#include "qturbo/qurc.hpp"
#include "qturbo/rng.hpp"

namespace qturbo {

struct SchemeConfig {
  std::string rate = "1/2";  // outer QSBC rate m/(m+1)
  std::size_t k = 500;       // total logical qubits, a multiple of the block's k
  std::size_t iterations = 16;
  bool early_stop = true;
  double early_stop_tolerance = 1e-3;  // largest message change still counted as converged
  std::uint64_t interleaver_seed = 1;
  bool per_frame_interleaver = false;
  QurcLayout layout = QurcLayout::kMemoryFirst;
};

/// Everything the channel did to one frame, seen at each interface.
struct FrameTruth {
  std::vector<PauliSymbol> physical;        // E on the n2 channel qubits
  std::vector<PauliSymbol> inner_logical;   // L2 = inverse QURC of E
  std::vector<PauliSymbol> outer_physical;  // P1 = deinterleaved L2
  std::vector<Syndrome> syndromes;          // per outer block
  std::vector<PauliSymbol> logical;         // L1, k symbols
};

struct DecodeResult {
  std::vector<PauliSymbol> logical;  // k symbols
  std::size_t iterations_used = 0;
};

struct FrameResult {
  std::vector<PauliSymbol> true_logical;
  std::vector<PauliSymbol> decoded_logical;
  std::size_t qubit_errors = 0;
  std::size_t iterations_used = 0;
};

enum class DecoderStage { kInner, kOuter };

/// Called after each half-iteration with the extrinsic messages just
/// produced: inner ones in the QURC-logical order, outer ones in the
/// QSBC-physical order.
using DecodeObserver = std::function<void(std::size_t iteration, DecoderStage, std::span<const SymbolDistribution>)>;

/// True iff two successive hard-decision vectors agree everywhere.
inline bool early_stop_check(std::span<const PauliSymbol> previous, std::span<const PauliSymbol> current) {
  return previous.size() == current.size() && std::equal(previous.begin(), previous.end(), current.begin());
}

inline double max_message_change(std::span<const SymbolDistribution> a, std::span<const SymbolDistribution> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t s = 0; s < kPauliAlphabet; ++s) worst = std::max(worst, std::abs(a[i][s] - b[i][s]));
  }
  return worst;
}

/// Serially concatenated QSBC (outer) and QURC (inner) with a random
/// interleaver, emulated in the Pauli frame.
class TurboScheme {
 public:
  explicit TurboScheme(const SchemeConfig& config)
      : config_(config), outer_(QsbcCode::for_rate(config.rate)), inner_(config.layout) {
    if (config.k == 0 || config.k % outer_.k() != 0) {
      throw InvalidInput("k=" + std::to_string(config.k) + " is not a positive multiple of the block size " +
                         std::to_string(outer_.k()));
    }
    if (config.iterations == 0) throw InvalidInput("iterations must be >= 1");
    blocks_ = config.k / outer_.k();
    interleaver_ = Interleaver::random(physical_qubits(), config.interleaver_seed);
  }

  const SchemeConfig& config() const { return config_; }
  const QsbcCode& outer() const { return outer_; }
  const QurcCode& inner() const { return inner_; }
  const Interleaver& interleaver() const { return interleaver_; }
  std::size_t blocks() const { return blocks_; }
  std::size_t logical_qubits() const { return config_.k; }
  std::size_t physical_qubits() const { return blocks_ * outer_.n(); }

  /// Quantum part: inverse QURC, deinterleave, inverse QSBC per block.
  /// `initial_memory` is the error on the QURC memory where the inverse sweep
  /// starts; the channel model keeps it at identity.
  FrameTruth truth_from_physical(std::span<const PauliSymbol> physical, const Interleaver& pi,
                                 MemoryState initial_memory = 0) const {
    if (physical.size() != physical_qubits()) throw InvalidInput("truth_from_physical: wrong frame length");
    FrameTruth t;
    t.physical.assign(physical.begin(), physical.end());
    t.inner_logical = inner_.propagate_inverse(physical, initial_memory).frames;
    t.outer_physical = pi.deinterleave(t.inner_logical);
    t.syndromes.resize(blocks_);
    t.logical.reserve(config_.k);
    const std::size_t n = outer_.n();
    for (std::size_t b = 0; b < blocks_; ++b) {
      const auto block = PauliOperator::from_symbols(std::span<const PauliSymbol>(t.outer_physical).subspan(b * n, n));
      const auto parts = outer_.split_error(block);
      t.syndromes[b] = parts.syndrome;
      for (std::size_t i = 0; i < outer_.k(); ++i) t.logical.push_back(parts.logical[i]);
    }
    return t;
  }

  FrameTruth truth_from_physical(std::span<const PauliSymbol> physical) const {
    return truth_from_physical(physical, interleaver_);
  }

  /// Classical part: iterative SISO exchange driven only by the syndromes and
  /// the channel's depolarizing probability.
  DecodeResult decode(std::span<const Syndrome> syndromes, double p, const Interleaver& pi,
                      const DecodeObserver& observer = {}) const {
    if (syndromes.size() != blocks_) throw InvalidInput("decode: one syndrome per outer block required");
    const std::size_t total = physical_qubits();
    const std::size_t n = outer_.n();
    const std::vector<SymbolDistribution> channel(total, channel_prior(p));
    std::vector<SymbolDistribution> inner_apriori(total, kUniformDistribution);
    std::vector<SymbolDistribution> outer_extrinsic(total);
    DecodeResult result;
    result.logical.assign(config_.k, PauliSymbol::I);
    std::vector<PauliSymbol> previous;

    for (std::size_t it = 1; it <= config_.iterations; ++it) {
      const auto inner_extrinsic = inner_siso_decode(inner_.trellis(), channel, inner_apriori);
      if (observer) observer(it, DecoderStage::kInner, inner_extrinsic);
      const auto outer_apriori = pi.deinterleave(inner_extrinsic);
      for (std::size_t b = 0; b < blocks_; ++b) {
        const auto r = outer_.decode(std::span<const SymbolDistribution>(outer_apriori).subspan(b * n, n), syndromes[b]);
        std::copy(r.extrinsic.begin(), r.extrinsic.end(), outer_extrinsic.begin() + static_cast<std::ptrdiff_t>(b * n));
        for (std::size_t i = 0; i < outer_.k(); ++i) result.logical[b * outer_.k() + i] = r.hard_decision[i];
      }
      if (observer) observer(it, DecoderStage::kOuter, outer_extrinsic);
      result.iterations_used = it;
      auto next_apriori = pi.interleave(outer_extrinsic);
      if (config_.early_stop && it > 1 && early_stop_check(previous, result.logical) &&
          max_message_change(inner_apriori, next_apriori) <= config_.early_stop_tolerance) {
        break;
      }
      previous = result.logical;
      inner_apriori = std::move(next_apriori);
    }
    return result;
  }

  DecodeResult decode(std::span<const Syndrome> syndromes, double p, const DecodeObserver& observer = {}) const {
    return decode(syndromes, p, interleaver_, observer);
  }

  /// Interleaver used for a given frame under the configured policy.
  Interleaver interleaver_for(std::uint64_t master_seed, std::uint64_t frame_index) const {
    if (!config_.per_frame_interleaver) return interleaver_;
    return Interleaver::random(physical_qubits(), mix64(master_seed ^ mix64(frame_index)));
  }

  FrameResult run_frame(std::span<const PauliSymbol> physical, double p, const Interleaver& pi,
                        const DecodeObserver& observer = {}) const {
    const auto truth = truth_from_physical(physical, pi);
    const auto decoded = decode(truth.syndromes, p, pi, observer);
    FrameResult out;
    out.true_logical = truth.logical;
    out.decoded_logical = decoded.logical;
    out.iterations_used = decoded.iterations_used;
    for (std::size_t i = 0; i < out.true_logical.size(); ++i) {
      out.qubit_errors += (out.true_logical[i] != out.decoded_logical[i]);
    }
    return out;
  }

  /// One Monte-Carlo trial whose randomness depends only on
  /// (master_seed, p, frame_index).
  FrameResult simulate_frame(double p, std::uint64_t master_seed, std::uint64_t frame_index,
                             const DecodeObserver& observer = {}) const {
    return run_frame(sample_physical(p, master_seed, frame_index), p, interleaver_for(master_seed, frame_index), observer);
  }

  std::vector<PauliSymbol> sample_physical(double p, std::uint64_t master_seed, std::uint64_t frame_index) const {
    const DepolarizingChannel channel(p);
    auto rng = RngStream::derive(master_seed ^ mix64(std::bit_cast<std::uint64_t>(p)), StreamTag::kChannel, frame_index);
    return channel.sample_sequence(physical_qubits(), rng);
  }

 private:
  SchemeConfig config_;
  QsbcCode outer_;
  QurcCode inner_;
  Interleaver interleaver_;
  std::size_t blocks_ = 0;
};

struct StopRule {
  std::size_t max_frames = 1000;
  std::size_t target_errors = 100;  // 0 disables the error target
};

struct SweepRecord {
  double rate = 0.0;
  std::size_t k = 0;
  double p = 0.0;
  std::size_t frames = 0;
  std::size_t qubit_errors = 0;
  std::size_t qubit_total = 0;
  double qber = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_iterations = 0.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 for 95%).
inline std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

/// Runs frames of one (scheme, p) point until the stop rule fires.
///
/// Frames are evaluated in parallel batches but folded in index order, and
/// the fold stops at the first index satisfying the rule, so the record does
/// not depend on the worker count.
inline SweepRecord run_point(const TurboScheme& scheme, double p, const StopRule& stop, std::uint64_t master_seed,
                             std::size_t workers = 1, const std::atomic<bool>* cancel = nullptr) {
  if (stop.max_frames == 0) throw InvalidInput("max_frames must be >= 1");
  workers = std::max<std::size_t>(1, workers);
  SweepRecord rec;
  rec.rate = scheme.outer().rate();
  rec.k = scheme.logical_qubits();
  rec.p = p;
  std::size_t iterations = 0;
  const std::size_t batch = std::max<std::size_t>(4 * workers, 8);
  std::vector<FrameResult> results;
  bool done = false;
  for (std::size_t start = 0; !done && start < stop.max_frames; start += batch) {
    const std::size_t count = std::min(batch, stop.max_frames - start);
    results.assign(count, FrameResult{});
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < count; i = next++) results[i] = scheme.simulate_frame(p, master_seed, start + i);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (const auto& r : results) {
      ++rec.frames;
      rec.qubit_errors += r.qubit_errors;
      rec.qubit_total += r.true_logical.size();
      iterations += r.iterations_used;
      if (stop.target_errors > 0 && rec.qubit_errors >= stop.target_errors) {
        done = true;
        break;
      }
    }
    if (cancel && cancel->load()) break;
  }
  rec.qber = rec.qubit_total ? static_cast<double>(rec.qubit_errors) / static_cast<double>(rec.qubit_total) : 0.0;
  std::tie(rec.ci_low, rec.ci_high) = wilson_interval(rec.qubit_errors, rec.qubit_total);
  rec.mean_iterations = rec.frames ? static_cast<double>(iterations) / static_cast<double>(rec.frames) : 0.0;
  return rec;
}

inline std::vector<SweepRecord> run_sweep(const TurboScheme& scheme, std::span<const double> p_list, const StopRule& stop,
                                          std::uint64_t master_seed, std::size_t workers = 1) {
  if (p_list.empty()) throw InvalidInput("run_sweep: empty p list");
  std::vector<SweepRecord> out;
  out.reserve(p_list.size());
  for (double p : p_list) out.push_back(run_point(scheme, p, stop, master_seed, workers));
  return out;
}

}  // namespace qturbo
