#pragma once

#include <cstdint>
#include <vector>

#include "tfqss/channel.hpp"
#include "tfqss/core.hpp"
#include "tfqss/rng.hpp"

namespace tfqss {

/// N independent fair phase bits for one sender.
PulseTrain prepare_train(Party owner, std::uint64_t n, double mu, Rng& rng);

/// Interior combined slots are j = 2 .. 2N-1; there are 2N-2 of them.
inline std::uint64_t interior_slot_count(std::uint64_t n_pairs) {
  return n_pairs >= 1 ? 2 * n_pairs - 2 : 0;
}

/// Ideal differential-phase bit at combined slot j. Slot j interferes pulse
/// j (long arm) with pulse j+1 (short arm); Alice's long-arm pulses carry an
/// extra pi, so odd slots read 1 ^ A_{2k-1} ^ B_{2k} and even slots read
/// B_{2k} ^ A_{2k+1}.
std::uint8_t ideal_phase_bit(const PulseTrain& a, const PulseTrain& b, std::uint64_t slot);

struct MeasurementOptions {
  bool clicks_only = false;
  unsigned threads = 1;
};

/// One record per interior slot (or per clicked slot with clicks_only).
/// Slot j draws from Rng(seed, j), so the result does not depend on threads.
std::vector<DetectionRecord> run_measurement(const PulseTrain& a, const PulseTrain& b,
                                             const ChannelState& channel, std::uint64_t seed,
                                             const MeasurementOptions& options = {});

/// Keeps clicked slots. c_bits are Charlie's bits after flipping odd slots.
SiftedKeys sift(const std::vector<DetectionRecord>& records, const PulseTrain& a,
                const PulseTrain& b);

struct QberEstimate {
  double qber = 0.0;
  std::size_t sampled = 0;
  SiftedKeys remaining;
  bool abort = false;
};

/// Publicly compares ceil(test_fraction * len) randomly chosen slots, drawn
/// without replacement, and removes them from the key.
QberEstimate estimate_qber(const SiftedKeys& sifted, double test_fraction,
                           double qber_abort_threshold, Rng& rng);

struct SimulationReport {
  std::uint64_t n_pairs = 0;
  std::uint64_t interior_slots = 0;
  std::uint64_t detected_slots = 0;
  std::uint64_t double_clicks = 0;
  double empirical_gain = 0.0;  // detected / (2N - 2)
  double empirical_qber = 0.0;  // over every sifted slot
  double estimated_qber = 0.0;  // over the public test sample
  std::uint64_t test_slots_consumed = 0;
  SiftedKeys sifted;  // test slots removed
  bool abort = false;
};

/// Steps 1-3 end to end: preparation, measurement, sifting, QBER check.
SimulationReport simulate(const ProtocolConfig& config, const SystemParams& params,
                          unsigned threads = 1);

}  // namespace tfqss
