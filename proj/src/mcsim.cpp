#include "tfqss/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace tfqss {

PulseTrain prepare_train(Party owner, std::uint64_t n, double mu, Rng& rng) {
  if (n < 1) throw ParameterError("pulse train needs at least one pulse");
  PulseTrain train;
  train.owner = owner;
  train.intensity = mu;
  train.bits.resize(n);
  for (auto& bit : train.bits) bit = rng.bit();
  return train;
}

std::uint8_t ideal_phase_bit(const PulseTrain& a, const PulseTrain& b, std::uint64_t slot) {
  if (slot % 2 == 1) {
    return static_cast<std::uint8_t>(1 ^ a.at_slot(slot) ^ b.at_slot(slot + 1));
  }
  return static_cast<std::uint8_t>(b.at_slot(slot) ^ a.at_slot(slot + 1));
}

namespace {

DetectionRecord measure_slot(const PulseTrain& a, const PulseTrain& b,
                             const ChannelState& channel, std::uint64_t seed,
                             std::uint64_t slot) {
  Rng rng(seed, slot);
  DetectionRecord rec;
  rec.slot = slot;
  rec.outcome = detect_slot(ideal_phase_bit(a, b, slot), a.intensity, channel.transmittance,
                            channel.params, rng);
  switch (rec.outcome) {
    case Outcome::NoClick: break;
    case Outcome::D1: rec.resolved_bit = 0; break;
    case Outcome::D2: rec.resolved_bit = 1; break;
    case Outcome::Double: rec.resolved_bit = rng.bit(); break;
  }
  return rec;
}

void measure_range(const PulseTrain& a, const PulseTrain& b, const ChannelState& channel,
                   std::uint64_t seed, std::uint64_t first, std::uint64_t last, bool clicks_only,
                   std::vector<DetectionRecord>& out) {
  for (std::uint64_t j = first; j <= last; ++j) {
    DetectionRecord rec = measure_slot(a, b, channel, seed, j);
    if (!clicks_only || rec.outcome != Outcome::NoClick) out.push_back(rec);
  }
}

}  // namespace

std::vector<DetectionRecord> run_measurement(const PulseTrain& a, const PulseTrain& b,
                                             const ChannelState& channel, std::uint64_t seed,
                                             const MeasurementOptions& options) {
  if (a.size() != b.size()) throw ParameterError("pulse trains differ in length");
  if (a.owner != Party::Alice || b.owner != Party::Bob) {
    throw ParameterError("expected Alice's train first and Bob's second");
  }
  if (a.intensity != b.intensity) throw ParameterError("pulse trains differ in intensity");

  const std::uint64_t n_slots = interior_slot_count(a.size());
  if (n_slots == 0) return {};
  const std::uint64_t first = 2;
  const std::uint64_t last = 2 * a.size() - 1;

  const std::uint64_t n_threads =
      std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(n_slots / 4096, 1));
  if (n_threads == 1) {
    std::vector<DetectionRecord> out;
    if (!options.clicks_only) out.reserve(n_slots);
    measure_range(a, b, channel, seed, first, last, options.clicks_only, out);
    return out;
  }

  std::vector<std::vector<DetectionRecord>> parts(n_threads);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (n_slots + n_threads - 1) / n_threads;
    for (std::uint64_t t = 0; t < n_threads; ++t) {
      const std::uint64_t lo = first + t * chunk;
      const std::uint64_t hi = std::min(last, lo + chunk - 1);
      if (lo > hi) break;
      pool.emplace_back([&, t, lo, hi] {
        measure_range(a, b, channel, seed, lo, hi, options.clicks_only, parts[t]);
      });
    }
  }
  std::vector<DetectionRecord> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

SiftedKeys sift(const std::vector<DetectionRecord>& records, const PulseTrain& a,
                const PulseTrain& b) {
  const std::uint64_t last = a.size() >= 1 ? 2 * a.size() - 1 : 0;
  SiftedKeys keys;
  for (const DetectionRecord& rec : records) {
    if (rec.slot < 2 || rec.slot > last) throw std::out_of_range("record outside interior slots");
    if (rec.outcome == Outcome::NoClick || !rec.resolved_bit) continue;
    const std::uint64_t j = rec.slot;
    const bool odd = j % 2 == 1;
    const std::uint8_t a_bit = a.at_slot(odd ? j : j + 1);
    const std::uint8_t b_bit = b.at_slot(odd ? j + 1 : j);
    const std::uint8_t c_bit = static_cast<std::uint8_t>(*rec.resolved_bit ^ (odd ? 1 : 0));
    keys.slots.push_back(j);
    keys.a_bits.push_back(a_bit);
    keys.b_bits.push_back(b_bit);
    keys.c_bits.push_back(c_bit);
  }
  return keys;
}

QberEstimate estimate_qber(const SiftedKeys& sifted, double test_fraction,
                           double qber_abort_threshold, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ParameterError("test_fraction outside (0, 1)");
  }
  if (sifted.size() == 0) throw ParameterError("cannot estimate QBER on an empty key");

  const std::size_t len = sifted.size();
  const auto m = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(len), std::ceil(test_fraction * static_cast<double>(len))));

  // Partial Fisher-Yates: the first m entries become the sample.
  std::vector<std::size_t> order(len);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = i + static_cast<std::size_t>(rng.below(len - i));
    std::swap(order[i], order[k]);
  }
  std::vector<std::uint8_t> tested(len, 0);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t s = order[i];
    tested[s] = 1;
    errors += static_cast<std::size_t>(sifted.c_bits[s] != (sifted.a_bits[s] ^ sifted.b_bits[s]));
  }

  QberEstimate est;
  est.sampled = m;
  est.qber = static_cast<double>(errors) / static_cast<double>(m);
  est.abort = est.qber > qber_abort_threshold;
  for (std::size_t s = 0; s < len; ++s) {
    if (tested[s]) continue;
    est.remaining.slots.push_back(sifted.slots[s]);
    est.remaining.a_bits.push_back(sifted.a_bits[s]);
    est.remaining.b_bits.push_back(sifted.b_bits[s]);
    est.remaining.c_bits.push_back(sifted.c_bits[s]);
  }
  return est;
}

SimulationReport simulate(const ProtocolConfig& config, const SystemParams& params,
                          unsigned threads) {
  Rng alice_rng(config.seed(), kAliceStream);
  Rng bob_rng(config.seed(), kBobStream);
  const PulseTrain a = prepare_train(Party::Alice, config.n_pairs(), config.intensity(), alice_rng);
  const PulseTrain b = prepare_train(Party::Bob, config.n_pairs(), config.intensity(), bob_rng);
  const ChannelState channel = ChannelState::at_distance(config.distance(), params);

  const auto records = run_measurement(a, b, channel, config.seed(), {true, threads});

  SimulationReport report;
  report.n_pairs = config.n_pairs();
  report.interior_slots = interior_slot_count(config.n_pairs());
  report.detected_slots = records.size();
  report.double_clicks = static_cast<std::uint64_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return r.outcome == Outcome::Double; }));
  if (report.interior_slots > 0) {
    report.empirical_gain =
        static_cast<double>(report.detected_slots) / static_cast<double>(report.interior_slots);
  }

  SiftedKeys keys = sift(records, a, b);
  if (keys.size() == 0) {
    report.abort = true;
    return report;
  }
  report.empirical_qber =
      static_cast<double>(keys.mismatches()) / static_cast<double>(keys.size());

  Rng sample_rng(config.seed(), kSamplingStream);
  QberEstimate est =
      estimate_qber(keys, config.test_fraction(), config.qber_abort_threshold(), sample_rng);
  report.estimated_qber = est.qber;
  report.test_slots_consumed = est.sampled;
  report.sifted = std::move(est.remaining);
  report.abort = est.abort;
  return report;
}

}  // namespace tfqss
