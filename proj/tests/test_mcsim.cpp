#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tfqss/keyrate.hpp"
#include "tfqss/mcsim.hpp"

using namespace tfqss;

namespace {

SystemParams noiseless(double eta_d = 1.0) {
  SystemParams::Fields f;
  f.detector_efficiency = eta_d;
  f.dark_count = 0.0;
  f.misalignment = 0.0;
  return SystemParams(f);
}

std::pair<PulseTrain, PulseTrain> trains(std::uint64_t n, double mu, std::uint64_t seed) {
  Rng ra(seed, kAliceStream), rb(seed, kBobStream);
  return {prepare_train(Party::Alice, n, mu, ra), prepare_train(Party::Bob, n, mu, rb)};
}

SiftedKeys synthetic_key(std::size_t len, std::size_t errors) {
  SiftedKeys k;
  Rng rng(99);
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t a = rng.bit();
    const std::uint8_t b = rng.bit();
    k.slots.push_back(i + 2);
    k.a_bits.push_back(a);
    k.b_bits.push_back(b);
    k.c_bits.push_back(static_cast<std::uint8_t>(a ^ b ^ (i < errors ? 1 : 0)));
  }
  return k;
}

}  // namespace

TEST_CASE("prepare_train") {
  Rng r1(5, kAliceStream), r2(5, kAliceStream);
  const PulseTrain a = prepare_train(Party::Alice, 4, 0.1, r1);
  const PulseTrain b = prepare_train(Party::Alice, 4, 0.1, r2);
  CHECK(a.bits == b.bits);
  CHECK(a.size() == 4);

  Rng r3(6);
  const PulseTrain one = prepare_train(Party::Bob, 1, 0.1, r3);
  REQUIRE(one.size() == 1);
  CHECK(one.bits[0] <= 1);
  CHECK_THROWS_AS(prepare_train(Party::Bob, 0, 0.1, r3), ParameterError);

  Rng r4(7);
  const PulseTrain big = prepare_train(Party::Alice, 1000000, 0.1, r4);
  const double mean =
      std::accumulate(big.bits.begin(), big.bits.end(), 0.0) / static_cast<double>(big.size());
  CHECK(mean >= 0.497);
  CHECK(mean <= 0.503);
}

TEST_CASE("ideal phase bits follow the interferometer pairing") {
  // Alice 1,0 at slots 1,3; Bob 1,1 at slots 2,4.
  const PulseTrain a{{1, 0}, Party::Alice, 0.1};
  const PulseTrain b{{1, 1}, Party::Bob, 0.1};
  CHECK(ideal_phase_bit(a, b, 1) == (1 ^ 1 ^ 1));  // A1, B2 with the pi shift
  CHECK(ideal_phase_bit(a, b, 2) == (1 ^ 0));      // B2, A3
  CHECK(ideal_phase_bit(a, b, 3) == (1 ^ 0 ^ 1));  // A3, B4 with the pi shift
}

TEST_CASE("run_measurement boundaries and errors") {
  const SystemParams p;
  const ChannelState ch = ChannelState::at_distance(0.0, p);
  auto [a1, b1] = trains(1, 0.1, 1);
  CHECK(run_measurement(a1, b1, ch, 1).empty());

  auto [a, b] = trains(50, 0.1, 1);
  const auto all = run_measurement(a, b, ch, 1);
  REQUIRE(all.size() == 98);
  CHECK(all.front().slot == 2);
  CHECK(all.back().slot == 99);

  auto [c, d] = trains(49, 0.1, 1);
  CHECK_THROWS_AS(run_measurement(a, d, ch, 1), ParameterError);
  CHECK_THROWS_AS(run_measurement(b, a, ch, 1), ParameterError);
}

TEST_CASE("record outcomes and resolved bits agree") {
  const SystemParams p;
  const ChannelState ch = ChannelState::at_distance(0.0, p);
  auto [a, b] = trains(20000, 0.4, 3);
  for (const DetectionRecord& r : run_measurement(a, b, ch, 3)) {
    CHECK(r.resolved_bit.has_value() == (r.outcome != Outcome::NoClick));
    if (r.outcome == Outcome::D1) CHECK(*r.resolved_bit == 0);
    if (r.outcome == Outcome::D2) CHECK(*r.resolved_bit == 1);
  }
  // Same inputs, same records.
  const auto x = run_measurement(a, b, ch, 3, {true, 1});
  const auto y = run_measurement(a, b, ch, 3, {true, 1});
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i].slot == y[i].slot);
    CHECK(x[i].resolved_bit == y[i].resolved_bit);
  }
}

TEST_CASE("threaded measurement matches serial") {
  const SystemParams p;
  const ChannelState ch = ChannelState::at_distance(10.0, p);
  auto [a, b] = trains(100000, 0.2, 8);
  const auto serial = run_measurement(a, b, ch, 8, {true, 1});
  const auto threaded = run_measurement(a, b, ch, 8, {true, 5});
  REQUIRE(serial.size() == threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].slot == threaded[i].slot);
    CHECK(serial[i].outcome == threaded[i].outcome);
    CHECK(serial[i].resolved_bit == threaded[i].resolved_bit);
  }
}

TEST_CASE("noiseless sifting satisfies the three-party correlation on both parities") {
  for (double eta_d : {1.0, 0.3}) {
    const SystemParams p = noiseless(eta_d);
    const ChannelState ch = ChannelState::at_distance(20.0, p);
    auto [a, b] = trains(50000, 0.3, 21);
    const auto records = run_measurement(a, b, ch, 21);
    const SiftedKeys k = sift(records, a, b);
    REQUIRE(k.consistent());
    REQUIRE(k.size() > 100);
    std::size_t odd = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      CHECK(k.c_bits[i] == (k.a_bits[i] ^ k.b_bits[i]));
      odd += k.slots[i] % 2;
    }
    CHECK(odd > 0);
    CHECK(odd < k.size());
    CHECK(k.mismatches() == 0);

    // Slots without a click are absent.
    std::size_t clicked = 0;
    for (const auto& r : records) clicked += r.outcome != Outcome::NoClick;
    CHECK(k.size() == clicked);
  }
}

TEST_CASE("sifting agrees with the sequential-modulation labeling") {
  // Embed the trains as sequential phase sequences: A' modulates only odd
  // slots, B' only even ones. The sequential correlation
  // C'_j = A'_j ^ A'_{j+1} ^ B'_j ^ B'_{j+1} must equal the sifted a ^ b.
  const SystemParams p;
  const ChannelState ch = ChannelState::at_distance(0.0, p);
  auto [a, b] = trains(5000, 0.4, 33);
  const std::uint64_t slots = 2 * a.size();
  std::vector<std::uint8_t> ap(slots + 2, 0), bp(slots + 2, 0);
  for (std::uint64_t k = 1; k <= a.size(); ++k) {
    ap[2 * k - 1] = a.bits[k - 1];
    bp[2 * k] = b.bits[k - 1];
  }
  const SiftedKeys keys = sift(run_measurement(a, b, ch, 33), a, b);
  REQUIRE(keys.size() > 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::uint64_t j = keys.slots[i];
    const std::uint8_t sequential = ap[j] ^ ap[j + 1] ^ bp[j] ^ bp[j + 1];
    CHECK(sequential == (keys.a_bits[i] ^ keys.b_bits[i]));
  }
}

TEST_CASE("sift rejects slots outside the interior") {
  const PulseTrain a{{0, 1, 0}, Party::Alice, 0.1};
  const PulseTrain b{{1, 1, 0}, Party::Bob, 0.1};
  DetectionRecord bad{1, Outcome::D1, 0};
  CHECK_THROWS(sift({bad}, a, b));
  bad.slot = 6;
  CHECK_THROWS(sift({bad}, a, b));
  const DetectionRecord none{3, Outcome::NoClick, std::nullopt};
  CHECK(sift({none}, a, b).size() == 0);
}

TEST_CASE("estimate_qber") {
  Rng rng(1);
  const SiftedKeys clean = synthetic_key(1000, 0);
  QberEstimate est = estimate_qber(clean, 0.3, 0.11, rng);
  CHECK(est.qber == 0.0);
  CHECK_FALSE(est.abort);
  CHECK(est.sampled == 300);
  CHECK(est.remaining.size() == 700);

  const SiftedKeys wrong = synthetic_key(1000, 1000);
  est = estimate_qber(wrong, 0.25, 0.11, rng);
  CHECK(est.qber == 1.0);
  CHECK(est.abort);

  CHECK(estimate_qber(synthetic_key(10, 0), 0.01, 0.1, rng).sampled == 1);
  CHECK_THROWS_AS(estimate_qber(SiftedKeys{}, 0.1, 0.1, rng), ParameterError);
  CHECK_THROWS_AS(estimate_qber(clean, 0.0, 0.1, rng), ParameterError);
}

TEST_CASE("planted 5% mismatches are recovered") {
  SiftedKeys key = synthetic_key(1000000, 50000);
  Rng rng(123);
  const QberEstimate est = estimate_qber(key, 0.5, 0.11, rng);
  CHECK(est.sampled == 500000);
  CHECK(est.qber >= 0.047);
  CHECK(est.qber <= 0.053);
}

TEST_CASE("sampling leaves survivors untouched") {
  const SiftedKeys key = synthetic_key(5000, 400);
  Rng rng(77);
  const QberEstimate est = estimate_qber(key, 0.4, 0.5, rng);
  REQUIRE(est.remaining.consistent());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < est.remaining.size(); ++i) {
    while (key.slots[cursor] != est.remaining.slots[i]) ++cursor;
    CHECK(est.remaining.a_bits[i] == key.a_bits[cursor]);
    CHECK(est.remaining.b_bits[i] == key.b_bits[cursor]);
    CHECK(est.remaining.c_bits[i] == key.c_bits[cursor]);
  }
  CHECK(est.remaining.size() + est.sampled == key.size());
}

TEST_CASE("simulation statistics track the closed forms") {
  ProtocolConfig::Fields f;
  f.intensity = 0.1;
  f.n_pairs = 2000000;
  f.distance = 100.0;
  f.seed = 5;
  const ProtocolConfig cfg(f);
  const SystemParams p;
  const SimulationReport rep = simulate(cfg, p);

  const double eta = transmittance(100.0, p);
  const double q = gain(0.1, eta, p.dark_count());
  const double e = qber(0.1, eta, p.dark_count(), p.misalignment());
  CHECK(rep.interior_slots == 2 * f.n_pairs - 2);
  const double sg = std::sqrt(q * (1 - q) / static_cast<double>(rep.interior_slots));
  CHECK(std::abs(rep.empirical_gain - q) <= 3 * sg);
  const double se = std::sqrt(e * (1 - e) / static_cast<double>(rep.detected_slots));
  CHECK(std::abs(rep.empirical_qber - e) <= 3 * se);
  CHECK_FALSE(rep.abort);
  CHECK(rep.sifted.size() + rep.test_slots_consumed == rep.detected_slots);

  const SimulationReport again = simulate(cfg, p, 3);
  CHECK(again.detected_slots == rep.detected_slots);
  CHECK(again.sifted.c_bits == rep.sifted.c_bits);
  CHECK(again.estimated_qber == rep.estimated_qber);
}

TEST_CASE("a single pair gives an empty, aborted run") {
  ProtocolConfig::Fields f;
  f.n_pairs = 1;
  const SimulationReport rep = simulate(ProtocolConfig(f), SystemParams{});
  CHECK(rep.interior_slots == 0);
  CHECK(rep.detected_slots == 0);
  CHECK(rep.abort);
}
