#include <cmath>

#include "doctest.h"
#include "tfqss/channel.hpp"
#include "tfqss/keyrate.hpp"

using namespace tfqss;

namespace {

SystemParams params_with(double eta_d, double p_d, double e_d) {
  SystemParams::Fields f;
  f.detector_efficiency = eta_d;
  f.dark_count = p_d;
  f.misalignment = e_d;
  return SystemParams(f);
}

}  // namespace

TEST_CASE("transmittance closed form") {
  const SystemParams p;
  CHECK(transmittance(0.0, p) == 0.56);
  // 0.56 * 10^-2.505, 40-digit reference.
  CHECK(transmittance(300.0, p) == doctest::Approx(1.750604445589414782e-3).epsilon(1e-13));
  CHECK(transmittance(0.0, params_with(1.0, 1e-8, 0.02)) == 1.0);
  CHECK_THROWS_AS(transmittance(-1.0, p), ParameterError);

  const auto ch = ChannelState::at_distance(100.0, p);
  CHECK(ch.transmittance > 0.0);
  CHECK(ch.transmittance <= p.detector_efficiency());
}

TEST_CASE("bright noiseless light always reaches the matching detector") {
  const SystemParams p = params_with(1.0, 0.0, 0.0);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(detect_slot(0, 50.0, 1.0, p, rng) == Outcome::D1);
    CHECK(detect_slot(1, 50.0, 1.0, p, rng) == Outcome::D2);
  }
}

TEST_CASE("no light and no dark counts never click") {
  const SystemParams p = params_with(0.56, 0.0, 0.02);
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) CHECK(detect_slot(i & 1, 0.1, 0.0, p, rng) == Outcome::NoClick);
}

TEST_CASE("noiseless detector never errs and never double-clicks") {
  const SystemParams p = params_with(1.0, 0.0, 0.0);
  Rng rng(11);
  int clicks = 0;
  for (int i = 0; i < 200000; ++i) {
    const std::uint8_t phase = static_cast<std::uint8_t>(i & 1);
    const Outcome o = detect_slot(phase, 0.45, 1.0, p, rng);
    CHECK(o != Outcome::Double);
    if (o != Outcome::NoClick) {
      ++clicks;
      CHECK(o == (phase == 0 ? Outcome::D1 : Outcome::D2));
    }
  }
  CHECK(clicks > 0);
}

TEST_CASE("empirical click fraction matches the exact click probability") {
  const SystemParams p;  // p_d = 1e-8
  const double mu = 0.1;
  const double eta = 0.5;
  // Independent reference: 1 - (1 - p_d)^2 e^{-0.05}.
  const double expected = 0.04877059452387438580;
  CHECK(slot_click_probability(mu, eta, p) == doctest::Approx(expected).epsilon(1e-13));

  const long n = 10000000;
  long clicks = 0;
  Rng rng(2024);
  for (long i = 0; i < n; ++i) {
    clicks += detect_slot(static_cast<std::uint8_t>(i & 1), mu, eta, p, rng) != Outcome::NoClick;
  }
  const double frac = static_cast<double>(clicks) / static_cast<double>(n);
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
  CHECK(std::abs(frac - expected) <= 3.0 * se);
}

TEST_CASE("exact click probability agrees with the linearized gain for small p_d") {
  for (double p_d : {0.0, 1e-10, 1e-8, 1e-7, 1e-6}) {
    const SystemParams p = params_with(0.56, p_d, 0.02);
    for (double mu : {1e-4, 0.01, 0.1, 0.3, 0.49}) {
      for (double eta : {1e-6, 1e-3, 0.1, 0.56}) {
        CHECK(std::abs(slot_click_probability(mu, eta, p) - gain(mu, eta, p_d)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("detect_slot is reproducible given the stream") {
  const SystemParams p;
  Rng a(77, 3), b(77, 3);
  for (int i = 0; i < 5000; ++i) {
    CHECK(detect_slot(1, 0.3, 0.4, p, a) == detect_slot(1, 0.3, 0.4, p, b));
  }
}
