#include <set>

#include "doctest.h"
#include "tfqss/core.hpp"
#include "tfqss/rng.hpp"

using namespace tfqss;

TEST_CASE("defaults are the ultra-low-loss setup and validate") {
  const SystemParams p;
  CHECK(p.detector_efficiency() == 0.56);
  CHECK(p.dark_count() == 1e-8);
  CHECK(p.attenuation() == 0.167);
  CHECK(p.ec_efficiency() == 1.16);
  CHECK_FALSE(validate_params(p.fields()).has_value());
}

TEST_CASE("validate_params reports the violated field") {
  SystemParams::Fields f;
  f.misalignment = 0.5;
  auto err = validate_params(f);
  REQUIRE(err.has_value());
  CHECK(err->find("e_d") != std::string::npos);
  CHECK(err->find("[0, 0.5)") != std::string::npos);
  CHECK_THROWS_AS(SystemParams{f}, ParameterError);

  f = {};
  f.attenuation = -1.0;
  err = validate_params(f);
  REQUIRE(err.has_value());
  CHECK(err->find("alpha") != std::string::npos);

  f = {};
  f.ec_efficiency = 0.9;
  CHECK(validate_params(f)->find("f =") == 0);
  f = {};
  f.dark_count = 1.0;
  CHECK(validate_params(f)->find("p_d") == 0);
  f = {};
  f.detector_efficiency = 1.01;
  CHECK(validate_params(f)->find("eta_d") == 0);
}

TEST_CASE("in-range fields read back exactly") {
  SystemParams::Fields f{0.9, 3e-7, 0.2, 1.05, 0.013};
  const SystemParams p(f);
  CHECK(p.detector_efficiency() == 0.9);
  CHECK(p.dark_count() == 3e-7);
  CHECK(p.attenuation() == 0.2);
  CHECK(p.ec_efficiency() == 1.05);
  CHECK(p.misalignment() == 0.013);
  CHECK(p.with_misalignment(0.04).misalignment() == 0.04);
  CHECK_THROWS_AS(p.with_misalignment(0.6), ParameterError);
}

TEST_CASE("protocol config bounds") {
  ProtocolConfig::Fields f;
  CHECK_NOTHROW(ProtocolConfig{f});
  f.intensity = 0.5;
  CHECK_THROWS_AS(ProtocolConfig{f}, ParameterError);
  f = {};
  f.n_pairs = 0;
  CHECK_THROWS_AS(ProtocolConfig{f}, ParameterError);
  f = {};
  f.test_fraction = 1.0;
  CHECK_THROWS_AS(ProtocolConfig{f}, ParameterError);
  f = {};
  f.distance = -3;
  CHECK_THROWS_AS(ProtocolConfig{f}, ParameterError);
}

TEST_CASE("pulse trains map onto interleaved slots") {
  PulseTrain a{{1, 0, 1}, Party::Alice, 0.1};
  PulseTrain b{{0, 0, 1}, Party::Bob, 0.1};
  CHECK(a.at_slot(1) == 1);
  CHECK(a.at_slot(3) == 0);
  CHECK(a.at_slot(5) == 1);
  CHECK(b.at_slot(2) == 0);
  CHECK(b.at_slot(6) == 1);
  CHECK_THROWS(a.at_slot(2));
  CHECK_THROWS(b.at_slot(1));
  CHECK_THROWS(a.at_slot(7));
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
  }
  firsts.insert(Rng(42, 7)());
  firsts.insert(c());
  firsts.insert(d());
  CHECK(firsts.size() == 3);

  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    CHECK(r.below(7) < 7);
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
