#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfqss {

/// Thrown when a parameter lies outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the detection gain is zero and the QBER is undefined.
class DegenerateChannelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Background error rate of dark counts.
inline constexpr double kBackgroundErrorRate = 0.5;

/// Detector and channel constants. Defaults are the ultra-low-loss fiber
/// setup: 56% detectors, 1e-8 dark counts, 0.167 dB/km, f = 1.16.
class SystemParams {
 public:
  struct Fields {
    double detector_efficiency = 0.56;
    double dark_count = 1e-8;  // per detector per slot
    double attenuation = 0.167;  // dB/km
    double ec_efficiency = 1.16;
    double misalignment = 0.02;
  };

  SystemParams() = default;
  /// Throws ParameterError naming the first field out of range.
  explicit SystemParams(const Fields& fields);

  double detector_efficiency() const { return f_.detector_efficiency; }
  double dark_count() const { return f_.dark_count; }
  double attenuation() const { return f_.attenuation; }
  double ec_efficiency() const { return f_.ec_efficiency; }
  double misalignment() const { return f_.misalignment; }
  const Fields& fields() const { return f_; }

  SystemParams with_misalignment(double e_d) const;

  friend bool operator==(const SystemParams& a, const SystemParams& b) {
    return a.f_.detector_efficiency == b.f_.detector_efficiency &&
           a.f_.dark_count == b.f_.dark_count && a.f_.attenuation == b.f_.attenuation &&
           a.f_.ec_efficiency == b.f_.ec_efficiency && a.f_.misalignment == b.f_.misalignment;
  }

 private:
  Fields f_{};
};

/// Returns the description of the first violated field, or nothing when all
/// fields are admissible.
std::optional<std::string> validate_params(const SystemParams::Fields& fields);

/// Per-run protocol settings for the Monte Carlo.
class ProtocolConfig {
 public:
  struct Fields {
    double intensity = 0.05;
    std::uint64_t n_pairs = 1000000;
    double distance = 100.0;  // km, total Alice-Bob
    std::uint64_t seed = 1;
    double test_fraction = 0.1;
    double qber_abort_threshold = 0.11;
  };

  ProtocolConfig() = default;
  explicit ProtocolConfig(const Fields& fields);

  double intensity() const { return f_.intensity; }
  std::uint64_t n_pairs() const { return f_.n_pairs; }
  double distance() const { return f_.distance; }
  std::uint64_t seed() const { return f_.seed; }
  double test_fraction() const { return f_.test_fraction; }
  double qber_abort_threshold() const { return f_.qber_abort_threshold; }
  const Fields& fields() const { return f_; }

 private:
  Fields f_{};
};

std::optional<std::string> validate_config(const ProtocolConfig::Fields& fields);

enum class Party : std::uint8_t { Alice, Bob };

/// Phase bits of one sender; bit b means phase b*pi. Alice's k-th pulse
/// (k = 1..N) sits at combined slot 2k-1, Bob's at slot 2k.
struct PulseTrain {
  std::vector<std::uint8_t> bits;
  Party owner = Party::Alice;
  double intensity = 0.0;

  std::size_t size() const { return bits.size(); }
  /// Bit carried at a combined slot owned by this sender (1-based).
  std::uint8_t at_slot(std::uint64_t slot) const;
};

enum class Outcome : std::uint8_t { NoClick, D1, D2, Double };

struct DetectionRecord {
  std::uint64_t slot = 0;  // combined slot j, 1-based
  Outcome outcome = Outcome::NoClick;
  std::optional<std::uint8_t> resolved_bit;  // D1 -> 0, D2 -> 1, Double -> coin
};

/// Post-sifting bits, aligned by retained slot. For every slot, c_bits holds
/// Charlie's bit after the odd-slot flip, so c = a ^ b in the noiseless case.
struct SiftedKeys {
  std::vector<std::uint64_t> slots;
  std::vector<std::uint8_t> a_bits;
  std::vector<std::uint8_t> b_bits;
  std::vector<std::uint8_t> c_bits;

  std::size_t size() const { return slots.size(); }
  bool consistent() const {
    return a_bits.size() == slots.size() && b_bits.size() == slots.size() &&
           c_bits.size() == slots.size();
  }
  std::size_t mismatches() const;
};

/// One row of a distance scan. Rates are bits per interior combined slot;
/// bounds are bits per channel use.
struct RatePoint {
  double distance = 0.0;
  double misalignment = 0.0;
  double mu_opt = 0.0;
  double gain = 0.0;
  double qber = 0.0;
  double rate = 0.0;
  double plob = 0.0;
  double repeaterless = 0.0;
  double dps_baseline = 0.0;
};

}  // namespace tfqss
