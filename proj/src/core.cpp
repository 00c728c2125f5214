#include "tfqss/core.hpp"

#include <cmath>
#include <sstream>

namespace tfqss {

namespace {

std::string out_of_range(const char* name, double value, const char* range) {
  std::ostringstream os;
  os << name << " = " << value << " outside admissible range " << range;
  return os.str();
}

}  // namespace

std::optional<std::string> validate_params(const SystemParams::Fields& f) {
  if (!(f.detector_efficiency >= 0.0 && f.detector_efficiency <= 1.0)) {
    return out_of_range("eta_d", f.detector_efficiency, "[0, 1]");
  }
  if (!(f.dark_count >= 0.0 && f.dark_count < 1.0)) {
    return out_of_range("p_d", f.dark_count, "[0, 1)");
  }
  if (!(f.attenuation >= 0.0 && std::isfinite(f.attenuation))) {
    return out_of_range("alpha", f.attenuation, "[0, inf)");
  }
  if (!(f.ec_efficiency >= 1.0 && std::isfinite(f.ec_efficiency))) {
    return out_of_range("f", f.ec_efficiency, "[1, inf)");
  }
  if (!(f.misalignment >= 0.0 && f.misalignment < 0.5)) {
    return out_of_range("e_d", f.misalignment, "[0, 0.5)");
  }
  return std::nullopt;
}

SystemParams::SystemParams(const Fields& fields) : f_(fields) {
  if (auto err = validate_params(fields)) throw ParameterError(*err);
}

SystemParams SystemParams::with_misalignment(double e_d) const {
  Fields f = f_;
  f.misalignment = e_d;
  return SystemParams(f);
}

std::optional<std::string> validate_config(const ProtocolConfig::Fields& f) {
  if (!(f.intensity > 0.0 && f.intensity < 0.5)) {
    return out_of_range("mu", f.intensity, "(0, 0.5)");
  }
  if (f.n_pairs < 1) return std::string("n_pairs must be >= 1");
  if (!(f.distance >= 0.0 && std::isfinite(f.distance))) {
    return out_of_range("distance", f.distance, "[0, inf)");
  }
  if (!(f.test_fraction > 0.0 && f.test_fraction < 1.0)) {
    return out_of_range("test_fraction", f.test_fraction, "(0, 1)");
  }
  if (!(f.qber_abort_threshold >= 0.0 && f.qber_abort_threshold <= 1.0)) {
    return out_of_range("qber_abort_threshold", f.qber_abort_threshold, "[0, 1]");
  }
  return std::nullopt;
}

ProtocolConfig::ProtocolConfig(const Fields& fields) : f_(fields) {
  if (auto err = validate_config(fields)) throw ParameterError(*err);
}

std::uint8_t PulseTrain::at_slot(std::uint64_t slot) const {
  // Alice: slot 2k-1 -> index k-1; Bob: slot 2k -> index k-1.
  const bool odd = (slot % 2) == 1;
  if (slot == 0 || odd != (owner == Party::Alice)) {
    throw std::out_of_range("slot not owned by this sender");
  }
  const std::uint64_t index = (slot - 1) / 2;
  if (index >= bits.size()) throw std::out_of_range("slot beyond pulse train");
  return bits[index];
}

std::size_t SiftedKeys::mismatches() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    n += static_cast<std::size_t>(c_bits[i] != (a_bits[i] ^ b_bits[i]));
  }
  return n;
}

}  // namespace tfqss
