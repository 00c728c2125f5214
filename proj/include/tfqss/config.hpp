#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tfqss/core.hpp"

namespace tfqss {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings shared by all subcommands. The Monte Carlo and the attack table
/// use the first entry of e_d_list as the misalignment.
struct Config {
  SystemParams::Fields system{};
  std::vector<double> e_d_list{0.02, 0.04, 0.052};
  double mu = 0.05;
  std::vector<double> mu_list{0.01, 0.05, 0.1, 0.2};
  std::uint64_t n_pairs = 1000000;
  double distance = 100.0;
  double l_min = 0.0;
  double l_max = 700.0;
  double l_step = 10.0;
  std::uint64_t seed = 1;
  double test_fraction = 0.1;
  double qber_abort_threshold = 0.11;
  int grid_size = 128;
  int refine_iters = 60;
  unsigned threads = 1;
  std::string output;  // empty: standard output

  friend bool operator==(const Config&, const Config&);
};

/// Every recognised key, in serialization order.
inline constexpr std::array<std::string_view, 19> kConfigKeys = {
    "eta_d",  "p_d",   "alpha",  "f",      "e_d_list",      "mu",
    "mu_list", "n_pairs", "distance", "l_min", "l_max",      "l_step",
    "seed",   "test_fraction", "qber_abort_threshold", "grid_size", "refine_iters",
    "threads", "output"};

/// Defaults with threads set to the number of hardware threads.
Config default_config();

/// Sets one key from its textual value. Unknown keys and malformed values
/// throw ConfigError.
void set_config_value(Config& config, std::string_view key, std::string_view value);

/// Applies `key = value` lines on top of config. Blank lines and `#`
/// comments are ignored.
void apply_config_text(Config& config, std::string_view text);
Config parse_config(std::string_view text);
void apply_config_file(Config& config, const std::string& path);

std::string serialize_config(const Config& config);

SystemParams system_params(const Config& config);

/// Shortest text that round-trips the double exactly.
std::string format_exact(double value);

/// Scientific notation with 10 significant digits, locale independent.
std::string format_sci10(double value);

}  // namespace tfqss
