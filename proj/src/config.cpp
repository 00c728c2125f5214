#include "tfqss/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

namespace tfqss {

bool operator==(const Config& a, const Config& b) {
  return SystemParams(a.system) == SystemParams(b.system) && a.e_d_list == b.e_d_list &&
         a.mu == b.mu && a.mu_list == b.mu_list && a.n_pairs == b.n_pairs &&
         a.distance == b.distance && a.l_min == b.l_min && a.l_max == b.l_max &&
         a.l_step == b.l_step && a.seed == b.seed && a.test_fraction == b.test_fraction &&
         a.qber_abort_threshold == b.qber_abort_threshold && a.grid_size == b.grid_size &&
         a.refine_iters == b.refine_iters && a.threads == b.threads && a.output == b.output;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad_value(key, text);
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad_value(key, text);
  return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_exact(values[i]);
  }
  return s;
}

}  // namespace

Config default_config() {
  Config c;
  c.threads = std::max(1u, std::thread::hardware_concurrency());
  return c;
}

void set_config_value(Config& c, std::string_view key, std::string_view value) {
  if (key == "eta_d") c.system.detector_efficiency = parse_double(key, value);
  else if (key == "p_d") c.system.dark_count = parse_double(key, value);
  else if (key == "alpha") c.system.attenuation = parse_double(key, value);
  else if (key == "f") c.system.ec_efficiency = parse_double(key, value);
  else if (key == "e_d_list") c.e_d_list = parse_list(key, value);
  else if (key == "mu") c.mu = parse_double(key, value);
  else if (key == "mu_list") c.mu_list = parse_list(key, value);
  else if (key == "n_pairs") c.n_pairs = parse_int<std::uint64_t>(key, value);
  else if (key == "distance") c.distance = parse_double(key, value);
  else if (key == "l_min") c.l_min = parse_double(key, value);
  else if (key == "l_max") c.l_max = parse_double(key, value);
  else if (key == "l_step") c.l_step = parse_double(key, value);
  else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, value);
  else if (key == "test_fraction") c.test_fraction = parse_double(key, value);
  else if (key == "qber_abort_threshold") c.qber_abort_threshold = parse_double(key, value);
  else if (key == "grid_size") c.grid_size = parse_int<int>(key, value);
  else if (key == "refine_iters") c.refine_iters = parse_int<int>(key, value);
  else if (key == "threads") c.threads = parse_int<unsigned>(key, value);
  else if (key == "output") c.output = std::string(trim(value));
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(Config& config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Config parse_config(std::string_view text) {
  Config c = default_config();
  apply_config_text(c, text);
  return c;
}

void apply_config_file(Config& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(config, ss.str());
}

std::string serialize_config(const Config& c) {
  std::ostringstream os;
  os << "eta_d = " << format_exact(c.system.detector_efficiency) << '\n'
     << "p_d = " << format_exact(c.system.dark_count) << '\n'
     << "alpha = " << format_exact(c.system.attenuation) << '\n'
     << "f = " << format_exact(c.system.ec_efficiency) << '\n'
     << "e_d_list = " << join(c.e_d_list) << '\n'
     << "mu = " << format_exact(c.mu) << '\n'
     << "mu_list = " << join(c.mu_list) << '\n'
     << "n_pairs = " << c.n_pairs << '\n'
     << "distance = " << format_exact(c.distance) << '\n'
     << "l_min = " << format_exact(c.l_min) << '\n'
     << "l_max = " << format_exact(c.l_max) << '\n'
     << "l_step = " << format_exact(c.l_step) << '\n'
     << "seed = " << c.seed << '\n'
     << "test_fraction = " << format_exact(c.test_fraction) << '\n'
     << "qber_abort_threshold = " << format_exact(c.qber_abort_threshold) << '\n'
     << "grid_size = " << c.grid_size << '\n'
     << "refine_iters = " << c.refine_iters << '\n'
     << "threads = " << c.threads << '\n'
     << "output = " << c.output << '\n';
  return os.str();
}

SystemParams system_params(const Config& config) {
  SystemParams::Fields f = config.system;
  if (!config.e_d_list.empty()) f.misalignment = config.e_d_list.front();
  return SystemParams(f);
}

std::string format_exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_sci10(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 9);
  return std::string(buf, res.ptr);
}

}  // namespace tfqss
