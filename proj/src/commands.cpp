#include "tfqss/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tfqss/attacks.hpp"
#include "tfqss/keyrate.hpp"
#include "tfqss/mcsim.hpp"
#include "tfqss/optimize.hpp"

namespace tfqss {

namespace {

int with_output(const Config& config, std::ostream& fallback,
                const std::function<int(std::ostream&)>& body) {
  if (config.output.empty()) return body(fallback);
  std::ostringstream buffer;
  const int code = body(buffer);
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write output file '" + config.output + "'");
  file << buffer.str();
  if (!file.flush()) throw ConfigError("failed writing output file '" + config.output + "'");
  return code;
}

double z_score(double observed, double p, double trials) {
  if (trials <= 0.0) return 0.0;
  const double sd = std::sqrt(p * (1.0 - p) / trials);
  return sd > 0.0 ? (observed - p) / sd : 0.0;
}

}  // namespace

int cmd_scan(const Config& config, std::ostream& out) {
  if (config.e_d_list.empty()) throw ConfigError("at least one e_d required");
  const SystemParams params(config.system);
  std::vector<double> e_ds = config.e_d_list;
  std::sort(e_ds.begin(), e_ds.end());

  ScanOptions options;
  options.search = {config.grid_size, config.refine_iters};
  options.threads = std::max(1u, config.threads);
  const auto rows =
      scan_distances({config.l_min, config.l_max, config.l_step}, params, e_ds, options);

  return with_output(config, out, [&](std::ostream& os) {
    os << kScanHeader << '\n';
    for (const RatePoint& p : rows) {
      os << format_sci10(p.distance) << ',' << format_sci10(p.misalignment) << ','
         << format_sci10(p.mu_opt) << ',' << format_sci10(p.gain) << ','
         << format_sci10(p.qber) << ',' << format_sci10(p.rate) << ','
         << format_sci10(p.plob) << ',' << format_sci10(p.repeaterless) << ','
         << format_sci10(p.dps_baseline) << '\n';
    }
    return kExitOk;
  });
}

int cmd_simulate(const Config& config, std::ostream& out) {
  if (config.e_d_list.empty()) throw ConfigError("at least one e_d required");
  const SystemParams params = system_params(config);
  ProtocolConfig::Fields pf;
  pf.intensity = config.mu;
  pf.n_pairs = config.n_pairs;
  pf.distance = config.distance;
  pf.seed = config.seed;
  pf.test_fraction = config.test_fraction;
  pf.qber_abort_threshold = config.qber_abort_threshold;
  const ProtocolConfig protocol(pf);

  const SimulationReport report = simulate(protocol, params, std::max(1u, config.threads));

  const double eta = transmittance(protocol.distance(), params);
  const double q = gain(protocol.intensity(), eta, params.dark_count());
  const double e = qber(protocol.intensity(), eta, params.dark_count(), params.misalignment());
  const double z_gain =
      z_score(report.empirical_gain, q, static_cast<double>(report.interior_slots));
  const double z_qber =
      z_score(report.empirical_qber, e, static_cast<double>(report.detected_slots));

  return with_output(config, out, [&](std::ostream& os) {
    const auto row = [&](std::string_view label, const std::string& value) {
      os << "  " << std::left << std::setw(22) << label << value << '\n';
    };
    os << "Twin-field DPS secret sharing: Monte Carlo run\n";
    row("seed", std::to_string(protocol.seed()));
    row("pairs per sender", std::to_string(report.n_pairs));
    row("interior slots", std::to_string(report.interior_slots));
    row("distance [km]", format_sci10(protocol.distance()));
    row("intensity mu", format_sci10(protocol.intensity()));
    row("misalignment e_d", format_sci10(params.misalignment()));
    row("transmittance eta", format_sci10(eta));
    row("detected slots", std::to_string(report.detected_slots));
    row("double clicks", std::to_string(report.double_clicks));
    row("empirical gain", format_sci10(report.empirical_gain));
    row("analytic gain", format_sci10(q));
    row("gain z-score", format_sci10(z_gain));
    row("empirical QBER", format_sci10(report.empirical_qber));
    row("analytic QBER", format_sci10(e));
    row("QBER z-score", format_sci10(z_qber));
    row("test slots", std::to_string(report.test_slots_consumed));
    row("estimated QBER", format_sci10(report.estimated_qber));
    row("remaining key bits", std::to_string(report.sifted.size()));
    row("abort", report.abort ? "yes" : "no");
    os << "[report]\n"
       << "n_pairs=" << report.n_pairs << '\n'
       << "interior_slots=" << report.interior_slots << '\n'
       << "detected_slots=" << report.detected_slots << '\n'
       << "double_clicks=" << report.double_clicks << '\n'
       << "empirical_gain=" << format_exact(report.empirical_gain) << '\n'
       << "analytic_gain=" << format_exact(q) << '\n'
       << "z_gain=" << format_exact(z_gain) << '\n'
       << "empirical_qber=" << format_exact(report.empirical_qber) << '\n'
       << "analytic_qber=" << format_exact(e) << '\n'
       << "z_qber=" << format_exact(z_qber) << '\n'
       << "test_slots_consumed=" << report.test_slots_consumed << '\n'
       << "estimated_qber=" << format_exact(report.estimated_qber) << '\n'
       << "remaining_bits=" << report.sifted.size() << '\n'
       << "abort=" << (report.abort ? 1 : 0) << '\n';
    return report.abort ? kExitAbort : kExitOk;
  });
}

int cmd_attack(const Config& config, std::ostream& out) {
  if (config.e_d_list.empty()) throw ConfigError("at least one e_d required");
  if (config.mu_list.empty()) throw ConfigError("at least one mu required");
  const SystemParams params = system_params(config);
  std::vector<LeakageReport> reports;
  for (double mu : config.mu_list) reports.push_back(leakage_report(mu, config.distance, params));

  return with_output(config, out, [&](std::ostream& os) {
    os << kAttackHeader << '\n';
    for (const LeakageReport& r : reports) {
      os << format_sci10(r.mu) << ',' << format_sci10(config.distance) << ','
         << format_sci10(r.transmittance) << ',' << format_sci10(r.qber) << ','
         << format_sci10(r.beta) << ',' << format_sci10(r.internal_split) << ','
         << format_sci10(r.internal_general) << ',' << format_sci10(r.external) << ','
         << to_string(r.dominant) << '\n';
    }
    return kExitOk;
  });
}

}  // namespace tfqss
