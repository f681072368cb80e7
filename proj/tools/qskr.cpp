// qskr: secret-key-rate sweeps and one-shot evaluations for a CV-QKD link
// over a free-space satellite channel with hybrid Poisson+Gaussian noise.
//
//   qskr sweep [--config <path>] --out <dir> [--seed <u64>] [--preset <name>]
//   qskr point [--sigma_x2 <v>] [--lambda <v>] ...
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qskr/sweep.hpp"

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int run_sweep_command(const std::string& config_path, const std::string& out_dir,
                      const std::string& preset, bool seed_set, std::uint64_t seed) {
  qskr::SweepSpec spec;
  if (!config_path.empty()) {
    spec = qskr::load_config(config_path);
  }
  if (!preset.empty()) {
    const qskr::SweepSpec p = qskr::preset_spec(preset);
    spec.axis = p.axis;
    spec.axis_grid = p.axis_grid;
    spec.varied_param = p.varied_param;
    spec.varied_values = p.varied_values;
  }
  if (seed_set) spec.seed = seed;

  const auto rows = qskr::run_sweep(spec);
  qskr::emit_outputs(rows, out_dir, spec.varied_param);

  std::size_t errors = 0;
  for (const auto& r : rows) {
    if (r.error) ++errors;
  }
  std::cout << "wrote " << rows.size() << " rows (" << spec.varied_values.size()
            << " curves) to " << out_dir;
  if (errors > 0) std::cout << "; " << errors << " points failed (nan rows)";
  std::cout << "\n";
  return 0;
}

int run_point_command(const qskr::FixedParams& f, double sigma_x2) {
  const qskr::TransmittedSignal sig{f.mu_x, sigma_x2};
  const qskr::HybridNoiseParams noise{f.lambda, f.mu_thermal, f.var_thermal, f.truncation_r};
  const qskr::DetectorParams det{f.eta, f.nu_ele, f.epsilon, f.beta};
  const qskr::ChannelUse ch(f.transmission);
  const qskr::SkrBreakdown b = qskr::secret_key_rate(sig, ch, noise, det);

  std::cout << "snr_db=" << fmt(qskr::snr_db_of(sig, ch, noise)) << "\n"
            << "sigma_x2=" << fmt(sigma_x2) << "\n"
            << "T=" << fmt(f.transmission) << "\n"
            << "capacity_bits=" << fmt(b.capacity_bits) << "\n"
            << "i_ab_bits=" << fmt(b.i_ab_bits) << "\n"
            << "chi_be_bits=" << fmt(b.chi_be_bits) << "\n"
            << "skr_bits=" << fmt(b.skr_bits) << "\n"
            << "lambda1=" << fmt(b.spectrum.l1) << "\n"
            << "lambda2=" << fmt(b.spectrum.l2) << "\n"
            << "lambda3=" << fmt(b.spectrum.l3) << "\n"
            << "lambda4=" << fmt(b.spectrum.l4) << "\n"
            << "lambda5=" << fmt(b.spectrum.l5) << "\n"
            << "secure=" << (b.secure() ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CV-QKD secret key rate over a hybrid-noise satellite channel"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV/plot data");
  std::string config_path, out_dir, preset;
  std::uint64_t seed = 0;
  sweep->add_option("--config", config_path, "config file (key = value lines)");
  sweep->add_option("--out", out_dir, "output directory")->required();
  auto* seed_opt = sweep->add_option("--seed", seed, "seed override");
  sweep->add_option("--preset", preset,
                    "figure preset: fig4a fig4b fig5a fig5b fig6a fig6b fig7a fig7b");

  auto* point = app.add_subcommand("point", "evaluate one parameter set, print key=value lines");
  qskr::FixedParams f;
  double sigma_x2 = 1.0;
  point->add_option("--sigma_x2", sigma_x2, "modulation variance (shot-noise units)");
  point->add_option("--mu_x", f.mu_x, "signal mean");
  point->add_option("--lambda", f.lambda, "Poisson noise intensity");
  point->add_option("--epsilon", f.epsilon, "excess noise");
  point->add_option("--beta", f.beta, "reconciliation efficiency");
  point->add_option("--eta", f.eta, "detection efficiency");
  point->add_option("--nu_ele", f.nu_ele, "electronic noise");
  point->add_option("--T", f.transmission, "transmission coefficient");
  point->add_option("--mu_thermal", f.mu_thermal, "thermal noise mean");
  point->add_option("--var_thermal", f.var_thermal, "thermal noise variance");
  point->add_option("--truncation_r", f.truncation_r, "Poisson truncation (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) {
      return run_sweep_command(config_path, out_dir, preset, !seed_opt->empty(), seed);
    }
    return run_point_command(f, sigma_x2);
  } catch (const qskr::IoError& e) {
    std::cerr << "qskr: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qskr: " << e.what() << "\n";
    return 1;
  }
}
