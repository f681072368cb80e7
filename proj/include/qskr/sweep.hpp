#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qskr/skr.hpp"

namespace qskr {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepAxis { sigma_x2, snr_db };

enum class VariedParam { beta, nu_ele, transmission, eta, tau, epsilon, lambda, altitude_km };

const char* to_string(SweepAxis axis);
const char* to_string(VariedParam p);

// Full fixed-parameter record for one sweep.  Defaults are the baseline
// used throughout: lambda=2, epsilon=0.005, beta=0.95, eta=0.606,
// nu_ele=0.041, T=1, vacuum-level thermal noise.
struct FixedParams {
  double lambda = 2.0;
  double epsilon = 0.005;
  double beta = 0.95;
  double eta = 0.606;
  double nu_ele = 0.041;
  double transmission = 1.0;
  double mu_x = 0.0;
  double mu_thermal = 0.0;
  double var_thermal = 1.0;
  int truncation_r = 0;  // 0 = automatic

  // Downlink optics for altitude sweeps.
  double waist_w0 = 0.15;
  double wavelength = 810e-9;
  double pointing_angle = 1e-6;
  double aperture_a = 0.5;

  // Beam geometry for fading-averaged sweeps (n_fading_draws > 0).
  double beam_w = 0.5;
  double pointing_sigma_r = 0.1;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::snr_db;
  std::vector<double> axis_grid;  // filled with -5..25 dB step 1 by default
  VariedParam varied_param = VariedParam::beta;
  std::vector<double> varied_values = {0.95};
  FixedParams fixed;
  long n_fading_draws = 0;  // 0 = fixed-T evaluation
  std::uint64_t seed = 42;
};

// One evaluated grid point.  Failed (unphysical) points keep their
// parameter columns, carry NaN results and an error message.
struct ResultRow {
  double snr_db = 0, sigma_x2 = 0, beta = 0, transmission = 0, tau = 0;
  double eta = 0, nu_ele = 0, epsilon = 0, lambda = 0, altitude_km = 0;
  double capacity_bits = 0, i_ab_bits = 0, chi_be_bits = 0, skr_bits = 0;
  bool secure_flag = false;
  bool error = false;
  std::string error_message;
};

// The default SNR axis, -5..25 dB in 1 dB steps.
std::vector<double> default_axis_grid();

// Named sweep setups for the six parameter studies (fig4a, fig4b, fig5a,
// fig5b, fig6a, fig6b, fig7a, fig7b); throws ConfigError on unknown names.
SweepSpec preset_spec(const std::string& name);

// key = value per line, '#' comments; unknown keys, malformed numbers and
// out-of-range values yield line-numbered ConfigError diagnostics.
SweepSpec parse_config_text(const std::string& text);
SweepSpec load_config(const std::string& path);

// Cross product axis_grid x varied_values, varied value major, axis minor.
// Deterministic for a given spec (including seed).
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

std::string result_csv_header();

// Writes <out_dir>/results.csv plus one two-column (snr_db, skr_bits)
// curve_<param>=<value>.dat per varied value.  Throws IoError when the
// directory is not writable.
void emit_outputs(const std::vector<ResultRow>& rows, const std::string& out_dir,
                  VariedParam varied);

}  // namespace qskr
