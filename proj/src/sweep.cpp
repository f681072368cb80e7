#include "qskr/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qskr {

namespace fs = std::filesystem;

const char* to_string(SweepAxis axis) {
  return axis == SweepAxis::sigma_x2 ? "sigma_x2" : "snr_db";
}

const char* to_string(VariedParam p) {
  switch (p) {
    case VariedParam::beta: return "beta";
    case VariedParam::nu_ele: return "nu_ele";
    case VariedParam::transmission: return "T";
    case VariedParam::eta: return "eta";
    case VariedParam::tau: return "tau";
    case VariedParam::epsilon: return "epsilon";
    case VariedParam::lambda: return "lambda";
    case VariedParam::altitude_km: return "altitude_km";
  }
  return "?";
}

std::vector<double> default_axis_grid() {
  std::vector<double> g;
  for (int db = -5; db <= 25; ++db) g.push_back(db);
  return g;
}

SweepSpec preset_spec(const std::string& name) {
  SweepSpec s;
  s.axis = SweepAxis::snr_db;
  s.axis_grid = default_axis_grid();
  if (name == "fig4a") {
    s.varied_param = VariedParam::beta;
    s.varied_values = {0.65, 0.75, 0.85, 0.95};
  } else if (name == "fig4b") {
    s.varied_param = VariedParam::nu_ele;
    s.varied_values = {0.020, 0.040, 0.060};
  } else if (name == "fig5a") {
    s.varied_param = VariedParam::transmission;
    s.varied_values = {0.6, 0.7, 0.8, 0.9, 1.0};
  } else if (name == "fig5b") {
    s.varied_param = VariedParam::eta;
    s.varied_values = {0.25, 0.45, 0.65, 0.85};
  } else if (name == "fig6a") {
    s.varied_param = VariedParam::tau;
    s.varied_values = {0.6, 0.7, 0.8, 0.9, 1.0};
  } else if (name == "fig6b") {
    s.varied_param = VariedParam::epsilon;
    s.varied_values = {0.005, 0.006, 0.007, 0.008, 0.009, 0.010};
  } else if (name == "fig7a") {
    s.varied_param = VariedParam::lambda;
    s.varied_values = {2, 3, 4, 5, 6};
  } else if (name == "fig7b") {
    s.varied_param = VariedParam::altitude_km;
    s.varied_values = {300, 500, 800, 1200, 2000};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return s;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& v, int line, const std::string& key) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(line, "malformed number '" + v + "' for key '" + key + "'");
  }
  if (used != v.size()) fail(line, "malformed number '" + v + "' for key '" + key + "'");
  return x;
}

// Either a comma list "a,b,c" or a range "lo:hi:step".
std::vector<double> parse_grid(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) fail(line, "range for '" + key + "' must be lo:hi:step");
    const double lo = parse_number(parts[0], line, key);
    const double hi = parse_number(parts[1], line, key);
    const double step = parse_number(parts[2], line, key);
    if (!(step > 0) || hi < lo) fail(line, "bad range for '" + key + "'");
    for (double x = lo; x <= hi + 1e-9 * step; x += step) out.push_back(x);
  } else {
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      out.push_back(parse_number(trim(item), line, key));
    }
  }
  if (out.empty()) fail(line, "empty list for '" + key + "'");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) fail(line, "'" + key + "' must be strictly increasing");
  }
  return out;
}

void check_unit_interval(double x, int line, const std::string& key) {
  if (!(x > 0.0) || x > 1.0) fail(line, key + " out of (0,1]");
}

void check_nonneg(double x, int line, const std::string& key) {
  if (!(x >= 0.0)) fail(line, key + " must be >= 0");
}

void check_positive(double x, int line, const std::string& key) {
  if (!(x > 0.0)) fail(line, key + " must be > 0");
}

VariedParam parse_varied_param(const std::string& v, int line) {
  for (VariedParam p : {VariedParam::beta, VariedParam::nu_ele, VariedParam::transmission,
                        VariedParam::eta, VariedParam::tau, VariedParam::epsilon,
                        VariedParam::lambda, VariedParam::altitude_km}) {
    if (v == to_string(p)) return p;
  }
  fail(line, "unknown varied_param '" + v + "'");
}

void validate_varied_values(const SweepSpec& s, int line) {
  for (double v : s.varied_values) {
    switch (s.varied_param) {
      case VariedParam::beta:
      case VariedParam::eta:
      case VariedParam::transmission:
      case VariedParam::tau:
        if (!(v > 0.0) || v > 1.0) {
          fail(line, std::string(to_string(s.varied_param)) + " value out of (0,1]");
        }
        break;
      case VariedParam::nu_ele:
      case VariedParam::epsilon:
      case VariedParam::lambda:
        if (!(v >= 0.0)) {
          fail(line, std::string(to_string(s.varied_param)) + " value must be >= 0");
        }
        break;
      case VariedParam::altitude_km:
        if (!(v > 0.0)) fail(line, "altitude_km value must be > 0");
        break;
    }
  }
}

}  // namespace

SweepSpec parse_config_text(const std::string& text) {
  SweepSpec s;
  s.axis_grid = default_axis_grid();
  int varied_values_line = 0;

  std::stringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");

    if (key == "preset") {
      const SweepSpec p = [&] {
        try {
          return preset_spec(value);
        } catch (const ConfigError& e) {
          fail(line_no, e.what());
        }
      }();
      s.axis = p.axis;
      s.axis_grid = p.axis_grid;
      s.varied_param = p.varied_param;
      s.varied_values = p.varied_values;
    } else if (key == "axis") {
      if (value == "sigma_x2") {
        s.axis = SweepAxis::sigma_x2;
      } else if (value == "snr_db") {
        s.axis = SweepAxis::snr_db;
      } else {
        fail(line_no, "axis must be sigma_x2 or snr_db");
      }
    } else if (key == "axis_grid") {
      s.axis_grid = parse_grid(value, line_no, key);
    } else if (key == "varied_param") {
      s.varied_param = parse_varied_param(value, line_no);
    } else if (key == "varied_values") {
      s.varied_values = parse_grid(value, line_no, key);
      varied_values_line = line_no;
    } else if (key == "lambda") {
      s.fixed.lambda = parse_number(value, line_no, key);
      check_nonneg(s.fixed.lambda, line_no, key);
    } else if (key == "epsilon") {
      s.fixed.epsilon = parse_number(value, line_no, key);
      check_nonneg(s.fixed.epsilon, line_no, key);
    } else if (key == "beta") {
      s.fixed.beta = parse_number(value, line_no, key);
      check_unit_interval(s.fixed.beta, line_no, key);
    } else if (key == "eta") {
      s.fixed.eta = parse_number(value, line_no, key);
      check_unit_interval(s.fixed.eta, line_no, key);
    } else if (key == "nu_ele") {
      s.fixed.nu_ele = parse_number(value, line_no, key);
      check_nonneg(s.fixed.nu_ele, line_no, key);
    } else if (key == "T") {
      s.fixed.transmission = parse_number(value, line_no, key);
      check_unit_interval(s.fixed.transmission, line_no, key);
    } else if (key == "mu_x") {
      s.fixed.mu_x = parse_number(value, line_no, key);
    } else if (key == "mu_thermal") {
      s.fixed.mu_thermal = parse_number(value, line_no, key);
    } else if (key == "var_thermal") {
      s.fixed.var_thermal = parse_number(value, line_no, key);
      check_positive(s.fixed.var_thermal, line_no, key);
    } else if (key == "truncation_r") {
      const double r = parse_number(value, line_no, key);
      if (r < 0 || r != std::floor(r)) fail(line_no, "truncation_r must be a count");
      s.fixed.truncation_r = static_cast<int>(r);
    } else if (key == "n_fading_draws") {
      const double n = parse_number(value, line_no, key);
      if (n < 0 || n != std::floor(n)) fail(line_no, "n_fading_draws must be a count");
      s.n_fading_draws = static_cast<long>(n);
    } else if (key == "seed") {
      const double v = parse_number(value, line_no, key);
      if (v < 0 || v != std::floor(v)) fail(line_no, "seed must be a nonnegative integer");
      s.seed = static_cast<std::uint64_t>(v);
    } else if (key == "waist_w0") {
      s.fixed.waist_w0 = parse_number(value, line_no, key);
      check_positive(s.fixed.waist_w0, line_no, key);
    } else if (key == "wavelength") {
      s.fixed.wavelength = parse_number(value, line_no, key);
      check_positive(s.fixed.wavelength, line_no, key);
    } else if (key == "pointing_angle") {
      s.fixed.pointing_angle = parse_number(value, line_no, key);
      check_nonneg(s.fixed.pointing_angle, line_no, key);
    } else if (key == "aperture_a") {
      s.fixed.aperture_a = parse_number(value, line_no, key);
      check_positive(s.fixed.aperture_a, line_no, key);
    } else if (key == "beam_w") {
      s.fixed.beam_w = parse_number(value, line_no, key);
      check_positive(s.fixed.beam_w, line_no, key);
    } else if (key == "pointing_sigma_r") {
      s.fixed.pointing_sigma_r = parse_number(value, line_no, key);
      check_nonneg(s.fixed.pointing_sigma_r, line_no, key);
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }

  validate_varied_values(s, varied_values_line);
  if (s.axis == SweepAxis::sigma_x2) {
    for (double x : s.axis_grid) {
      if (!(x > 0.0)) throw ConfigError("axis_grid: sigma_x2 values must be > 0");
    }
  }
  if (s.n_fading_draws > 0 && (s.varied_param == VariedParam::tau ||
                               s.varied_param == VariedParam::altitude_km)) {
    throw ConfigError("n_fading_draws requires a fixed-T varied parameter");
  }
  return s;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

struct ResolvedPoint {
  FixedParams params;
  double sigma_x2;
  double altitude_km;
};

ResolvedPoint resolve_point(const SweepSpec& spec, double varied_value, double axis_value) {
  ResolvedPoint p{spec.fixed, 0.0, 0.0};
  switch (spec.varied_param) {
    case VariedParam::beta: p.params.beta = varied_value; break;
    case VariedParam::nu_ele: p.params.nu_ele = varied_value; break;
    case VariedParam::transmission: p.params.transmission = varied_value; break;
    case VariedParam::eta: p.params.eta = varied_value; break;
    case VariedParam::epsilon: p.params.epsilon = varied_value; break;
    case VariedParam::lambda: p.params.lambda = varied_value; break;
    case VariedParam::tau:
      p.params.transmission = std::sqrt(varied_value);
      break;
    case VariedParam::altitude_km: {
      p.altitude_km = varied_value;
      LinkProfile profile{varied_value, p.params.waist_w0, p.params.wavelength,
                          p.params.pointing_angle, p.params.aperture_a};
      p.params.transmission = std::sqrt(altitude_to_tau(profile));
      break;
    }
  }
  if (spec.n_fading_draws > 0) {
    // Fading rows report the RMS transmission of the geometry.
    BeamGeometry g{p.params.aperture_a, p.params.beam_w, p.params.pointing_sigma_r};
    p.params.transmission = std::sqrt(expected_tau_squared(g));
  }
  if (spec.axis == SweepAxis::sigma_x2) {
    p.sigma_x2 = axis_value;
  } else {
    const double snr = std::pow(10.0, axis_value / 10.0);
    p.sigma_x2 = snr * (p.params.lambda + p.params.var_thermal) /
                 (p.params.transmission * p.params.transmission);
  }
  return p;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  if (spec.axis_grid.empty() || spec.varied_values.empty()) {
    throw ConfigError("run_sweep: empty grid");
  }
  std::vector<ResultRow> rows;
  rows.reserve(spec.axis_grid.size() * spec.varied_values.size());
  std::uint64_t point_index = 0;
  for (double v : spec.varied_values) {
    for (double x : spec.axis_grid) {
      ResultRow row;
      try {
        const ResolvedPoint p = resolve_point(spec, v, x);
        const TransmittedSignal sig{p.params.mu_x, p.sigma_x2};
        const HybridNoiseParams noise{p.params.lambda, p.params.mu_thermal,
                                      p.params.var_thermal, p.params.truncation_r};
        const DetectorParams det{p.params.eta, p.params.nu_ele, p.params.epsilon,
                                 p.params.beta};
        const ChannelUse ch(p.params.transmission);
        SkrBreakdown b;
        if (spec.n_fading_draws > 0) {
          const BeamGeometry g{p.params.aperture_a, p.params.beam_w,
                               p.params.pointing_sigma_r};
          b = fading_average_breakdown(sig, noise, det, g,
                                       static_cast<std::size_t>(spec.n_fading_draws),
                                       derive_seed(spec.seed, point_index));
        } else {
          b = secret_key_rate(sig, ch, noise, det);
        }
        row.snr_db = snr_db_of(sig, ch, noise);
        row.sigma_x2 = p.sigma_x2;
        row.beta = p.params.beta;
        row.transmission = p.params.transmission;
        row.tau = ch.tau();
        row.eta = p.params.eta;
        row.nu_ele = p.params.nu_ele;
        row.epsilon = p.params.epsilon;
        row.lambda = p.params.lambda;
        row.altitude_km = p.altitude_km;
        row.capacity_bits = b.capacity_bits;
        row.i_ab_bits = b.i_ab_bits;
        row.chi_be_bits = b.chi_be_bits;
        row.skr_bits = b.skr_bits;
        row.secure_flag = b.secure();
      } catch (const std::exception& e) {
        const double nan = std::nan("");
        row.snr_db = (spec.axis == SweepAxis::snr_db) ? x : nan;
        row.sigma_x2 = (spec.axis == SweepAxis::sigma_x2) ? x : nan;
        row.beta = spec.fixed.beta;
        row.transmission = spec.fixed.transmission;
        row.eta = spec.fixed.eta;
        row.nu_ele = spec.fixed.nu_ele;
        row.epsilon = spec.fixed.epsilon;
        row.lambda = spec.fixed.lambda;
        switch (spec.varied_param) {
          case VariedParam::beta: row.beta = v; break;
          case VariedParam::nu_ele: row.nu_ele = v; break;
          case VariedParam::transmission: row.transmission = v; break;
          case VariedParam::eta: row.eta = v; break;
          case VariedParam::epsilon: row.epsilon = v; break;
          case VariedParam::lambda: row.lambda = v; break;
          case VariedParam::tau: row.transmission = std::sqrt(v); break;
          case VariedParam::altitude_km: row.altitude_km = v; break;
        }
        row.tau = row.transmission * row.transmission;
        row.capacity_bits = row.i_ab_bits = row.chi_be_bits = row.skr_bits = nan;
        row.secure_flag = false;
        row.error = true;
        row.error_message = e.what();
      }
      ++point_index;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string result_csv_header() {
  return "snr_db,sigma_x2,beta,T,tau,eta,nu_ele,epsilon,lambda,altitude_km,"
         "capacity_bits,i_ab_bits,chi_be_bits,skr_bits,secure_flag";
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

double varied_column(const ResultRow& r, VariedParam p) {
  switch (p) {
    case VariedParam::beta: return r.beta;
    case VariedParam::nu_ele: return r.nu_ele;
    case VariedParam::transmission: return r.transmission;
    case VariedParam::eta: return r.eta;
    case VariedParam::tau: return r.tau;
    case VariedParam::epsilon: return r.epsilon;
    case VariedParam::lambda: return r.lambda;
    case VariedParam::altitude_km: return r.altitude_km;
  }
  return 0;
}

}  // namespace

void emit_outputs(const std::vector<ResultRow>& rows, const std::string& out_dir,
                  VariedParam varied) {
  if (rows.empty()) throw std::invalid_argument("emit_outputs: no rows");
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  const fs::path csv_path = fs::path(out_dir) / "results.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoError("cannot write '" + csv_path.string() + "'");
  csv << result_csv_header() << "\n";
  for (const auto& r : rows) {
    csv << fmt(r.snr_db) << ',' << fmt(r.sigma_x2) << ',' << fmt(r.beta) << ','
        << fmt(r.transmission) << ',' << fmt(r.tau) << ',' << fmt(r.eta) << ','
        << fmt(r.nu_ele) << ',' << fmt(r.epsilon) << ',' << fmt(r.lambda) << ','
        << fmt(r.altitude_km) << ',' << fmt(r.capacity_bits) << ',' << fmt(r.i_ab_bits)
        << ',' << fmt(r.chi_be_bits) << ',' << fmt(r.skr_bits) << ','
        << (r.secure_flag ? "true" : "false") << "\n";
  }
  csv.close();
  if (!csv) throw IoError("write failed for '" + csv_path.string() + "'");

  std::ofstream dat;
  double current = std::nan("");
  bool open = false;
  for (const auto& r : rows) {
    const double v = varied_column(r, varied);
    if (!open || v != current) {
      if (open) dat.close();
      const fs::path p = fs::path(out_dir) /
                         ("curve_" + std::string(to_string(varied)) + "=" + fmt_short(v) + ".dat");
      dat.open(p, std::ios::binary);
      if (!dat) throw IoError("cannot write '" + p.string() + "'");
      current = v;
      open = true;
    }
    dat << fmt(r.snr_db) << ' ' << fmt(r.skr_bits) << "\n";
  }
}

}  // namespace qskr
