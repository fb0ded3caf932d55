// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "emcap/bounds.hpp"
#include "emcap/errors.hpp"
#include "emcap/mercer.hpp"
#include "emcap/numerics/random.hpp"
#include "emcap/sampled.hpp"
#include "emcap/spectrum.hpp"
#include "emcap/waterfill.hpp"

namespace emcap::cli {
namespace {

constexpr double kLn2 = std::numbers::ln2;

class CsvDocument {
 public:
  void comment(const std::string& line) { text_ << "# " << line << '\n'; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << cells[i];
    text_ << '\n';
  }
  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

std::string list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + format_number(values[i]);
  return out;
}

std::string kv(const std::string& key, double value) { return key + "=" + format_number(value); }

void emit(const CsvDocument& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.str();
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw DomainError("cannot open " + tmp.string() + " for writing");
    file << text;
    file.close();
    if (!file) throw DomainError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DomainError("cannot move output into place at " + path + ": " + ec.message());
  }
}

std::vector<double> parse_sweep(const std::string& spec) {
  double a = 0.0;
  double b = 0.0;
  double step = 0.0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail) != 3) {
    throw DomainError("length sweep must be start:stop:step, got '" + spec + "'");
  }
  if (!(a > 0.0) || !(step > 0.0) || !(b >= a) || !std::isfinite(b)) {
    throw DomainError("length sweep needs 0 < start <= stop and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw DomainError("length sweep has more than 100000 points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = a + step * static_cast<double>(i);
  return out;
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumConfig {
  std::vector<double> wavelengths{5.0};
  std::vector<double> distances{1.0};
  std::size_t samples = 0;
  std::string output;
};

int cmd_spectrum(const SpectrumConfig& cfg, std::ostream& out) {
  CsvDocument doc;
  doc.comment("emcap spectrum");
  doc.comment("config wavelength=" + list(cfg.wavelengths) + " distance=" + list(cfg.distances) +
              " samples=" + (cfg.samples ? std::to_string(cfg.samples) : std::string("auto")));
  doc.comment("units kappa rad/m; G is the wavenumber spectrum (1/sqrt(2 pi)) int g(x) exp(j kappa x) dx");
  doc.row({"kappa", "re_G", "im_G", "abs_G"});
  for (double wavelength : cfg.wavelengths) {
    for (double distance : cfg.distances) {
      const PhysicalScene scene(wavelength, distance);
      const auto grid = spectrum::WavenumberGrid::for_scene(scene, cfg.samples);
      const auto g = spectrum::green_spectrum(scene, grid);
      doc.comment("block " + kv("wavelength", wavelength) + " " + kv("distance", distance) + " " +
                  kv("spacing", grid.spacing()) + " points=" + std::to_string(grid.size()));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto z = g.values[i];
        doc.row({format_number(grid[i]), format_number(z.real()), format_number(z.imag()),
                 format_number(std::abs(z))});
      }
      const auto lobes = spectrum::lobe_summary(g);
      doc.comment("summary " + kv("wavelength", wavelength) + " " + kv("distance", distance) + " " +
                  kv("side_lobe_ratio", lobes.side_lobe_ratio) + " " + kv("peak_abs_G", lobes.peak) + " " +
                  kv("main_lobe_lo", grid[lobes.main_lo]) + " " + kv("main_lobe_hi", grid[lobes.main_hi]) + " " +
                  kv("energy", spectrum::spectral_energy(g)));
    }
  }
  emit(doc, cfg.output, out);
  return kOk;
}

// ---- waterfill --------------------------------------------------------------

struct WaterfillConfig {
  double wavelength = 5.0;
  double distance = 1.0;
  double noise_ssd = 90.0;
  double power = 3.0;
  std::size_t samples = 0;
  std::string output;
};

int cmd_waterfill(const WaterfillConfig& cfg, std::ostream& out) {
  const PhysicalScene scene(cfg.wavelength, cfg.distance);
  const auto grid = spectrum::WavenumberGrid::for_scene(scene, cfg.samples);
  const auto g = spectrum::green_spectrum(scene, grid);
  const auto noise_eq = waterfill::equivalent_noise(waterfill::NoiseModel::white(cfg.noise_ssd), g);
  const auto result = waterfill::waterfill_ssd(noise_eq, cfg.power);

  CsvDocument doc;
  doc.comment("emcap waterfill");
  doc.comment("config " + kv("wavelength", cfg.wavelength) + " " + kv("distance", cfg.distance) + " " +
              kv("noise_ssd", cfg.noise_ssd) + " " + kv("power", cfg.power) +
              " samples=" + (cfg.samples ? std::to_string(cfg.samples) : std::string("auto")));
  doc.comment("units kappa rad/m; densities per rad/m; capacity nats/m and bits/m");
  doc.row({"kappa", "s_nprime", "s_j", "water_level"});
  double support_lo = std::numeric_limits<double>::infinity();
  double support_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double sj = result.source.values[i];
    if (sj > 0.0) {
      support_lo = std::min(support_lo, grid[i]);
      support_hi = std::max(support_hi, grid[i]);
    }
    doc.row({format_number(grid[i]), format_number(noise_eq.values[i]), format_number(sj),
             format_number(result.water_level)});
  }
  doc.comment(kv("capacity_nats_per_m", result.capacity));
  doc.comment(kv("capacity_bits_per_m", result.capacity / kLn2));
  doc.comment(kv("allocated_power", result.allocated_power));
  doc.comment(kv("water_level", result.water_level));
  doc.comment(kv("lagrange_multiplier", result.lagrange_multiplier));
  doc.comment(kv("support_kappa_lo", support_lo) + " " + kv("support_kappa_hi", support_hi));
  emit(doc, cfg.output, out);
  return kOk;
}

// ---- mercer -----------------------------------------------------------------

struct MercerConfig {
  double alpha = 1.0;
  double power = 1.0;
  double n0 = 1.0;
  std::string length_sweep = "1:32:1";
  std::string method = "closed";
  double tail_tolerance = 1e-2;
  std::size_t nystrom_points = 0;
  bool table = false;
  double length = 1.0;
  std::size_t modes = 20;
  std::string output;
};

std::size_t auto_nystrom_points(double alpha, double length) {
  const double n = std::max(256.0, std::ceil(32.0 * alpha * length));
  if (n > 4096) throw DomainError("nystrom grid would exceed 4096 points; pass --nystrom-points");
  return static_cast<std::size_t>(n);
}

int cmd_mercer(const MercerConfig& cfg, std::ostream& out) {
  const bool nystrom = cfg.method == "nystrom";
  CsvDocument doc;
  doc.comment("emcap mercer");
  std::string config = "config " + kv("alpha", cfg.alpha) + " " + kv("power", cfg.power) + " " + kv("n0", cfg.n0) +
                       " method=" + cfg.method;
  if (cfg.table) {
    config += " table=true " + kv("length", cfg.length) + " modes=" + std::to_string(cfg.modes);
  } else {
    config += " length_sweep=" + cfg.length_sweep + " " + kv("tail_tolerance", cfg.tail_tolerance);
  }
  if (nystrom) {
    config += " nystrom_points=" + (cfg.nystrom_points ? std::to_string(cfg.nystrom_points) : std::string("auto"));
  }
  doc.comment(config);
  doc.comment("kernel P exp(-alpha |r - r'|) on [0, L]; white noise density n0/2; the frequency equation's "
              "length is the destination length L");

  auto kernel = [&](double r, double r2) { return cfg.power * std::exp(-cfg.alpha * std::abs(r - r2)); };

  if (cfg.table) {
    mercer::ExponentialKernelParams params{cfg.power, cfg.alpha, cfg.length};
    params.validate();
    if (cfg.modes < 1) throw DomainError("--modes must be at least 1");
    const auto spec = nystrom ? mercer::nystrom_modes(kernel, cfg.length,
                                                      cfg.nystrom_points ? cfg.nystrom_points
                                                                         : std::max<std::size_t>(
                                                                               auto_nystrom_points(cfg.alpha, cfg.length),
                                                                               4 * cfg.modes),
                                                      cfg.modes)
                              : mercer::exp_kernel_modes(params, cfg.modes);
    doc.comment("units omega_k rad/m; lambda_k field power times meters");
    doc.row({"k", "omega_k", "lambda_k"});
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
      const auto& mode = spec.modes[k];
      doc.row({std::to_string(k + 1), mode.frequency ? format_number(*mode.frequency) : std::string(),
               format_number(mode.eigenvalue)});
    }
    emit(doc, cfg.output, out);
    return kOk;
  }

  const auto lengths = parse_sweep(cfg.length_sweep);
  doc.comment("units L m; mutual information nats and bits");
  doc.row({"L", "mi_nats", "mi_bits", "tail_bound_nats", "modes"});
  for (double length : lengths) {
    mercer::ExponentialKernelParams params{cfg.power, cfg.alpha, length};
    params.validate();
    mercer::MercerInformation info;
    if (nystrom) {
      const std::size_t n = cfg.nystrom_points ? cfg.nystrom_points : auto_nystrom_points(cfg.alpha, length);
      info = mercer::mercer_mutual_information(mercer::nystrom_modes(kernel, length, n, n / 4), cfg.n0);
    } else {
      info = mercer::exp_kernel_mutual_information(params, cfg.n0, cfg.tail_tolerance);
    }
    doc.row({format_number(length), format_number(info.nats), format_number(info.nats / kLn2),
             format_number(info.tail_bound), std::to_string(info.modes_used)});
  }
  doc.comment(kv("ssd_capacity_nats_per_m", mercer::exp_kernel_ssd_capacity(cfg.power, cfg.alpha, cfg.n0)));
  emit(doc, cfg.output, out);
  return kOk;
}

// ---- bounds -----------------------------------------------------------------

struct BoundsConfig {
  double wavelength = 1.0;
  double distance = 0.5;
  double length = 1.0;
  double noise = 1000.0;
  std::size_t points = 16;
  int virtual_periods = 4;
  int shifts = 16;
  int trials = 50;
  std::uint64_t seed = 0;
  std::string output;
};

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return numerics::mix_seed(seed ^ numerics::mix_seed(static_cast<std::uint64_t>(trial)));
}

int cmd_bounds(const BoundsConfig& cfg, std::ostream& out, std::ostream& err) {
  const PhysicalScene scene(cfg.wavelength, cfg.distance);
  if (cfg.trials < 1) throw DomainError("--trials must be at least 1");
  CsvDocument doc;
  doc.comment("emcap bounds");
  doc.comment("config " + kv("wavelength", cfg.wavelength) + " " + kv("distance", cfg.distance) + " " +
              kv("length", cfg.length) + " " + kv("noise", cfg.noise) + " points=" + std::to_string(cfg.points) +
              " virtual_periods=" + std::to_string(cfg.virtual_periods) + " shifts=" + std::to_string(cfg.shifts) +
              " trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed));
  doc.comment("units mutual information nats; chain i_LL <= i_L2L <= i_inf2L with slack 1e-6 i_LL");
  doc.row({"trial", "seed", "i_LL", "i_L2L", "i_inf2L", "chain_holds"});
  int holds = 0;
  int stable = 0;
  double worst_change = 0.0;
  bounds::ChainCheckOptions options{cfg.virtual_periods, cfg.shifts};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    const auto source = bounds::random_psd_source(seed, numerics::Interval(0.0, cfg.length));
    const auto check = bounds::mi_chain_check(scene, source, cfg.noise, cfg.points, options);
    holds += check.chain_holds;
    stable += check.m_stable;
    worst_change = std::max(worst_change, std::abs(check.i_inf2L_next - check.i_inf2L) / check.i_inf2L);
    doc.row({std::to_string(trial), std::to_string(seed), format_number(check.i_LL), format_number(check.i_L2L),
             format_number(check.i_inf2L), check.chain_holds ? "true" : "false"});
  }
  doc.comment("chain_holds=" + std::to_string(holds) + "/" + std::to_string(cfg.trials) +
              " m_stable=" + std::to_string(stable) + "/" + std::to_string(cfg.trials) + " " +
              kv("max_relative_m_change", worst_change));
  emit(doc, cfg.output, out);
  if (stable < cfg.trials) {
    err << "emcap: warning: virtual-line truncation unstable in " << (cfg.trials - stable)
        << " trial(s); increase --virtual-periods\n";
  }
  if (holds < cfg.trials) {
    err << "emcap: bound chain failed in " << (cfg.trials - holds) << " trial(s)\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---- sampled ----------------------------------------------------------------

struct SampledConfig {
  double wavelength = 5.0;
  double distance = 1.0;
  double length = 4.0;
  double source_length = 8.0;
  double source_power = 1.0;
  double source_alpha = 1.0;
  double noise = 1.0;
  std::vector<double> densities{2.0, 4.0, 8.0, 16.0};
  std::string model = "scalar";
  std::string output;
};

int cmd_sampled(const SampledConfig& cfg, std::ostream& out, std::ostream& err) {
  const PhysicalScene scene(cfg.wavelength, cfg.distance);
  const double p = cfg.source_power;
  const double a = cfg.source_alpha;
  const auto source = sampled::SourceAutocorrelation::stationary(
      [p, a](double lag) { return std::complex<double>(p * std::exp(-a * std::abs(lag))); },
      numerics::Interval(-0.5 * cfg.source_length, 0.5 * cfg.source_length));
  const auto model = cfg.model == "dyadic" ? sampled::FieldModel::dyadic_3d : sampled::FieldModel::scalar_line;
  const auto sweep = sampled::normalized_capacity_sweep(scene, cfg.length, cfg.densities, source, cfg.noise, model);

  CsvDocument doc;
  doc.comment("emcap sampled");
  doc.comment("config " + kv("wavelength", cfg.wavelength) + " " + kv("distance", cfg.distance) + " " +
              kv("length", cfg.length) + " " + kv("source_length", cfg.source_length) + " " +
              kv("source_power", cfg.source_power) + " " + kv("source_alpha", cfg.source_alpha) + " " +
              kv("noise", cfg.noise) + " densities=" + list(cfg.densities) + " model=" + cfg.model);
  doc.comment("source autocorrelation source_power exp(-source_alpha |s - s'|); units nats, bits, meters");
  doc.row({"n", "mi_nats", "mi_per_meter", "mi_bits", "mi_bits_per_meter"});
  for (const auto& point : sweep) {
    doc.row({std::to_string(point.n), format_number(point.mi_nats), format_number(point.mi_per_meter),
             format_number(point.mi_nats / kLn2), format_number(point.mi_per_meter / kLn2)});
    if (!point.source_resolution.resolved) {
      err << "emcap: warning: source quadrature under-resolved at n=" << point.n << " (relative change "
          << format_number(point.source_resolution.relative_change) << ")\n";
    }
  }
  emit(doc, cfg.output, out);
  return kOk;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity of electromagnetic links between parallel linear regions", "emcap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "emcap 0.1.0");
  const auto positive = CLI::PositiveNumber;

  SpectrumConfig spectrum_cfg;
  auto* spectrum = app.add_subcommand("spectrum", "Wavenumber spectrum G(kappa) of the line-to-line Green kernel");
  spectrum->add_option("--wavelength", spectrum_cfg.wavelengths, "Wavelength(s), m")->check(positive)->expected(1, -1);
  spectrum->add_option("--distance", spectrum_cfg.distances, "Line spacing(s), m")->check(positive)->expected(1, -1);
  spectrum->add_option("--samples", spectrum_cfg.samples, "Grid points (default: automatic)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  spectrum->add_option("--output,-o", spectrum_cfg.output, "CSV path (default: stdout)");

  WaterfillConfig waterfill_cfg;
  auto* waterfill = app.add_subcommand("waterfill", "Water-filling source density and SSD capacity");
  waterfill->add_option("--wavelength", waterfill_cfg.wavelength, "Wavelength, m")->check(positive);
  waterfill->add_option("--distance", waterfill_cfg.distance, "Line spacing, m")->check(positive);
  waterfill->add_option("--noise-ssd", waterfill_cfg.noise_ssd, "Receiver noise spectral density")->check(positive);
  waterfill->add_option("--power", waterfill_cfg.power, "Source power budget")->check(positive);
  waterfill->add_option("--samples", waterfill_cfg.samples, "Grid points (default: automatic)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  waterfill->add_option("--output,-o", waterfill_cfg.output, "CSV path (default: stdout)");

  MercerConfig mercer_cfg;
  auto* mercer = app.add_subcommand(
      "mercer", "Mutual information of a finite receiver for the exponential kernel P exp(-alpha |r - r'|)");
  mercer->add_option("--alpha", mercer_cfg.alpha, "Kernel decay rate, 1/m")->check(positive);
  mercer->add_option("--power", mercer_cfg.power, "Received-field power P")->check(positive);
  mercer->add_option("--n0", mercer_cfg.n0, "Noise level; the white noise density is n0/2")->check(positive);
  mercer->add_option("--length-sweep", mercer_cfg.length_sweep, "Receiver lengths start:stop:step, m");
  mercer->add_option("--method", mercer_cfg.method, "Eigen system: closed or nystrom")
      ->check(CLI::IsMember({"closed", "nystrom"}));
  mercer->add_option("--tail-tol", mercer_cfg.tail_tolerance, "Closed form: first-order tail budget, nats")
      ->check(positive);
  mercer->add_option("--nystrom-points", mercer_cfg.nystrom_points, "Nystrom grid size (default: automatic)")
      ->check(CLI::Range(std::size_t{8}, std::size_t{8192}));
  mercer->add_flag("--table", mercer_cfg.table, "Print the mode table k,omega_k,lambda_k at --length");
  mercer->add_option("--length", mercer_cfg.length, "Receiver length for --table, m")->check(positive);
  mercer->add_option("--modes", mercer_cfg.modes, "Modes in the table")->check(CLI::Range(1, 100000));
  mercer->add_option("--output,-o", mercer_cfg.output, "CSV path (default: stdout)");

  BoundsConfig bounds_cfg;
  auto* bounds = app.add_subcommand("bounds", "Randomized check of I_LL <= I_L2L <= I_inf2L");
  bounds->add_option("--wavelength", bounds_cfg.wavelength, "Wavelength, m")->check(positive);
  bounds->add_option("--distance", bounds_cfg.distance, "Line spacing, m")->check(positive);
  bounds->add_option("--length", bounds_cfg.length, "Source length L, m")->check(positive);
  bounds->add_option("--noise", bounds_cfg.noise, "White noise variance density sigma^2")->check(positive);
  bounds->add_option("--points", bounds_cfg.points, "Samples per length L (even, >= 16)")
      ->check(CLI::Range(16, 1024));
  bounds->add_option("--virtual-periods", bounds_cfg.virtual_periods, "Periods kept on each side (>= 3)")
      ->check(CLI::Range(3, 64));
  bounds->add_option("--shifts", bounds_cfg.shifts, "Equispaced shifts averaged (>= 8)")->check(CLI::Range(8, 4096));
  bounds->add_option("--trials", bounds_cfg.trials, "Random sources")->check(CLI::Range(1, 100000));
  bounds->add_option("--seed", bounds_cfg.seed, "Base seed");
  bounds->add_option("--output,-o", bounds_cfg.output, "CSV path (default: stdout)");

  SampledConfig sampled_cfg;
  auto* sampled = app.add_subcommand("sampled", "Sampled-field mutual information per meter vs sampling density");
  sampled->add_option("--wavelength", sampled_cfg.wavelength, "Wavelength, m")->check(positive);
  sampled->add_option("--distance", sampled_cfg.distance, "Line spacing, m")->check(positive);
  sampled->add_option("--length", sampled_cfg.length, "Destination length, m")->check(positive);
  sampled->add_option("--source-length", sampled_cfg.source_length, "Source length, m")->check(positive);
  sampled->add_option("--source-power", sampled_cfg.source_power, "Source autocorrelation at zero lag")
      ->check(positive);
  sampled->add_option("--source-alpha", sampled_cfg.source_alpha, "Source correlation decay rate, 1/m")
      ->check(positive);
  sampled->add_option("--noise", sampled_cfg.noise, "White noise variance density sigma^2")->check(positive);
  sampled->add_option("--densities", sampled_cfg.densities, "Samples per meter, increasing")
      ->check(positive)
      ->expected(1, -1);
  sampled->add_option("--model", sampled_cfg.model, "Field model: scalar or dyadic")
      ->check(CLI::IsMember({"scalar", "dyadic"}));
  sampled->add_option("--output,-o", sampled_cfg.output, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "emcap 0.1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    for (char& c : what) {
      if (c == '\n') c = ' ';
    }
    err << "emcap: error: " << what << '\n';
    return kInvalidInput;
  }

  try {
    if (app.got_subcommand(spectrum)) return cmd_spectrum(spectrum_cfg, out);
    if (app.got_subcommand(waterfill)) return cmd_waterfill(waterfill_cfg, out);
    if (app.got_subcommand(mercer)) return cmd_mercer(mercer_cfg, out);
    if (app.got_subcommand(bounds)) return cmd_bounds(bounds_cfg, out, err);
    if (app.got_subcommand(sampled)) return cmd_sampled(sampled_cfg, out, err);
  } catch (const AccuracyError& e) {
    err << "emcap: no convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const Error& e) {
    err << "emcap: error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "emcap: internal error: " << e.what() << '\n';
    return kNoConvergence;
  }
  return kInvalidInput;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace emcap::cli
