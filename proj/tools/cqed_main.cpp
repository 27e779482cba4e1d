#include <CLI11.hpp>
#include <json.hpp>

#include <cqed/dynamics.hpp>
#include <cqed/entanglement.hpp>
#include <cqed/experiments.hpp>

#include "figure_svg.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

namespace {

using nlohmann::ordered_json;
using namespace cqed;

constexpr double kPi = 3.14159265358979323846;

struct RunConfig {
  std::string subcommand;
  std::string format;  // empty until resolved
  std::string out;
  unsigned seed = 12345;

  int w_n = 3;
  double w_lambda_t = 2.0 * kPi / 9.0;

  double ghz_lambda_t = kPi / 3.0;
  std::string ghz_mode = "corrected";

  double grid_start = 0.0;
  double grid_end = 2.0 * kPi;
  int grid_points = 200;

  double timing_lambda_t0 = 2.0 * kPi / 9.0;
  double timing_fraction = 0.1;
  std::string phase_mode = "paper";

  int validate_n = 2;
  double validate_lambda_t = kPi / 4.0;
  std::vector<double> ratios = {10.0, 20.0, 40.0, 80.0};

  int scan_n = 4;
};

int write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output path: " << cfg.out << "\n";
    return 1;
  }
  file << payload;
  if (!file) {
    std::cerr << "error: write failed: " << cfg.out << "\n";
    return 1;
  }
  return 0;
}

std::string resolve_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  if (cfg.subcommand == "w-state" || cfg.subcommand == "ghz4" || cfg.subcommand == "timing")
    return "json";
  return "csv";
}

std::string bitstring_of(const BasisDescriptor& basis, std::uint32_t bits) {
  std::string s(basis.atom_count(), '0');
  for (int j = 0; j < basis.atom_count(); ++j)
    if (basis.bit_of(bits, j)) s[j] = '1';
  return s;
}

ordered_json amplitude_rows(const StateVector& psi) {
  ordered_json rows = ordered_json::array();
  const BasisDescriptor& basis = psi.basis();
  for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
    Complex amp = psi.amplitudes()(i);
    if (std::abs(amp) <= 1e-12) continue;
    ordered_json row = ordered_json::object();
    row["bitstring"] = bitstring_of(basis, basis.atom_bits_at(i));
    if (basis.has_cavity()) row["photons"] = basis.photons_at(i);
    row["re"] = amp.real();
    row["im"] = amp.imag();
    row["abs"] = std::abs(amp);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string report_payload(const RunConfig& cfg, const ordered_json& config,
                           const ordered_json& result) {
  if (resolve_format(cfg) == "json") {
    ordered_json doc = ordered_json::object();
    doc["config"] = config;
    doc["result"] = result;
    return doc.dump(2) + "\n";
  }
  // csv: flat key,value lines over scalar result fields
  std::string out = "key,value\n";
  for (const auto& [key, value] : result.items()) {
    if (value.is_number()) {
      out += key + "," + format_fixed6(value.get<double>()) + "\n";
    } else if (value.is_string()) {
      out += key + "," + value.get<std::string>() + "\n";
    } else if (value.is_null()) {
      out += key + ",\n";
    }
  }
  return out;
}

ordered_json base_config(const RunConfig& cfg) {
  ordered_json config = ordered_json::object();
  config["subcommand"] = cfg.subcommand;
  config["format"] = resolve_format(cfg);
  config["seed"] = cfg.seed;
  return config;
}

void inject_config(SweepSeries& series, const ordered_json& config) {
  for (const auto& [key, value] : config.items()) {
    if (value.is_string())
      series.set_metadata(key, value.get<std::string>());
    else
      series.set_metadata(key, value.dump());
  }
}

int cmd_w_state(const RunConfig& cfg) {
  StateVector psi = analytic_w_evolution(cfg.w_n, cfg.w_lambda_t);

  double fid_w = fidelity_to(psi, make_target(TargetLabel::w, cfg.w_n));
  Complex survivor = psi.amplitude(1u);
  Complex transfer = psi.amplitude(1u << (cfg.w_n - 1));
  double adjusted = std::pow(std::abs(survivor) + (cfg.w_n - 1) * std::abs(transfer), 2.0) /
                    static_cast<double>(cfg.w_n);

  ordered_json config = base_config(cfg);
  config["n"] = cfg.w_n;
  config["lambda_t"] = cfg.w_lambda_t;

  ordered_json result = ordered_json::object();
  result["fidelity_w"] = fid_w;
  result["fidelity_phase_adjusted"] = adjusted;
  if (cfg.w_n >= 3) {
    double p = distillation_probability(cfg.w_n, cfg.w_lambda_t);
    result["distillation_probability"] = p;
    if (p > 1e-12) {
      MeasurementRecord record = measure_atom(psi, cfg.w_n - 1, 0);
      ordered_json post = ordered_json::object();
      post["outcome"] = 0;
      post["probability"] = record.probability;
      post["amplitudes"] = amplitude_rows(record.post_state);
      result["post_measurement"] = std::move(post);
    } else {
      result["post_measurement"] = nullptr;
    }
  } else {
    result["distillation_probability"] = nullptr;
    result["post_measurement"] = nullptr;
  }
  result["amplitudes"] = amplitude_rows(psi);

  return write_output(cfg, report_payload(cfg, config, result));
}

int cmd_ghz4(const RunConfig& cfg) {
  Ghz4Frequency mode =
      cfg.ghz_mode == "printed" ? Ghz4Frequency::printed : Ghz4Frequency::corrected;
  StateVector psi = analytic_ghz4_evolution(cfg.ghz_lambda_t, mode);
  BasisDescriptor basis(4);

  double amp_main = std::abs(psi.amplitude(0b0011u));
  double amp_opposite = std::abs(psi.amplitude(0b1100u));
  double cross_max = 0.0;
  for (std::uint32_t bits : {0b0101u, 0b0110u, 0b1001u, 0b1010u})
    cross_max = std::max(cross_max, std::abs(psi.amplitude(bits)));

  // two-branch target: (|0011> + i sqrt(3) |1100>)/2
  ComplexVector target_amps = ComplexVector::Zero(basis.dimension());
  target_amps(basis.index_of(0b0011u)) = 0.5;
  target_amps(basis.index_of(0b1100u)) = Complex(0.0, std::sqrt(3.0) / 2.0);
  TargetState target = TargetState::custom(StateVector(basis, std::move(target_amps)));

  ordered_json config = base_config(cfg);
  config["lambda_t"] = cfg.ghz_lambda_t;
  config["mode"] = cfg.ghz_mode;

  ordered_json result = ordered_json::object();
  result["amp_main_abs"] = amp_main;
  result["amp_opposite_abs"] = amp_opposite;
  result["cross_max_abs"] = cross_max;
  result["fidelity_ghz_class_target"] = fidelity_to(psi, target);
  result["amplitudes"] = amplitude_rows(psi);

  return write_output(cfg, report_payload(cfg, config, result));
}

int cmd_figure1(const RunConfig& cfg) {
  SweepSeries series = figure1_series(linspace(cfg.grid_start, cfg.grid_end, cfg.grid_points));

  std::string fmt = resolve_format(cfg);
  if (fmt == "svg") return write_output(cfg, cqed_cli::svg_figure(series));

  ordered_json config = base_config(cfg);
  config["grid_start"] = cfg.grid_start;
  config["grid_end"] = cfg.grid_end;
  config["grid_points"] = cfg.grid_points;
  inject_config(series, config);

  if (fmt == "json") return write_output(cfg, series.to_json_string() + "\n");
  return write_output(cfg, series.to_csv());
}

int cmd_timing(const RunConfig& cfg) {
  TimingPhaseMode mode =
      cfg.phase_mode == "model" ? TimingPhaseMode::model : TimingPhaseMode::paper;
  TimingErrorReport report = timing_error_study(cfg.timing_lambda_t0, cfg.timing_fraction,
                                                cfg.timing_fraction, mode);

  ordered_json config = base_config(cfg);
  config["lambda_t0"] = cfg.timing_lambda_t0;
  config["fraction"] = cfg.timing_fraction;
  config["phase_mode"] = cfg.phase_mode;

  ordered_json result = ordered_json::object();
  result["late_entry_fidelity"] = report.late_entry_fidelity;
  result["early_exit_fidelity"] = report.early_exit_fidelity;

  return write_output(cfg, report_payload(cfg, config, result));
}

// Seeded self-checks: builder hermiticity and conservation laws on random
// inputs. Failures flip the exit code to 2.
bool run_spot_checks(unsigned seed, int& checks_run) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool ok = true;
  checks_run = 0;

  for (int k = 0; k < 16; ++k) {
    int n = 1 + static_cast<int>(unit(gen) * 3.0);
    double g = 0.5 + unit(gen);
    double delta = g * (5.0 + 10.0 * unit(gen));
    ModelParams params(n, g, delta);
    try {
      full_hamiltonian_at(params, unit(gen) * 3.0);
      static_frame_hamiltonian(params);
      effective_hamiltonian(params);
      vacuum_sector_hamiltonian(params);
    } catch (const std::exception&) {
      ok = false;
    }
    ++checks_run;
  }

  Propagator vacuum(vacuum_sector_hamiltonian(3, 1.0));
  Operator n_op = excitation_number(BasisDescriptor(3));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    ComplexVector amps(8);
    for (Eigen::Index i = 0; i < 8; ++i) amps(i) = Complex(gauss(gen), gauss(gen));
    StateVector psi = StateVector::normalized(BasisDescriptor(3), std::move(amps));
    StateVector evolved = vacuum.evolve(psi, unit(gen) * 4.0);
    if (std::abs(evolved.norm() - 1.0) > 1e-10) ok = false;
    if (std::abs(expectation(n_op, evolved).real() - expectation(n_op, psi).real()) > 1e-9)
      ok = false;
    ++checks_run;
  }
  return ok;
}

int cmd_validate(const RunConfig& cfg) {
  SweepSeries series =
      dispersive_validation_sweep(cfg.ratios, cfg.validate_lambda_t, cfg.validate_n);

  bool properties_ok = true;
  const auto& infidelity = series.column("infidelity");
  const auto& leakage = series.column("photon_leakage_max");
  for (std::size_t i = 0; i + 1 < cfg.ratios.size(); ++i) {
    if (std::abs(cfg.ratios[i + 1] - 2.0 * cfg.ratios[i]) < 1e-9) {
      if (infidelity[i + 1] > 0.5 * infidelity[i] * (1.0 + 1e-6) + 1e-12) properties_ok = false;
    }
    if (cfg.ratios[i + 1] > cfg.ratios[i] && leakage[i + 1] > leakage[i] + 1e-12)
      properties_ok = false;
  }

  int checks_run = 0;
  bool spot_ok = run_spot_checks(cfg.seed, checks_run);

  ordered_json config = base_config(cfg);
  config["n"] = cfg.validate_n;
  config["lambda_t"] = cfg.validate_lambda_t;
  config["properties_passed"] = properties_ok;
  config["spot_checks_passed"] = spot_ok;
  config["spot_checks_run"] = checks_run;
  inject_config(series, config);

  std::string fmt = resolve_format(cfg);
  int rc = write_output(cfg, fmt == "json" ? series.to_json_string() + "\n" : series.to_csv());
  if (rc != 0) return rc;
  if (!properties_ok || !spot_ok) {
    std::cerr << "error: validation properties failed\n";
    return 2;
  }
  return 0;
}

int cmd_distill_scan(const RunConfig& cfg) {
  SweepSeries series =
      distillation_scan(cfg.scan_n, linspace(cfg.grid_start, cfg.grid_end, cfg.grid_points));

  ordered_json config = base_config(cfg);
  config["n"] = cfg.scan_n;
  config["grid_start"] = cfg.grid_start;
  config["grid_end"] = cfg.grid_end;
  config["grid_points"] = cfg.grid_points;
  inject_config(series, config);

  if (resolve_format(cfg) == "json") return write_output(cfg, series.to_json_string() + "\n");
  return write_output(cfg, series.to_csv());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersive cavity-QED entanglement toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--format", cfg.format, "output format: csv, json, or svg (figure1 only)");
  app.add_option("--out", cfg.out, "write output to this path instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for randomized self-checks");

  auto* w = app.add_subcommand("w-state", "W-class evolution snapshot with distillation figures");
  w->add_option("--n", cfg.w_n, "atom count")->check(CLI::Range(2, 12));
  w->add_option("--lambda-t", cfg.w_lambda_t, "dimensionless interaction time");

  auto* ghz = app.add_subcommand("ghz4", "four-atom two-excitation evolution snapshot");
  ghz->add_option("--lambda-t", cfg.ghz_lambda_t, "dimensionless interaction time");
  ghz->add_option("--mode", cfg.ghz_mode, "middle-frequency convention")
      ->check(CLI::IsMember({"corrected", "printed"}));

  auto* fig = app.add_subcommand("figure1", "closed-form collision readout curves");
  fig->add_option("--grid-start", cfg.grid_start, "first lambda_t value");
  fig->add_option("--grid-end", cfg.grid_end, "last lambda_t value");
  fig->add_option("--grid-points", cfg.grid_points, "grid size")->check(CLI::Range(2, 1000000));

  auto* timing = app.add_subcommand("timing", "interaction-window error sensitivity");
  timing->add_option("--lambda-t0", cfg.timing_lambda_t0, "nominal dimensionless window");
  timing->add_option("--fraction", cfg.timing_fraction, "fractional window error")
      ->check(CLI::Range(0.0, 0.999));
  timing->add_option("--phase-mode", cfg.phase_mode, "early-exit phase convention")
      ->check(CLI::IsMember({"paper", "model"}));

  auto* validate = app.add_subcommand("validate", "full-model vs effective-model comparison");
  validate->add_option("--ratios", cfg.ratios, "detuning ratios delta/g")->delimiter(',');
  validate->add_option("--n", cfg.validate_n, "atom count")->check(CLI::Range(1, 6));
  validate->add_option("--lambda-t", cfg.validate_lambda_t, "dimensionless interaction time");

  auto* scan = app.add_subcommand("distill-scan", "distillation probability over a lambda_t grid");
  scan->add_option("--n", cfg.scan_n, "atom count")->check(CLI::Range(3, 12));
  scan->add_option("--grid-start", cfg.grid_start, "first lambda_t value");
  scan->add_option("--grid-end", cfg.grid_end, "last lambda_t value");
  scan->add_option("--grid-points", cfg.grid_points, "grid size")->check(CLI::Range(2, 1000000));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  cfg.subcommand = app.get_subcommands().front()->get_name();

  std::string fmt = resolve_format(cfg);
  if (fmt != "csv" && fmt != "json" && fmt != "svg") {
    std::cerr << "error: unknown format: " << fmt << "\n";
    return 2;
  }
  if (fmt == "svg" && cfg.subcommand != "figure1") {
    std::cerr << "error: svg output is only available for figure1\n";
    return 2;
  }

  try {
    if (cfg.subcommand == "w-state") return cmd_w_state(cfg);
    if (cfg.subcommand == "ghz4") return cmd_ghz4(cfg);
    if (cfg.subcommand == "figure1") return cmd_figure1(cfg);
    if (cfg.subcommand == "timing") return cmd_timing(cfg);
    if (cfg.subcommand == "validate") return cmd_validate(cfg);
    if (cfg.subcommand == "distill-scan") return cmd_distill_scan(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: unknown subcommand\n";
  return 2;
}
