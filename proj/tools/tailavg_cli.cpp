// Command-line interface: weighted tail-index estimation over a threshold
// grid (estimate, weights) and replicated Monte Carlo studies (simulate).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tailavg/tailavg.hpp"

namespace {

struct EstimateArgs {
  std::string input;
  std::string column;
  bool take_abs = false;
  std::string method = "pareto";
  std::size_t kmin = 50;
  std::size_t kmax = 500;
  std::size_t stride = 1;
  std::string report_path;
  std::string plots_dir;
};

struct SimulateArgs {
  std::string family;
  double alpha = 0.0;
  double nu = 0.0;
  double xi = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  std::size_t n = 2500;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::string method = "pareto";
  std::size_t kmin = 50;
  std::size_t kmax = 500;
  std::size_t stride = 1;
  std::string table_path;
  std::string hist_path;
  std::size_t bins = 30;
  unsigned threads = 0;
};

void add_grid_options(CLI::App* cmd, std::size_t& kmin, std::size_t& kmax, std::size_t& stride) {
  cmd->add_option("--kmin", kmin, "Smallest exceedance count")->capture_default_str();
  cmd->add_option("--kmax", kmax, "Largest exceedance count")->capture_default_str();
  cmd->add_option("--stride", stride, "Candidate grid step")->capture_default_str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw tailavg::error(tailavg::errc::file_not_found, "cannot write " + path);
  }
  out << bytes;
}

tailavg::EstimateResult run_pipeline(const EstimateArgs& args, tailavg::IngestedSample& data,
                                     tailavg::ThresholdGrid& grid) {
  const std::optional<std::string> column =
      args.column.empty() ? std::nullopt : std::optional<std::string>(args.column);
  data = tailavg::ingest(args.input, column, args.take_abs);
  grid = tailavg::build_grid(data.sample.size(), args.kmin, args.kmax, args.stride);
  return tailavg::estimate(data.sample, grid, tailavg::method_from_string(args.method));
}

int cmd_estimate(const EstimateArgs& args) {
  tailavg::IngestedSample data;
  tailavg::ThresholdGrid grid;
  const tailavg::EstimateResult res = run_pipeline(args, data, grid);
  const tailavg::Report report = tailavg::make_report(res, grid, 0, data.digest);

  std::cout << "method: " << tailavg::to_string(res.weighted.method) << "\n"
            << "n: " << data.sample.size() << "\n"
            << "alpha: " << tailavg::format_real(res.weighted.alpha_bar) << "\n"
            << "xi: " << tailavg::format_real(res.weighted.xi_bar) << "\n"
            << "threshold: " << tailavg::format_real(res.weighted.threshold_bar) << "\n"
            << "m_eff: " << res.weighted.m_eff << "\n"
            << "candidates: " << res.fits.size()
            << " skipped: " << res.weights.skipped.size() << "\n";

  if (!args.report_path.empty()) {
    const bool csv = args.report_path.size() > 4 &&
                     args.report_path.substr(args.report_path.size() - 4) == ".csv";
    write_file(args.report_path,
               tailavg::emit_report(report, csv ? tailavg::ReportFormat::csv
                                                : tailavg::ReportFormat::json));
  }
  if (!args.plots_dir.empty()) {
    std::filesystem::create_directories(args.plots_dir);
    const tailavg::PlotBundle bundle = tailavg::plot_survival_fit(data.sample, res.weighted);
    write_file(args.plots_dir + "/survival_fit.csv", tailavg::plot_csv(bundle.survival));
    write_file(args.plots_dir + "/qq.csv", tailavg::plot_csv(bundle.qq));
  }
  return 0;
}

int cmd_weights(const EstimateArgs& args) {
  tailavg::IngestedSample data;
  tailavg::ThresholdGrid grid;
  const tailavg::EstimateResult res = run_pipeline(args, data, grid);
  std::cout << "m,criterion,weight\n";
  for (const tailavg::WeightEntry& e : res.weights.entries) {
    std::cout << e.m << "," << tailavg::format_real(e.criterion) << ","
              << tailavg::format_real(e.weight) << "\n";
  }
  for (const tailavg::SkippedCandidate& sk : res.weights.skipped) {
    std::cerr << "skipped m=" << sk.m << ": " << tailavg::to_string(sk.reason) << "\n";
  }
  return 0;
}

tailavg::DistributionSpec spec_from_args(const SimulateArgs& args) {
  const tailavg::Family family = tailavg::family_from_string(args.family);
  switch (family) {
    case tailavg::Family::stable:
      if (args.alpha == 0.0) {
        throw tailavg::error(tailavg::errc::bad_spec, "simulate: stable family needs --alpha");
      }
      return tailavg::DistributionSpec::stable(args.alpha, args.mu, args.sigma);
    case tailavg::Family::student_t:
      if (args.nu == 0.0) {
        throw tailavg::error(tailavg::errc::bad_spec, "simulate: t family needs --nu");
      }
      return tailavg::DistributionSpec::student_t(args.nu, args.mu, args.sigma);
    case tailavg::Family::gpd:
      if (args.xi == 0.0) {
        throw tailavg::error(tailavg::errc::bad_spec, "simulate: gpd family needs --xi");
      }
      return tailavg::DistributionSpec::gpd(args.xi, args.mu, args.sigma);
  }
  throw tailavg::error(tailavg::errc::bad_spec, "simulate: unknown family");
}

std::string params_string(const tailavg::DistributionSpec& spec) {
  using tailavg::format_real;
  switch (spec.family) {
    case tailavg::Family::stable:
      return "alpha=" + format_real(spec.alpha) + ";mu=" + format_real(spec.mu) +
             ";sigma=" + format_real(spec.sigma);
    case tailavg::Family::student_t:
      return "nu=" + format_real(spec.nu) + ";mu=" + format_real(spec.mu) +
             ";sigma=" + format_real(spec.sigma);
    case tailavg::Family::gpd:
      return "xi=" + format_real(spec.xi) + ";mu=" + format_real(spec.mu) +
             ";sigma=" + format_real(spec.sigma);
  }
  return "";
}

int cmd_simulate(const SimulateArgs& args) {
  tailavg::StudyConfig cfg;
  cfg.spec = spec_from_args(args);
  cfg.n = args.n;
  cfg.replicates = args.reps;
  cfg.grid = tailavg::build_grid(args.n, args.kmin, args.kmax, args.stride);
  cfg.method = tailavg::method_from_string(args.method);
  cfg.master_seed = args.seed;
  cfg.take_abs = cfg.spec.family != tailavg::Family::gpd;

  const tailavg::StudyResult result = tailavg::run_study(cfg, args.threads);

  using tailavg::format_real;
  std::cout << "family: " << tailavg::to_string(cfg.spec.family) << " "
            << params_string(cfg.spec) << "\n"
            << "n: " << cfg.n << " replicates: " << cfg.replicates
            << " method: " << tailavg::to_string(cfg.method) << " seed: " << cfg.master_seed
            << "\n"
            << "true_alpha: " << format_real(result.true_alpha) << "\n"
            << "mean_alpha: " << format_real(result.mean_alpha) << "\n"
            << "bias: " << format_real(result.bias) << "\n"
            << "mse: " << format_real(result.mse) << "\n"
            << "mean_threshold: " << format_real(result.mean_threshold) << "\n"
            << "failures: " << result.failures << "\n";

  if (!args.table_path.empty()) {
    std::string csv = "family,params,n,method,est_threshold,mse,bias\n";
    csv += std::string(tailavg::to_string(cfg.spec.family)) + "," + params_string(cfg.spec) +
           "," + std::to_string(cfg.n) + "," + tailavg::to_string(cfg.method) + "," +
           format_real(result.mean_threshold) + "," + format_real(result.mse) + "," +
           format_real(result.bias) + "\n";
    write_file(args.table_path, csv);
  }
  if (!args.hist_path.empty()) {
    const auto hist = tailavg::histogram_data(result, args.bins);
    std::string csv = "bin_center,count\n";
    for (const auto& [center, count] : hist) {
      csv += format_real(center) + "," + std::to_string(count) + "\n";
    }
    write_file(args.hist_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-index estimation by model averaging over threshold candidates"};
  app.require_subcommand(1);

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the tail index of a data file");
  estimate->add_option("--input", est.input, "Input data file")->required();
  estimate->add_option("--column", est.column, "Column name or 0-based index for delimited files");
  estimate->add_flag("--abs", est.take_abs, "Take absolute values before estimation");
  estimate->add_option("--method", est.method, "pareto | regression | gpd")
      ->required()
      ->check(CLI::IsMember({"pareto", "regression", "gpd"}));
  add_grid_options(estimate, est.kmin, est.kmax, est.stride);
  estimate->add_option("--report", est.report_path, "Write a report (.json or .csv)");
  estimate->add_option("--plots", est.plots_dir, "Directory for survival_fit.csv and qq.csv");

  EstimateArgs wts;
  CLI::App* weights = app.add_subcommand("weights", "Print the candidate weight table");
  weights->add_option("--input", wts.input, "Input data file")->required();
  weights->add_option("--column", wts.column, "Column name or 0-based index for delimited files");
  weights->add_flag("--abs", wts.take_abs, "Take absolute values before estimation");
  weights->add_option("--method", wts.method, "pareto | regression | gpd")
      ->required()
      ->check(CLI::IsMember({"pareto", "regression", "gpd"}));
  add_grid_options(weights, wts.kmin, wts.kmax, wts.stride);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a replicated Monte Carlo study");
  simulate->add_option("--family", sim.family, "stable | t | gpd")
      ->required()
      ->check(CLI::IsMember({"stable", "t", "gpd"}));
  simulate->add_option("--alpha", sim.alpha, "Stable index");
  simulate->add_option("--nu", sim.nu, "t degrees of freedom");
  simulate->add_option("--xi", sim.xi, "GPD shape");
  simulate->add_option("--mu", sim.mu, "Location")->capture_default_str();
  simulate->add_option("--sigma", sim.sigma, "Scale")->capture_default_str();
  simulate->add_option("--n", sim.n, "Sample size per replicate")->required();
  simulate->add_option("--reps", sim.reps, "Number of replicates")->required();
  simulate->add_option("--seed", sim.seed, "Master seed")->envname("TAILAVG_SEED");
  simulate->add_option("--method", sim.method, "pareto | regression | gpd")
      ->required()
      ->check(CLI::IsMember({"pareto", "regression", "gpd"}));
  add_grid_options(simulate, sim.kmin, sim.kmax, sim.stride);
  simulate->add_option("--table", sim.table_path, "Write a one-row study table CSV");
  simulate->add_option("--hist", sim.hist_path, "Write histogram data CSV");
  simulate->add_option("--bins", sim.bins, "Histogram bin count")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(est);
    if (weights->parsed()) return cmd_weights(wts);
    if (simulate->parsed()) return cmd_simulate(sim);
  } catch (const tailavg::error& e) {
    std::cerr << "error (" << tailavg::to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
