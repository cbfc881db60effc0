// gmgd-sim: command line front end for sampling approximate multivariate
// gamma Levy paths, running moment studies, checking small-jump convergence
// ratios, and measuring rejection-sampler acceptance rates.
//
// Every command is deterministic given --seed and writes a manifest.json
// recording the full parameter set next to its outputs.
//
// Exit codes: 0 success, 2 bad arguments or malformed input files,
// 3 numeric domain errors.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmgd/large_jumps.hpp"
#include "gmgd/process.hpp"
#include "gmgd/validation.hpp"
#include "gmgd/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::string preset;
  std::string spec_file;
  double epsilon = 0.1;
  double horizon = 1.0;
  std::uint64_t seed = 12345;
  std::size_t shot_noise_truncation = gmgd::kDefaultShotNoiseTruncation;
  double beta = gmgd::kDefaultBeta;
  std::string out_dir = ".";
  std::string format = "csv";
};

gmgd::GmgdSpec load_spec(const CommonOptions& options) {
  if (!options.spec_file.empty()) {
    std::ifstream in(options.spec_file);
    if (!in) {
      throw std::invalid_argument("cannot open spec file: " + options.spec_file);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return gmgd::GmgdSpec::from_json_string(buffer.str());
  }
  if (options.preset == "paper-study") {
    return gmgd::GmgdSpec::paper_study();
  }
  throw std::invalid_argument("unknown preset: " + options.preset);
}

gmgd::SimulationConfig make_config(const CommonOptions& options) {
  gmgd::SimulationConfig cfg;
  cfg.epsilon = options.epsilon;
  cfg.horizon = options.horizon;
  cfg.shot_noise_truncation = options.shot_noise_truncation;
  cfg.beta = options.beta;
  cfg.seed = options.seed;
  cfg.validate();
  return cfg;
}

unsigned resolve_threads(int flag_value) {
  if (flag_value > 0) {
    return static_cast<unsigned>(flag_value);
  }
  if (const char* env = std::getenv("GMGD_SIM_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) {
      return static_cast<unsigned>(parsed);
    }
  }
  return 1;
}

class ManifestWriter {
 public:
  ManifestWriter(std::string command, std::uint64_t seed)
      : command_(std::move(command)),
        seed_(seed),
        start_(std::chrono::steady_clock::now()) {}

  json& parameters() { return parameters_; }

  void add_output(const fs::path& path) { outputs_.push_back(path.string()); }

  void write(const fs::path& out_dir) const {
    json manifest;
    manifest["command"] = command_;
    manifest["parameters"] = parameters_;
    manifest["seed"] = seed_;
    manifest["library_version"] = gmgd::kVersion;
    manifest["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_)
            .count();
    manifest["outputs"] = outputs_;
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  json parameters_;
  std::uint64_t seed_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

fs::path prepare_out_dir(const std::string& dir) {
  fs::path out(dir);
  fs::create_directories(out);
  return out;
}

void record_common(json& parameters, const CommonOptions& options) {
  parameters["preset"] = options.preset;
  parameters["spec_file"] = options.spec_file;
  parameters["epsilon"] = options.epsilon;
  parameters["horizon"] = options.horizon;
  parameters["shot_noise_K"] = options.shot_noise_truncation;
  parameters["beta"] = options.beta;
  parameters["format"] = options.format;
}

std::vector<std::size_t> parse_sector(const std::string& text,
                                      std::size_t atom_count) {
  std::vector<std::size_t> sector;
  if (text == "none") {
    return sector;
  }
  if (text == "all") {
    sector.resize(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) sector[i] = i;
    return sector;
  }
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const unsigned long index = std::stoul(item);
    if (index >= atom_count) {
      throw std::invalid_argument("--sector index out of range: " + item);
    }
    sector.push_back(index);
  }
  return sector;
}

int run_simulate(const CommonOptions& options, const std::string& component,
                 std::uint64_t replication) {
  const auto spec = load_spec(options);
  const auto cfg = make_config(options);
  gmgd::PathComponent which = gmgd::PathComponent::kFull;
  if (component == "large-jumps") {
    which = gmgd::PathComponent::kLargeJumps;
  } else if (component == "dickman") {
    which = gmgd::PathComponent::kDickman;
  } else if (component != "full") {
    throw std::invalid_argument("unknown --component: " + component);
  }

  ManifestWriter manifest("simulate", options.seed);
  record_common(manifest.parameters(), options);
  manifest.parameters()["component"] = component;
  manifest.parameters()["replication"] = replication;

  const auto path = gmgd::sample_process_path(spec, cfg, replication, which);
  const fs::path out_dir = prepare_out_dir(options.out_dir);
  if (options.format == "json") {
    const fs::path file = out_dir / "path.json";
    std::ofstream out(file);
    out << gmgd::path_to_json_string(path, 2) << '\n';
    manifest.add_output(file);
  } else {
    const fs::path file = out_dir / "path.csv";
    std::ofstream out(file);
    gmgd::write_path_csv(path, out);
    manifest.add_output(file);
  }
  manifest.write(out_dir);
  std::cout << "wrote path with " << path.jumps.size() << " jumps to "
            << out_dir.string() << '\n';
  return 0;
}

void write_report(const gmgd::MomentReport& report, const fs::path& out_dir,
                  const std::string& stem, ManifestWriter& manifest) {
  const fs::path csv_file = out_dir / (stem + ".csv");
  {
    std::ofstream out(csv_file);
    report.write_csv(out);
  }
  manifest.add_output(csv_file);
  const fs::path json_file = out_dir / (stem + ".json");
  {
    std::ofstream out(json_file);
    out << report.to_json_string(2) << '\n';
  }
  manifest.add_output(json_file);
}

int run_study(const CommonOptions& options, std::size_t replications,
              std::size_t time_points, const std::string& target,
              bool compare_drop_small_jumps, bool paper_scale,
              int threads_flag) {
  const auto spec = load_spec(options);
  const auto cfg = make_config(options);
  if (paper_scale) {
    replications = 500000;
  }
  const auto times = gmgd::default_time_grid(cfg.horizon, time_points);
  const unsigned threads = resolve_threads(threads_flag);

  ManifestWriter manifest("study", options.seed);
  record_common(manifest.parameters(), options);
  manifest.parameters()["N"] = replications;
  manifest.parameters()["time_points"] = time_points;
  manifest.parameters()["target"] = target;
  manifest.parameters()["compare_drop_small_jumps"] = compare_drop_small_jumps;
  manifest.parameters()["threads"] = threads;

  const fs::path out_dir = prepare_out_dir(options.out_dir);
  if (compare_drop_small_jumps) {
    const auto comparison =
        gmgd::moment_study_compare(spec, cfg, replications, times, threads);
    write_report(comparison.with_dickman, out_dir, "report_with_dickman",
                 manifest);
    write_report(comparison.drop_small_jumps, out_dir,
                 "report_drop_small_jumps", manifest);
    manifest.write(out_dir);
    const double with = comparison.with_dickman.rows.back().total_error;
    const double drop = comparison.drop_small_jumps.rows.back().total_error;
    std::cout << "TotalError(t=" << times.back() << "): with-dickman=" << with
              << " drop-small-jumps=" << drop << '\n';
    return 0;
  }

  gmgd::StudyTarget study_target = gmgd::StudyTarget::kFullProcess;
  if (target == "large-jumps") {
    study_target = gmgd::StudyTarget::kLargeJumpsOnly;
  } else if (target != "full") {
    throw std::invalid_argument("unknown --target: " + target);
  }
  const auto report =
      gmgd::moment_study(spec, cfg, replications, times, study_target, threads);
  write_report(report, out_dir, "report", manifest);
  manifest.write(out_dir);
  std::cout << "TotalError(t=" << times.back()
            << ") = " << report.rows.back().total_error << '\n';
  return 0;
}

int run_check_convergence(const CommonOptions& options,
                          const std::string& epsilons_text,
                          const std::string& sector_text, double p_test) {
  const auto spec = load_spec(options);
  std::vector<double> epsilons;
  std::stringstream stream(epsilons_text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    epsilons.push_back(std::stod(item));
  }
  const auto sector = parse_sector(sector_text, spec.spectral.atom_count());
  const double effective_p_test = p_test > 0.0 ? p_test : spec.p;

  ManifestWriter manifest("check-convergence", options.seed);
  record_common(manifest.parameters(), options);
  manifest.parameters()["epsilons"] = epsilons;
  manifest.parameters()["sector"] = sector_text;
  manifest.parameters()["p_test"] = effective_p_test;

  const auto points =
      gmgd::convergence_check(spec, sector, effective_p_test, epsilons);
  const fs::path out_dir = prepare_out_dir(options.out_dir);
  const fs::path file = out_dir / "convergence.csv";
  {
    std::ofstream out(file);
    gmgd::write_convergence_csv(points, out);
  }
  manifest.add_output(file);
  manifest.write(out_dir);
  for (const auto& point : points) {
    std::cout << "eps=" << point.epsilon << " ratio=" << point.ratio << '\n';
  }
  return 0;
}

int run_acceptance(const CommonOptions& options, double a, double p,
                   std::uint64_t trials) {
  ManifestWriter manifest("acceptance", options.seed);
  record_common(manifest.parameters(), options);
  manifest.parameters()["a"] = a;
  manifest.parameters()["p"] = p;
  manifest.parameters()["trials"] = trials;

  gmgd::Rng rng(options.seed);
  const double rate =
      gmgd::measure_acceptance_rate(a, p, options.beta, trials, rng);
  const double expected = a >= 1.0
                              ? 1.0 / gmgd::envelope_c1(a, p)
                              : 1.0 / gmgd::envelope_c2(a, p, options.beta);

  const fs::path out_dir = prepare_out_dir(options.out_dir);
  const fs::path file = out_dir / "acceptance.json";
  {
    json result;
    result["a"] = a;
    result["p"] = p;
    result["beta"] = options.beta;
    result["trials"] = trials;
    result["empirical_acceptance"] = rate;
    result["expected_acceptance"] = expected;
    std::ofstream out(file);
    out << result.dump(2) << '\n';
  }
  manifest.add_output(file);
  manifest.write(out_dir);
  std::cout << "acceptance rate: " << rate << " (expected 1/C = " << expected
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampler and validation harness for multivariate gamma Levy "
               "processes (Dickman small-jump approximation + exact "
               "compound-Poisson large jumps)"};
  app.require_subcommand(1);

  CommonOptions options;
  const auto add_common = [&](CLI::App* cmd, bool with_spec = true) {
    if (with_spec) {
      cmd->add_option("--preset", options.preset,
                      "Built-in spec preset (paper-study: n=30 uniform "
                      "directions, p=1, unit Thorin mass, zero drift)")
          ->default_str("paper-study");
      cmd->add_option("--spec", options.spec_file, "GMGD spec JSON file");
    }
    cmd->add_option("--epsilon", options.epsilon, "Small-jump threshold");
    cmd->add_option("--horizon", options.horizon, "Time horizon T");
    cmd->add_option("--seed", options.seed, "Master RNG seed");
    cmd->add_option("--shot-noise-K", options.shot_noise_truncation,
                    "Shot-noise series truncation");
    cmd->add_option("--beta", options.beta, "Rejection tuning beta in (0,1)");
    cmd->add_option("--out", options.out_dir, "Output directory");
    cmd->add_option("--format", options.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  options.preset = "paper-study";

  auto* simulate = app.add_subcommand("simulate", "Sample one path skeleton");
  std::string component = "full";
  std::uint64_t replication = 0;
  add_common(simulate);
  simulate->add_option("--component", component,
                       "Which part to sample: full, large-jumps, dickman");
  simulate->add_option("--replication", replication,
                       "Replication index (substream selector)");

  auto* study = app.add_subcommand(
      "study", "Monte Carlo moment study against the analytic moments");
  std::size_t replications = 100000;
  std::size_t time_points = 20;
  std::string target = "full";
  bool compare = false;
  bool paper_scale = false;
  int threads_flag = 0;
  add_common(study);
  study->add_option("-N,--replications", replications, "Number of paths");
  study->add_option("--times", time_points, "Evenly spaced grid size on (0,T]");
  study->add_option("--target", target,
                    "Estimator to study: full or large-jumps");
  study->add_flag("--compare-drop-small-jumps", compare,
                  "Score the Dickman-augmented and large-jumps-only "
                  "estimators side by side against the full-process moments");
  study->add_flag("--paper-scale", paper_scale,
                  "Use N = 500000 replications");
  study->add_option("--threads", threads_flag,
                    "Worker threads (GMGD_SIM_THREADS as fallback; "
                    "results are identical for any thread count)");

  auto* check = app.add_subcommand(
      "check-convergence",
      "Small-jump normalization ratios over a decreasing epsilon ladder");
  std::string epsilons_text = "0.1,0.01,0.001";
  std::string sector_text = "all";
  double p_test = 0.0;
  add_common(check);
  check->add_option("--epsilons", epsilons_text,
                    "Comma-separated decreasing epsilon values");
  check->add_option("--sector", sector_text,
                    "Atom subset: all, none, or comma-separated indices");
  check->add_option("--p-test", p_test,
                    "Moment order (defaults to the spec's p)");

  auto* acceptance = app.add_subcommand(
      "acceptance", "Empirical acceptance rate of the radial sampler");
  double a = 1.0;
  double p = 1.0;
  std::uint64_t trials = 100000;
  add_common(acceptance, /*with_spec=*/false);
  acceptance->add_option("--a", a, "Lower endpoint of the radial law");
  acceptance->add_option("--p", p, "Tempering index");
  acceptance->add_option("--trials", trials, "Number of proposal rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(options, component, replication);
    }
    if (study->parsed()) {
      return run_study(options, replications, time_points, target, compare,
                       paper_scale, threads_flag);
    }
    if (check->parsed()) {
      return run_check_convergence(options, epsilons_text, sector_text,
                                   p_test);
    }
    if (acceptance->parsed()) {
      return run_acceptance(options, a, p, trials);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
