#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fspde/grid.hpp"
#include "fspde/spectral_model.hpp"

namespace fspde {

// Everything an experiment run needs, parsed from a JSON config file. The
// seed is mandatory: no run is ever seeded from the clock.
struct ExperimentConfig {
    std::string kind;  // simulate | estimate | consistency | normality |
                       // oracle-check | laplace-verify | classify
    SpectralModel model = heat_periodic();
    std::string model_json;  // original model description, echoed in manifests
    double theta_true = 1.0;
    double H = 0.5;
    double T = 1.0;
    std::size_t n = 1024;          // estimation grid
    std::size_t sim_factor = 4;    // simulation grid = n * sim_factor
    std::size_t N_modes = 10;
    std::vector<std::size_t> N_schedule = {5, 10, 25, 50};
    std::size_t replications = 100;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = "out";
    unsigned workers = 0;  // 0: hardware concurrency
    bool refine = false;   // double n and rerun (bias-shrinkage demonstration)

    // oracle-check / laplace-verify knobs
    double mu = 10.0;
    std::vector<double> mu_sweep = {10.0, 50.0, 100.0};
    std::vector<double> lemma_mu_grid = {10.0, 100.0, 1000.0};
    std::vector<double> lemma_H_grid = {0.5, 0.6, 0.75, 0.9};

    // normality diagnostics
    bool diagnostic_true_theta = false;
};

ExperimentConfig config_from_json(const std::string& json_text);
ExperimentConfig config_from_file(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg);

struct RunOutcome {
    bool pass = true;          // acceptance-style checks when the kind has them
    std::string summary;       // one-paragraph human-readable result
    std::map<std::string, double> metrics;
    std::vector<std::string> files_written;
};

// Per-cell Monte Carlo statistics (variance/SE reported as NaN when M = 1).
struct MonteCarloSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double median = 0.0;
    double median_abs_error = 0.0;
    double standard_error = 0.0;
};

MonteCarloSummary summarize(const std::vector<double>& sample, double reference);

RunOutcome run_simulate(const ExperimentConfig& cfg);
RunOutcome run_estimate(const ExperimentConfig& cfg);
RunOutcome run_consistency(const ExperimentConfig& cfg);
RunOutcome run_normality(const ExperimentConfig& cfg);
RunOutcome run_oracle_check(const ExperimentConfig& cfg);
RunOutcome run_laplace_verification(const ExperimentConfig& cfg);
RunOutcome run_classify(const ExperimentConfig& cfg);

RunOutcome run(const ExperimentConfig& cfg);  // dispatch on cfg.kind

// Deterministic helpers shared by runners and tests -------------------------

// Simulate mode j of the model, replication r: fBM at n*sim_factor steps,
// fOU with mu_j(theta), then restriction to the estimation grid. Returns the
// mode path and the restricted driving path.
struct SimulatedMode {
    ModePath u;
    FbmPath w;
};
SimulatedMode simulate_mode(const ExperimentConfig& cfg, std::size_t mode,
                            std::uint64_t replication);

// Run fn(i) for i in [0, count) on a small worker pool; results must be
// written into preallocated slots so reductions stay deterministic.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

std::uint64_t config_hash(const std::string& canonical_json);

}  // namespace fspde
