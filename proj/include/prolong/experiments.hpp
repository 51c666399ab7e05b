#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prolong/interpolation.hpp"
#include "prolong/modelred.hpp"
#include "prolong/oracles.hpp"

namespace prolong {
namespace experiments {

struct ExperimentConfig {
    std::string id;
    std::uint64_t seed = 1;
    int jobs = 1;
    int nodes = 0;      // 0 selects the experiment default
    int dimension = 0;
    int trials = 0;
    double noise = 0.1;
    std::string out_dir;
};

struct MetricRow {
    std::string name;
    double value = 0.0;
};

struct ExperimentReport {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<MetricRow> summary;

    double metric(const std::string& name) const;
};

/// Dispatch on config.id; throws UnsupportedId for unknown experiments.
ExperimentReport run_experiment(const ExperimentConfig& config);

ExperimentReport run_permanent(const ExperimentConfig& config);
ExperimentReport run_determinant(const ExperimentConfig& config);
ExperimentReport run_elliptic(const ExperimentConfig& config);
ExperimentReport run_surface_pnn(const ExperimentConfig& config);
ExperimentReport run_chirp_sobolev(const ExperimentConfig& config);
ExperimentReport run_shrinkage(const ExperimentConfig& config);
ExperimentReport run_instability(const ExperimentConfig& config);

const std::vector<std::string>& experiment_ids();

} // namespace experiments
} // namespace prolong
