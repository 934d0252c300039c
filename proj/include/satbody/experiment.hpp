#pragma once

#include <optional>
#include <vector>

#include "satbody/io.hpp"
#include "satbody/witness.hpp"

namespace satbody {

/// A witness sweep over Haar-random quotient maps: for every rank in
/// m_values and every trial, one quotient map is drawn and the per-block
/// statistics are evaluated against every kappa in the grid. All randomness
/// derives from the single seed; trials are embarrassingly parallel and
/// merged by (m, kappa, trial) so the output does not depend on the thread
/// count.
struct SweepConfig {
    BodyDescriptor body;
    std::vector<Index> m_values;
    Index trials = 0;
    std::vector<double> kappa_grid; // empty = the default kappa per m
    bool run_exact = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

Json to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const Json& j);

struct SweepCell {
    Index m = 0;
    double kappa = 0.0;
    Index trial = 0;
    std::optional<Index> witness;
    Index best_j = 0; // witness if present, else the block closest to passing
    double s_min_best = 0.0, s_max_best = 0.0, max_cross_best = 0.0;
    Index omega_j0_count = 0;
    Index omega_jprime_count = 0;
    Index brutal_count = 0;
    std::optional<bool> exact_pass;
};

struct SweepSummaryRow {
    Index m = 0;
    double kappa = 0.0;
    Index trials = 0;
    Index witness_count = 0;
    double witness_freq = 0.0;
    double mean_max_cross = 0.0;
    double mean_s_min = 0.0;
    double mean_s_max = 0.0;
    double omega_j0_block_rate = 0.0;     // fraction of (block, trial) frame passes
    double omega_jprime_block_rate = 0.0; // fraction of (block, trial) cross passes
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepCell> cells; // sorted by (m index, kappa index, trial)
    std::vector<SweepSummaryRow> summary;
};

SweepResult run_sweep(const SweepConfig& config);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
Json sweep_summary_json(const SweepResult& result);

/// Resolved kappa grid for a given rank (the default when the config grid
/// is empty).
std::vector<double> resolve_kappa_grid(const SweepConfig& config, Index m);

} // namespace satbody
