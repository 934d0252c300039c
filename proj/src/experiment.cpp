#include "satbody/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "satbody/parallel.hpp"

namespace satbody {

Json to_json(const SweepConfig& config) {
    Json j;
    j["body"] = to_json(config.body);
    j["m_values"] = config.m_values;
    j["trials"] = config.trials;
    j["kappa_grid"] = config.kappa_grid; // empty array = default kappa
    j["run_exact"] = config.run_exact;
    j["seed"] = config.seed;
    return j;
}

SweepConfig sweep_config_from_json(const Json& j) {
    SweepConfig config;
    config.body = body_descriptor_from_json(j.at("body"));
    config.m_values = j.at("m_values").get<std::vector<Index>>();
    config.trials = j.at("trials").get<Index>();
    config.kappa_grid = j.at("kappa_grid").get<std::vector<double>>();
    config.run_exact = j.at("run_exact").get<bool>();
    config.seed = j.at("seed").get<std::uint64_t>();
    return config;
}

std::vector<double> resolve_kappa_grid(const SweepConfig& config, Index m) {
    if (!config.kappa_grid.empty()) return config.kappa_grid;
    return {default_kappa(m, config.body.n, config.body.k)};
}

namespace {

SweepCell make_cell(const WitnessReport& report, Index m, Index trial) {
    SweepCell cell;
    cell.m = m;
    cell.kappa = report.kappa;
    cell.trial = trial;
    cell.witness = report.witness;
    // Best block: the witness when there is one, otherwise the block whose
    // cross norms come closest to clearing kappa.
    Index best = 0;
    double best_cross = -1.0;
    for (const auto& blk : report.per_block) {
        const double mc = max_cross_norm(blk);
        if (best_cross < 0.0 || mc < best_cross) {
            best_cross = mc;
            best = blk.j;
        }
        cell.omega_j0_count += blk.omega_j0_pass ? 1 : 0;
        cell.omega_jprime_count += blk.omega_jprime_pass ? 1 : 0;
        cell.brutal_count += blk.brutal_pass ? 1 : 0;
    }
    if (report.witness) best = *report.witness;
    const auto& blk = report.per_block[static_cast<std::size_t>(best)];
    cell.best_j = best;
    cell.s_min_best = blk.s_min_block;
    cell.s_max_best = blk.s_max_block;
    cell.max_cross_best = max_cross_norm(blk);
    cell.exact_pass = blk.exact_lp_pass;
    return cell;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config) {
    if (config.trials < 0) throw PreconditionError("run_sweep: negative trial count");
    const QuotientBody base_body = build_body(config.body);
    const Index n = base_body.n();
    for (Index m : config.m_values)
        if (m < base_body.k() || m > n)
            throw PreconditionError("run_sweep: rank outside [k, n]");

    SweepResult result;
    result.config = config;

    const Index num_m = static_cast<Index>(config.m_values.size());
    std::vector<std::vector<double>> grids;
    std::vector<Index> grid_offset(num_m + 1, 0);
    for (Index im = 0; im < num_m; ++im) {
        grids.push_back(resolve_kappa_grid(config, config.m_values[im]));
        grid_offset[im + 1] = grid_offset[im] + static_cast<Index>(grids.back().size());
    }
    result.cells.resize(static_cast<std::size_t>(grid_offset[num_m] * config.trials));

    const RngStream base(config.seed, 0);
    parallel_for(
        static_cast<std::size_t>(num_m * config.trials),
        [&](std::size_t idx) {
            const Index im = static_cast<Index>(idx) / config.trials;
            const Index trial = static_cast<Index>(idx) % config.trials;
            const Index m = config.m_values[im];

            std::optional<QuotientMap> quotient;
            if (m < n) {
                RngStream rng = base.substream(im).substream(trial);
                quotient = QuotientMap{sample_grassmann(n, m, rng)};
            }
            const QuotientBody body(base_body.map(), base_body.w(),
                                    base_body.p_exponent(), quotient);
            const WitnessStats stats = compute_witness_stats(body);
            const auto& grid = grids[im];
            for (std::size_t ik = 0; ik < grid.size(); ++ik) {
                const std::string id = "m=" + std::to_string(m) +
                                       "/trial=" + std::to_string(trial);
                WitnessReport report = apply_kappa(stats, grid[ik], id);
                if (config.run_exact && report.witness) {
                    auto& blk = report.per_block[static_cast<std::size_t>(*report.witness)];
                    blk.exact_lp_pass = exact_isometry_check(body, blk.j);
                }
                const std::size_t slot = static_cast<std::size_t>(
                    (grid_offset[im] + static_cast<Index>(ik)) * config.trials + trial);
                result.cells[slot] = make_cell(report, m, trial);
            }
        },
        config.threads);

    // Summaries accumulate in cell order, which is fixed, so the numbers do
    // not depend on the thread count.
    for (Index im = 0; im < num_m; ++im) {
        const auto& grid = grids[im];
        for (std::size_t ik = 0; ik < grid.size(); ++ik) {
            SweepSummaryRow rowv;
            rowv.m = config.m_values[im];
            rowv.kappa = grid[ik];
            rowv.trials = config.trials;
            double sum_cross = 0.0, sum_smin = 0.0, sum_smax = 0.0;
            double sum_frame_rate = 0.0, sum_cross_rate = 0.0;
            for (Index t = 0; t < config.trials; ++t) {
                const auto& cell = result.cells[static_cast<std::size_t>(
                    (grid_offset[im] + static_cast<Index>(ik)) * config.trials + t)];
                rowv.witness_count += cell.witness ? 1 : 0;
                sum_cross += cell.max_cross_best;
                sum_smin += cell.s_min_best;
                sum_smax += cell.s_max_best;
                sum_frame_rate += static_cast<double>(cell.omega_j0_count) /
                                  static_cast<double>(config.body.num_blocks);
                sum_cross_rate += static_cast<double>(cell.omega_jprime_count) /
                                  static_cast<double>(config.body.num_blocks);
            }
            if (config.trials > 0) {
                rowv.witness_freq = static_cast<double>(rowv.witness_count) / config.trials;
                rowv.mean_max_cross = sum_cross / config.trials;
                rowv.mean_s_min = sum_smin / config.trials;
                rowv.mean_s_max = sum_smax / config.trials;
                rowv.omega_j0_block_rate = sum_frame_rate / config.trials;
                rowv.omega_jprime_block_rate = sum_cross_rate / config.trials;
            }
            result.summary.push_back(rowv);
        }
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    CsvWriter csv(out, to_json(result.config), result.config.seed);
    csv.header({"m", "kappa", "trial", "witness", "best_j", "s_min_best", "s_max_best",
                "max_cross_best", "margin_cross", "omega_j0_count", "omega_jprime_count",
                "brutal_count", "exact_pass"});
    for (const auto& cell : result.cells) {
        csv.row({std::to_string(cell.m), format_double(cell.kappa),
                 std::to_string(cell.trial),
                 cell.witness ? std::to_string(*cell.witness) : "",
                 std::to_string(cell.best_j), format_double(cell.s_min_best),
                 format_double(cell.s_max_best), format_double(cell.max_cross_best),
                 format_double(cell.kappa - cell.max_cross_best),
                 std::to_string(cell.omega_j0_count), std::to_string(cell.omega_jprime_count),
                 std::to_string(cell.brutal_count),
                 cell.exact_pass ? (*cell.exact_pass ? "1" : "0") : ""});
    }
}

Json sweep_summary_json(const SweepResult& result) {
    Json j;
    j["tool"] = kToolVersion;
    j["config"] = to_json(result.config);
    Json rows = Json::array();
    for (const auto& row : result.summary) {
        Json r;
        r["m"] = row.m;
        r["kappa"] = row.kappa;
        r["trials"] = row.trials;
        r["witness_count"] = row.witness_count;
        r["witness_freq"] = row.witness_freq;
        r["mean_max_cross"] = row.mean_max_cross;
        r["mean_s_min"] = row.mean_s_min;
        r["mean_s_max"] = row.mean_s_max;
        r["omega_j0_block_rate"] = row.omega_j0_block_rate;
        r["omega_jprime_block_rate"] = row.omega_jprime_block_rate;
        rows.push_back(std::move(r));
    }
    j["summary"] = std::move(rows);
    return j;
}

} // namespace satbody
