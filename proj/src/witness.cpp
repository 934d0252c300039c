#include "satbody/witness.hpp"

#include <algorithm>
#include <cmath>

namespace satbody {

namespace {

constexpr double kKappaSlack = 1.0 + 1e-12; // inclusive boundary comparisons

double frame_lo(Index m, Index n) {
    return 0.5 * std::sqrt(static_cast<double>(m) / static_cast<double>(n));
}

double frame_hi(Index m, Index n) {
    return 2.0 * std::sqrt(static_cast<double>(m) / static_cast<double>(n));
}

} // namespace

double inclusion_kappa_max(Index m, Index n, Index k) {
    return 0.5 * std::sqrt(static_cast<double>(m) /
                           (static_cast<double>(n) * static_cast<double>(k)));
}

double default_kappa(Index m, Index n, Index k) {
    return std::sqrt(static_cast<double>(m) /
                     (64.0 * static_cast<double>(n) * static_cast<double>(k)));
}

FrameCheck check_block_frame(const QuotientBody& body, Index j) {
    const Vector sv = singular_values(body.block_restriction(j));
    FrameCheck out;
    out.s_max = sv(0);
    out.s_min = sv(sv.size() - 1);
    out.pass = frame_lo(body.m(), body.n()) <= out.s_min &&
               out.s_max <= frame_hi(body.m(), body.n());
    return out;
}

CrossCheck check_cross_inclusion(const QuotientBody& body, Index j, double kappa) {
    if (!(kappa > 0.0)) throw PreconditionError("check_cross_inclusion: kappa must be > 0");
    const Subspace ej = span_of_columns(body.block_restriction(j));
    CrossCheck out;
    out.cross_norms.reserve(body.num_blocks() - 1);
    for (Index i = 0; i < body.num_blocks(); ++i) {
        if (i == j) continue;
        // P_{E_j} restricted to the image of a Euclidean ball: the norm of
        // U_j^T G~|F_i since U_j has orthonormal columns.
        const double s1 = operator_norm(ej.basis.transpose() * body.block_restriction(i));
        out.cross_norms.push_back(s1);
        out.max_cross_norm = std::max(out.max_cross_norm, s1);
    }
    out.pass = out.max_cross_norm <= kappa;
    return out;
}

double max_cross_norm(const BlockCheckReport& block) {
    double best = 0.0;
    for (double v : block.cross_norms) best = std::max(best, v);
    return best;
}

WitnessStats compute_witness_stats(const QuotientBody& body) {
    WitnessStats stats;
    stats.m = body.m();
    stats.n = body.n();
    stats.k = body.k();
    stats.num_blocks = body.num_blocks();
    stats.frame_lo = frame_lo(stats.m, stats.n);
    stats.frame_hi = frame_hi(stats.m, stats.n);
    stats.s_min.resize(stats.num_blocks);
    stats.s_max.resize(stats.num_blocks);
    stats.cross = Matrix::Zero(stats.num_blocks, stats.num_blocks);

    std::vector<Matrix> bases(stats.num_blocks);
    for (Index j = 0; j < stats.num_blocks; ++j) {
        const Vector sv = singular_values(body.block_restriction(j));
        stats.s_max[j] = sv(0);
        stats.s_min[j] = sv(sv.size() - 1);
        bases[j] = span_of_columns(body.block_restriction(j)).basis;
    }
    for (Index j = 0; j < stats.num_blocks; ++j) {
        for (Index i = 0; i < stats.num_blocks; ++i) {
            if (i == j) continue;
            stats.cross(j, i) =
                operator_norm(bases[j].transpose() * body.block_restriction(i));
        }
    }
    return stats;
}

WitnessReport apply_kappa(const WitnessStats& stats, double kappa,
                          const std::string& quotient_id) {
    if (!(kappa > 0.0)) throw PreconditionError("apply_kappa: kappa must be > 0");
    const bool inclusion_ok =
        kappa <= inclusion_kappa_max(stats.m, stats.n, stats.k) * kKappaSlack;

    WitnessReport report;
    report.quotient_id = quotient_id;
    report.kappa = kappa;
    report.per_block.resize(stats.num_blocks);
    for (Index j = 0; j < stats.num_blocks; ++j) {
        BlockCheckReport& blk = report.per_block[j];
        blk.j = j;
        blk.s_min_block = stats.s_min[j];
        blk.s_max_block = stats.s_max[j];
        blk.omega_j0_pass =
            stats.frame_lo <= blk.s_min_block && blk.s_max_block <= stats.frame_hi;
        blk.cross_norms.reserve(stats.num_blocks - 1);
        double max_cross = 0.0;
        for (Index i = 0; i < stats.num_blocks; ++i) {
            if (i == j) continue;
            blk.cross_norms.push_back(stats.cross(j, i));
            max_cross = std::max(max_cross, stats.cross(j, i));
        }
        blk.omega_jprime_pass = max_cross <= kappa;
        blk.brutal_pass = blk.omega_j0_pass && blk.omega_jprime_pass && inclusion_ok;
        if (blk.brutal_pass && !report.witness) report.witness = j;
    }
    return report;
}

WitnessReport find_witness(const QuotientBody& body, double kappa, bool run_exact,
                           const std::string& quotient_id) {
    WitnessReport report = apply_kappa(compute_witness_stats(body), kappa, quotient_id);
    if (run_exact) {
        for (auto& blk : report.per_block)
            if (blk.brutal_pass) blk.exact_lp_pass = exact_isometry_check(body, blk.j);
    }
    return report;
}

bool exact_isometry_check(const QuotientBody& body, Index j) {
    const NormOracle& w = body.w();
    if (!w.polytopal())
        throw PreconditionError("exact_isometry_check: oracle is not polytopal");
    if (body.p_exponent() != 1.0)
        throw PreconditionError("exact_isometry_check: only the l1-sum body is supported");
    if (j < 0 || j >= body.num_blocks())
        throw PreconditionError("exact_isometry_check: index out of range");

    const Subspace ej = span_of_columns(body.block_restriction(j));
    const Matrix r = ej.basis.transpose() * body.block_restriction(j); // k x k
    for (Index i = 0; i < body.num_blocks(); ++i) {
        if (i == j) continue;
        for (const Vector& v : *w.polytopal_vertices) {
            const Vector coords = ej.basis.transpose() * (body.block_restriction(i) * v);
            const GaugeResult g = gauge_in_block(r, coords, w);
            if (g.status == GaugeResult::Status::SolverFailure)
                throw NumericalError("exact_isometry_check: LP did not solve");
            if (g.status == GaugeResult::Status::Infeasible) return false;
            if (g.value > 1.0 + 1e-9) return false; // inclusive boundary
        }
    }
    return true;
}

PerturbationReport perturbation_check(const QuotientBody& body, const QuotientMap& qprime,
                                      Index j, double kappa) {
    if (!body.quotient())
        throw PreconditionError("perturbation_check: body carries no quotient map");
    if (j < 0 || j >= body.num_blocks())
        throw PreconditionError("perturbation_check: index out of range");
    const Index n = body.n();
    const Index m = body.m();
    if (qprime.ambient_dim() != n || qprime.rank() != m)
        throw PreconditionError("perturbation_check: quotient shape mismatch");

    PerturbationReport report;
    report.delta = 1.0 / (8.0 * std::sqrt(static_cast<double>(n)));
    report.proj_dist = projection_distance(body.quotient()->range, qprime.range);
    if (report.proj_dist > report.delta * (1.0 + 1e-9))
        throw PreconditionError("perturbation_check: ||Q - Q'|| exceeds 1/(8 sqrt(n))");
    report.delta1 =
        4.0 * report.delta * std::sqrt(static_cast<double>(n) / static_cast<double>(m));

    const Matrix& g = body.map().g;
    const Matrix uprime = qprime.range.basis; // n x m
    const Matrix block_prime = uprime.transpose() * g.middleCols(j * body.k(), body.k());

    const Vector sv = singular_values(block_prime);
    const double lo = 0.25 * std::sqrt(static_cast<double>(m) / static_cast<double>(n));
    const double hi = 2.25 * std::sqrt(static_cast<double>(m) / static_cast<double>(n));
    report.relaxed_bounds_pass = lo <= sv(sv.size() - 1) && sv(0) <= hi;

    const Subspace ebar = span_of_columns(block_prime);
    bool cross_ok = true;
    for (Index i = 0; i < body.num_blocks(); ++i) {
        if (i == j) continue;
        const Matrix cross =
            ebar.basis.transpose() * (uprime.transpose() * g.middleCols(i * body.k(), body.k()));
        if (operator_norm(cross) > 2.0 * kappa) cross_ok = false;
    }
    report.relaxed_kappa_pass = cross_ok;

    // Ranges of both block images seen in the common ambient space R^n.
    const Matrix u = body.quotient()->range.basis;
    const Subspace ej_n =
        span_of_columns(u * (u.transpose() * g.middleCols(j * body.k(), body.k())));
    const Subspace ebar_n = span_of_columns(uprime * block_prime);
    report.block_proj_dist = projection_distance(ej_n, ebar_n);
    report.block_dist_pass = report.block_proj_dist <= report.delta1;
    return report;
}

double max_block_operator_norm(const BlockGaussianMap& map) {
    double best = 0.0;
    for (Index j = 0; j < map.num_blocks; ++j)
        best = std::max(best, operator_norm(map.block(j)));
    return best;
}

bool check_global_diameter(const QuotientBody& body) {
    return max_block_operator_norm(body.map()) <= 2.0;
}

} // namespace satbody
