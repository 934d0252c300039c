#include "satbody/body.hpp"

#include <cmath>

namespace satbody {

Eigen::Ref<const Matrix> BlockGaussianMap::block(Index j) const {
    if (j < 0 || j >= num_blocks)
        throw PreconditionError("BlockGaussianMap::block: index out of range");
    return g.middleCols(j * k, k);
}

BlockGaussianMap make_block_gaussian_map(Index n, Index num_blocks, Index k,
                                         std::uint64_t seed, std::uint64_t stream_id) {
    if (n < 1 || num_blocks < 1 || k < 1)
        throw PreconditionError("make_block_gaussian_map: n, N, k must be >= 1");
    BlockGaussianMap map;
    map.n = n;
    map.num_blocks = num_blocks;
    map.k = k;
    map.seed = seed;
    map.stream_id = stream_id;
    RngStream rng(seed, stream_id);
    map.g = sample_gaussian_matrix(n, num_blocks * k, 1.0 / static_cast<double>(n), rng);
    return map;
}

QuotientBody::QuotientBody(BlockGaussianMap map, NormOracle w, double p_exponent,
                           std::optional<QuotientMap> quotient)
    : map_(std::move(map)), w_(std::move(w)), p_exponent_(p_exponent),
      quotient_(std::move(quotient)) {
    if (w_.k != map_.k)
        throw PreconditionError("QuotientBody: oracle dimension does not match block size");
    if (!(p_exponent_ >= 1.0) || !std::isfinite(p_exponent_))
        throw PreconditionError("QuotientBody: p_exponent must lie in [1, inf)");
    if (quotient_) {
        if (quotient_->ambient_dim() != map_.n)
            throw PreconditionError("QuotientBody: quotient ambient dimension mismatch");
        effective_ = quotient_->range.basis.transpose() * map_.g;
    } else {
        effective_ = map_.g;
    }
}

Eigen::Ref<const Matrix> QuotientBody::block_restriction(Index j) const {
    if (j < 0 || j >= num_blocks())
        throw PreconditionError("block_restriction: index out of range");
    return effective_.middleCols(j * k(), k());
}

namespace {

double aggregate_blocks(const QuotientBody& body, const Vector& x,
                        const std::function<double(const Vector&)>& dual) {
    if (x.size() != body.m())
        throw PreconditionError("support_function: vector dimension mismatch");
    const double p = body.p_exponent();
    if (p == 1.0) {
        double best = 0.0;
        for (Index j = 0; j < body.num_blocks(); ++j)
            best = std::max(best, dual(body.block_restriction(j).transpose() * x));
        return best;
    }
    const double pconj = p / (p - 1.0);
    double sum = 0.0;
    for (Index j = 0; j < body.num_blocks(); ++j)
        sum += std::pow(dual(body.block_restriction(j).transpose() * x), pconj);
    return std::pow(sum, 1.0 / pconj);
}

} // namespace

double support_function(const QuotientBody& body, const Vector& x) {
    return aggregate_blocks(body, x, body.w().dual_gauge);
}

double support_function_euclidean(const QuotientBody& body, const Vector& x) {
    return aggregate_blocks(body, x, [](const Vector& y) { return y.norm(); });
}

namespace {

GaugeResult from_lp(const LpSolution& sol) {
    GaugeResult out;
    switch (sol.status) {
        case LpStatus::Optimal:
            out.status = GaugeResult::Status::Value;
            out.value = std::max(0.0, sol.value);
            return out;
        case LpStatus::Infeasible:
            out.status = GaugeResult::Status::Infeasible;
            return out;
        default:
            out.status = GaugeResult::Status::SolverFailure;
            return out;
    }
}

// Gauge LP over the columns of `a` grouped in blocks of size k:
//   min sum_j gauge_W(w_j)  s.t.  sum_j A_j w_j = x.
// L1: split variables, objective = sum of both halves.
// LInf: split variables plus one scale variable per block bounding every
// coordinate of that block.
GaugeResult block_gauge_lp(const Matrix& a, Index k, const NormOracle& w, const Vector& x) {
    const Index m = a.rows();
    const Index nb = a.cols() / k;
    const double sqrt_k = std::sqrt(static_cast<double>(k));

    if (w.kind == NormKind::L1) {
        const Index nv = 2 * a.cols();
        LpProblem lp;
        lp.c = Vector::Ones(nv);
        lp.a_eq.resize(m, nv);
        lp.a_eq << a, -a;
        lp.b_eq = x;
        lp.a_ub.resize(0, nv);
        lp.b_ub.resize(0);
        return from_lp(solve_lp(lp));
    }
    if (w.kind == NormKind::LInf) {
        // Variables: u (N*k), v (N*k), s (N). gauge_W(w_j) = sqrt(k) * max_i |w_ji|,
        // encoded as u_ji + v_ji <= s_j with w = u - v.
        const Index nc = a.cols();
        const Index nv = 2 * nc + nb;
        LpProblem lp;
        lp.c = Vector::Zero(nv);
        for (Index j = 0; j < nb; ++j) lp.c(2 * nc + j) = sqrt_k;
        lp.a_eq = Matrix::Zero(m, nv);
        lp.a_eq.leftCols(nc) = a;
        lp.a_eq.middleCols(nc, nc) = -a;
        lp.b_eq = x;
        lp.a_ub = Matrix::Zero(nc, nv);
        lp.b_ub = Vector::Zero(nc);
        for (Index j = 0; j < nb; ++j) {
            for (Index i = 0; i < k; ++i) {
                const Index col = j * k + i;
                lp.a_ub(col, col) = 1.0;
                lp.a_ub(col, nc + col) = 1.0;
                lp.a_ub(col, 2 * nc + j) = -1.0;
            }
        }
        return from_lp(solve_lp(lp));
    }
    throw PreconditionError("gauge LP requires a polytopal oracle (l1 or linf)");
}

} // namespace

GaugeResult gauge_lp(const QuotientBody& body, const Vector& x) {
    if (!body.w().polytopal())
        throw PreconditionError("gauge_lp: oracle is not polytopal");
    if (body.p_exponent() != 1.0)
        throw PreconditionError("gauge_lp: only the l1-sum body is supported");
    if (x.size() != body.m())
        throw PreconditionError("gauge_lp: vector dimension mismatch");
    return block_gauge_lp(body.effective(), body.k(), body.w(), x);
}

GaugeResult gauge_in_block(const Matrix& r, const Vector& coords, const NormOracle& w) {
    if (r.rows() != coords.size() || r.cols() != w.k)
        throw PreconditionError("gauge_in_block: dimension mismatch");
    return block_gauge_lp(r, w.k, w, coords);
}

double z_sum_gauge(const BlockGaussianMap& map, const NormOracle& w, double p_exponent,
                   const Vector& x) {
    if (x.size() != map.total_cols())
        throw PreconditionError("z_sum_gauge: vector dimension mismatch");
    if (p_exponent == 1.0) {
        double sum = 0.0;
        for (Index j = 0; j < map.num_blocks; ++j)
            sum += w.gauge(x.segment(j * map.k, map.k));
        return sum;
    }
    double sum = 0.0;
    for (Index j = 0; j < map.num_blocks; ++j)
        sum += std::pow(w.gauge(x.segment(j * map.k, map.k)), p_exponent);
    return std::pow(sum, 1.0 / p_exponent);
}

ZpSandwichReport zp_sandwich_check(const QuotientBody& body_z, const QuotientBody& body_zp,
                                   double q, Index trials, RngStream& rng) {
    if (body_z.p_exponent() != 1.0)
        throw PreconditionError("zp_sandwich_check: body_z must be the l1-sum");
    if (!(q > 1.0))
        throw PreconditionError("zp_sandwich_check: q must exceed 1");
    const double p = q / (q - 1.0);
    if (std::fabs(body_zp.p_exponent() - p) > 1e-12)
        throw PreconditionError("zp_sandwich_check: body_zp must carry p = q/(q-1)");

    const auto& map = body_z.map();
    const double factor =
        std::pow(static_cast<double>(map.num_blocks), 1.0 / q);
    ZpSandwichReport report;
    report.trials = trials;
    for (Index t = 0; t < trials; ++t) {
        Vector x(map.total_cols());
        for (Index i = 0; i < x.size(); ++i) x(i) = rng.next_gaussian();
        const double gz = z_sum_gauge(map, body_z.w(), 1.0, x);
        const double gzp = z_sum_gauge(map, body_zp.w(), p, x);
        report.max_lower_violation = std::max(report.max_lower_violation, gzp - gz);
        report.max_upper_violation = std::max(report.max_upper_violation, gz - factor * gzp);
    }
    report.pass = report.max_lower_violation <= 1e-9 && report.max_upper_violation <= 1e-9;
    return report;
}

} // namespace satbody
