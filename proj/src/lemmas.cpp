#include "satbody/lemmas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "satbody/parallel.hpp"
#include "satbody/specfun.hpp"
#include "satbody/witness.hpp"

namespace satbody {

ZeroOneMatrix::ZeroOneMatrix(Index n, std::vector<std::uint8_t> row_major_bits)
    : n_(n), bits_(std::move(row_major_bits)) {
    if (n_ < 1) throw PreconditionError("ZeroOneMatrix: N must be >= 1");
    if (bits_.size() != static_cast<std::size_t>(n_ * n_))
        throw PreconditionError("ZeroOneMatrix: entry count mismatch");
    for (auto b : bits_)
        if (b > 1) throw PreconditionError("ZeroOneMatrix: entries must be 0 or 1");
    for (Index i = 0; i < n_; ++i)
        if (at(i, i)) throw PreconditionError("ZeroOneMatrix: diagonal must be zero");
    for (Index j = 0; j < n_; ++j) {
        int ones = 0;
        for (Index i = 0; i < n_; ++i) ones += at(i, j);
        if (ones > 1)
            throw PreconditionError("ZeroOneMatrix: column with more than one 1");
    }
}

ZeroOneMatrix ZeroOneMatrix::from_ones(Index n,
                                       const std::vector<std::pair<Index, Index>>& ones) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n * n), 0);
    for (const auto& [i, j] : ones) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw PreconditionError("ZeroOneMatrix::from_ones: index out of range");
        bits[static_cast<std::size_t>(i * n + j)] = 1;
    }
    return ZeroOneMatrix(n, std::move(bits));
}

std::vector<Index> turan_select(const ZeroOneMatrix& mat) {
    const Index n = mat.size();
    std::vector<Index> row_sum(n, 0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) row_sum[i] += mat.at(i, j);

    Index heavy = 0; // rows with sum >= 2
    for (Index i = 0; i < n; ++i)
        if (row_sum[i] >= 2) ++heavy;

    std::vector<Index> out;
    if (4 * heavy >= n) {
        // Counting forces at least N/4 all-zero rows; those rows are a valid J.
        for (Index i = 0; i < n; ++i)
            if (row_sum[i] == 0) out.push_back(i);
    } else {
        // Greedy maximal subset of the light rows, ascending scan.
        for (Index i = 0; i < n; ++i) {
            if (row_sum[i] >= 2) continue;
            bool ok = true;
            for (Index j : out)
                if (mat.at(i, j) || mat.at(j, i)) ok = false;
            if (ok) out.push_back(i);
        }
    }

    const Index need = (n + 3) / 4;
    if (static_cast<Index>(out.size()) < need)
        throw Error("turan_select: selection smaller than N/4 (broken invariant)");
    for (Index i : out)
        for (Index j : out)
            if (mat.at(i, j)) throw Error("turan_select: invalid selection");
    return out;
}

namespace {

struct BruteState {
    std::vector<std::uint32_t> adj;
    std::uint32_t best_mask = 0;
    int best_count = 0;

    void search(std::uint32_t allowed, std::uint32_t chosen, int count) {
        // Vertices with no neighbor among the allowed set are always taken.
        for (;;) {
            bool changed = false;
            std::uint32_t rest = allowed;
            while (rest) {
                const int v = std::countr_zero(rest);
                rest &= rest - 1;
                if ((adj[v] & allowed) == 0) {
                    chosen |= 1u << v;
                    ++count;
                    allowed &= ~(1u << v);
                    changed = true;
                }
            }
            if (!changed) break;
        }
        if (count + std::popcount(allowed) <= best_count) return;
        if (allowed == 0) {
            if (count > best_count) {
                best_count = count;
                best_mask = chosen;
            }
            return;
        }
        // Branch on the allowed vertex of maximum residual degree.
        int pick = -1, pick_deg = -1;
        std::uint32_t rest = allowed;
        while (rest) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            const int deg = std::popcount(adj[v] & allowed);
            if (deg > pick_deg) {
                pick_deg = deg;
                pick = v;
            }
        }
        search(allowed & ~adj[pick] & ~(1u << pick), chosen | (1u << pick), count + 1);
        search(allowed & ~(1u << pick), chosen, count);
    }
};

} // namespace

std::vector<Index> turan_brute(const ZeroOneMatrix& mat) {
    const Index n = mat.size();
    if (n > 22) throw PreconditionError("turan_brute: N must be <= 22");
    BruteState state;
    state.adj.assign(n, 0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i != j && (mat.at(i, j) || mat.at(j, i))) {
                state.adj[i] |= 1u << j;
                state.adj[j] |= 1u << i;
            }
    state.search((1u << n) - 1, 0, 0);

    std::vector<Index> out;
    for (Index i = 0; i < n; ++i)
        if (state.best_mask >> i & 1) out.push_back(i);
    if (3 * static_cast<Index>(out.size()) < n)
        throw Error("turan_brute: maximum independent set below N/3 (lemma violated)");
    return out;
}

TailExperimentResult sv_tail_experiment(Index m, Index k, double sigma,
                                        const std::vector<double>& t_grid, Index trials,
                                        const RngStream& base, unsigned threads) {
    if (k < 1 || k > m) throw PreconditionError("sv_tail_experiment: need 1 <= k <= m");
    if (trials < 100) throw PreconditionError("sv_tail_experiment: trials must be >= 100");
    if (!(sigma > 0.0)) throw PreconditionError("sv_tail_experiment: sigma must be > 0");

    std::vector<double> s1(trials), sk(trials);
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) {
            RngStream rng = base.substream(t);
            const Matrix a = sample_gaussian_matrix(m, k, sigma * sigma, rng);
            const Vector sv = singular_values(a);
            s1[t] = sv(0);
            sk[t] = sv(sv.size() - 1);
        },
        threads);

    TailExperimentResult out;
    out.m = m;
    out.k = k;
    out.sigma = sigma;
    out.t_grid = t_grid;
    out.trials = trials;
    const double edge_hi = (std::sqrt(static_cast<double>(m)) + std::sqrt(static_cast<double>(k))) * sigma;
    const double edge_lo = (std::sqrt(static_cast<double>(m)) - std::sqrt(static_cast<double>(k))) * sigma;
    for (double t : t_grid) {
        Index over = 0, under = 0;
        for (Index i = 0; i < trials; ++i) {
            if (s1[i] > edge_hi + t) ++over;
            if (sk[i] < edge_lo - t) ++under;
        }
        out.empirical_upper.push_back(static_cast<double>(over) / trials);
        out.empirical_lower.push_back(static_cast<double>(under) / trials);
        out.theoretical.push_back(std::exp(-t * t / (2.0 * sigma * sigma)));
    }
    return out;
}

std::pair<double, double> mean_width_mc(const std::function<double(const Vector&)>& support,
                                        Index s, Index trials, RngStream& rng) {
    if (s < 1) throw PreconditionError("mean_width_mc: dimension must be >= 1");
    if (trials < 100) throw PreconditionError("mean_width_mc: trials must be >= 100");
    double sum = 0.0, sum_sq = 0.0;
    Vector x(s);
    for (Index t = 0; t < trials; ++t) {
        for (Index i = 0; i < s; ++i) x(i) = rng.next_gaussian();
        x /= x.norm();
        const double v = support(x);
        if (!std::isfinite(v))
            throw PreconditionError("mean_width_mc: support not finite on the sphere");
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / trials;
    const double var = std::max(0.0, sum_sq / trials - mean * mean);
    return {mean, std::sqrt(var / trials)};
}

double coordinate_section_mean_width(Index m, Index k) {
    if (k < 1 || k > m)
        throw PreconditionError("coordinate_section_mean_width: need 1 <= k <= m");
    return std::exp(std::lgamma((k + 1) * 0.5) + std::lgamma(m * 0.5) -
                    std::lgamma(k * 0.5) - std::lgamma((m + 1) * 0.5));
}

TledReport hull_mean_width_check(const QuotientBody& body, const std::vector<Index>& jc,
                            double c0, Index trials, RngStream& rng) {
    if (jc.empty()) throw PreconditionError("hull_mean_width_check: Jc must be nonempty");
    for (Index j : jc)
        if (j < 0 || j >= body.num_blocks())
            throw PreconditionError("hull_mean_width_check: index out of range");
    if (!check_global_diameter(body))
        throw PreconditionError("hull_mean_width_check: global diameter event fails");
    if (trials < 100) throw PreconditionError("hull_mean_width_check: trials must be >= 100");

    const Index m = body.m();
    // Common sphere samples for the hull and the per-block estimates keeps
    // the difference of the two sides low-noise.
    double sum = 0.0, sum_sq = 0.0;
    std::vector<double> block_sums(jc.size(), 0.0);
    Vector x(m);
    for (Index t = 0; t < trials; ++t) {
        for (Index i = 0; i < m; ++i) x(i) = rng.next_gaussian();
        x /= x.norm();
        double hull = 0.0;
        for (std::size_t b = 0; b < jc.size(); ++b) {
            const double v = (body.block_restriction(jc[b]).transpose() * x).norm();
            block_sums[b] += v;
            hull = std::max(hull, v);
        }
        sum += hull;
        sum_sq += hull * hull;
    }

    TledReport out;
    out.mstar_hull = sum / trials;
    out.se_hull = std::sqrt(std::max(0.0, sum_sq / trials - out.mstar_hull * out.mstar_hull) /
                            trials);
    for (double bs : block_sums) out.mstar_max_block = std::max(out.mstar_max_block, bs / trials);
    const double log_term =
        std::sqrt(std::log(static_cast<double>(body.num_blocks())) / static_cast<double>(m));
    const double gap = out.mstar_hull - out.mstar_max_block;
    out.c0_required = (log_term > 0.0 && gap > 0.0) ? gap / log_term : 0.0;
    out.bound_rhs = c0 * log_term + out.mstar_max_block;
    out.holds = out.mstar_hull <= out.bound_rhs + 3.0 * out.se_hull;
    return out;
}

ShrinkSet ShrinkSet::ball_section(Index dim) {
    ShrinkSet s;
    s.kind = Kind::BallSection;
    s.section_dim = dim;
    return s;
}

ShrinkSet ShrinkSet::point_cloud(Matrix pts) {
    ShrinkSet s;
    s.kind = Kind::PointCloud;
    s.points = std::move(pts);
    return s;
}

namespace {

double shrink_set_mstar(const ShrinkSet& set, Index m, double a, const RngStream& base) {
    if (set.kind == ShrinkSet::Kind::BallSection)
        return a * coordinate_section_mean_width(m, set.section_dim);
    RngStream rng = base.substream(0x6d737461); // fixed tag for the M* estimate
    const Matrix& pts = set.points;
    auto support = [&pts](const Vector& x) { return (pts.transpose() * x).maxCoeff(); };
    return mean_width_mc(support, m, 200000, rng).first;
}

} // namespace

ShrinkExperimentResult shrinking_experiment(const ShrinkSet& set, Index m, Index d, double a,
                                            double t, Index trials, const RngStream& base,
                                            unsigned threads) {
    if (d < 1 || d > m) throw PreconditionError("shrinking_experiment: need 1 <= d <= m");
    if (!(a > 0.0) || !(t > 0.0))
        throw PreconditionError("shrinking_experiment: a and t must be positive");
    if (trials < 100) throw PreconditionError("shrinking_experiment: trials must be >= 100");
    if (set.kind == ShrinkSet::Kind::BallSection) {
        if (set.section_dim < 1 || set.section_dim > m)
            throw PreconditionError("shrinking_experiment: bad section dimension");
    } else {
        if (set.points.rows() != m || set.points.cols() < 1)
            throw PreconditionError("shrinking_experiment: cloud shape mismatch");
        for (Index p = 0; p < set.points.cols(); ++p)
            if (set.points.col(p).norm() > a * (1.0 + 1e-12))
                throw PreconditionError("shrinking_experiment: cloud escapes a B_2^m");
    }

    ShrinkExperimentResult out;
    out.m = m;
    out.d = d;
    out.a = a;
    out.t = t;
    out.trials = trials;
    out.mstar_used = shrink_set_mstar(set, m, a, base);
    out.set_descriptor = set.kind == ShrinkSet::Kind::BallSection
                             ? "ball-section(" + std::to_string(set.section_dim) + ")"
                             : "cloud(" + std::to_string(set.points.cols()) + ")";
    out.theoretical_fail =
        std::exp(-t * t * static_cast<double>(m) / (2.0 * a * a) + 1.0);

    const double radius =
        a * std::sqrt(static_cast<double>(d) / static_cast<double>(m)) + out.mstar_used + t;
    std::vector<std::uint8_t> fail(trials, 0);
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t i) {
            RngStream rng = base.substream(i + 1);
            const Subspace h = sample_grassmann(m, d, rng);
            double reach = 0.0;
            if (set.kind == ShrinkSet::Kind::BallSection) {
                reach = a * operator_norm(h.basis.transpose().leftCols(set.section_dim));
            } else {
                for (Index p = 0; p < set.points.cols(); ++p)
                    reach = std::max(reach, (h.basis.transpose() * set.points.col(p)).norm());
            }
            fail[i] = reach > radius ? 1 : 0;
        },
        threads);
    out.empirical_fail =
        static_cast<double>(std::accumulate(fail.begin(), fail.end(), Index{0})) / trials;
    return out;
}

double gamma_m(Index m) {
    if (m < 1) throw PreconditionError("gamma_m: m must be >= 1");
    const double half = static_cast<double>(m) * 0.5;
    return regularized_gamma_q(half, half);
}

double chevet_gordon_bound(Index d, Index m, double a, double mstar) {
    if (d < 1 || m < 1) throw PreconditionError("chevet_gordon_bound: need d, m >= 1");
    if (!(a > 0.0) || mstar < 0.0)
        throw PreconditionError("chevet_gordon_bound: need a > 0 and mstar >= 0");
    return std::sqrt(static_cast<double>(d) / static_cast<double>(m)) * a + mstar;
}

ChevetExperimentResult chevet_gordon_experiment(const ShrinkSet& set, Index d, Index m,
                                                double a, Index trials, const RngStream& base,
                                                unsigned threads) {
    if (trials < 100)
        throw PreconditionError("chevet_gordon_experiment: trials must be >= 100");
    const double mstar = shrink_set_mstar(set, m, a, base);
    std::vector<double> maxima(trials);
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t i) {
            RngStream rng = base.substream(i + 1);
            const Matrix amat =
                sample_gaussian_matrix(d, m, 1.0 / static_cast<double>(m), rng);
            if (set.kind == ShrinkSet::Kind::BallSection) {
                maxima[i] = a * operator_norm(amat.leftCols(set.section_dim));
            } else {
                double reach = 0.0;
                for (Index p = 0; p < set.points.cols(); ++p)
                    reach = std::max(reach, (amat * set.points.col(p)).norm());
                maxima[i] = reach;
            }
        },
        threads);

    ChevetExperimentResult out;
    double sum = 0.0, sum_sq = 0.0;
    for (double v : maxima) {
        sum += v;
        sum_sq += v * v;
    }
    out.empirical_mean = sum / trials;
    out.std_error = std::sqrt(
        std::max(0.0, sum_sq / trials - out.empirical_mean * out.empirical_mean) / trials);
    out.bound = chevet_gordon_bound(d, m, a, mstar);
    out.pass = out.empirical_mean <= out.bound + 3.0 * out.std_error;
    return out;
}

} // namespace satbody
