#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satbody/body.hpp"
#include "satbody/linalg.hpp"

namespace satbody {

/// N x N 0/1 matrix with at most one 1 per column and a zero diagonal
/// (the hypotheses of the independent-set selection lemma; the constructor
/// rejects anything else).
class ZeroOneMatrix {
public:
    ZeroOneMatrix(Index n, std::vector<std::uint8_t> row_major_bits);

    /// Convenience constructor from the positions of the 1 entries.
    static ZeroOneMatrix from_ones(Index n, const std::vector<std::pair<Index, Index>>& ones);

    Index size() const { return n_; }
    bool at(Index i, Index j) const { return bits_[i * n_ + j] != 0; }

private:
    Index n_;
    std::vector<std::uint8_t> bits_;
};

/// Constructive selection of J with |J| >= ceil(N/4) and lambda_ij = 0 for
/// all i, j in J: either at least N/4 rows are all zero, or a greedy
/// maximal set inside the small-row-sum indices works. Deterministic
/// (ascending index scan).
std::vector<Index> turan_select(const ZeroOneMatrix& mat);

/// Exhaustive maximum independent set (N <= 22). The lemma guarantees size
/// >= ceil(N/3); that is asserted and a violation throws.
std::vector<Index> turan_brute(const ZeroOneMatrix& mat);

struct TailExperimentResult {
    Index m = 0, k = 0;
    double sigma = 0.0;
    std::vector<double> t_grid;
    std::vector<double> empirical_upper; // freq of s1 > (sqrt m + sqrt k) sigma + t
    std::vector<double> empirical_lower; // freq of s_k < (sqrt m - sqrt k) sigma - t
    std::vector<double> theoretical;     // exp(-t^2 / (2 sigma^2))
    Index trials = 0;
};

/// Monte Carlo check of both singular-value tail inequalities.
TailExperimentResult sv_tail_experiment(Index m, Index k, double sigma,
                                        const std::vector<double>& t_grid, Index trials,
                                        const RngStream& base, unsigned threads = 0);

/// Spherical average of a support function over S^(s-1) (Gaussian
/// directions, normalized). Returns (estimate, standard error).
std::pair<double, double> mean_width_mc(const std::function<double(const Vector&)>& support,
                                        Index s, Index trials, RngStream& rng);

/// Closed form of E |P x| for x uniform on S^(m-1) and P a rank-k
/// orthogonal projection (mean width of a ball section, radius 1).
double coordinate_section_mean_width(Index m, Index k);

struct TledReport {
    double mstar_hull = 0.0;      // M*(D~_{Jc})
    double se_hull = 0.0;
    double mstar_max_block = 0.0; // max_{j in Jc} M*(D~_j)
    double c0_required = 0.0;     // smallest C0 making the bound hold here
    double bound_rhs = 0.0;       // C0 sqrt(log N / m) + max block term
    bool holds = false;
};

/// Estimates both sides of the hull mean-width bound on one body instance.
/// Requires the global diameter event (all pre-quotient block norms <= 2).
TledReport hull_mean_width_check(const QuotientBody& body, const std::vector<Index>& jc,
                            double c0, Index trials, RngStream& rng);

/// Test set for the shrinking experiment: either a coordinate ball section
/// of dimension section_dim (scaled by the experiment's a), or an explicit
/// point cloud (columns; must lie inside a B_2^m).
struct ShrinkSet {
    enum class Kind { BallSection, PointCloud };
    Kind kind = Kind::BallSection;
    Index section_dim = 0;
    Matrix points;

    static ShrinkSet ball_section(Index dim);
    static ShrinkSet point_cloud(Matrix pts);
};

struct ShrinkExperimentResult {
    Index m = 0, d = 0;
    double a = 0.0;
    double t = 0.0;
    std::string set_descriptor;
    double empirical_fail = 0.0;
    double theoretical_fail = 0.0; // exp(-t^2 m / (2 a^2) + 1)
    double mstar_used = 0.0;
    Index trials = 0;
};

/// Samples Haar rank-d projections and counts how often the projected set
/// escapes the radius a sqrt(d/m) + M*(S) + t.
ShrinkExperimentResult shrinking_experiment(const ShrinkSet& set, Index m, Index d, double a,
                                            double t, Index trials, const RngStream& base,
                                            unsigned threads = 0);

/// gamma_m = P(chi^2_m >= m), the regularized upper incomplete gamma at
/// (m/2, m/2).
double gamma_m(Index m);

/// sqrt(d/m) a + M*(S): the mean-of-max bound for a d x m Gaussian matrix
/// with entry variance 1/m applied to S, S inside a B_2^m.
double chevet_gordon_bound(Index d, Index m, double a, double mstar);

struct ChevetExperimentResult {
    double empirical_mean = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    bool pass = false; // mean <= bound + 3 std errors
};

/// Empirical companion of the bound above on a ball section or cloud.
ChevetExperimentResult chevet_gordon_experiment(const ShrinkSet& set, Index d, Index m,
                                                double a, Index trials, const RngStream& base,
                                                unsigned threads = 0);

} // namespace satbody
