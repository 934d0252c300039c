#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "satbody/linalg.hpp"
#include "satbody/norm_oracle.hpp"
#include "satbody/simplex.hpp"

namespace satbody {

/// The random quotient map G : R^(N*k) -> R^n with i.i.d. N(0, 1/n) entries.
/// Column block j (0-based) spans columns [j*k, (j+1)*k) and corresponds to
/// the j-th coordinate copy of W.
struct BlockGaussianMap {
    Index n = 0;
    Index num_blocks = 0; // N
    Index k = 0;
    Matrix g; // n x (N*k)
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    Index total_cols() const { return num_blocks * k; }
    Eigen::Ref<const Matrix> block(Index j) const;
};

BlockGaussianMap make_block_gaussian_map(Index n, Index num_blocks, Index k,
                                         std::uint64_t seed, std::uint64_t stream_id);

/// A rank-m orthogonal projection of R^n, stored by its range.
struct QuotientMap {
    Subspace range;

    Index ambient_dim() const { return range.ambient_dim(); }
    Index rank() const { return range.dim(); }
};

/// The body K~ = G~(B_Z) where Z is the l_p-sum of N copies of W
/// (p_exponent = 1 gives the l1-sum of the main construction) and
/// G~ = Q G is the map composed with an optional quotient.
///
/// When a quotient is present the effective matrix is expressed in an
/// orthonormal basis of its range, an m x (N*k) matrix; singular values and
/// all the checks below are invariant under that choice of basis.
class QuotientBody {
public:
    QuotientBody(BlockGaussianMap map, NormOracle w, double p_exponent = 1.0,
                 std::optional<QuotientMap> quotient = std::nullopt);

    const BlockGaussianMap& map() const { return map_; }
    const NormOracle& w() const { return w_; }
    double p_exponent() const { return p_exponent_; }
    const std::optional<QuotientMap>& quotient() const { return quotient_; }

    Index n() const { return map_.n; }
    Index num_blocks() const { return map_.num_blocks; }
    Index k() const { return map_.k; }
    Index m() const { return quotient_ ? quotient_->rank() : map_.n; }

    /// G~ as an m x (N*k) matrix.
    const Matrix& effective() const { return effective_; }

    /// The m x k block of G~ for coordinate copy j (0-based).
    Eigen::Ref<const Matrix> block_restriction(Index j) const;

private:
    BlockGaussianMap map_;
    NormOracle w_;
    double p_exponent_;
    std::optional<QuotientMap> quotient_;
    Matrix effective_;
};

/// Support function h(x) of the body, evaluated exactly through the dual
/// gauge of W: the max over blocks for the l1-sum, the conjugate-exponent
/// aggregate for general p.
double support_function(const QuotientBody& body, const Vector& x);

/// Same but with B_W replaced by the Euclidean ball B_2^k (the D-version of
/// the body); used by the mean-width and diameter machinery.
double support_function_euclidean(const QuotientBody& body, const Vector& x);

struct GaugeResult {
    enum class Status { Value, Infeasible, SolverFailure };
    Status status = Status::SolverFailure;
    double value = 0.0;
};

/// Minkowski gauge of x in the body, solved as a linear program over block
/// coefficients. Requires polytopal W (L1/LInf) and p_exponent = 1.
/// Infeasible exactly when x is outside the column span of G~.
GaugeResult gauge_lp(const QuotientBody& body, const Vector& x);

/// Gauge of a point in the single-block body B_j(B_W) given in the
/// coordinates of an orthonormal basis of its span: min gauge_W(w) subject
/// to R w = coords, decided by the same LP machinery.
GaugeResult gauge_in_block(const Matrix& r, const Vector& coords, const NormOracle& w);

/// Norm of x in Z = l_p-sum of N copies of W (pre-quotient, x in R^(N*k)).
double z_sum_gauge(const BlockGaussianMap& map, const NormOracle& w, double p_exponent,
                   const Vector& x);

struct ZpSandwichReport {
    Index trials = 0;
    double max_lower_violation = 0.0; // of gauge_{Z_p} <= gauge_Z
    double max_upper_violation = 0.0; // of gauge_Z <= N^(1/q) gauge_{Z_p}
    bool pass = false;
};

/// Empirical check of B_Z inside B_{Z_p} inside N^(1/q) B_Z on random
/// pre-quotient vectors. Both bodies must share the map and the oracle;
/// body_zp must carry p = q/(q-1).
ZpSandwichReport zp_sandwich_check(const QuotientBody& body_z, const QuotientBody& body_zp,
                                   double q, Index trials, RngStream& rng);

} // namespace satbody
