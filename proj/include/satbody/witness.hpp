#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satbody/body.hpp"

namespace satbody {

/// Largest kappa compatible with the sufficient inclusion at the given
/// shape: (1/(2 sqrt(k))) sqrt(m/n). Use this helper everywhere so boundary
/// comparisons are bit-consistent.
double inclusion_kappa_max(Index m, Index n, Index k);

/// Canonical default kappa = sqrt(m / (64 n k)).
double default_kappa(Index m, Index n, Index k);

struct FrameCheck {
    double s_min = 0.0;
    double s_max = 0.0;
    bool pass = false; // (1/2) sqrt(m/n) <= s_min and s_max <= 2 sqrt(m/n)
};

/// Extreme singular values of block j of the effective matrix against the
/// two-sided frame window.
FrameCheck check_block_frame(const QuotientBody& body, Index j);

struct CrossCheck {
    std::vector<double> cross_norms; // s1(P_{E_j} G~|F_i) for i != j, ascending i
    double max_cross_norm = 0.0;
    bool pass = false; // max <= kappa
};

/// Operator norms of the cross projections of every other block's Euclidean
/// image onto the span of block j. A convex hull lies in a ball iff each
/// generator set does, so the max against kappa decides the inclusion event
/// exactly.
CrossCheck check_cross_inclusion(const QuotientBody& body, Index j, double kappa);

struct BlockCheckReport {
    Index j = 0;
    double s_min_block = 0.0;
    double s_max_block = 0.0;
    bool omega_j0_pass = false;
    std::vector<double> cross_norms;
    bool omega_jprime_pass = false;
    bool brutal_pass = false;
    std::optional<bool> exact_lp_pass;
};

struct WitnessReport {
    std::string quotient_id;
    double kappa = 0.0;
    std::vector<BlockCheckReport> per_block;
    std::optional<Index> witness; // smallest passing index
};

double max_cross_norm(const BlockCheckReport& block);

/// Kappa-independent per-block statistics of one body; a sweep computes
/// these once per quotient map and evaluates many kappas against them.
struct WitnessStats {
    Index m = 0, n = 0, k = 0, num_blocks = 0;
    double frame_lo = 0.0, frame_hi = 0.0;
    std::vector<double> s_min, s_max;
    Matrix cross; // cross(j, i) = s1(P_{E_j} G~|F_i); diagonal unused
};

WitnessStats compute_witness_stats(const QuotientBody& body);

WitnessReport apply_kappa(const WitnessStats& stats, double kappa,
                          const std::string& quotient_id = "");

/// Scan all blocks: a witness is the smallest j whose frame and cross
/// events both hold while kappa satisfies the sufficient-inclusion
/// arithmetic. With run_exact set, every brutal-passing block is also put
/// through the exact LP membership check.
WitnessReport find_witness(const QuotientBody& body, double kappa,
                           bool run_exact = false, const std::string& quotient_id = "");

/// Exact certificate for block j: every generator of every other block's
/// body projects into the block-j body (LP membership, inclusive at the
/// boundary). True certifies a 1-complemented isometric copy of W spanned
/// by the block-j image. Requires polytopal W and the l1-sum body.
bool exact_isometry_check(const QuotientBody& body, Index j);

struct PerturbationReport {
    double delta = 0.0;     // admissible radius 1/(8 sqrt(n))
    double proj_dist = 0.0; // measured ||Q - Q'||
    double delta1 = 0.0;    // 4 delta sqrt(n/m)
    double block_proj_dist = 0.0; // measured ||P_{E_j} - P_{E_j'}||
    bool block_dist_pass = false;     // block_proj_dist <= delta1
    bool relaxed_bounds_pass = false; // frame with factors 1/4 and 9/4 under Q'
    bool relaxed_kappa_pass = false;  // cross norms <= 2 kappa under Q'
};

/// Step-II stability check for block j: Q' must lie within 1/(8 sqrt(n)) of
/// the body's quotient (precondition, violations throw). The block-distance bound is
/// expected whenever the strict events held at Q and no block has Euclidean
/// norm above 2.
PerturbationReport perturbation_check(const QuotientBody& body, const QuotientMap& qprime,
                                      Index j, double kappa);

/// Largest pre-quotient block operator norm max_j s1(G|F_j).
double max_block_operator_norm(const BlockGaussianMap& map);

/// True iff every pre-quotient block has operator norm at most 2, i.e. the
/// global body D sits inside 2 B_2^n.
bool check_global_diameter(const QuotientBody& body);

} // namespace satbody
