#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace satbody {

/// The universal constants of the constraint systems. The source material
/// only pins Cprime >= max{20, 2(C0+4)}; everything else is an overridable
/// knob so each inequality stays computable.
struct ParamConstants {
    double c0_width = 1.0; // C0, the mean-width constant
    double cprime = 20.0;  // C', must be >= max{20, 2(C0+4)}
    double c2_net = 3.0;   // C2, the net-cardinality constant
    double c1 = 1.0;       // the little existential constants (c0, c0', c1, ...)
};

/// Evaluation of every displayed condition plus the probability bounds for
/// one parameter tuple. All log quantities are natural logarithms and are
/// never exponentiated (values like e^(-9n/32) underflow long before the
/// interesting regime).
struct ParamCertificate {
    std::uint64_t n = 0, m0 = 0, big_n = 0, k = 0;
    std::optional<double> q;
    ParamConstants constants;

    double kappa = 0.0;
    std::uint64_t ell = 0; // ceil(N/3)
    double delta = 0.0;    // 1/(8 sqrt(n))

    std::vector<std::pair<std::string, bool>> checks; // ordered, named
    bool feasible = false;                            // conjunction of checks

    double log_omega1_bound = 0.0;  // log(N e^(-9n/32))
    double log_singleop_bound = 0.0;
    double log_union_bound = 0.0;   // with the Grassmannian net cardinality
    double kmax = 0.0;
    std::array<double, 3> kmax_terms{}; // the three min-terms, before the constant
    double c1_max_feasible = 0.0;   // largest c1 with k at the induced boundary feasible

    // q-mode extras
    std::optional<double> beta, gamma;
    std::optional<double> prop_kmax; // the proposition-shaped min bound
    std::optional<double> unproven_eta_bound;

    bool net_within_coarse_bound = false; // net log <= m n log n

    bool check(const std::string& name) const;
};

/// log of the delta-net cardinality bound on rank-m projections of R^n:
/// m (n - m) log(C2 / delta). Requires 0 < delta < C2.
double net_cardinality_log(std::uint64_t n, std::uint64_t m, double delta, double c2);

/// The l1-sum constraint system: kappa = sqrt(m0 / (64 n k)).
/// Precondition: 1 <= k <= m0 <= n <= k N.
ParamCertificate certify_params(std::uint64_t n, std::uint64_t m0, std::uint64_t big_n,
                                std::uint64_t k, const ParamConstants& constants = {});

/// The lp-sum variant: kappa = sqrt(m0 / (64 n k)) N^(-1/q) and the
/// q-dependent exponents beta = (q+2)/(2q-2), gamma = (q+1)/(2q-2).
/// Requires q > 2 for the arithmetic; q > 4 is a named check, not an error.
/// with_unproven_eta additionally evaluates the sharper eta-exponent bound
/// whose proof is not included in the source material (off by default).
ParamCertificate certify_params_q(std::uint64_t n, std::uint64_t m0, std::uint64_t big_n,
                                  std::uint64_t k, double q,
                                  const ParamConstants& constants = {},
                                  bool with_unproven_eta = false);

/// Default block count for the q-variant: ceil((n^(3/2) log n)^p) with
/// p = q/(q-1). Throws if the value does not fit in 64 bits.
std::uint64_t default_block_count_q(std::uint64_t n, double q);

} // namespace satbody
