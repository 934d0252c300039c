#include "satbody/params.hpp"

#include <algorithm>
#include <cmath>

#include "satbody/errors.hpp"
#include "satbody/specfun.hpp"

namespace satbody {

namespace {

// Inclusive comparison robust to last-ulp noise; the displayed conditions
// are all scale-free so a relative tolerance is appropriate.
bool leq(double a, double b) {
    return a <= b + 1e-12 * std::max({std::fabs(a), std::fabs(b), 1e-300});
}

double kappa_l1(double n, double m0, double k) {
    return std::sqrt(m0 / (64.0 * n * k));
}

// The kappa constraint system at a candidate k with the canonical kappa(k).
bool kappa_system_feasible(double n, double m0, double big_n, double k, double cprime) {
    const double kappa = kappa_l1(n, m0, k);
    const double lhs1 = cprime * std::sqrt(std::max(k, std::log(big_n)) / m0);
    if (!leq(lhs1, kappa)) return false;
    if (!leq(kappa, 1.0)) return false;
    if (!leq(256.0 * m0 * n * std::log(n), kappa * kappa * m0 * big_n)) return false;
    if (!leq(8.0 * std::log(big_n), n)) return false;
    return true;
}

} // namespace

bool ParamCertificate::check(const std::string& name) const {
    for (const auto& [key, value] : checks)
        if (key == name) return value;
    throw PreconditionError("ParamCertificate: no check named " + name);
}

double net_cardinality_log(std::uint64_t n, std::uint64_t m, double delta, double c2) {
    if (!(delta > 0.0) || !(delta < c2))
        throw PreconditionError("net_cardinality_log: need 0 < delta < C2");
    if (m > n) throw PreconditionError("net_cardinality_log: need m <= n");
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return md * (nd - md) * std::log(c2 / delta);
}

ParamCertificate certify_params(std::uint64_t n, std::uint64_t m0, std::uint64_t big_n,
                                std::uint64_t k, const ParamConstants& constants) {
    if (!(1 <= k && k <= m0 && m0 <= n))
        throw PreconditionError("certify_params: need 1 <= k <= m0 <= n");
    if (!(static_cast<double>(n) <= static_cast<double>(k) * static_cast<double>(big_n)))
        throw PreconditionError("certify_params: need n <= k N");

    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m0);
    const double Nd = static_cast<double>(big_n);
    const double kd = static_cast<double>(k);
    const double log_n = std::log(nd);
    const double log_N = std::log(Nd);

    ParamCertificate cert;
    cert.n = n;
    cert.m0 = m0;
    cert.big_n = big_n;
    cert.k = k;
    cert.constants = constants;
    cert.kappa = kappa_l1(nd, md, kd);
    cert.ell = (big_n + 2) / 3;
    cert.delta = 1.0 / (8.0 * std::sqrt(nd));

    const double kappa = cert.kappa;
    cert.kmax_terms = {md / std::sqrt(nd), md * md / (nd * log_N),
                       md * Nd / (nd * nd * log_n)};
    cert.kmax = constants.c1 *
                std::min({cert.kmax_terms[0], cert.kmax_terms[1], cert.kmax_terms[2]});

    cert.checks = {
        {"kappa_lower", leq(constants.cprime * std::sqrt(std::max(kd, log_N) / md), kappa)},
        {"kappa_le_1", leq(kappa, 1.0)},
        {"kappa_product", leq(256.0 * md * nd * log_n, kappa * kappa * md * Nd)},
        {"logN_le_n", leq(8.0 * log_N, nd)},
        {"kappa_inclusion", leq(kappa, 0.5 * std::sqrt(md / nd) / std::sqrt(kd))},
        {"kappa_inclusion_2x", leq(2.0 * kappa, 0.25 * std::sqrt(md / nd) / std::sqrt(kd))},
        {"k_le_kmax", leq(kd, cert.kmax)},
        // +1 absorbs the integer ceiling at the upper boundary
        {"N_range", leq(nd * log_n, Nd) && leq(Nd, std::pow(nd, 1.5) * log_n + 1.0)},
        {"m0_range", leq(std::sqrt(nd * log_n), md) && leq(nd * nd * log_n / Nd, md)},
    };
    cert.feasible = true;
    for (const auto& [name, pass] : cert.checks) cert.feasible = cert.feasible && pass;

    const double ell = static_cast<double>(cert.ell);
    cert.log_omega1_bound = log_N - 9.0 * nd / 32.0;
    const double log_tail =
        log_binomial(Nd, ell) + ell * std::log(2.0 * std::exp(1.0)) -
        kappa * kappa * md * ell / 32.0;
    cert.log_singleop_bound = log_sum_exp(cert.log_omega1_bound, log_tail);
    const double net_log = net_cardinality_log(n, m0, cert.delta, constants.c2_net);
    cert.log_union_bound = log_sum_exp(cert.log_omega1_bound, net_log + log_tail);
    cert.net_within_coarse_bound = leq(net_log, md * nd * log_n);

    // Largest k for which the kappa constraint system itself is satisfiable with
    // the canonical kappa; divided by the raw min-terms this is the largest
    // c1 that keeps the boundary dimension feasible.
    std::uint64_t lo = 0, hi = m0;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (mid >= 1 && kappa_system_feasible(nd, md, Nd, static_cast<double>(mid), constants.cprime))
            lo = mid;
        else
            hi = mid - 1;
    }
    const double raw_min =
        std::min({cert.kmax_terms[0], cert.kmax_terms[1], cert.kmax_terms[2]});
    cert.c1_max_feasible = raw_min > 0.0 ? static_cast<double>(lo) / raw_min : 0.0;
    return cert;
}

ParamCertificate certify_params_q(std::uint64_t n, std::uint64_t m0, std::uint64_t big_n,
                                  std::uint64_t k, double q, const ParamConstants& constants,
                                  bool with_unproven_eta) {
    if (!(1 <= k && k <= m0 && m0 <= n))
        throw PreconditionError("certify_params_q: need 1 <= k <= m0 <= n");
    if (!(static_cast<double>(n) <= static_cast<double>(k) * static_cast<double>(big_n)))
        throw PreconditionError("certify_params_q: need n <= k N");
    if (!(q > 2.0)) throw PreconditionError("certify_params_q: need q > 2");

    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m0);
    const double Nd = static_cast<double>(big_n);
    const double kd = static_cast<double>(k);
    const double log_n = std::log(nd);
    const double log_N = std::log(Nd);

    ParamCertificate cert;
    cert.n = n;
    cert.m0 = m0;
    cert.big_n = big_n;
    cert.k = k;
    cert.q = q;
    cert.constants = constants;
    cert.kappa = kappa_l1(nd, md, kd) * std::pow(Nd, -1.0 / q);
    cert.ell = (big_n + 2) / 3;
    cert.delta = 1.0 / (8.0 * std::sqrt(nd));
    cert.beta = (q + 2.0) / (2.0 * q - 2.0);
    cert.gamma = (q + 1.0) / (2.0 * q - 2.0);

    const double kappa = cert.kappa;
    cert.kmax_terms = {md * std::pow(Nd, 1.0 - 2.0 / q) / (nd * nd * log_n),
                       md / (std::sqrt(nd) * std::pow(Nd, 1.0 / q)),
                       md * md / (nd * std::pow(Nd, 2.0 / q) * log_N)};
    cert.kmax = constants.c1 *
                std::min({cert.kmax_terms[0], cert.kmax_terms[1], cert.kmax_terms[2]});

    const double beta = *cert.beta;
    const double gamma = *cert.gamma;
    cert.prop_kmax =
        constants.c1 * std::min(md / (std::pow(nd, beta) * std::pow(log_n, gamma - 0.5)),
                                md * md / (std::pow(nd, 2.0 * beta) *
                                           std::pow(log_n, 2.0 * gamma)));

    cert.checks = {
        {"kappa_inclusion_q",
         leq(std::pow(Nd - 1.0, 1.0 / q) * 2.0 * kappa,
             0.25 * std::sqrt(md / nd) / std::sqrt(kd))},
        {"kappa_sq_lower",
         leq(constants.c0_width * std::max({nd * log_n / Nd, kd / md, log_N / md}),
             kappa * kappa)},
        {"k_le_kmax", leq(kd, cert.kmax)},
        {"q_gt_4", q > 4.0},
        {"m0_range_q", leq(std::pow(nd, beta) * std::pow(log_n, gamma), md)},
        {"k_le_prop_bound", leq(kd, *cert.prop_kmax)},
    };
    cert.feasible = true;
    for (const auto& [name, pass] : cert.checks) cert.feasible = cert.feasible && pass;

    const double ell = static_cast<double>(cert.ell);
    cert.log_omega1_bound = log_N - 9.0 * nd / 32.0;
    const double log_tail =
        log_binomial(Nd, ell) + ell * std::log(2.0 * std::exp(1.0)) -
        kappa * kappa * md * ell / 32.0;
    cert.log_singleop_bound = log_sum_exp(cert.log_omega1_bound, log_tail);
    const double net_log = net_cardinality_log(n, m0, cert.delta, constants.c2_net);
    cert.log_union_bound = log_sum_exp(cert.log_omega1_bound, net_log + log_tail);
    cert.net_within_coarse_bound = leq(net_log, md * nd * log_n);
    cert.c1_max_feasible = 0.0; // defined for the l1-sum system only

    if (with_unproven_eta) {
        const double eta = (q - 2.0) / (2.0 * q + 2.0);
        cert.unproven_eta_bound =
            constants.c1 * md /
            (std::pow(nd, 1.0 - eta) * std::pow(log_n, (1.0 - 2.0 * eta) / 3.0));
    }
    return cert;
}

std::uint64_t default_block_count_q(std::uint64_t n, double q) {
    if (!(q > 2.0)) throw PreconditionError("default_block_count_q: need q > 2");
    const double p = q / (q - 1.0);
    const double nd = static_cast<double>(n);
    const double value = std::pow(std::pow(nd, 1.5) * std::log(nd), p);
    if (!(value < 9.0e18))
        throw PreconditionError("default_block_count_q: block count exceeds 64 bits");
    return static_cast<std::uint64_t>(std::ceil(value));
}

} // namespace satbody
