#!/usr/bin/env python3
"""Independent recomputation of parameter certificates.

Reads a JSONL file of certificates produced by the C++ side (one object per
line, each with the inputs and the computed outputs), recomputes everything
from the inputs alone, and reports mismatches. Exits nonzero if anything
disagrees beyond tolerance.
"""

import json
import math
import sys

REL_TOL = 1e-9


def leq(a, b):
    return a <= b + 1e-12 * max(abs(a), abs(b), 1e-300)


def log_binomial(n, k):
    return math.lgamma(n + 1.0) - math.lgamma(k + 1.0) - math.lgamma(n - k + 1.0)


def log_sum_exp(a, b):
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi))


def net_log(n, m, delta, c2):
    return float(m) * (float(n) - float(m)) * math.log(c2 / delta)


def kappa_system_feasible(n, m0, N, k, cprime):
    kappa = math.sqrt(m0 / (64.0 * n * k))
    if not leq(cprime * math.sqrt(max(k, math.log(N)) / m0), kappa):
        return False
    if not leq(kappa, 1.0):
        return False
    if not leq(256.0 * m0 * n * math.log(n), kappa * kappa * m0 * N):
        return False
    if not leq(8.0 * math.log(N), n):
        return False
    return True


def certify(inp):
    n, m0, N, k = (float(inp["n"]), float(inp["m0"]), float(inp["N"]), float(inp["k"]))
    c = inp["constants"]
    c0, cprime, c2, c1 = c["C0"], c["Cprime"], c["C2"], c["c1"]
    q = inp.get("q")
    log_n, log_N = math.log(n), math.log(N)

    out = {}
    out["ell"] = (inp["N"] + 2) // 3
    delta = 1.0 / (8.0 * math.sqrt(n))
    out["delta"] = delta

    if q is None:
        kappa = math.sqrt(m0 / (64.0 * n * k))
        terms = [m0 / math.sqrt(n), m0 * m0 / (n * log_N), m0 * N / (n * n * log_n)]
        checks = {
            "kappa_lower": leq(cprime * math.sqrt(max(k, log_N) / m0), kappa),
            "kappa_le_1": leq(kappa, 1.0),
            "kappa_product": leq(256.0 * m0 * n * log_n, kappa * kappa * m0 * N),
            "logN_le_n": leq(8.0 * log_N, n),
            "kappa_inclusion": leq(kappa, 0.5 * math.sqrt(m0 / n) / math.sqrt(k)),
            "kappa_inclusion_2x": leq(2.0 * kappa, 0.25 * math.sqrt(m0 / n) / math.sqrt(k)),
            "k_le_kmax": leq(k, c1 * min(terms)),
            "N_range": leq(n * log_n, N) and leq(N, n ** 1.5 * log_n + 1.0),
            "m0_range": leq(math.sqrt(n * log_n), m0) and leq(n * n * log_n / N, m0),
        }
        # largest k' feasible for the kappa system, by bisection
        lo, hi = 0, inp["m0"]
        while lo < hi:
            mid = lo + (hi - lo + 1) // 2
            if mid >= 1 and kappa_system_feasible(n, m0, N, float(mid), cprime):
                lo = mid
            else:
                hi = mid - 1
        out["c1_max_feasible"] = float(lo) / min(terms) if min(terms) > 0 else 0.0
    else:
        kappa = math.sqrt(m0 / (64.0 * n * k)) * N ** (-1.0 / q)
        beta = (q + 2.0) / (2.0 * q - 2.0)
        gamma = (q + 1.0) / (2.0 * q - 2.0)
        out["beta"], out["gamma"] = beta, gamma
        terms = [
            m0 * N ** (1.0 - 2.0 / q) / (n * n * log_n),
            m0 / (math.sqrt(n) * N ** (1.0 / q)),
            m0 * m0 / (n * N ** (2.0 / q) * log_N),
        ]
        prop = c1 * min(
            m0 / (n ** beta * log_n ** (gamma - 0.5)),
            m0 * m0 / (n ** (2.0 * beta) * log_n ** (2.0 * gamma)),
        )
        out["prop_kmax"] = prop
        checks = {
            "kappa_inclusion_q": leq((N - 1.0) ** (1.0 / q) * 2.0 * kappa,
                             0.25 * math.sqrt(m0 / n) / math.sqrt(k)),
            "kappa_sq_lower": leq(c0 * max(n * log_n / N, k / m0, log_N / m0), kappa * kappa),
            "k_le_kmax": leq(k, c1 * min(terms)),
            "q_gt_4": q > 4.0,
            "m0_range_q": leq(n ** beta * log_n ** gamma, m0),
            "k_le_prop_bound": leq(k, prop),
        }
        out["c1_max_feasible"] = 0.0

    out["kappa"] = kappa
    out["kmax"] = c1 * min(terms)
    out["kmax_terms"] = terms
    out["checks"] = checks
    out["feasible"] = all(checks.values())

    ell = float(out["ell"])
    log_omega1 = log_N - 9.0 * n / 32.0
    log_tail = (log_binomial(N, ell) + ell * math.log(2.0 * math.e)
                - kappa * kappa * m0 * ell / 32.0)
    out["log_omega1_bound"] = log_omega1
    out["log_singleop_bound"] = log_sum_exp(log_omega1, log_tail)
    out["log_union_bound"] = log_sum_exp(log_omega1, net_log(n, m0, delta, c2) + log_tail)
    return out


def close(a, b):
    if a == b:
        return True
    return abs(a - b) <= REL_TOL * max(abs(a), abs(b), 1e-300)


def compare(inp, mine):
    errors = []
    for key in ("kappa", "delta", "kmax", "log_omega1_bound", "log_singleop_bound",
                "log_union_bound", "c1_max_feasible"):
        if not close(inp[key], mine[key]):
            errors.append(f"{key}: {inp[key]} vs {mine[key]}")
    if inp["ell"] != mine["ell"]:
        errors.append(f"ell: {inp['ell']} vs {mine['ell']}")
    for i in range(3):
        if not close(inp["kmax_terms"][i], mine["kmax_terms"][i]):
            errors.append(f"kmax_terms[{i}]")
    for name, val in mine["checks"].items():
        if inp["checks"][name] != val:
            errors.append(f"check {name}: {inp['checks'][name]} vs {val}")
    if inp["feasible"] != mine["feasible"]:
        errors.append("feasible verdict")
    for key in ("beta", "gamma", "prop_kmax"):
        if key in mine and not close(inp[key], mine[key]):
            errors.append(key)
    return errors


def main():
    if len(sys.argv) != 2:
        print("usage: params_oracle.py <certificates.jsonl>", file=sys.stderr)
        return 2
    total, bad = 0, 0
    with open(sys.argv[1]) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            cert = json.loads(line)
            total += 1
            errors = compare(cert, certify(cert))
            if errors:
                bad += 1
                if bad <= 10:
                    print(f"mismatch at point {total}: {errors}", file=sys.stderr)
    print(f"params_oracle: {total} points, {bad} mismatches")
    return 0 if bad == 0 and total > 0 else 1


if __name__ == "__main__":
    sys.exit(main())
