#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "satbody/linalg.hpp"

namespace satbody {

enum class NormKind { L1, LInf, Lp, Custom };

std::string to_string(NormKind kind);
NormKind norm_kind_from_string(const std::string& name);

/// A concrete k-dimensional target space W, normalized so that
/// (1/sqrt(k)) B_2^k is contained in B_W and B_W is contained in B_2^k
/// (John position, achieved analytically for the built-in kinds).
///
/// gauge is the Minkowski functional of B_W; dual_gauge the functional of
/// the polar body. For polytopal kinds the extreme points of B_W are
/// available, which is what the exact membership checks consume.
struct NormOracle {
    Index k = 0;
    NormKind kind = NormKind::Custom;
    double lp_exponent = 0.0; // only meaningful for kind == Lp
    std::function<double(const Vector&)> gauge;
    std::function<double(const Vector&)> dual_gauge;
    double sandwich_a = 0.0; // a B_2 inside B_W
    double sandwich_b = 0.0; // B_W inside b B_2
    std::optional<std::vector<Vector>> polytopal_vertices;

    bool polytopal() const { return polytopal_vertices.has_value(); }
};

/// Build the oracle for L1 (B_W = B_1^k) or LInf (B_W = (1/sqrt(k)) [-1,1]^k).
NormOracle make_norm_oracle(NormKind kind, Index k);

/// Build the oracle for the lp ball in John position, p in (1, inf).
NormOracle make_norm_oracle(NormKind kind, Index k, double p);

/// Escape hatch for user-supplied spaces; invariants are the caller's duty
/// (the property tests show what is expected).
NormOracle make_custom_oracle(Index k, std::function<double(const Vector&)> gauge,
                              std::function<double(const Vector&)> dual_gauge,
                              double sandwich_a, double sandwich_b,
                              std::optional<std::vector<Vector>> vertices = std::nullopt);

} // namespace satbody
