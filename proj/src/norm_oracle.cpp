#include "satbody/norm_oracle.hpp"

#include <cmath>

namespace satbody {

std::string to_string(NormKind kind) {
    switch (kind) {
        case NormKind::L1: return "l1";
        case NormKind::LInf: return "linf";
        case NormKind::Lp: return "lp";
        case NormKind::Custom: return "custom";
    }
    return "?";
}

NormKind norm_kind_from_string(const std::string& name) {
    if (name == "l1") return NormKind::L1;
    if (name == "linf") return NormKind::LInf;
    if (name == "lp") return NormKind::Lp;
    if (name == "custom") return NormKind::Custom;
    throw PreconditionError("unknown norm kind: " + name);
}

namespace {

std::vector<Vector> l1_vertices(Index k) {
    std::vector<Vector> verts;
    verts.reserve(2 * static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        Vector e = Vector::Zero(k);
        e(i) = 1.0;
        verts.push_back(e);
        verts.push_back(-e);
    }
    return verts;
}

std::vector<Vector> cube_vertices(Index k, double scale) {
    if (k > 20) throw PreconditionError("linf vertex enumeration limited to k <= 20");
    std::vector<Vector> verts;
    verts.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Vector v(k);
        for (Index i = 0; i < k; ++i) v(i) = (mask >> i & 1) ? scale : -scale;
        verts.push_back(v);
    }
    return verts;
}

} // namespace

NormOracle make_norm_oracle(NormKind kind, Index k) {
    if (k < 1) throw PreconditionError("make_norm_oracle: k must be >= 1");
    NormOracle w;
    w.k = k;
    w.kind = kind;
    const double sqrt_k = std::sqrt(static_cast<double>(k));
    switch (kind) {
        case NormKind::L1:
            // B_1^k is already in John position: touches B_2^k at +-e_i.
            w.gauge = [](const Vector& x) { return x.lpNorm<1>(); };
            w.dual_gauge = [](const Vector& y) { return y.lpNorm<Eigen::Infinity>(); };
            w.sandwich_a = 1.0 / sqrt_k;
            w.sandwich_b = 1.0;
            w.polytopal_vertices = l1_vertices(k);
            return w;
        case NormKind::LInf:
            // Cube scaled by 1/sqrt(k) so the circumscribed ball is B_2^k.
            w.gauge = [sqrt_k](const Vector& x) {
                return sqrt_k * x.lpNorm<Eigen::Infinity>();
            };
            w.dual_gauge = [sqrt_k](const Vector& y) { return y.lpNorm<1>() / sqrt_k; };
            w.sandwich_a = 1.0 / sqrt_k;
            w.sandwich_b = 1.0;
            w.polytopal_vertices = cube_vertices(k, 1.0 / sqrt_k);
            return w;
        case NormKind::Lp:
            throw PreconditionError("make_norm_oracle: Lp kind needs an exponent");
        case NormKind::Custom:
            throw PreconditionError("make_norm_oracle: cannot build a custom oracle here");
    }
    throw PreconditionError("make_norm_oracle: unsupported kind");
}

NormOracle make_norm_oracle(NormKind kind, Index k, double p) {
    if (kind != NormKind::Lp) return make_norm_oracle(kind, k);
    if (k < 1) throw PreconditionError("make_norm_oracle: k must be >= 1");
    if (!(p > 1.0) || !std::isfinite(p))
        throw PreconditionError("make_norm_oracle: Lp exponent must lie in (1, inf)");
    NormOracle w;
    w.k = k;
    w.kind = NormKind::Lp;
    w.lp_exponent = p;
    const double kd = static_cast<double>(k);
    const double q = p / (p - 1.0);
    // For p <= 2 the lp ball sits inside B_2^k and is in John position as is;
    // for p > 2 it is shrunk by k^(1/p - 1/2) so the diagonal touches the sphere.
    const double scale = (p <= 2.0) ? 1.0 : std::pow(kd, 0.5 - 1.0 / p);
    w.gauge = [scale, p](const Vector& x) {
        double s = 0.0;
        for (Index i = 0; i < x.size(); ++i) s += std::pow(std::fabs(x(i)), p);
        return scale * std::pow(s, 1.0 / p);
    };
    w.dual_gauge = [scale, q](const Vector& y) {
        double s = 0.0;
        for (Index i = 0; i < y.size(); ++i) s += std::pow(std::fabs(y(i)), q);
        return std::pow(s, 1.0 / q) / scale;
    };
    w.sandwich_a = (p <= 2.0) ? std::pow(kd, 0.5 - 1.0 / p) : std::pow(kd, 1.0 / p - 0.5);
    w.sandwich_b = 1.0;
    return w;
}

NormOracle make_custom_oracle(Index k, std::function<double(const Vector&)> gauge,
                              std::function<double(const Vector&)> dual_gauge,
                              double sandwich_a, double sandwich_b,
                              std::optional<std::vector<Vector>> vertices) {
    if (k < 1) throw PreconditionError("make_custom_oracle: k must be >= 1");
    NormOracle w;
    w.k = k;
    w.kind = NormKind::Custom;
    w.gauge = std::move(gauge);
    w.dual_gauge = std::move(dual_gauge);
    w.sandwich_a = sandwich_a;
    w.sandwich_b = sandwich_b;
    w.polytopal_vertices = std::move(vertices);
    return w;
}

} // namespace satbody
