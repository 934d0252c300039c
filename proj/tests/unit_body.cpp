#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satbody/body.hpp"
#include "satbody/io.hpp"
#include "test_support.hpp"

using namespace satbody;
using satbody::testing::body_from_matrix;
using satbody::testing::random_unit_vector;

namespace {

Vector random_vector(Index dim, RngStream& rng, double scale = 1.0) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = scale * rng.next_gaussian();
    return v;
}

} // namespace

TEST_CASE("norm oracle closed forms") {
    const NormOracle one = make_norm_oracle(NormKind::LInf, 1);
    Vector x1(1);
    x1 << -2.5;
    CHECK(one.gauge(x1) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(one.sandwich_a == doctest::Approx(1.0));
    CHECK(one.sandwich_b == doctest::Approx(1.0));

    const NormOracle l1 = make_norm_oracle(NormKind::L1, 2);
    Vector v(2);
    v << 1, 0;
    CHECK(l1.gauge(v) == 1.0);
    v << 1, 1;
    CHECK(l1.gauge(v) == 2.0);
    CHECK(l1.dual_gauge(v) == 1.0); // max-norm
    v << 3, -4;
    CHECK(l1.dual_gauge(v) == 4.0);

    const NormOracle linf3 = make_norm_oracle(NormKind::LInf, 3);
    Vector u(3);
    u << 0.5, -1.0, 0.25;
    CHECK(linf3.gauge(u) == doctest::Approx(std::sqrt(3.0) * 1.0).epsilon(1e-14));
}

TEST_CASE("oracle sandwich holds on random points") {
    RngStream rng(21, 0);
    for (const NormKind kind : {NormKind::L1, NormKind::LInf}) {
        for (Index k : {1, 2, 3}) {
            const NormOracle w = make_norm_oracle(kind, k);
            for (int trial = 0; trial < 1000; ++trial) {
                const Vector x = random_vector(k, rng);
                CHECK(w.gauge(x) <= x.norm() / w.sandwich_a + 1e-9);
                CHECK(w.gauge(x) >= x.norm() / w.sandwich_b - 1e-9);
            }
        }
    }
    // Lp kinds on both sides of 2.
    for (double p : {1.5, 3.0}) {
        const NormOracle w = make_norm_oracle(NormKind::Lp, 3, p);
        for (int trial = 0; trial < 500; ++trial) {
            const Vector x = random_vector(3, rng);
            CHECK(w.gauge(x) <= x.norm() / w.sandwich_a + 1e-9);
            CHECK(w.gauge(x) >= x.norm() / w.sandwich_b - 1e-9);
        }
    }
}

TEST_CASE("oracle gauges are norms (homogeneity and triangle inequality)") {
    RngStream rng(22, 0);
    for (const NormKind kind : {NormKind::L1, NormKind::LInf}) {
        const NormOracle w = make_norm_oracle(kind, 3);
        for (int trial = 0; trial < 500; ++trial) {
            const Vector x = random_vector(3, rng);
            const Vector y = random_vector(3, rng);
            const double lambda = std::fabs(rng.next_gaussian());
            CHECK(w.gauge(lambda * x) == doctest::Approx(lambda * w.gauge(x)).epsilon(1e-9));
            CHECK(w.gauge(x + y) <= w.gauge(x) + w.gauge(y) + 1e-9);
        }
    }
}

TEST_CASE("lp dual gauge attains its value at the Holder maximizer") {
    RngStream rng(220, 0);
    for (double p : {1.5, 2.5, 4.0}) {
        const Index k = 3;
        const NormOracle w = make_norm_oracle(NormKind::Lp, k, p);
        const double q = p / (p - 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const Vector y = random_vector(k, rng);
            // Optimal direction for sup <x, y> over ||x||_p <= 1, rescaled to
            // gauge exactly one.
            Vector x(k);
            for (Index i = 0; i < k; ++i)
                x(i) = (y(i) < 0 ? -1.0 : 1.0) * std::pow(std::fabs(y(i)), q - 1.0);
            x /= w.gauge(x);
            CHECK(w.gauge(x) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(x.dot(y) == doctest::Approx(w.dual_gauge(y)).epsilon(1e-9));
            // And no random unit-gauge point ever exceeds it.
            Vector z = random_vector(k, rng);
            z /= w.gauge(z);
            CHECK(z.dot(y) <= w.dual_gauge(y) + 1e-9);
        }
    }
}

TEST_CASE("block gaussian map invariants") {
    const BlockGaussianMap map = make_block_gaussian_map(200, 10, 4, 221, 0);
    // entries carry variance 1/n
    const double var = map.g.array().square().mean();
    CHECK(var == doctest::Approx(1.0 / 200.0).epsilon(0.10));
    CHECK(map.total_cols() == 40);
    CHECK_THROWS_AS((void)map.block(10), PreconditionError);

    // a quotient over the wrong ambient space is rejected
    RngStream rng(221, 1);
    const QuotientMap bad{sample_grassmann(100, 20, rng)};
    CHECK_THROWS_AS(QuotientBody(map, make_norm_oracle(NormKind::L1, 4), 1.0, bad),
                    PreconditionError);
}

TEST_CASE("support function of an lp-sum body matches the optimal-weights oracle") {
    const Index n = 8, num_blocks = 5, k = 2;
    const double p = 1.5, pconj = p / (p - 1.0);
    const NormOracle w = make_norm_oracle(NormKind::L1, k);
    const QuotientBody body(make_block_gaussian_map(n, num_blocks, k, 222, 0), w, p);
    RngStream rng(222, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector x = random_unit_vector(n, rng);
        const double h = support_function(body, x);
        // Build the maximizing point of the sum ball explicitly: per-block
        // vertex maximizers combined with weights t_j ~ h_j^(1/(p-1)).
        std::vector<double> hj(num_blocks);
        std::vector<Vector> best_vertex(num_blocks);
        for (Index j = 0; j < num_blocks; ++j) {
            const Vector c = body.block_restriction(j).transpose() * x;
            double best = -1.0;
            for (const Vector& v : *w.polytopal_vertices) {
                if (v.dot(c) > best) {
                    best = v.dot(c);
                    best_vertex[j] = v;
                }
            }
            hj[j] = best;
        }
        Vector z = Vector::Zero(body.map().total_cols());
        double tnorm = 0.0;
        for (Index j = 0; j < num_blocks; ++j)
            tnorm += std::pow(std::max(hj[j], 0.0), pconj);
        tnorm = std::pow(tnorm, 1.0 / pconj);
        for (Index j = 0; j < num_blocks; ++j) {
            const double weight =
                std::pow(std::max(hj[j], 0.0) / tnorm, pconj / p);
            z.segment(j * k, k) = weight * best_vertex[j];
        }
        CHECK(z_sum_gauge(body.map(), w, p, z) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(x.dot(body.effective() * z) == doctest::Approx(h).epsilon(1e-9));
        // random points of the sum ball never beat it
        Vector r = random_vector(body.map().total_cols(), rng);
        r /= z_sum_gauge(body.map(), w, p, r);
        CHECK(x.dot(body.effective() * r) <= h + 1e-9);
    }
}

TEST_CASE("dual gauge agrees with brute maximization over the ball") {
    RngStream rng(23, 0);
    for (const NormKind kind : {NormKind::L1, NormKind::LInf}) {
        for (Index k : {2, 3}) {
            const NormOracle w = make_norm_oracle(kind, k);
            for (int trial = 0; trial < 50; ++trial) {
                const Vector y = random_vector(k, rng);
                // Polytopal ball: the maximum of <x, y> sits at a vertex.
                double best = 0.0;
                for (const Vector& v : *w.polytopal_vertices)
                    best = std::max(best, v.dot(y));
                CHECK(w.dual_gauge(y) == doctest::Approx(best).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("support function of the identity-block cube body") {
    // N = 1, G~ = I, W = LInf in John position: h(x) = ||x||_1 / sqrt(k).
    const Index k = 3;
    const QuotientBody body =
        body_from_matrix(Matrix::Identity(k, k), make_norm_oracle(NormKind::LInf, k));
    RngStream rng(24, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector x = random_vector(k, rng);
        CHECK(support_function(body, x) ==
              doctest::Approx(x.lpNorm<1>() / std::sqrt(double(k))).epsilon(1e-12));
    }
    CHECK(support_function(body, Vector::Zero(k)) == 0.0);
}

TEST_CASE("support function matches a Monte Carlo inner bound") {
    const Index n = 6, num_blocks = 4, k = 2;
    const QuotientBody body(make_block_gaussian_map(n, num_blocks, k, 25, 0),
                            make_norm_oracle(NormKind::L1, k));
    RngStream rng(25, 1);
    const Vector x = random_unit_vector(n, rng);
    const double h = support_function(body, x);
    double best = 0.0;
    for (int trial = 0; trial < 100000; ++trial) {
        const Vector z = satbody::testing::random_bz_point(body.map(), body.w(), rng);
        const double val = x.dot(body.effective() * z);
        CHECK(val <= h + 1e-9);
        best = std::max(best, val);
    }
    CHECK(best >= 0.98 * h);
}

TEST_CASE("support function properties: sublinear, symmetric, sandwiched") {
    const Index n = 8, num_blocks = 5, k = 2;
    const QuotientBody body(make_block_gaussian_map(n, num_blocks, k, 26, 0),
                            make_norm_oracle(NormKind::LInf, k));
    RngStream rng(26, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector x = random_vector(n, rng);
        const Vector y = random_vector(n, rng);
        const double lambda = std::fabs(rng.next_gaussian());
        CHECK(support_function(body, x + y) <=
              support_function(body, x) + support_function(body, y) + 1e-9);
        CHECK(support_function(body, lambda * x) ==
              doctest::Approx(lambda * support_function(body, x)).epsilon(1e-9));
        CHECK(support_function(body, -x) == support_function(body, x));

        const double hk = support_function(body, x);
        const double hd = support_function_euclidean(body, x);
        CHECK(hk <= hd + 1e-9);
        CHECK(hd <= std::sqrt(double(k)) * hk + 1e-9);
    }
}

TEST_CASE("support function never grows under a further quotient") {
    const Index n = 8, num_blocks = 5, k = 2, m = 5;
    const BlockGaussianMap map = make_block_gaussian_map(n, num_blocks, k, 27, 0);
    const NormOracle w = make_norm_oracle(NormKind::L1, k);
    const QuotientBody full(map, w);
    RngStream rng(27, 1);
    const QuotientMap q{sample_grassmann(n, m, rng)};
    const QuotientBody quotient(map, w, 1.0, q);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector xm = random_vector(m, rng);
        // The same direction seen in R^n.
        const Vector xn = q.range.basis * xm;
        CHECK(support_function(quotient, xm) <= support_function(full, xn) + 1e-9);
    }
}

TEST_CASE("block restriction partitions and reassembles the matrix") {
    const QuotientBody body(make_block_gaussian_map(7, 3, 2, 28, 0),
                            make_norm_oracle(NormKind::L1, 2));
    Matrix reassembled(7, 6);
    for (Index j = 0; j < 3; ++j) reassembled.middleCols(j * 2, 2) = body.block_restriction(j);
    CHECK(reassembled == body.effective());
    CHECK_THROWS_AS((void)body.block_restriction(3), PreconditionError);
}

TEST_CASE("gauge LP basics") {
    const Index k = 2;
    const QuotientBody body =
        body_from_matrix(Matrix::Identity(k, k), make_norm_oracle(NormKind::L1, k));
    const GaugeResult zero = gauge_lp(body, Vector::Zero(k));
    REQUIRE(zero.status == GaugeResult::Status::Value);
    CHECK(zero.value == doctest::Approx(0.0).epsilon(1e-12));

    Vector e1(2);
    e1 << 1, 0;
    const GaugeResult g = gauge_lp(body, e1);
    REQUIRE(g.status == GaugeResult::Status::Value);
    CHECK(g.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gauge LP for the scaled cube matches the closed form") {
    const Index k = 2;
    const QuotientBody body =
        body_from_matrix(Matrix::Identity(k, k), make_norm_oracle(NormKind::LInf, k));
    RngStream rng(29, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector x = random_vector(k, rng);
        const GaugeResult g = gauge_lp(body, x);
        REQUIRE(g.status == GaugeResult::Status::Value);
        CHECK(g.value ==
              doctest::Approx(std::sqrt(2.0) * x.lpNorm<Eigen::Infinity>()).epsilon(1e-9));
    }
}

TEST_CASE("gauge LP requires a polytopal l1-sum body") {
    const QuotientBody lp_body =
        body_from_matrix(Matrix::Identity(2, 2), make_norm_oracle(NormKind::Lp, 2, 3.0));
    CHECK_THROWS_AS((void)gauge_lp(lp_body, Vector::Zero(2)), PreconditionError);
    const QuotientBody psum(make_block_gaussian_map(4, 2, 2, 34, 0),
                            make_norm_oracle(NormKind::L1, 2), 1.5);
    CHECK_THROWS_AS((void)gauge_lp(psum, Vector::Zero(4)), PreconditionError);
    CHECK_THROWS_AS((void)make_norm_oracle(NormKind::Custom, 2), PreconditionError);
    CHECK_THROWS_AS((void)make_norm_oracle(NormKind::Lp, 2), PreconditionError);
    CHECK_THROWS_AS((void)make_norm_oracle(NormKind::Lp, 2, 1.0), PreconditionError);
}

TEST_CASE("gauge LP reports infeasible off the column span") {
    // All blocks live in the first two coordinates of R^3.
    Matrix g = Matrix::Zero(3, 4);
    g(0, 0) = 1.0;
    g(1, 1) = 0.5;
    g(0, 2) = -0.3;
    g(1, 3) = 0.9;
    const QuotientBody body = body_from_matrix(g, make_norm_oracle(NormKind::L1, 2));
    Vector x(3);
    x << 0, 0, 1;
    CHECK(gauge_lp(body, x).status == GaugeResult::Status::Infeasible);
}

TEST_CASE("gauge and support function are dual") {
    RngStream rng(30, 0);
    for (int instance = 0; instance < 10; ++instance) {
        const Index n = 3, num_blocks = 3, k = 2;
        const QuotientBody body(
            make_block_gaussian_map(n, num_blocks, k, 300 + instance, 0),
            make_norm_oracle(instance % 2 ? NormKind::L1 : NormKind::LInf, k));
        const Vector x = random_vector(n, rng);
        const GaugeResult g = gauge_lp(body, x);
        REQUIRE(g.status == GaugeResult::Status::Value);
        // Hard inequality: the gauge dominates every dual ratio.
        for (int dir = 0; dir < 1000; ++dir) {
            const Vector u = random_unit_vector(n, rng);
            CHECK(g.value >= x.dot(u) / support_function(body, u) - 1e-8);
        }
        const double oracle = satbody::testing::dual_ratio_oracle(body, x, 1000, rng);
        CHECK(g.value == doctest::Approx(oracle).epsilon(0.01));
    }
}

TEST_CASE("zp sandwich: single block and single-block support") {
    const Index n = 4, k = 2;
    const double q = 6.0, p = q / (q - 1.0);
    const BlockGaussianMap map = make_block_gaussian_map(n, 1, k, 31, 0);
    const NormOracle w = make_norm_oracle(NormKind::L1, k);
    const QuotientBody z(map, w), zp(map, w, p);
    RngStream rng(31, 1);
    const auto report = zp_sandwich_check(z, zp, q, 200, rng);
    CHECK(report.pass);
    CHECK(report.max_lower_violation <= 1e-12);
    CHECK(report.max_upper_violation <= 1e-12);

    // A vector supported on one block has equal gauges in any sum exponent.
    const BlockGaussianMap wide = make_block_gaussian_map(n, 5, k, 32, 0);
    Vector x = Vector::Zero(wide.total_cols());
    x(2) = 1.3;
    x(3) = -0.4;
    CHECK(z_sum_gauge(wide, w, 1.0, x) ==
          doctest::Approx(z_sum_gauge(wide, w, p, x)).epsilon(1e-12));
}

TEST_CASE("zp sandwich on random bodies") {
    const Index n = 8, num_blocks = 5, k = 2;
    const double q = 6.0, p = q / (q - 1.0);
    const BlockGaussianMap map = make_block_gaussian_map(n, num_blocks, k, 33, 0);
    const NormOracle w = make_norm_oracle(NormKind::LInf, k);
    const QuotientBody z(map, w), zp(map, w, p);
    RngStream rng(33, 1);
    const auto report = zp_sandwich_check(z, zp, q, 1000, rng);
    CHECK(report.pass);
}

TEST_CASE("body descriptor reconstructs bit-identically") {
    BodyDescriptor desc;
    desc.n = 6;
    desc.num_blocks = 4;
    desc.k = 2;
    desc.kind = NormKind::LInf;
    desc.p_exponent = 1.0;
    desc.seed = 99;
    desc.stream = 3;
    const Json j = to_json(desc);
    const BodyDescriptor back = body_descriptor_from_json(j);
    const QuotientBody b1 = build_body(desc);
    const QuotientBody b2 = build_body(back);
    CHECK(b1.map().g == b2.map().g);
    CHECK(to_json(back).dump() == j.dump());
}
