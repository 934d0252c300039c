#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satbody/lemmas.hpp"
#include "satbody/witness.hpp"
#include "satbody/specfun.hpp"
#include "test_support.hpp"

using namespace satbody;
using namespace satbody::testing;

namespace {

bool valid_selection(const ZeroOneMatrix& mat, const std::vector<Index>& sel) {
    for (Index i : sel)
        for (Index j : sel)
            if (mat.at(i, j)) return false;
    return true;
}

} // namespace

TEST_CASE("zero-one matrix rejects hypothesis violations") {
    CHECK_THROWS_AS(ZeroOneMatrix(2, {0, 1, 0, 1}), PreconditionError); // diagonal 1
    CHECK_THROWS_AS(ZeroOneMatrix(2, {0, 2, 0, 0}), PreconditionError); // entry 2
    // two ones in one column
    CHECK_THROWS_AS(ZeroOneMatrix::from_ones(3, {{1, 0}, {2, 0}}), PreconditionError);
    CHECK_NOTHROW(ZeroOneMatrix::from_ones(3, {{1, 0}, {2, 1}}));
}

TEST_CASE("turan select on the all-zero matrix returns everything") {
    const ZeroOneMatrix mat(8, std::vector<std::uint8_t>(64, 0));
    const auto sel = turan_select(mat);
    CHECK(sel.size() == 8);
    const auto brute = turan_brute(mat);
    CHECK(brute.size() == 8);
}

TEST_CASE("turan on a chain of ones") {
    // ones at (1,0), (2,1), (3,2)
    const ZeroOneMatrix mat = ZeroOneMatrix::from_ones(4, {{1, 0}, {2, 1}, {3, 2}});
    const auto sel = turan_select(mat);
    CHECK(valid_selection(mat, sel));
    CHECK(sel.size() >= 1); // ceil(4/4)
    const auto brute = turan_brute(mat);
    CHECK(valid_selection(mat, brute));
    CHECK(brute.size() >= 2); // ceil(4/3), confirmed by exhaustive search
}

TEST_CASE("turan on the cyclic shift matrix") {
    const Index n = 12;
    std::vector<std::pair<Index, Index>> ones;
    for (Index j = 0; j < n; ++j) ones.emplace_back((j + 1) % n, j);
    const ZeroOneMatrix mat = ZeroOneMatrix::from_ones(n, ones);
    const auto sel = turan_select(mat);
    CHECK(valid_selection(mat, sel));
    CHECK(sel.size() >= 3); // ceil(12/4)
    const auto brute = turan_brute(mat);
    CHECK(valid_selection(mat, brute));
    CHECK(brute.size() >= 4); // ceil(12/3); the 12-cycle has independence number 6
    CHECK(brute.size() == 6);
}

TEST_CASE("turan fuzz: selection valid, brute at least as large") {
    RngStream rng(60, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Index n = 1 + static_cast<Index>(rng.next_u64() % 12);
        const ZeroOneMatrix mat = random_zero_one(n, rng);
        const auto sel = turan_select(mat);
        CHECK(valid_selection(mat, sel));
        CHECK(4 * static_cast<Index>(sel.size()) >= n);
        const auto brute = turan_brute(mat);
        CHECK(valid_selection(mat, brute));
        CHECK(brute.size() >= sel.size());
        CHECK(3 * static_cast<Index>(brute.size()) >= n);
    }
}

TEST_CASE("turan brute rejects oversized instances") {
    const ZeroOneMatrix mat(23, std::vector<std::uint8_t>(23 * 23, 0));
    CHECK_THROWS_AS((void)turan_brute(mat), PreconditionError);
}

TEST_CASE("sv tail: t = 0 bound is vacuous and scalar case matches erfc") {
    const auto res = sv_tail_experiment(1, 1, 1.0, {0.0, 0.5, 1.0, 2.0}, 2000,
                                        RngStream(61, 0));
    CHECK(res.theoretical[0] == 1.0);
    for (std::size_t i = 0; i < res.t_grid.size(); ++i) {
        const double t = res.t_grid[i];
        // s1 = |g| and the threshold is (sqrt m + sqrt k) sigma + t = 2 + t,
        // so the exact exceedance is 2(1 - Phi(2 + t)).
        const double exact = 2.0 * (1.0 - std_normal_cdf(2.0 + t));
        CHECK(exact <= res.theoretical[i] + 1e-12);
        CHECK(std::fabs(res.empirical_upper[i] - exact) <=
              3.0 * binom_sigma(exact, res.trials) + 1e-9);
        // Gaussian-tail form of the same bound, checked analytically.
        if (t > 0.0)
            CHECK(2.0 * (1.0 - std_normal_cdf(1.0 + t)) <= std::exp(-t * t / 2.0));
    }
}

TEST_CASE("sv tail: moderate rectangular case stays below the bound") {
    const Index m = 50, k = 10;
    const double sigma = 1.0 / std::sqrt(50.0);
    const auto res = sv_tail_experiment(
        m, k, sigma, {0.1 * sigma * std::sqrt(50.0), 0.4 * sigma * std::sqrt(50.0)}, 2000,
        RngStream(62, 0));
    for (std::size_t i = 0; i < res.t_grid.size(); ++i) {
        const double slack = 3.0 * binom_sigma(res.theoretical[i], res.trials);
        CHECK(res.empirical_upper[i] <= res.theoretical[i] + slack);
        CHECK(res.empirical_lower[i] <= res.theoretical[i] + slack);
    }
}

TEST_CASE("mean width: Euclidean ball and the origin") {
    RngStream rng(63, 0);
    const auto [ball, ball_se] =
        mean_width_mc([](const Vector&) { return 1.0; }, 10, 500, rng);
    CHECK(ball == 1.0);
    CHECK(ball_se == 0.0);
    const auto [zero, zero_se] =
        mean_width_mc([](const Vector&) { return 0.0; }, 10, 500, rng);
    CHECK(zero == 0.0);
    CHECK(zero_se == 0.0);
}

TEST_CASE("mean width of a coordinate section matches the closed form") {
    RngStream rng(64, 0);
    const Index m = 20, k = 4;
    const auto [est, se] =
        mean_width_mc([k](const Vector& x) { return x.head(k).norm(); }, m, 20000, rng);
    const double exact = coordinate_section_mean_width(m, k);
    CHECK(std::fabs(est - exact) <= 3.0 * se);
    CHECK(est <= std::sqrt(double(k) / double(m)) + 3.0 * se);
}

TEST_CASE("mean width estimate is rotation invariant in distribution") {
    RngStream rng(65, 0);
    const Index m = 12;
    const Subspace rot = sample_grassmann(m, m, rng);
    const Matrix r = rot.basis;
    auto support = [](const Vector& x) { return x.head(3).norm() + 0.2 * x(3); };
    auto rotated = [&](const Vector& x) {
        const Vector y = r.transpose() * x;
        return y.head(3).norm() + 0.2 * y(3);
    };
    const auto [a, a_se] = mean_width_mc(support, m, 20000, rng);
    const auto [b, b_se] = mean_width_mc(rotated, m, 20000, rng);
    CHECK(std::fabs(a - b) <= 3.0 * std::sqrt(a_se * a_se + b_se * b_se));
}

TEST_CASE("hull mean-width bound: singleton index set is an equality") {
    const QuotientBody body(make_block_gaussian_map(16, 8, 2, 66, 0),
                            make_norm_oracle(NormKind::L1, 2));
    REQUIRE(check_global_diameter(body));
    RngStream rng(66, 1);
    const auto rep = hull_mean_width_check(body, {3}, 0.0, 2000, rng);
    CHECK(rep.c0_required == 0.0);
    CHECK(rep.mstar_hull == doctest::Approx(rep.mstar_max_block).epsilon(1e-12));
    CHECK(rep.holds);
}

TEST_CASE("hull mean-width bound on orthogonal blocks") {
    RngStream rng(67, 0);
    const QuotientBody body =
        orthogonal_blocks_body(64, 32, make_norm_oracle(NormKind::L1, 2), 1.0, rng);
    std::vector<Index> jc;
    for (Index i = 0; i < 32; ++i) jc.push_back(i);
    const auto rep = hull_mean_width_check(body, jc, 1.0, 4000, rng);
    CHECK(rep.c0_required > 0.0);
    CHECK(std::isfinite(rep.c0_required));
    // With C0 = 1 the bound holds comfortably for orthonormal blocks.
    CHECK(rep.holds);
}

TEST_CASE("hull bound log term scales as one over sqrt(m)") {
    const double log_n = std::log(32.0);
    CHECK(std::sqrt(log_n / 64.0) ==
          doctest::Approx(std::sqrt(log_n / 128.0) * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("shrinking: radius beyond a never fails (projections contract)") {
    const auto res = shrinking_experiment(ShrinkSet::ball_section(4), 30, 5, 1.0, 1.0, 200,
                                          RngStream(68, 0));
    CHECK(res.empirical_fail == 0.0);
}

TEST_CASE("shrinking: singleton cloud matches the Beta tail oracle") {
    const Index m = 60, d = 6;
    const double a = 1.0, t = 0.134;
    Matrix pt = Matrix::Zero(m, 1);
    pt(0, 0) = a;
    const auto res =
        shrinking_experiment(ShrinkSet::point_cloud(pt), m, d, a, t, 2000, RngStream(69, 0));
    // |P_H e1|^2 ~ Beta(d/2, (m-d)/2); the failure radius includes the
    // Monte Carlo M* estimate, so evaluate the oracle at the same radius.
    const double radius = a * std::sqrt(double(d) / double(m)) + res.mstar_used + t;
    const double exact =
        1.0 - regularized_beta(double(d) / 2.0, double(m - d) / 2.0,
                               std::min(1.0, radius * radius / (a * a)));
    CHECK(std::fabs(res.empirical_fail - exact) <= 3.0 * binom_sigma(exact, res.trials) + 1e-9);
    CHECK(res.empirical_fail <= res.theoretical_fail + 3.0 * binom_sigma(1.0, res.trials));
}

TEST_CASE("shrinking: ball section stays under the stated measure bound") {
    const auto res = shrinking_experiment(ShrinkSet::ball_section(8), 60, 6, 1.0, 0.2, 500,
                                          RngStream(70, 0));
    const double slack = 3.0 * binom_sigma(std::min(1.0, res.theoretical_fail), res.trials);
    CHECK(res.empirical_fail <= res.theoretical_fail + slack);
    CHECK(res.mstar_used ==
          doctest::Approx(coordinate_section_mean_width(60, 8)).epsilon(1e-12));
}

TEST_CASE("shrinking rejects clouds escaping the stated radius") {
    Matrix pt = Matrix::Zero(10, 1);
    pt(0, 0) = 2.0;
    CHECK_THROWS_AS(
        (void)shrinking_experiment(ShrinkSet::point_cloud(pt), 10, 2, 1.0, 0.1, 200,
                                   RngStream(71, 0)),
        PreconditionError);
}

TEST_CASE("gamma_m anchors and limits") {
    CHECK(std::fabs(gamma_m(2) - std::exp(-1.0)) <= 1e-12);
    // m = 1: P(chi^2_1 >= 1) = 2(1 - Phi(1)).
    const double oracle = 2.0 * (1.0 - std_normal_cdf(1.0));
    CHECK(std::fabs(gamma_m(1) - oracle) <= 1e-12);
    CHECK(std::fabs(gamma_m(1000000) - 0.5) <= 1e-3);
    double prev = gamma_m(1);
    for (Index m : {2, 3, 5, 10, 100, 1000, 10000}) {
        const double g = gamma_m(m);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("chevet-gordon bound: degenerate and ball cases") {
    // S = {0}: every max is zero, bound reduces to sqrt(d/m) a.
    Matrix origin = Matrix::Zero(20, 1);
    const auto zero = chevet_gordon_experiment(ShrinkSet::point_cloud(origin), 4, 20, 1.0,
                                               200, RngStream(72, 0));
    CHECK(zero.empirical_mean == 0.0);
    CHECK(zero.pass);

    // S = a B_2^m: E s1(A) a <= (sqrt(d/m) + 1) a.
    const auto ball = chevet_gordon_experiment(ShrinkSet::ball_section(30), 5, 30, 1.0, 1000,
                                               RngStream(73, 0));
    CHECK(ball.pass);
    CHECK(ball.bound == doctest::Approx(std::sqrt(5.0 / 30.0) + 1.0).epsilon(1e-6));

    // A three-point cloud.
    Matrix pts = Matrix::Zero(30, 3);
    pts(0, 0) = 1.0;
    pts(1, 1) = -0.6;
    pts(2, 2) = 0.3;
    const auto cloud = chevet_gordon_experiment(ShrinkSet::point_cloud(pts), 5, 30, 1.0, 1000,
                                                RngStream(74, 0));
    CHECK(cloud.pass);
}
