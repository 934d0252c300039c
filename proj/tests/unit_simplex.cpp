#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "satbody/simplex.hpp"

using namespace satbody;

namespace {

LpProblem empty_ub(Vector c, Matrix a_eq, Vector b_eq) {
    LpProblem lp;
    lp.c = std::move(c);
    lp.a_eq = std::move(a_eq);
    lp.b_eq = std::move(b_eq);
    lp.a_ub.resize(0, lp.c.size());
    lp.b_ub.resize(0);
    return lp;
}

} // namespace

TEST_CASE("equality-constrained minimum") {
    // min x0 + x1 s.t. x0 + 2 x1 = 4 -> x = (0, 2), value 2
    Matrix a(1, 2);
    a << 1, 2;
    Vector b(1), c(2);
    b << 4;
    c << 1, 1;
    const auto sol = solve_lp(empty_ub(c, a, b));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(sol.x(1) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("inequalities with slack") {
    // min -x0 - 2 x1 s.t. x0 + x1 <= 4, x1 <= 3 -> x = (1, 3), value -7
    LpProblem lp;
    lp.c.resize(2);
    lp.c << -1, -2;
    lp.a_eq.resize(0, 2);
    lp.b_eq.resize(0);
    lp.a_ub.resize(2, 2);
    lp.a_ub << 1, 1, 0, 1;
    lp.b_ub.resize(2);
    lp.b_ub << 4, 3;
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(-7.0).epsilon(1e-10));
    CHECK(sol.x(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.x(1) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("infeasible system is reported as such") {
    // x0 = 1 and x0 = 2 cannot both hold.
    Matrix a(2, 1);
    a << 1, 1;
    Vector b(2), c(1);
    b << 1, 2;
    c << 1;
    CHECK(solve_lp(empty_ub(c, a, b)).status == LpStatus::Infeasible);
}

TEST_CASE("negative right-hand sides are handled") {
    // min x0 s.t. -x0 - x1 = -3  ->  x = (0, 3), value 0
    Matrix a(1, 2);
    a << -1, -1;
    Vector b(1), c(2);
    b << -3;
    c << 1, 0;
    const auto sol = solve_lp(empty_ub(c, a, b));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("unbounded problem detected") {
    // min -x0 s.t. x1 <= 1: x0 free to grow.
    LpProblem lp;
    lp.c.resize(2);
    lp.c << -1, 0;
    lp.a_eq.resize(0, 2);
    lp.b_eq.resize(0);
    lp.a_ub.resize(1, 2);
    lp.a_ub << 0, 1;
    lp.b_ub.resize(1);
    lp.b_ub << 1;
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("redundant constraints do not break phase 1") {
    // Same constraint twice.
    Matrix a(2, 2);
    a << 1, 1, 1, 1;
    Vector b(2), c(2);
    b << 2, 2;
    c << 1, 3;
    const auto sol = solve_lp(empty_ub(c, a, b));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("degenerate vertices terminate under Bland's rule") {
    // Classic degenerate setup with several tight constraints at the origin.
    LpProblem lp;
    lp.c.resize(3);
    lp.c << -0.75, 150, -0.02;
    lp.a_ub.resize(3, 3);
    lp.a_ub << 0.25, -60, -0.04, 0.5, -90, -0.02, 0, 0, 1;
    lp.b_ub.resize(3);
    lp.b_ub << 0, 0, 1;
    lp.a_eq.resize(0, 3);
    lp.b_eq.resize(0);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(-0.05).epsilon(1e-8));
}
