#include <doctest.h>

#include <cmath>
#include <sstream>

#include "msw/lp.hpp"
#include "msw/synth.hpp"
#include "support.hpp"

using namespace msw;
using namespace msw::lp;

namespace {

LpModel allocation_lp(const std::vector<double>& cost, const std::vector<double>& cap, double demand) {
    LpModel m;
    for (std::size_t j = 0; j < cost.size(); ++j)
        m.add_variable("n" + std::to_string(j), 0, kInf, cost[j]);
    Row capacity{"capacity", {}, Sense::ge, demand};
    Row choice{"choice", {}, Sense::eq, 1};
    for (std::size_t j = 0; j < cost.size(); ++j) {
        capacity.coeffs.emplace_back(static_cast<int>(j), cap[j]);
        choice.coeffs.emplace_back(static_cast<int>(j), 1.0);
    }
    m.add_row(std::move(capacity));
    m.add_row(std::move(choice));
    return m;
}

}  // namespace

TEST_CASE("a one-variable band solves with unit dual on the binding row") {
    LpModel m;
    m.add_variable("x", -kInf, kInf, 1.0);
    m.add_row("lo", {{0, 1.0}}, Sense::ge, 3);
    m.add_row("hi", {{0, 1.0}}, Sense::le, 10);
    LpSolution s = solve_lp(m);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.objective == doctest::Approx(3));
    CHECK(s.x[0] == doctest::Approx(3));
    CHECK(s.duals[0] == doctest::Approx(1));
    CHECK(s.duals[1] == doctest::Approx(0));
}

TEST_CASE("the allocation relaxation splits across two combinations") {
    // expected values frozen from the basis-pair enumeration oracle
    std::vector<double> cost = {0.11, 0.22, 0.32}, cap = {1.1, 2.2, 2.4};
    auto oracle = msw::test::alloc_lp_by_enumeration(cost, cap, 1.65);
    REQUIRE(oracle.feasible);
    REQUIRE(oracle.value == doctest::Approx(0.165));
    REQUIRE(oracle.weights[0] == doctest::Approx(0.5));
    REQUIRE(oracle.weights[1] == doctest::Approx(0.5));

    LpSolution s = solve_lp(allocation_lp(cost, cap, 1.65));
    REQUIRE(s.status == Status::optimal);
    CHECK(s.objective == doctest::Approx(0.165));
    CHECK(s.x[0] == doctest::Approx(0.5));
    CHECK(s.x[1] == doctest::Approx(0.5));
    CHECK(s.x[2] == doctest::Approx(0.0));
    CHECK(s.duals[0] == doctest::Approx(0.1));   // delta
    CHECK(s.duals[1] == doctest::Approx(0.0));   // gamma
}

TEST_CASE("uncoverable demand yields a valid infeasibility ray") {
    std::vector<double> cost = {0.11, 0.22, 0.32}, cap = {1.1, 2.2, 2.4};
    LpModel m = allocation_lp(cost, cap, 6.0);
    LpSolution s = solve_lp(m);
    REQUIRE(s.status == Status::infeasible);
    REQUIRE(s.farkas.size() == 2);
    CHECK(check_farkas(m, s.farkas));
    // hand check: scale so the capacity-row weight is 1
    double dhat = s.farkas[0], ghat = s.farkas[1];
    REQUIRE(dhat > 0);
    ghat /= dhat;
    for (double c : cap) CHECK(c + ghat <= 1e-7);
    CHECK(6.0 + ghat > 1e-7);
}

TEST_CASE("unbounded below is detected") {
    LpModel m;
    m.add_variable("x", 0, kInf, -1.0);
    m.add_row("r", {{0, -1.0}}, Sense::le, 0);
    CHECK(solve_lp(m).status == Status::unbounded);
}

TEST_CASE("appending a row matches solving the rebuilt model") {
    std::vector<double> cost = {0.11, 0.22, 0.32}, cap = {1.1, 2.2, 2.4};
    LpModel base = allocation_lp(cost, cap, 1.65);
    Row extra{"extra", {{0, 1.0}}, Sense::le, 0.25};

    Simplex warm(base);
    LpSolution first = warm.solve();
    REQUIRE(first.status == Status::optimal);
    warm.add_row(extra);
    LpSolution resolved = warm.solve();

    LpModel rebuilt = base;
    rebuilt.add_row(extra);
    LpSolution cold = solve_lp(rebuilt);
    REQUIRE(resolved.status == Status::optimal);
    REQUIRE(cold.status == Status::optimal);
    CHECK(resolved.objective == doctest::Approx(cold.objective));
    // the new row caps the cheap column, so the optimum strictly rises
    CHECK(resolved.objective > first.objective + 1e-9);

    // a duplicate of an existing row changes nothing
    warm.add_row(extra);
    LpSolution again = warm.solve();
    CHECK(again.objective == doctest::Approx(resolved.objective));
}

TEST_CASE("a classic cycling-prone tableau terminates at its optimum") {
    // degenerate pricing example known to cycle without anti-cycling rules
    LpModel m;
    m.add_variable("x1", 0, kInf, -0.75);
    m.add_variable("x2", 0, kInf, 150.0);
    m.add_variable("x3", 0, kInf, -0.02);
    m.add_variable("x4", 0, kInf, 6.0);
    m.add_row("r1", {{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, Sense::le, 0);
    m.add_row("r2", {{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, Sense::le, 0);
    m.add_row("r3", {{2, 1.0}}, Sense::le, 1);
    LpSolution s = solve_lp(m);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.objective == doctest::Approx(-0.05));
}

TEST_CASE("strong duality and complementary slackness hold on random LPs") {
    synth::Rng rng(909);
    int checked = 0;
    for (int seed = 0; seed < 220; ++seed) {
        msw::test::RandomLp r = msw::test::random_feasible_lp(rng);
        LpSolution s = solve_lp(r.model);
        REQUIRE(s.status == Status::optimal);  // witness point exists
        ++checked;
        double dual = dual_objective(r.model, s);
        CHECK(std::fabs(s.objective - dual) <= 1e-6 * (1 + std::fabs(s.objective)));
        // complementary slackness: row dual times row slack vanishes
        for (int i = 0; i < r.model.num_rows(); ++i) {
            const Row& row = r.model.row(i);
            if (row.sense == Sense::eq) continue;
            double activity = 0;
            for (auto [j, c] : row.coeffs) activity += c * s.x[j];
            CHECK(std::fabs(s.duals[i] * (activity - row.rhs)) <= 1e-6 * (1 + std::fabs(s.objective)));
        }
        // primal feasibility at tolerance
        for (int i = 0; i < r.model.num_rows(); ++i) {
            const Row& row = r.model.row(i);
            double activity = 0;
            for (auto [j, c] : row.coeffs) activity += c * s.x[j];
            if (row.sense == Sense::le) CHECK(activity <= row.rhs + 1e-6);
            if (row.sense == Sense::ge) CHECK(activity >= row.rhs - 1e-6);
            if (row.sense == Sense::eq) CHECK(std::fabs(activity - row.rhs) <= 1e-6);
        }
    }
    CHECK(checked == 220);
}

TEST_CASE("every random infeasible LP carries a checkable ray") {
    synth::Rng rng(4242);
    for (int seed = 0; seed < 200; ++seed) {
        LpModel m = msw::test::random_infeasible_lp(rng);
        LpSolution s = solve_lp(m);
        REQUIRE(s.status == Status::infeasible);
        CHECK(check_farkas(m, s.farkas));
    }
}

TEST_CASE("solving twice produces identical bases and values") {
    synth::Rng rng(77);
    for (int seed = 0; seed < 30; ++seed) {
        msw::test::RandomLp r = msw::test::random_feasible_lp(rng);
        LpSolution a = solve_lp(r.model);
        LpSolution b = solve_lp(r.model);
        CHECK(a.basis.basic == b.basis.basic);
        CHECK(a.basis.var_stat == b.basis.var_stat);
        CHECK(a.objective == b.objective);  // bitwise
        CHECK(a.x == b.x);
    }
}

TEST_CASE("model validation rejects inconsistent input") {
    LpModel m;
    m.add_variable("x", 1, 0, 0);
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    LpModel dup;
    dup.add_variable("x", 0, 1, 0);
    dup.add_variable("x", 0, 1, 0);
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
    LpModel ok;
    ok.add_variable("x", 0, 1, 0);
    CHECK_THROWS_AS(ok.add_row("r", {{3, 1.0}}, Sense::le, 1), std::invalid_argument);
}

TEST_CASE("debug listing mentions objective, rows and bounds") {
    LpModel m;
    m.add_variable("x", 0, 2, 1.5, true);
    m.add_row("r0", {{0, 1.0}}, Sense::ge, 1);
    std::ostringstream os;
    write_lp_text(m, os);
    std::string text = os.str();
    CHECK(text.find("minimize") != std::string::npos);
    CHECK(text.find("r0") != std::string::npos);
    CHECK(text.find("x") != std::string::npos);
}
