#include <doctest.h>

#include <limits>
#include <random>

#include "ctxkit/lp.hpp"
#include "ctxkit/measures.hpp"
#include "testutil.hpp"

using namespace ctxkit;

TEST_CASE("solve_max handles the textbook cases") {
    SUBCASE("max x s.t. x <= 1") {
        LpProblem p;
        p.objective = {1.0};
        p.ineq_matrix = {{1.0}};
        p.ineq_rhs = {1.0};
        const auto sol = solve_max(p);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value == doctest::Approx(1.0));
        CHECK(sol.solution[0] == doctest::Approx(1.0));
    }
    SUBCASE("degenerate optimum face: max x+y s.t. x+y <= 1, x <= 0.25") {
        LpProblem p;
        p.objective = {1.0, 1.0};
        p.ineq_matrix = {{1.0, 1.0}, {1.0, 0.0}};
        p.ineq_rhs = {1.0, 0.25};
        const auto sol = solve_max(p);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value == doctest::Approx(1.0));
    }
    SUBCASE("infeasible: max x s.t. x = 2, x <= 1") {
        LpProblem p;
        p.objective = {1.0};
        p.ineq_matrix = {{1.0}};
        p.ineq_rhs = {1.0};
        p.eq_matrix = {{1.0}};
        p.eq_rhs = {2.0};
        CHECK(solve_max(p).status == LpStatus::infeasible);
    }
    SUBCASE("unbounded: max x s.t. -x <= 1") {
        LpProblem p;
        p.objective = {1.0};
        p.ineq_matrix = {{-1.0}};
        p.ineq_rhs = {1.0};
        CHECK(solve_max(p).status == LpStatus::unbounded);
    }
    SUBCASE("equality-only system") {
        LpProblem p;  // max x + y s.t. x + y = 3, x - y = 1
        p.objective = {1.0, 1.0};
        p.eq_matrix = {{1.0, 1.0}, {1.0, -1.0}};
        p.eq_rhs = {3.0, 1.0};
        const auto sol = solve_max(p);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.solution[0] == doctest::Approx(2.0));
        CHECK(sol.solution[1] == doctest::Approx(1.0));
    }
    SUBCASE("negative rhs rows are handled") {
        LpProblem p;  // max -x s.t. -x <= -1  (i.e. x >= 1)
        p.objective = {-1.0};
        p.ineq_matrix = {{-1.0}};
        p.ineq_rhs = {-1.0};
        const auto sol = solve_max(p);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value == doctest::Approx(-1.0));
    }
}

TEST_CASE("solve_max rejects malformed problems") {
    LpProblem p;
    p.objective = {1.0, 2.0};
    p.ineq_matrix = {{1.0}};  // wrong width
    p.ineq_rhs = {1.0};
    CHECK_THROWS_AS(solve_max(p), std::invalid_argument);

    LpProblem q;
    q.objective = {std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(solve_max(q), std::invalid_argument);

    LpProblem r;
    r.objective = {1.0};
    r.ineq_matrix = {{std::numeric_limits<double>::infinity()}};
    r.ineq_rhs = {1.0};
    CHECK_THROWS_AS(solve_max(r), std::invalid_argument);
}

TEST_CASE("redundant and inconsistent zero rows are handled") {
    LpProblem p;  // max x s.t. x <= 1, 0x = 0 (redundant)
    p.objective = {1.0};
    p.ineq_matrix = {{1.0}};
    p.ineq_rhs = {1.0};
    p.eq_matrix = {{0.0}};
    p.eq_rhs = {0.0};
    const auto sol = solve_max(p);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value == doctest::Approx(1.0));

    LpProblem q;  // 0x = 1 is unsatisfiable
    q.objective = {1.0};
    q.eq_matrix = {{0.0}};
    q.eq_rhs = {1.0};
    CHECK(solve_max(q).status == LpStatus::infeasible);

    LpProblem r;  // duplicated equality rows stay consistent
    r.objective = {1.0, 0.0};
    r.eq_matrix = {{1.0, 1.0}, {1.0, 1.0}};
    r.eq_rhs = {1.0, 1.0};
    const auto dup = solve_max(r);
    REQUIRE(dup.status == LpStatus::optimal);
    CHECK(dup.objective_value == doctest::Approx(1.0));
}

TEST_CASE("Beale's cycling example terminates at the right optimum") {
    LpProblem p;
    p.objective = {0.75, -150.0, 0.02, -6.0};
    p.ineq_matrix = {{0.25, -60.0, -0.04, 9.0},
                     {0.5, -90.0, -0.02, 3.0},
                     {0.0, 0.0, 1.0, 0.0}};
    p.ineq_rhs = {0.0, 0.0, 1.0};
    const auto sol = solve_max(p);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(sol.iterations < 1000);
}

TEST_CASE("random small problems match the vertex-enumeration oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> positive(0.2, 2.0);
    int optimal_count = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 4);  // 2..5
        const std::size_t m = 2 + static_cast<std::size_t>(rng() % 4);
        LpProblem p;
        p.objective.resize(n);
        for (double& v : p.objective) v = coeff(rng);
        p.ineq_matrix.assign(m, std::vector<double>(n));
        p.ineq_rhs.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (double& v : p.ineq_matrix[i]) v = coeff(rng);
            p.ineq_rhs[i] = positive(rng);
        }
        // cap every variable so the polytope is bounded and non-empty
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            p.ineq_matrix.push_back(std::move(row));
            p.ineq_rhs.push_back(positive(rng));
        }
        const auto sol = solve_max(p);
        REQUIRE(sol.status == LpStatus::optimal);
        ++optimal_count;

        // primal feasibility of the reported solution
        for (double v : sol.solution) CHECK(v >= -1e-9);
        for (std::size_t i = 0; i < p.ineq_matrix.size(); ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += p.ineq_matrix[i][j] * sol.solution[j];
            CHECK(lhs <= p.ineq_rhs[i] + 1e-9);
        }
        // weak-duality spot check: no vertex beats the reported optimum
        const double best = testutil::brute_force_lp_max(p.objective, p.ineq_matrix, p.ineq_rhs);
        CHECK(sol.objective_value == doctest::Approx(best).epsilon(1e-7));
    }
    CHECK(optimal_count == 60);
}

TEST_CASE("objective scales with the rhs on the homogeneous CF/SF family") {
    // CF-type problem: max 1.b s.t. M b <= e with M the Bell-model incidence
    const auto model = ctxkit::bell_model();
    const auto m = ctxkit::incidence_matrix(model.scenario);
    LpProblem p;
    p.objective.assign(m.cols, 1.0);
    p.ineq_matrix.assign(m.rows, std::vector<double>(m.cols, 0.0));
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            p.ineq_matrix[r][c] = static_cast<double>(m.at(r, c));
    for (const auto& dist : model.distributions)
        p.ineq_rhs.insert(p.ineq_rhs.end(), dist.probabilities.begin(),
                          dist.probabilities.end());

    const auto base = solve_max(p);
    REQUIRE(base.status == LpStatus::optimal);
    for (double k : {0.5, 2.0, 10.0}) {
        LpProblem scaled = p;
        for (double& b : scaled.ineq_rhs) b *= k;
        const auto sol = solve_max(scaled);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value == doctest::Approx(k * base.objective_value).epsilon(1e-9));
    }

    // SF family through the public entry point, inside the clamp range
    auto half = model;
    for (auto& dist : half.distributions)
        for (double& v : dist.probabilities) v *= 0.5;
    CHECK(ctxkit::signalling_fraction(half).sf == doctest::Approx(0.5).epsilon(1e-9));
}
