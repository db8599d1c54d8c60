#include <algorithm>
#include <random>

#include <doctest.h>

#include "qdml/cnf.hpp"
#include "qdml/encoder.hpp"
#include "qdml/oracle.hpp"
#include "qdml/solver.hpp"

using namespace qdml;

namespace {

Cnf random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses) {
    Cnf cnf;
    int nv = 2 + static_cast<int>(rng() % (max_vars - 1));
    cnf.fresh_vars(nv);
    int nc = 1 + static_cast<int>(rng() % max_clauses);
    for (int c = 0; c < nc; ++c) {
        int width = 1 + static_cast<int>(rng() % 4);
        std::vector<Lit> cl;
        for (int k = 0; k < width; ++k) {
            int v = 1 + static_cast<int>(rng() % nv);
            cl.push_back((rng() & 1) ? v : -v);
        }
        cnf.add_clause(cl);
    }
    return cnf;
}

// Exhaustive truth-table satisfiability, independent of the DPLL engine.
bool truth_table_sat(const Cnf& cnf) {
    int nv = cnf.num_vars();
    struct Masks {
        unsigned pos = 0, neg = 0;
    };
    std::vector<Masks> masks;
    for (const auto& cl : cnf.clauses()) {
        Masks m;
        for (Lit l : cl) {
            unsigned bit = 1u << (var_of(l) - 1);
            if (l > 0)
                m.pos |= bit;
            else
                m.neg |= bit;
        }
        masks.push_back(m);
    }
    for (unsigned long long a = 0; a < (1ULL << nv); ++a) {
        bool ok = true;
        for (const auto& m : masks) {
            if ((a & m.pos) == 0 && (~a & m.neg) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("trivial instances") {
    {
        Cnf cnf;
        cnf.fresh_var();
        cnf.add_unit(1);
        auto res = solve_builtin(cnf);
        REQUIRE(res.status == SolveStatus::Sat);
        CHECK(res.model.value(1));
    }
    {
        Cnf cnf;
        cnf.fresh_var();
        cnf.add_unit(1);
        cnf.add_unit(-1);
        CHECK(solve_builtin(cnf).status == SolveStatus::Unsat);
    }
    {
        Cnf empty;
        CHECK(solve_builtin(empty).status == SolveStatus::Sat);
    }
}

TEST_CASE("builtin verdicts match exhaustive evaluation on random CNFs") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 60; ++i) {
        Cnf cnf = random_cnf(rng, 12, 50);
        auto res = solve_builtin(cnf, {static_cast<std::uint64_t>(i), -1});
        REQUIRE(res.status != SolveStatus::Unknown);
        CHECK((res.status == SolveStatus::Sat) == truth_table_sat(cnf));
        if (res.status == SolveStatus::Sat) CHECK(satisfies(cnf, res.model));
    }
}

TEST_CASE("conflict budget exhaustion yields Unknown") {
    Cnf cnf;
    cnf.fresh_vars(2);
    cnf.add_clause({1, 2});
    cnf.add_clause({1, -2});
    cnf.add_clause({-1, 2});
    cnf.add_clause({-1, -2});
    CHECK(solve_builtin(cnf, {0, 0}).status == SolveStatus::Unknown);
    CHECK(solve_builtin(cnf, {0, -1}).status == SolveStatus::Unsat);
}

TEST_CASE("sequential heuristic matches exhaustive evaluation") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 30; ++i) {
        Cnf cnf = random_cnf(rng, 12, 50);
        auto res = solve_builtin(cnf, {0, -1, DecisionHeuristic::SequentialOrder});
        REQUIRE(res.status != SolveStatus::Unknown);
        CHECK((res.status == SolveStatus::Sat) == truth_table_sat(cnf));
        if (res.status == SolveStatus::Sat) CHECK(satisfies(cnf, res.model));
    }
}

TEST_CASE("fixed seed is reproducible") {
    std::mt19937_64 rng(17);
    Cnf cnf = random_cnf(rng, 14, 40);
    auto a = solve_builtin(cnf, {123, -1});
    auto b = solve_builtin(cnf, {123, -1});
    CHECK(a.status == b.status);
    if (a.status == SolveStatus::Sat) CHECK(a.model == b.model);
}

TEST_CASE("model enumeration with projection") {
    {
        Cnf cnf;
        cnf.fresh_vars(2);
        cnf.add_clause({1, 2});
        auto models = enumerate_models(cnf, {1, 2}, 10);
        CHECK(models.size() == 3);
    }
    {
        Cnf cnf;
        cnf.fresh_vars(2);
        cnf.add_clause({1, 2});
        CHECK(enumerate_models(cnf, {1, 2}, 1).size() == 1);
        CHECK_THROWS_AS(enumerate_models(cnf, {1, 2}, 0), std::invalid_argument);
    }
}

TEST_CASE("enumerated projections are pairwise distinct") {
    Cnf cnf;
    cnf.fresh_vars(4);
    cnf.add_clause({1, 2, 3});
    auto models = enumerate_models(cnf, {1, 2}, 100);
    for (size_t i = 0; i < models.size(); ++i)
        for (size_t j = i + 1; j < models.size(); ++j)
            CHECK((models[i].value(1) != models[j].value(1) ||
                   models[i].value(2) != models[j].value(2)));
}

TEST_CASE("enumeration of the full Q2 instance matches the oracle") {
    auto art = build_instance(2, {true, true, false});
    auto models = enumerate_models(art.cnf, art.primary_vars(), 100);
    CHECK(models.size() == 8);
    std::vector<std::vector<int>> decoded;
    for (const auto& m : models) {
        auto lab = decode_model(art, m);
        CHECK(verify_dml(lab).valid());
        decoded.push_back(lab.labels);
    }
    std::vector<std::vector<int>> expected;
    for (const auto& lab : brute_force_dmls(2)) expected.push_back(lab.labels);
    std::sort(decoded.begin(), decoded.end());
    std::sort(expected.begin(), expected.end());
    CHECK(decoded == expected);
}

TEST_CASE("external solver output parsing") {
    Cnf cnf;
    cnf.fresh_vars(2);
    cnf.add_clause({1, 2});

    auto res = solve_external("/dev/null", cnf, "printf 's SATISFIABLE\\nv 1 -2 0\\n' # {cnf}");
    REQUIRE(res.status == SolveStatus::Sat);
    CHECK(res.model.value(1));
    CHECK_FALSE(res.model.value(2));

    CHECK(solve_external("/dev/null", cnf, "echo 's UNSATISFIABLE' # {cnf}").status ==
          SolveStatus::Unsat);

    // exit code 20 corroborates UNSAT even without a status line
    CHECK(solve_external("/dev/null", cnf, "exit 20 # {cnf}").status == SolveStatus::Unsat);

    // garbage output
    CHECK(solve_external("/dev/null", cnf, "echo nonsense # {cnf}").status ==
          SolveStatus::Unknown);

    // SAT claim without values
    CHECK(solve_external("/dev/null", cnf, "echo 's SATISFIABLE' # {cnf}").status ==
          SolveStatus::Unknown);

    // status line contradicting the exit code
    CHECK(solve_external("/dev/null", cnf, "echo 's SATISFIABLE'; exit 20 # {cnf}").status ==
          SolveStatus::Unknown);
}

TEST_CASE("external models failing re-verification are rejected") {
    Cnf cnf;
    cnf.fresh_vars(2);
    cnf.add_unit(1);
    cnf.add_unit(2);
    auto res = solve_external("/dev/null", cnf, "printf 's SATISFIABLE\\nv 1 -2 0\\n' # {cnf}");
    CHECK(res.status == SolveStatus::Unknown);
}

TEST_CASE("command template expansion") {
    CHECK(expand_command_template("solver -s {seed} {cnf}", "a.cnf", 7) == "solver -s 7 a.cnf");
    CHECK(expand_command_template("solver {cnf}", "a.cnf", std::nullopt) == "solver a.cnf");
    CHECK_THROWS_AS(expand_command_template("solver file.cnf", "a.cnf", std::nullopt),
                    std::invalid_argument);
}

TEST_CASE("value lines spanning multiple lines") {
    Cnf cnf;
    cnf.fresh_vars(3);
    cnf.add_clause({1, 2, 3});
    auto res =
        solve_external("/dev/null", cnf, "printf 's SATISFIABLE\\nv 1 -2\\nv 3 0\\n' # {cnf}");
    REQUIRE(res.status == SolveStatus::Sat);
    CHECK(res.model.value(1));
    CHECK_FALSE(res.model.value(2));
    CHECK(res.model.value(3));
}
