#include <doctest.h>

#include <cmath>
#include <sstream>

#include "scatgen/evaluation.hpp"

using namespace scatgen;

namespace {

ExperimentPlan tiny_plan() {
    ExperimentPlan plan;
    plan.measures = {Measure::Monotonic};
    plan.values = {1.0};
    plan.replicates = 3;
    plan.config.n_total = 10;
    plan.config.n_init = 5;
    plan.config.gsa.max_iter = 200;
    plan.base_seed = 424242;
    return plan;
}

}  // namespace

TEST_CASE("rmse: zero residuals, arithmetic, uniform offset") {
    const double xs1[] = {0.5, 0.5, 0.5};
    CHECK(rmse(xs1, 0.5) == 0.0);
    const double xs2[] = {0.4, 0.6};
    CHECK(rmse(xs2, 0.5) == doctest::Approx(0.1).epsilon(1e-12));
    const double xs3[] = {0.37, 0.37, 0.37, 0.37};
    CHECK(rmse(xs3, 0.3) == doctest::Approx(0.07).epsilon(1e-12));
    CHECK_THROWS_AS(rmse({}, 0.5), InvalidInput);
}

TEST_CASE("rmse: depends only on residuals") {
    const double a[] = {0.1, 0.3};
    const double b[] = {0.6, 0.8};
    CHECK(rmse(a, 0.2) == doctest::Approx(rmse(b, 0.7)).epsilon(1e-12));
}

TEST_CASE("replicate seeds: stable and cell-distinct") {
    const std::uint64_t s1 = replicate_seed(7, Measure::Convex, 0.5, 0);
    CHECK(s1 == replicate_seed(7, Measure::Convex, 0.5, 0));  // deterministic
    CHECK(s1 != replicate_seed(7, Measure::Convex, 0.5, 1));
    CHECK(s1 != replicate_seed(7, Measure::Convex, 1.0, 0));
    CHECK(s1 != replicate_seed(7, Measure::Skinny, 0.5, 0));
    CHECK(s1 != replicate_seed(8, Measure::Convex, 0.5, 0));
}

TEST_CASE("run_reliability: one cell, rmse recomputable from rows") {
    const ExperimentPlan plan = tiny_plan();
    const ExperimentReport report = run_reliability(plan);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.complete());

    std::vector<double> achieved;
    for (const ReportRow& row : report.rows) {
        CHECK(row.ok);
        CHECK(row.measure == Measure::Monotonic);
        CHECK(row.target == 1.0);
        CHECK(row.achieved >= 0.0);
        CHECK(row.achieved <= 1.0);
        CHECK(row.elapsed_ms > 0.0);
        achieved.push_back(row.achieved);
    }
    const double expected = rmse(achieved, 1.0);
    for (const ReportRow& row : report.rows) CHECK(row.rmse_cell == expected);
    CHECK(report.grand_mean_rmse() == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("run_reliability: single replicate reduces to absolute error") {
    ExperimentPlan plan = tiny_plan();
    plan.replicates = 1;
    const ExperimentReport report = run_reliability(plan);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].rmse_cell ==
          doctest::Approx(std::fabs(report.rows[0].achieved - 1.0)).epsilon(1e-12));
}

TEST_CASE("run_reliability: reproducible achieved values, workers irrelevant") {
    ExperimentPlan plan = tiny_plan();
    plan.measures = {Measure::Monotonic, Measure::Convex};
    plan.values = {0.5, 1.0};
    plan.replicates = 2;
    const ExperimentReport seq = run_reliability(plan);
    plan.workers = 2;
    const ExperimentReport par = run_reliability(plan);
    REQUIRE(seq.rows.size() == par.rows.size());
    for (std::size_t i = 0; i < seq.rows.size(); ++i) {
        CHECK(seq.rows[i].achieved == par.rows[i].achieved);
        CHECK(seq.rows[i].seed == par.rows[i].seed);
    }
}

TEST_CASE("run_reliability: failures recorded per row, not fatal") {
    ExperimentPlan plan = tiny_plan();
    plan.replicates = 2;
    plan.config.n_init = 20;  // exceeds n_total: every replicate fails
    plan.config.n_total = 10;
    const ExperimentReport report = run_reliability(plan);
    REQUIRE(report.rows.size() == 2);
    CHECK_FALSE(report.complete());
    for (const ReportRow& row : report.rows) {
        CHECK_FALSE(row.ok);
        CHECK(std::isnan(row.achieved));
        CHECK_FALSE(row.error.empty());
    }
    const auto cells = report.cells();
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].failed == 2);
    CHECK(cells[0].completed == 0);
}

TEST_CASE("run_timing: M=1 boundary and per-n0 reports") {
    ExperimentPlan plan = tiny_plan();
    plan.replicates = 1;
    const int grid[] = {5, 10};  // n0 = N runs a single epoch
    const auto reports = run_timing(plan, grid);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].n_init == 5);
    CHECK(reports[1].n_init == 10);
    for (const auto& rep : reports) {
        CHECK(rep.complete());
        CHECK(rep.rows[0].elapsed_ms > 0.0);
        const auto cells = rep.cells();
        CHECK(cells[0].n_init == rep.n_init);
    }
    CHECK_THROWS_AS(run_timing(plan, std::span<const int>{}), InvalidInput);
    const int bad[] = {11};
    CHECK_THROWS_AS(run_timing(plan, bad), InvalidInput);
}

TEST_CASE("report serialization: pinned CSV header and JSON mirror fields") {
    const ExperimentReport report = run_reliability(tiny_plan());
    std::ostringstream csv;
    report.write_csv(csv);
    const std::string text = csv.str();
    CHECK(text.rfind("measure,target,replicate,achieved,rmse_cell,elapsed_ms,seed\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);  // header + 3 rows

    std::ostringstream json;
    report.write_json(json);
    const std::string jtext = json.str();
    for (const char* field :
         {"\"measure\"", "\"target\"", "\"replicate\"", "\"achieved\"", "\"rmse_cell\"",
          "\"elapsed_ms\"", "\"seed\""}) {
        CHECK(jtext.find(field) != std::string::npos);
    }
}

TEST_CASE("plan validation") {
    ExperimentPlan plan = tiny_plan();
    plan.replicates = 0;
    CHECK_THROWS_AS(plan.validate(), InvalidInput);
    plan = tiny_plan();
    plan.values = {1.5};
    CHECK_THROWS_AS(plan.validate(), InvalidInput);
    plan = tiny_plan();
    plan.measures.clear();
    CHECK(plan.effective_measures().size() == 9);
}
