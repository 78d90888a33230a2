#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scatgen/generator.hpp"
#include "scatgen/types.hpp"

namespace scatgen {

struct ExperimentPlan {
    std::vector<Measure> measures;            // empty = all nine
    std::vector<double> values{0.0, 0.5, 1.0};
    int replicates{20};
    GeneratorConfig config{};                 // template; seed is derived per replicate
    std::uint64_t base_seed{0};
    int workers{1};                           // reliability only; timing runs sequentially

    std::vector<Measure> effective_measures() const;
    void validate() const;
};

struct ReportRow {
    Measure measure{Measure::Outlying};
    double target{0.0};
    int replicate{0};
    double achieved{0.0};   // NaN when the replicate failed
    double rmse_cell{0.0};  // cell RMSE over the successful replicates
    double elapsed_ms{0.0};
    std::uint64_t seed{0};
    bool ok{true};
    std::string error;      // failure diagnostic, not serialized
};

struct CellStats {
    Measure measure{Measure::Outlying};
    double target{0.0};
    int n_init{0};          // timing reports only; 0 in reliability reports
    double rmse{0.0};
    double mean_elapsed_ms{0.0};
    double stddev_elapsed_ms{0.0};
    int completed{0};
    int failed{0};
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    int n_init{0};          // set by timing runs

    double grand_mean_rmse() const;
    double median_elapsed_ms() const;
    std::vector<CellStats> cells() const;
    bool complete() const;

    // header: measure,target,replicate,achieved,rmse_cell,elapsed_ms,seed
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

// sqrt(sum (a_i - target)^2 / R)
double rmse(std::span<const double> achieved, double target);

// Stable derivation of per-replicate seeds from (base, measure, value,
// replicate); documented so cells can be reproduced in isolation.
std::uint64_t replicate_seed(std::uint64_t base, Measure m, double value, int replicate);

// One generation per (measure, value, replicate), remeasured with
// compute_all. Replicate failures are recorded per row, never fatal.
ExperimentReport run_reliability(const ExperimentPlan& plan);

// Wall-clock study per (measure, value, n0) cell; one report per n0 value.
// Generations run one at a time to keep timings uncontended.
std::vector<ExperimentReport> run_timing(const ExperimentPlan& plan,
                                         std::span<const int> init_point_grid);

}  // namespace scatgen
