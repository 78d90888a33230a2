#include "scatgen/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "scatgen/io.hpp"

namespace scatgen {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

struct Cell {
    Measure measure;
    double target;
    std::size_t first_row;  // rows of a cell are contiguous
    int count;
};

void fill_cell_rmse(std::vector<ReportRow>& rows, const std::vector<Cell>& cells) {
    for (const Cell& cell : cells) {
        std::vector<double> achieved;
        achieved.reserve(cell.count);
        for (int r = 0; r < cell.count; ++r) {
            const ReportRow& row = rows[cell.first_row + r];
            if (row.ok) achieved.push_back(row.achieved);
        }
        const double cell_rmse = achieved.empty() ? nan_value() : rmse(achieved, cell.target);
        for (int r = 0; r < cell.count; ++r) rows[cell.first_row + r].rmse_cell = cell_rmse;
    }
}

void run_job(ReportRow& row, const ExperimentPlan& plan, int n_init_override) {
    GeneratorConfig cfg = plan.config;
    cfg.seed = row.seed;
    cfg.progress = nullptr;
    if (n_init_override > 0) cfg.n_init = n_init_override;
    TargetSpec spec;
    spec.add(row.measure, row.target);
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const GenerationResult gen = generate(spec, cfg);
        row.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        row.achieved = compute_all(gen.points, cfg.scag)[row.measure];
        row.ok = true;
    } catch (const std::exception& ex) {
        row.ok = false;
        row.achieved = nan_value();
        row.error = ex.what();
    }
}

ExperimentReport run_grid(const ExperimentPlan& plan, int workers, int n_init_override) {
    ExperimentReport report;
    std::vector<Cell> cells;
    for (Measure m : plan.effective_measures()) {
        for (double value : plan.values) {
            cells.push_back({m, value, report.rows.size(), plan.replicates});
            for (int r = 0; r < plan.replicates; ++r) {
                ReportRow row;
                row.measure = m;
                row.target = value;
                row.replicate = r;
                row.seed = replicate_seed(plan.base_seed, m, value, r);
                report.rows.push_back(std::move(row));
            }
        }
    }

    if (workers <= 1) {
        for (ReportRow& row : report.rows) run_job(row, plan, n_init_override);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= report.rows.size()) return;
                run_job(report.rows[i], plan, n_init_override);
            }
        };
        std::vector<std::thread> pool;
        const int count = std::min<int>(workers, static_cast<int>(report.rows.size()));
        pool.reserve(count);
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    fill_cell_rmse(report.rows, cells);
    return report;
}

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

}  // namespace

std::vector<Measure> ExperimentPlan::effective_measures() const {
    if (!measures.empty()) return measures;
    const auto all = all_measures();
    return {all.begin(), all.end()};
}

void ExperimentPlan::validate() const {
    if (replicates < 1) throw InvalidInput("experiment needs at least one replicate");
    if (values.empty()) throw InvalidInput("experiment needs at least one target value");
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("target values must lie in [0,1]");
    }
    if (config.n_total < 3) throw InvalidInput("experiment generation size must be >= 3");
}

double rmse(std::span<const double> achieved, double target) {
    if (achieved.empty()) throw InvalidInput("rmse of an empty sample");
    double sum = 0.0;
    for (double a : achieved) {
        const double d = a - target;
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(achieved.size()));
}

std::uint64_t replicate_seed(std::uint64_t base, Measure m, double value, int replicate) {
    std::uint64_t s = mix_seed(base, static_cast<std::uint64_t>(m) + 1);
    s = mix_seed(s, std::bit_cast<std::uint64_t>(value));
    return mix_seed(s, static_cast<std::uint64_t>(replicate) + 1);
}

ExperimentReport run_reliability(const ExperimentPlan& plan) {
    plan.validate();
    return run_grid(plan, std::max(1, plan.workers), 0);
}

std::vector<ExperimentReport> run_timing(const ExperimentPlan& plan,
                                         std::span<const int> init_point_grid) {
    plan.validate();
    if (init_point_grid.empty()) throw InvalidInput("timing grid must be nonempty");
    for (int n0 : init_point_grid) {
        if (n0 < 1 || n0 > plan.config.n_total)
            throw InvalidInput("timing grid n_init values must lie in [1, N]");
    }
    std::vector<ExperimentReport> reports;
    reports.reserve(init_point_grid.size());
    for (int n0 : init_point_grid) {
        // timings stay uncontended: one generation at a time
        ExperimentReport report = run_grid(plan, 1, n0);
        report.n_init = n0;
        reports.push_back(std::move(report));
    }
    return reports;
}

double ExperimentReport::grand_mean_rmse() const {
    std::vector<double> cell_values;
    for (const CellStats& c : cells()) {
        if (c.completed > 0) cell_values.push_back(c.rmse);
    }
    if (cell_values.empty()) throw Error("report has no completed cells");
    return mean(cell_values);
}

double ExperimentReport::median_elapsed_ms() const {
    std::vector<double> elapsed;
    elapsed.reserve(rows.size());
    for (const ReportRow& row : rows) {
        if (row.ok) elapsed.push_back(row.elapsed_ms);
    }
    if (elapsed.empty()) throw Error("report has no completed rows");
    std::sort(elapsed.begin(), elapsed.end());
    const std::size_t n = elapsed.size();
    return n % 2 ? elapsed[n / 2] : (elapsed[n / 2 - 1] + elapsed[n / 2]) / 2.0;
}

std::vector<CellStats> ExperimentReport::cells() const {
    std::vector<CellStats> out;
    for (const ReportRow& row : rows) {
        if (out.empty() || out.back().measure != row.measure || out.back().target != row.target) {
            CellStats c;
            c.measure = row.measure;
            c.target = row.target;
            c.n_init = n_init;
            out.push_back(c);
        }
        CellStats& c = out.back();
        if (row.ok) {
            c.completed += 1;
            c.rmse = row.rmse_cell;  // identical across the cell's rows
        } else {
            c.failed += 1;
        }
    }
    for (CellStats& c : out) {
        std::vector<double> elapsed;
        for (const ReportRow& row : rows) {
            if (row.ok && row.measure == c.measure && row.target == c.target)
                elapsed.push_back(row.elapsed_ms);
        }
        c.mean_elapsed_ms = mean(elapsed);
        double var = 0.0;
        for (double e : elapsed) var += (e - c.mean_elapsed_ms) * (e - c.mean_elapsed_ms);
        c.stddev_elapsed_ms =
            elapsed.size() > 1 ? std::sqrt(var / static_cast<double>(elapsed.size() - 1)) : 0.0;
    }
    return out;
}

bool ExperimentReport::complete() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.ok; });
}

void ExperimentReport::write_csv(std::ostream& os) const {
    os << "measure,target,replicate,achieved,rmse_cell,elapsed_ms,seed\n";
    for (const ReportRow& row : rows) {
        os << to_string(row.measure) << ',' << format_double(row.target) << ','
           << row.replicate << ',' << format_double(row.achieved) << ','
           << format_double(row.rmse_cell) << ',' << format_double(row.elapsed_ms) << ','
           << row.seed << '\n';
    }
}

void ExperimentReport::write_json(std::ostream& os) const {
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ReportRow& row = rows[i];
        if (i) os << ",";
        os << "\n  {\"measure\": \"" << to_string(row.measure)
           << "\", \"target\": " << format_double(row.target)
           << ", \"replicate\": " << row.replicate
           << ", \"achieved\": " << (row.ok ? format_double(row.achieved) : std::string("null"))
           << ", \"rmse_cell\": "
           << (std::isnan(row.rmse_cell) ? std::string("null") : format_double(row.rmse_cell))
           << ", \"elapsed_ms\": " << format_double(row.elapsed_ms)
           << ", \"seed\": " << row.seed << "}";
    }
    os << "\n]\n";
}

}  // namespace scatgen
