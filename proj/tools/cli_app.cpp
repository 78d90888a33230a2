#include "cli_app.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scatgen/evaluation.hpp"
#include "scatgen/io.hpp"
#include "scatgen/scagnostics.hpp"

namespace scatgen::cli {

namespace {

namespace fs = std::filesystem;

FileFormat to_format(const std::string& name) {
    if (name == "csv") return FileFormat::Csv;
    if (name == "json") return FileFormat::Json;
    throw UsageError("--format must be csv or json, got '" + name + "'");
}

std::vector<Measure> parse_measure_names(const std::vector<std::string>& names,
                                         const char* flag) {
    std::vector<Measure> out;
    for (const std::string& name : names) {
        const auto m = parse_measure(name);
        if (!m)
            throw UsageError(std::string(flag) + ": unknown measure '" + name +
                             "'; valid names: " + measure_name_list());
        out.push_back(*m);
    }
    return out;
}

std::string scagnostics_csv(const ScagnosticVector& v) {
    std::string out = "measure,value\n";
    for (Measure m : all_measures()) {
        out += std::string(to_string(m)) + "," + format_double(v[m]) + "\n";
    }
    return out;
}

std::string scagnostics_json(const ScagnosticVector& v) {
    std::string out = "{";
    bool first = true;
    for (Measure m : all_measures()) {
        if (!first) out += ",";
        first = false;
        out += std::string("\n  \"") + to_string(m) + "\": " + format_double(v[m]);
    }
    out += "\n}\n";
    return out;
}

void write_or_print(const std::string& content, const std::string& output) {
    if (output.empty()) std::cout << content;
    else atomic_write(output, content);
}

void print_summary(const GenerationResult& result, const TargetSpec& targets) {
    std::cerr << "generated " << result.points.size() << " points in "
              << format_double(result.elapsed_ms) << " ms, final loss "
              << format_double(result.final_loss) << "\n";
    for (const auto& [m, target] : targets.entries) {
        std::cerr << "  " << to_string(m) << ": target " << format_double(target)
                  << ", achieved " << format_double(result.achieved[m]) << "\n";
    }
}

void print_trace(const GenerationResult& result) {
    std::cerr << "epoch,loss\n";
    for (std::size_t i = 0; i < result.per_epoch_losses.size(); ++i) {
        std::cerr << i << "," << format_double(result.per_epoch_losses[i]) << "\n";
    }
}

void emit_generation(const GenerationResult& result, const TargetSpec& targets,
                     const CliConfig& config) {
    const FileFormat format = to_format(config.format);
    write_or_print(format == FileFormat::Csv ? points_to_csv(result.points)
                                             : points_to_json(result.points),
                   config.output);
    if (!config.plot.empty()) emit_plot(result.points, result.achieved, config.plot);
    print_summary(result, targets);
    if (config.trace) print_trace(result);
}

ExperimentPlan bench_plan(const CliConfig& config) {
    ExperimentPlan plan;
    plan.measures = parse_measure_names(config.bench_measures, "--measure");
    plan.values = config.bench_values;
    plan.replicates = config.replicates;
    plan.base_seed = resolve_seed(config);
    plan.workers = config.workers;
    plan.config = generator_config(config);
    return plan;
}

fs::path with_suffix(const fs::path& base, const std::string& stem_suffix,
                     const char* extension) {
    fs::path out = base;
    const std::string stem = out.stem().string() + stem_suffix;
    out.replace_filename(stem + extension);
    return out;
}

void write_report(const ExperimentReport& report, const fs::path& csv_path) {
    std::ostringstream csv;
    report.write_csv(csv);
    atomic_write(csv_path, csv.str());
    std::ostringstream json;
    report.write_json(json);
    atomic_write(with_suffix(csv_path, "", ".json"), json.str());
}

void print_cells(const ExperimentReport& report) {
    std::cout << "measure,target";
    if (report.n_init > 0) std::cout << ",n_init";
    std::cout << ",rmse,mean_elapsed_ms,stddev_elapsed_ms,completed,failed\n";
    for (const CellStats& c : report.cells()) {
        std::cout << to_string(c.measure) << ',' << format_double(c.target);
        if (report.n_init > 0) std::cout << ',' << c.n_init;
        std::cout << ',' << format_double(c.rmse) << ',' << format_double(c.mean_elapsed_ms)
                  << ',' << format_double(c.stddev_elapsed_ms) << ',' << c.completed << ','
                  << c.failed << "\n";
    }
}

int cmd_generate(const CliConfig& config) {
    const TargetSpec targets = parse_targets(config.target_pairs);
    GeneratorConfig gen = generator_config(config);
    const GenerationResult result = generate(targets, gen);
    emit_generation(result, targets, config);
    return 0;
}

int cmd_clone(const CliConfig& config) {
    const PointSet reference = read_points(config.input, infer_format(config.input));
    std::optional<std::vector<Measure>> subset;
    if (!config.clone_measures.empty())
        subset = parse_measure_names(config.clone_measures, "--measure");
    const TargetSpec targets = clone_targets(reference, subset);

    GeneratorConfig gen = generator_config(config);
    if (!config.n_total_given) gen.n_total = static_cast<int>(reference.size());
    const GenerationResult result = generate(targets, gen);
    emit_generation(result, targets, config);
    return 0;
}

int cmd_measure(const CliConfig& config) {
    const PointSet points = read_points(config.input, infer_format(config.input));
    const ScagnosticVector v = compute_all(points);
    const FileFormat format = to_format(config.format);
    write_or_print(format == FileFormat::Csv ? scagnostics_csv(v) : scagnostics_json(v),
                   config.output);
    return 0;
}

int cmd_bench_reliability(const CliConfig& config) {
    if (config.output.empty()) throw UsageError("bench-reliability requires --output");
    const ExperimentPlan plan = bench_plan(config);
    const ExperimentReport report = run_reliability(plan);
    write_report(report, config.output);
    print_cells(report);
    std::cout << "grand_mean_rmse," << format_double(report.grand_mean_rmse()) << "\n";
    return report.complete() ? 0 : 1;
}

int cmd_bench_timing(const CliConfig& config) {
    if (config.output.empty()) throw UsageError("bench-timing requires --output");
    const ExperimentPlan plan = bench_plan(config);
    const auto reports = run_timing(plan, config.init_points);
    bool all_complete = true;
    for (const ExperimentReport& report : reports) {
        const std::string suffix = "_n" + std::to_string(report.n_init);
        write_report(report, with_suffix(config.output, suffix,
                                         fs::path(config.output).extension().string().c_str()));
        print_cells(report);
        all_complete = all_complete && report.complete();
    }
    return all_complete ? 0 : 1;
}

}  // namespace

TargetSpec parse_targets(const std::vector<std::string>& pairs) {
    if (pairs.empty())
        throw UsageError("generate requires at least one --target measure=value pair");
    TargetSpec spec;
    for (const std::string& pair : pairs) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw UsageError("--target expects measure=value, got '" + pair + "'");
        const std::string name = pair.substr(0, eq);
        const std::string value_text = pair.substr(eq + 1);
        const auto measure = parse_measure(name);
        if (!measure)
            throw UsageError("--target: unknown measure '" + name +
                             "'; valid names: " + measure_name_list());
        double value{};
        const char* begin = value_text.data();
        const char* end = begin + value_text.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end)
            throw UsageError("--target: value for " + name + " is not a number: '" +
                             value_text + "'");
        if (!(value >= 0.0 && value <= 1.0))
            throw UsageError("--target: value for " + name + " must lie in [0,1]");
        try {
            spec.add(*measure, value);
        } catch (const InvalidInput& ex) {
            throw UsageError(std::string("--target: ") + ex.what());
        }
    }
    return spec;
}

std::uint64_t resolve_seed(const CliConfig& config) {
    if (config.seed) return *config.seed;
    if (const char* env = std::getenv("SCATGEN_SEED")) {
        std::uint64_t value{};
        const std::string text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw UsageError("SCATGEN_SEED must be a nonnegative integer, got '" + text + "'");
        return value;
    }
    return 0;
}

GeneratorConfig generator_config(const CliConfig& config) {
    GeneratorConfig gen;
    gen.n_total = config.n_total;
    gen.n_init = config.n_init;
    gen.sigma2 = config.sigma2;
    gen.seed = resolve_seed(config);
    gen.gsa.t0 = config.t0;
    gen.gsa.qv = config.qv;
    gen.gsa.qa = config.qa;
    gen.gsa.max_iter = config.max_iter;
    gen.gsa.stop_threshold = config.stop_threshold;
    return gen;
}

CliConfig parse_cli(const std::vector<std::string>& args) {
    CliConfig config;
    CLI::App app{"scatgen: scatterplots from target scagnostic measures", "scatgen"};
    app.require_subcommand(0, 1);

    const std::string measure_help =
        "measures: " + measure_name_list();

    auto add_generation_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", config.n_total, "total points N to generate")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--n-init", config.n_init, "points arranged per epoch (n0)")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--sigma2", config.sigma2,
                        "variance of the between-epoch perturbation")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        cmd->add_option_function<std::uint64_t>(
               "--seed", [&](std::uint64_t s) { config.seed = s; },
               "RNG seed (default: $SCATGEN_SEED, else 0)");
        cmd->add_option("--t0", config.t0, "initial visiting temperature")
            ->capture_default_str();
        cmd->add_option("--qv", config.qv, "visiting distribution parameter")
            ->capture_default_str();
        cmd->add_option("--qa", config.qa, "acceptance distribution parameter")
            ->capture_default_str();
        cmd->add_option("--max-iter", config.max_iter, "annealing iteration budget")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--stop-threshold", config.stop_threshold,
                        "stop once the loss reaches this value")
            ->capture_default_str();
    };
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--output", config.output, "output path (stdout when omitted)");
        cmd->add_option("--format", config.format, "output format: csv | json")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--plot", config.plot, "also write an SVG plot to this path");
        cmd->add_flag("--trace", config.trace, "dump per-epoch losses to stderr");
    };

    CLI::App* generate_cmd =
        app.add_subcommand("generate", "arrange points matching target measures");
    generate_cmd->add_option("--target", config.target_pairs,
                             "repeatable measure=value pair; " + measure_help);
    add_generation_flags(generate_cmd);
    add_output_flags(generate_cmd);

    CLI::App* clone_cmd =
        app.add_subcommand("clone", "generate points mimicking a reference dataset");
    clone_cmd->add_option("--input", config.input, "reference points (csv or json)")
        ->required();
    clone_cmd->add_option("--measure", config.clone_measures,
                          "repeatable; clone only these measures; " + measure_help);
    add_generation_flags(clone_cmd);
    add_output_flags(clone_cmd);

    CLI::App* measure_cmd =
        app.add_subcommand("measure", "compute the nine scagnostics of a dataset");
    measure_cmd->add_option("--input", config.input, "points to measure (csv or json)")
        ->required();
    measure_cmd->add_option("--output", config.output, "output path (stdout when omitted)");
    measure_cmd->add_option("--format", config.format, "output format: csv | json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* bench_rel = app.add_subcommand(
        "bench-reliability", "RMSE study over a measure/value grid of generations");
    bench_rel->add_option("--measure", config.bench_measures,
                          "repeatable; default all nine; " + measure_help);
    bench_rel->add_option("--value", config.bench_values,
                          "repeatable target value (default 0.0 0.5 1.0)");
    bench_rel->add_option("--replicates", config.replicates, "replicates per cell")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_rel->add_option("--workers", config.workers, "parallel generations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_rel->add_option("--output", config.output, "report CSV path (JSON mirror alongside)")
        ->required();
    add_generation_flags(bench_rel);

    CLI::App* bench_time = app.add_subcommand(
        "bench-timing", "wall-clock study per measure/value/n-init cell");
    bench_time->add_option("--measure", config.bench_measures,
                           "repeatable; default all nine; " + measure_help);
    bench_time->add_option("--value", config.bench_values,
                           "repeatable target value (default 0.0 0.5 1.0)");
    bench_time->add_option("--replicates", config.replicates, "replicates per cell")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_time->add_option("--init-points", config.init_points,
                           "repeatable n0 grid (default 5 25 40)");
    bench_time->add_option("--output", config.output,
                           "report CSV base path; one _n<k> file per grid value")
        ->required();
    add_generation_flags(bench_time);

    app.footer("defaults: max_iter 5000, t0 5230, q_v 2.62, q_a -5.0, stop threshold 0.0001, "
               "sigma2 0.1, n 50, n-init 5\n" +
               measure_help);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        config.help_requested = true;
        const auto subs = app.get_subcommands();
        config.help_text = subs.empty() ? app.help() : subs.front()->help();
        return config;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const auto subs = app.get_subcommands();
    if (subs.empty()) {
        config.help_requested = true;
        config.help_text = app.help();
        return config;
    }
    config.subcommand = subs.front()->get_name();

    if (config.subcommand == "generate") parse_targets(config.target_pairs);  // validate now
    return config;
}

int dispatch(const CliConfig& config) {
    if (config.subcommand == "generate") return cmd_generate(config);
    if (config.subcommand == "clone") return cmd_clone(config);
    if (config.subcommand == "measure") return cmd_measure(config);
    if (config.subcommand == "bench-reliability") return cmd_bench_reliability(config);
    if (config.subcommand == "bench-timing") return cmd_bench_timing(config);
    throw UsageError("unknown subcommand '" + config.subcommand + "'");
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        const CliConfig config = parse_cli(args);
        if (config.help_requested) {
            std::cout << config.help_text;
            return 0;
        }
        return dispatch(config);
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace scatgen::cli
