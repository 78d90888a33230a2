// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run with --full for the full-scale reliability grid (hours);
// the default smoke scale finishes in minutes.
//
//   scatgen_acceptance --cli <path-to-scatgen-binary> [--full] [--workers N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "scatgen/evaluation.hpp"
#include "scatgen/generator.hpp"
#include "scatgen/gsa.hpp"
#include "scatgen/io.hpp"
#include "scatgen/scagnostics.hpp"

using namespace scatgen;
namespace fs = std::filesystem;

namespace {

int checks_failed = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++checks_failed;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::vector<std::pair<double, double>> to_pairs(const PointSet& pts) {
    std::vector<std::pair<double, double>> out;
    for (const Point& p : pts) out.push_back({p.x, p.y});
    return out;
}

PointSet random_points(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointSet pts;
    for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
    return pts;
}

PointSet two_cluster_points(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 0.04);
    PointSet pts;
    for (int i = 0; i < n; ++i) {
        const double c = (i % 2 == 0) ? 0.2 : 0.8;
        pts.push_back({c + g(rng), c + g(rng)});
    }
    return pts;
}

struct CliRunner {
    std::string binary;
    fs::path dir;

    int run(const std::string& args, const std::string& stdout_file = "") const {
        std::string cmd = binary + " " + args;
        cmd += stdout_file.empty() ? std::string(" > /dev/null")
                                   : " > " + (dir / stdout_file).string();
        cmd += " 2> /dev/null";
        return std::system(cmd.c_str());
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// bench reports embed wall-clock durations; drop that column before
// comparing runs byte-for-byte
std::string strip_elapsed_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string out, line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (fields.size() == 7) fields.erase(fields.begin() + 5);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_binary;
    bool full = false;
    int workers = std::max(1u, std::thread::hardware_concurrency());
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) cli_binary = argv[++i];
        else if (arg == "--full") full = true;
        else if (arg == "--workers" && i + 1 < argc) workers = std::atoi(argv[++i]);
    }

    std::printf("== acceptance suite (%s scale, %d workers) ==\n", full ? "full" : "smoke",
                workers);

    // ------------------------------------------------------------------ 3
    {
        int sphere_ok = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            BoxObjective obj;
            obj.lower = {-5.0, -5.0};
            obj.upper = {5.0, 5.0};
            obj.evaluate = [](std::span<const double> x) {
                return x[0] * x[0] + x[1] * x[1];
            };
            const GsaResult r = gsa_minimize(obj, {4.0, -3.0}, GsaParams{}, seed);
            if (r.best_energy <= 1e-4 && r.iterations_used <= 5000) ++sphere_ok;
        }
        std::vector<double> rastrigin;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            BoxObjective obj;
            obj.lower = {-5.12, -5.12};
            obj.upper = {5.12, 5.12};
            obj.evaluate = [](std::span<const double> x) {
                double s = 20.0;
                for (double v : x) s += v * v - 10.0 * std::cos(2.0 * M_PI * v);
                return s;
            };
            rastrigin.push_back(gsa_minimize(obj, {4.0, 4.0}, GsaParams{}, seed).best_energy);
        }
        std::sort(rastrigin.begin(), rastrigin.end());
        const double median = (rastrigin[9] + rastrigin[10]) / 2.0;
        report(3, "optimizer sanity", sphere_ok == 10 && median < 1.0,
               "sphere " + std::to_string(sphere_ok) + "/10 at <=1e-4, rastrigin median " +
                   fmt(median) + " < 1");
    }

    // ------------------------------------------------------------------ 4
    {
        std::mt19937 meta(7001);
        int mst_ok = 0, hull_ok = 0, circ_ok = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const int n = 3 + static_cast<int>(meta() % 5);  // 3..7
            const PointSet pts = random_points(n, static_cast<unsigned>(meta()));
            const double got = minimum_spanning_tree(pts).total_length();
            const double want = oracle::exhaustive_mst_length(to_pairs(pts));
            if (std::fabs(got - want) <= 1e-12 * std::max(1.0, want)) ++mst_ok;
        }
        for (int rep = 0; rep < 100; ++rep) {
            const int n = 3 + static_cast<int>(meta() % 18);  // 3..20
            const PointSet pts = random_points(n, static_cast<unsigned>(meta()));
            const auto loop = convex_hull(pts).loops[0];
            std::vector<int> got(loop.begin(), loop.end());
            std::vector<int> want = oracle::brute_hull_vertices(to_pairs(pts));
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got == want) ++hull_ok;
        }
        for (int rep = 0; rep < 100; ++rep) {
            const int n = 4 + static_cast<int>(meta() % 7);  // 4..10
            const PointSet pts = random_points(n, static_cast<unsigned>(meta()));
            bool all_empty = true;
            for (const Triangle& t : delaunay_detail(pts).triangles) {
                const Point &a = pts[t.a], &b = pts[t.b], &c = pts[t.c];
                const double bx = b.x - a.x, by = b.y - a.y;
                const double cx = c.x - a.x, cy = c.y - a.y;
                const double d = 2.0 * (bx * cy - by * cx);
                const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
                const double ux = (cy * b2 - by * c2) / d, uy = (bx * c2 - cx * b2) / d;
                const double r = std::hypot(ux, uy);
                for (int k = 0; k < n; ++k) {
                    if (k == t.a || k == t.b || k == t.c) continue;
                    if (std::hypot(pts[k].x - (a.x + ux), pts[k].y - (a.y + uy)) < r - 1e-9)
                        all_empty = false;
                }
            }
            if (all_empty) ++circ_ok;
        }
        report(4, "geometry oracles", mst_ok == 100 && hull_ok == 100 && circ_ok == 100,
               "mst " + std::to_string(mst_ok) + "/100 exact, hull " + std::to_string(hull_ok) +
                   "/100 match, circumcircle " + std::to_string(circ_ok) + "/100 empty");
    }

    // ------------------------------------------------------------------ 5
    {
        std::mt19937 meta(20240617);
        int matched = 0;
        double worst = 0.0;
        ScagnosticsOptions unbinned;
        unbinned.binning = false;
        for (int rep = 0; rep < 50; ++rep) {
            const int n = 10 + static_cast<int>(meta() % 41);
            PointSet pts = (rep % 3 == 0) ? two_cluster_points(n, static_cast<unsigned>(meta()))
                                          : random_points(n, static_cast<unsigned>(meta()));
            const auto got = compute_all(pts, unbinned).as_array();
            const oracle::Nine ref = oracle::reference_scagnostics(to_pairs(pts));
            const double want[9] = {ref.outlying, ref.skewed,  ref.clumpy,
                                    ref.sparse,   ref.striated, ref.convex,
                                    ref.skinny,   ref.stringy, ref.monotonic};
            bool ok = true;
            for (int i = 0; i < 9; ++i) {
                worst = std::max(worst, std::fabs(got[i] - want[i]));
                if (std::fabs(got[i] - want[i]) > 1e-6) ok = false;
            }
            if (ok) ++matched;
        }

        int in_range = 0;
        const int kAdversarial = 1000;
        for (int rep = 0; rep < kAdversarial; ++rep) {
            PointSet pts;
            const unsigned seed = static_cast<unsigned>(meta());
            switch (rep % 5) {
                case 0: pts = random_points(3 + rep % 80, seed); break;
                case 1: pts = two_cluster_points(4 + rep % 80, seed); break;
                case 2: {
                    for (int i = 0; i < 5 + rep % 30; ++i) {
                        const double t = i / 30.0;
                        pts.push_back({t, 0.3 + 0.4 * t});
                    }
                    pts.push_back(pts[0]);
                    break;
                }
                case 3: {
                    pts = PointSet(5 + rep % 20, Point{0.4, 0.6});
                    pts.push_back({0.9, 0.9});
                    pts.push_back({0.05, 0.85});
                    break;
                }
                default: {
                    const int g = 3 + rep % 5;
                    for (int i = 0; i < g; ++i)
                        for (int j = 0; j < g; ++j) pts.push_back({i / (g - 1.0), j / (g - 1.0)});
                    break;
                }
            }
            bool ok = true;
            for (double v : compute_all(pts).as_array()) {
                if (!(v >= 0.0 && v <= 1.0) || !std::isfinite(v)) ok = false;
            }
            if (ok) ++in_range;
        }
        report(5, "scagnostics definitional oracle",
               matched == 50 && in_range == kAdversarial,
               std::to_string(matched) + "/50 sets within 1e-6 (worst gap " + fmt(worst) +
                   "), " + std::to_string(in_range) + "/" + std::to_string(kAdversarial) +
                   " adversarial sets in [0,1]");
    }

    // ------------------------------------------------------------------ 6
    {
        struct Loop {
            Measure m;
            double target;
            bool at_least;  // achieved >= bound vs <= bound
            double bound;
        };
        const Loop loops[] = {{Measure::Monotonic, 1.0, true, 0.9},
                              {Measure::Convex, 1.0, true, 0.8},
                              {Measure::Outlying, 0.0, false, 0.1}};
        bool all_ok = true;
        std::string detail;
        for (const Loop& loop : loops) {
            int ok = 0;
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                TargetSpec spec;
                spec.add(loop.m, loop.target);
                GeneratorConfig cfg;
                cfg.n_total = 20;
                cfg.n_init = 5;
                cfg.seed = seed;
                const double achieved = generate(spec, cfg).achieved[loop.m];
                if (loop.at_least ? achieved >= loop.bound : achieved <= loop.bound) ++ok;
            }
            if (!detail.empty()) detail += ", ";
            detail += std::string(to_string(loop.m)) + " " + std::to_string(ok) + "/5";
            if (ok < 4) all_ok = false;
        }
        report(6, "closed-loop single targets (4/5 per family)", all_ok, detail);
    }

    // ------------------------------------------------------------------ 7
    {
        const PointSet reference = two_cluster_points(50, 90125);
        const TargetSpec spec = clone_targets(reference);
        const double self_loss = loss({}, reference, spec);

        GeneratorConfig cfg;
        cfg.n_total = 50;
        cfg.n_init = 5;
        cfg.seed = 7;
        const GenerationResult res = generate(spec, cfg);
        report(7, "clone-mode consistency",
               self_loss == 0.0 && res.final_loss <= 0.15,
               "self-loss " + fmt(self_loss) + " (exact zero required), cloned final loss " +
                   fmt(res.final_loss) + " <= 0.15");
    }

    // ------------------------------------------------------------------ 8
    if (cli_binary.empty()) {
        report(8, "CLI determinism", false, "no --cli binary supplied");
    } else {
        const fs::path dir = fs::temp_directory_path() / "scatgen_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        CliRunner cli{cli_binary, dir};

        bool ok = true;
        std::string detail;
        auto compare = [&](const std::string& what, const fs::path& a, const fs::path& b,
                           bool strip_elapsed) {
            std::string sa = slurp(a), sb = slurp(b);
            if (strip_elapsed) {
                sa = strip_elapsed_column(sa);
                sb = strip_elapsed_column(sb);
            }
            const bool same = !sa.empty() && sa == sb;
            if (!same) ok = false;
            if (!detail.empty()) detail += ", ";
            detail += what + (same ? " identical" : " DIFFERS");
        };

        const std::string gen_args =
            "generate --target monotonic=1.0 --target convex=0.8 --n 14 --n-init 5 --seed 5 "
            "--max-iter 200";
        cli.run(gen_args + " --output " + (dir / "gen_a.csv").string() + " --plot " +
                (dir / "plot_a.svg").string());
        cli.run(gen_args + " --output " + (dir / "gen_b.csv").string() + " --plot " +
                (dir / "plot_b.svg").string());
        compare("generate", dir / "gen_a.csv", dir / "gen_b.csv", false);
        compare("plot", dir / "plot_a.svg", dir / "plot_b.svg", false);

        cli.run("measure --input " + (dir / "gen_a.csv").string(), "meas_a.csv");
        cli.run("measure --input " + (dir / "gen_a.csv").string(), "meas_b.csv");
        compare("measure", dir / "meas_a.csv", dir / "meas_b.csv", false);

        const std::string clone_args = "clone --input " + (dir / "gen_a.csv").string() +
                                       " --measure monotonic --n 12 --seed 3 --max-iter 150";
        cli.run(clone_args + " --output " + (dir / "clone_a.json").string() + " --format json");
        cli.run(clone_args + " --output " + (dir / "clone_b.json").string() + " --format json");
        compare("clone", dir / "clone_a.json", dir / "clone_b.json", false);

        const std::string bench_args =
            "bench-reliability --measure monotonic --value 1.0 --replicates 2 --n 10 "
            "--n-init 5 --max-iter 150 --seed 9 --output ";
        cli.run(bench_args + (dir / "rep_a.csv").string());
        cli.run(bench_args + (dir / "rep_b.csv").string());
        compare("bench-reliability", dir / "rep_a.csv", dir / "rep_b.csv", true);

        const std::string timing_args =
            "bench-timing --measure monotonic --value 0.5 --replicates 1 --n 10 "
            "--init-points 5 --max-iter 100 --seed 4 --output ";
        cli.run(timing_args + (dir / "tim_a.csv").string());
        cli.run(timing_args + (dir / "tim_b.csv").string());
        compare("bench-timing", dir / "tim_a_n5.csv", dir / "tim_b_n5.csv", true);

        report(8, "CLI determinism (bench compared modulo elapsed_ms)", ok, detail);
        fs::remove_all(dir);
    }

    // ------------------------------------------------------------------ 2
    {
        ExperimentPlan plan;
        plan.replicates = 1;  // one timed generation per grid cell
        plan.config.n_total = 50;
        plan.config.n_init = 5;
        plan.base_seed = 515151;
        const int grid[] = {5};
        const auto reports = run_timing(plan, grid);
        const double median_s = reports[0].median_elapsed_ms() / 1000.0;
        report(2, "runtime budget (median over the 27 grid cells)", median_s <= 60.0,
               "median " + fmt(median_s) + "s <= 60s for N=50, n0=5");
    }

    // ------------------------------------------------------------------ 1
    {
        ExperimentPlan plan;
        plan.config.n_total = 50;
        plan.config.n_init = 5;
        plan.base_seed = 20240601;
        plan.workers = workers;
        double bound, minutes_budget;
        std::string scale;
        if (full) {
            plan.replicates = 20;
            bound = 0.10;
            minutes_budget = 360.0;
            scale = "full 9x3 grid R=20";
        } else {
            plan.measures = {Measure::Convex, Measure::Monotonic, Measure::Outlying};
            plan.replicates = 5;
            bound = 0.15;
            minutes_budget = 20.0;
            scale = "smoke 3x3 grid R=5";
        }
        const auto t0 = std::chrono::steady_clock::now();
        const ExperimentReport rel = run_reliability(plan);
        const double minutes =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
            60.0;
        for (const CellStats& c : rel.cells()) {
            std::printf("    %-10s %.1f  rmse %.4f  (mean %.1fs/gen)\n", to_string(c.measure),
                        c.target, c.rmse, c.mean_elapsed_ms / 1000.0);
        }
        const double grand = rel.grand_mean_rmse();
        report(1, "reliability reproduction (" + scale + ")",
               rel.complete() && grand <= bound && minutes <= minutes_budget,
               "grand-mean rmse " + fmt(grand) + " <= " + fmt(bound) + ", took " +
                   fmt(minutes) + " min <= " + fmt(minutes_budget) + " min");
    }

    std::printf("== %s ==\n", checks_failed == 0 ? "ALL CRITERIA PASSED"
                                                 : "FAILURES PRESENT");
    return checks_failed == 0 ? 0 : 1;
}
