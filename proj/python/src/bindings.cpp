#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scatgen/evaluation.hpp"
#include "scatgen/generator.hpp"
#include "scatgen/gsa.hpp"
#include "scatgen/scagnostics.hpp"

namespace py = pybind11;
using namespace scatgen;

namespace {

using RawPoints = std::vector<std::pair<double, double>>;

PointSet to_points(const RawPoints& raw) {
    PointSet pts;
    pts.reserve(raw.size());
    for (const auto& [x, y] : raw) pts.push_back({x, y});
    return pts;
}

RawPoints from_points(const PointSet& pts) {
    RawPoints out;
    out.reserve(pts.size());
    for (const Point& p : pts) out.push_back({p.x, p.y});
    return out;
}

py::dict vector_to_dict(const ScagnosticVector& v) {
    py::dict out;
    for (Measure m : all_measures()) out[to_string(m)] = v[m];
    return out;
}

TargetSpec dict_to_targets(const py::dict& targets) {
    TargetSpec spec;
    for (const auto& item : targets) {
        const std::string name = py::cast<std::string>(item.first);
        const auto measure = parse_measure(name);
        if (!measure)
            throw InvalidInput("unknown measure '" + name +
                               "'; valid names: " + measure_name_list());
        spec.add(*measure, py::cast<double>(item.second));
    }
    spec.validate();
    return spec;
}

GsaParams make_params(double t0, double qv, double qa, int max_iter, double stop_threshold) {
    GsaParams params;
    params.t0 = t0;
    params.qv = qv;
    params.qa = qa;
    params.max_iter = max_iter;
    params.stop_threshold = stop_threshold;
    return params;
}

}  // namespace

PYBIND11_MODULE(_scatgen, m) {
    m.doc() = "Scatterplot generation from target scagnostic measures";

    py::register_exception<InsufficientPoints>(m, "InsufficientPointsError", PyExc_ValueError);
    py::register_exception<InvalidInput>(m, "InvalidInputError", PyExc_ValueError);

    m.def("measure_names", []() {
        std::vector<std::string> names;
        for (Measure measure : all_measures()) names.emplace_back(to_string(measure));
        return names;
    });

    m.def(
        "compute_scagnostics",
        [](const RawPoints& points, bool binning, double alpha_override) {
            ScagnosticsOptions opts;
            opts.binning = binning;
            opts.alpha_override = alpha_override;
            ScagnosticVector v;
            {
                py::gil_scoped_release release;
                v = compute_all(to_points(points), opts);
            }
            return vector_to_dict(v);
        },
        py::arg("points"), py::arg("binning") = true, py::arg("alpha_override") = 0.0,
        "The nine scagnostic measures of a point set, as a dict");

    m.def(
        "loss",
        [](const RawPoints& points, const py::dict& targets) {
            const TargetSpec spec = dict_to_targets(targets);
            const PointSet pts = to_points(points);
            py::gil_scoped_release release;
            return loss({}, pts, spec);
        },
        py::arg("points"), py::arg("targets"),
        "Mean absolute gap between the measures of `points` and the targets");

    m.def(
        "clone_targets",
        [](const RawPoints& reference, const std::optional<std::vector<std::string>>& measures) {
            std::optional<std::vector<Measure>> subset;
            if (measures) {
                subset.emplace();
                for (const std::string& name : *measures) {
                    const auto measure = parse_measure(name);
                    if (!measure)
                        throw InvalidInput("unknown measure '" + name +
                                           "'; valid names: " + measure_name_list());
                    subset->push_back(*measure);
                }
            }
            const TargetSpec spec = clone_targets(to_points(reference), subset);
            py::dict out;
            for (const auto& [measure, value] : spec.entries) out[to_string(measure)] = value;
            return out;
        },
        py::arg("reference"), py::arg("measures") = py::none(),
        "Targets mimicking a reference dataset (all nine measures by default)");

    m.def(
        "generate",
        [](const py::dict& targets, int n_total, int n_init, double sigma2,
           std::uint64_t seed, double t0, double qv, double qa, int max_iter,
           double stop_threshold) {
            const TargetSpec spec = dict_to_targets(targets);
            GeneratorConfig config;
            config.n_total = n_total;
            config.n_init = n_init;
            config.sigma2 = sigma2;
            config.seed = seed;
            config.gsa = make_params(t0, qv, qa, max_iter, stop_threshold);
            GenerationResult result;
            {
                py::gil_scoped_release release;
                result = generate(spec, config);
            }
            py::dict out;
            out["points"] = from_points(result.points);
            out["achieved"] = vector_to_dict(result.achieved);
            out["final_loss"] = result.final_loss;
            out["per_epoch_losses"] = result.per_epoch_losses;
            out["elapsed_ms"] = result.elapsed_ms;
            return out;
        },
        py::arg("targets"), py::arg("n_total") = 50, py::arg("n_init") = 5,
        py::arg("sigma2") = 0.1, py::arg("seed") = 0, py::arg("t0") = 5230.0,
        py::arg("qv") = 2.62, py::arg("qa") = -5.0, py::arg("max_iter") = 5000,
        py::arg("stop_threshold") = 1e-4,
        "Arrange n_total points whose scagnostics approach the targets");

    m.def(
        "rmse",
        [](const std::vector<double>& achieved, double target) {
            return rmse(achieved, target);
        },
        py::arg("achieved"), py::arg("target"));

    m.def(
        "gsa_minimize",
        [](const std::function<double(std::vector<double>)>& fn,
           const std::vector<double>& lower, const std::vector<double>& upper,
           const std::vector<double>& x0, std::uint64_t seed, double t0, double qv,
           double qa, int max_iter, double stop_threshold) {
            BoxObjective objective;
            objective.lower = lower;
            objective.upper = upper;
            objective.evaluate = [&fn](std::span<const double> x) {
                return fn(std::vector<double>(x.begin(), x.end()));
            };
            const GsaResult result =
                gsa_minimize(objective, x0, make_params(t0, qv, qa, max_iter, stop_threshold),
                             seed);
            py::dict out;
            out["best_x"] = result.best_x;
            out["best_energy"] = result.best_energy;
            out["iterations_used"] = result.iterations_used;
            out["evaluations"] = result.evaluations;
            return out;
        },
        py::arg("fn"), py::arg("lower"), py::arg("upper"), py::arg("x0"), py::arg("seed") = 0,
        py::arg("t0") = 5230.0, py::arg("qv") = 2.62, py::arg("qa") = -5.0,
        py::arg("max_iter") = 5000, py::arg("stop_threshold") = 1e-4,
        "Generalized simulated annealing over a box, minimizing a Python callable");
}
