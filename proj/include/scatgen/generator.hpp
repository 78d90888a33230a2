#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "scatgen/gsa.hpp"
#include "scatgen/scagnostics.hpp"
#include "scatgen/types.hpp"

namespace scatgen {

// Nonempty subset of the nine measures with target values in [0,1].
// Entries are kept in canonical measure order regardless of insertion order.
struct TargetSpec {
    std::vector<std::pair<Measure, double>> entries;

    void add(Measure m, double value);  // throws on duplicate or out-of-range
    void validate() const;              // nonempty, no duplicates, values in [0,1]
    MeasureMask mask() const;
    std::size_t size() const { return entries.size(); }
    std::optional<double> target_for(Measure m) const;
};

struct GeneratorConfig {
    int n_total{0};        // N, total points to produce
    int n_init{5};         // n0, points arranged per epoch
    double sigma2{0.1};    // variance of the between-epoch restart perturbation
    GsaParams gsa{};
    std::uint64_t seed{0};
    ScagnosticsOptions scag{};
    // invoked after each epoch with (epoch index, epoch best loss); called
    // from the run's own thread only
    std::function<void(int, double)> progress{};
};

struct GenerationResult {
    PointSet points;
    ScagnosticVector achieved;
    double final_loss{0.0};
    std::vector<double> per_epoch_losses;
    double elapsed_ms{0.0};
};

// Mean absolute gap between the scagnostics of concat(fixed, batch) and the
// targets: (1/k) * sum_i |s_i(D) - m0_i|, in [0,1].
double loss(const PointSet& fixed, const PointSet& batch, const TargetSpec& targets,
            const ScagnosticsOptions& opts = {});

// Iterative refinement: draw n0 points uniformly on the unit square, minimize
// the loss over their 2*n0 coordinates with GSA, freeze them, and repeat with
// perturbed starting values until exactly N points exist.
GenerationResult generate(const TargetSpec& targets, const GeneratorConfig& config);

// Targets that mimic a reference set: compute_all(reference) restricted to
// the requested measures (all nine by default).
TargetSpec clone_targets(const PointSet& reference,
                         const std::optional<std::vector<Measure>>& measures = std::nullopt,
                         const ScagnosticsOptions& opts = {});

}  // namespace scatgen
