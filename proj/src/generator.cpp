#include "scatgen/generator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace scatgen {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double mean_absolute_gap(const ScagnosticVector& achieved, const TargetSpec& targets) {
    double sum = 0.0;
    for (const auto& [m, value] : targets.entries) sum += std::fabs(achieved[m] - value);
    return sum / static_cast<double>(targets.entries.size());
}

// Epoch batch sizes: n0 per epoch, except the first grows to the minimum
// measurable size and the last shrinks to land exactly on N.
std::vector<int> epoch_sizes(int n_total, int n_init) {
    std::vector<int> sizes;
    int placed = 0;
    while (placed < n_total) {
        int size = std::min(n_init, n_total - placed);
        if (placed + size < 3) size = std::min(3, n_total - placed);
        sizes.push_back(size);
        placed += size;
    }
    return sizes;
}

}  // namespace

void TargetSpec::add(Measure m, double value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw InvalidInput(std::string("target for ") + to_string(m) +
                           " must lie in [0,1], got " + std::to_string(value));
    if (target_for(m))
        throw InvalidInput(std::string("duplicate target for measure ") + to_string(m));
    entries.push_back({m, value});
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

void TargetSpec::validate() const {
    if (entries.empty()) throw InvalidInput("target spec must contain at least one measure");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!(entries[i].second >= 0.0 && entries[i].second <= 1.0))
            throw InvalidInput("target values must lie in [0,1]");
        if (i > 0 && entries[i].first == entries[i - 1].first)
            throw InvalidInput("duplicate measure in target spec");
    }
}

MeasureMask TargetSpec::mask() const {
    MeasureMask m = 0;
    for (const auto& [measure, value] : entries) m |= measure_bit(measure);
    return m;
}

std::optional<double> TargetSpec::target_for(Measure m) const {
    for (const auto& [measure, value] : entries) {
        if (measure == m) return value;
    }
    return std::nullopt;
}

double loss(const PointSet& fixed, const PointSet& batch, const TargetSpec& targets,
            const ScagnosticsOptions& opts) {
    targets.validate();
    if (fixed.size() + batch.size() < 3)
        throw InsufficientPoints("loss requires at least 3 points in total");
    PointSet combined;
    combined.reserve(fixed.size() + batch.size());
    combined.insert(combined.end(), fixed.begin(), fixed.end());
    combined.insert(combined.end(), batch.begin(), batch.end());
    return mean_absolute_gap(compute_selected(combined, targets.mask(), opts), targets);
}

GenerationResult generate(const TargetSpec& targets, const GeneratorConfig& config) {
    targets.validate();
    if (config.n_total < 3)
        throw InsufficientPoints("generation requires N >= 3, got " +
                                 std::to_string(config.n_total));
    if (config.n_init < 1) throw InvalidInput("n_init must be positive");
    if (config.n_init > config.n_total)
        throw InvalidInput("n_init must not exceed the total point count");
    if (config.sigma2 < 0.0) throw InvalidInput("sigma2 must be nonnegative");

    const auto t_start = std::chrono::steady_clock::now();
    const MeasureMask mask = targets.mask();
    const std::vector<int> sizes = epoch_sizes(config.n_total, config.n_init);
    const double sigma = std::sqrt(config.sigma2);

    Rng master(config.seed);
    GenerationResult result;
    result.points.reserve(config.n_total);
    result.per_epoch_losses.reserve(sizes.size());

    std::vector<double> prev_best;  // layout: [x1..xb, y1..yb]
    for (std::size_t epoch = 0; epoch < sizes.size(); ++epoch) {
        const int batch = sizes[epoch];
        const std::size_t dim = 2 * static_cast<std::size_t>(batch);

        std::vector<double> start(dim);
        if (epoch == 0) {
            for (double& v : start) v = master.uniform();
        } else {
            // previous optimum, perturbed per coordinate and clamped into the box
            const std::size_t prev_batch = prev_best.size() / 2;
            for (std::size_t i = 0; i < static_cast<std::size_t>(batch); ++i) {
                start[i] = prev_best[std::min(i, prev_batch - 1)];
                start[batch + i] = prev_best[prev_batch + std::min(i, prev_batch - 1)];
            }
            for (double& v : start) v = clamp01(v + sigma * master.normal());
        }

        BoxObjective objective;
        objective.lower.assign(dim, 0.0);
        objective.upper.assign(dim, 1.0);
        PointSet scratch;
        scratch.reserve(result.points.size() + batch);
        scratch = result.points;
        scratch.resize(result.points.size() + batch);
        const std::size_t base = result.points.size();
        objective.evaluate = [&, base, batch](std::span<const double> x) {
            for (int i = 0; i < batch; ++i) {
                scratch[base + i] = {x[i], x[batch + i]};
            }
            return mean_absolute_gap(compute_selected(scratch, mask, config.scag), targets);
        };

        const GsaResult opt = gsa_minimize(objective, start, config.gsa,
                                           mix_seed(config.seed, epoch + 1));
        for (int i = 0; i < batch; ++i) {
            result.points.push_back({opt.best_x[i], opt.best_x[batch + i]});
        }
        result.per_epoch_losses.push_back(opt.best_energy);
        prev_best = opt.best_x;
        if (config.progress) config.progress(static_cast<int>(epoch), opt.best_energy);
    }

    result.achieved = compute_all(result.points, config.scag);
    result.final_loss = mean_absolute_gap(
        compute_selected(result.points, mask, config.scag), targets);
    result.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t_start)
                            .count();
    return result;
}

TargetSpec clone_targets(const PointSet& reference,
                         const std::optional<std::vector<Measure>>& measures,
                         const ScagnosticsOptions& opts) {
    if (reference.size() < 3)
        throw InsufficientPoints("clone requires a reference of at least 3 points");
    const ScagnosticVector achieved = compute_all(reference, opts);
    TargetSpec spec;
    if (measures) {
        if (measures->empty()) throw InvalidInput("clone measure subset must be nonempty");
        for (Measure m : *measures) spec.add(m, achieved[m]);
    } else {
        for (Measure m : all_measures()) spec.add(m, achieved[m]);
    }
    return spec;
}

}  // namespace scatgen
