#include "scatgen/gsa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scatgen {

namespace {

constexpr double kTailLimit = 1e8;  // visiting draws beyond this are folded back

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_params(const GsaParams& params) {
    if (!(params.qv > 1.0 && params.qv < 3.0))
        throw InvalidInput("q_v must lie in (1, 3), got " + std::to_string(params.qv));
    if (!(params.t0 > 0.0))
        throw InvalidInput("initial temperature must be positive");
    if (params.max_iter < 1) throw InvalidInput("max_iter must be at least 1");
}

// Constants of the Tsallis-Stariolo q-Gaussian construction that depend only
// on qv (not on temperature).
struct VisitConstants {
    double factor4_p;
    double factor6;
    double qv;

    explicit VisitConstants(double qv_in) : qv(qv_in) {
        const double factor2 = std::exp((4.0 - qv) * std::log(qv - 1.0));
        const double factor3 = std::exp((2.0 - qv) * std::log(2.0) / (qv - 1.0));
        factor4_p = std::sqrt(M_PI) * factor2 / (factor3 * (3.0 - qv));
        const double factor5 = 1.0 / (qv - 1.0) - 0.5;
        const double d1 = 2.0 - factor5;
        factor6 = M_PI * (1.0 - factor5) / std::sin(M_PI * (1.0 - factor5)) /
                  std::exp(std::lgamma(d1));
    }

    // One heavy-tailed visiting draw at the given temperature.
    double draw(double temperature, Rng& rng) const {
        const double factor1 = std::exp(std::log(temperature) / (qv - 1.0));
        const double factor4 = factor4_p * factor1;
        const double sigmax = std::exp(-(qv - 1.0) * std::log(factor6 / factor4) / (3.0 - qv));
        const double x = sigmax * rng.normal();
        const double y = rng.normal();
        const double den = std::exp((qv - 1.0) * std::log(std::fabs(y)) / (3.0 - qv));
        double visit = x / den;
        if (!std::isfinite(visit) || std::fabs(visit) > kTailLimit) {
            // fold extreme tails back to a bounded jump, as the reference
            // implementations do
            const double u = rng.uniform();
            visit = std::copysign(kTailLimit * u, visit == 0.0 ? 1.0 : visit);
        }
        return visit;
    }
};

// Reflect a coordinate into [lo, hi] (triangle-wave fold).
double reflect_into(double v, double lo, double hi) {
    const double range = hi - lo;
    if (range <= 0.0) return lo;
    double y = std::fmod(v - lo, 2.0 * range);
    if (y < 0.0) y += 2.0 * range;
    return lo + (y <= range ? y : 2.0 * range - y);
}

std::string format_vector(std::span<const double> x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << x[i];
    }
    os << ")";
    return os.str();
}

}  // namespace

double Rng::uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    // Box-Muller without pair caching keeps the draw order trivial
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    // splitmix64-based combiner; stable across versions by contract
    std::uint64_t state = a;
    const std::uint64_t h = splitmix64(state);
    state ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return splitmix64(state);
}

void BoxObjective::validate() const {
    if (lower.empty() || lower.size() != upper.size())
        throw InvalidInput("objective bounds must be nonempty and of equal dimension");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i]))
            throw InvalidInput("objective requires lower < upper in every coordinate");
    }
    if (!evaluate) throw InvalidInput("objective has no evaluate function");
}

double visiting_temperature(long t, const GsaParams& params) {
    check_params(params);
    if (t < 1) throw InvalidInput("iteration index must be >= 1");
    const double p = params.qv - 1.0;
    const double numer = std::exp2(p) - 1.0;
    const double denom = std::pow(1.0 + static_cast<double>(t), p) - 1.0;
    return params.t0 * numer / denom;
}

double acceptance_probability(double delta_e, double t_accept, double qa) {
    if (delta_e <= 0.0) return 1.0;
    if (!(t_accept > 0.0)) throw InvalidInput("acceptance temperature must be positive");
    if (qa == 1.0) return std::exp(-delta_e / t_accept);  // Boltzmann limit
    const double base = 1.0 + (qa - 1.0) * delta_e / t_accept;
    if (base <= 0.0) return 0.0;
    return std::min(1.0, std::pow(base, -1.0 / (qa - 1.0)));
}

std::vector<double> visiting_step(std::span<const double> x, long t, const GsaParams& params,
                                  std::span<const double> lower, std::span<const double> upper,
                                  Rng& rng) {
    check_params(params);
    if (x.size() != lower.size() || x.size() != upper.size())
        throw InvalidInput("visiting step dimension mismatch");
    const VisitConstants vc(params.qv);
    const double tv = visiting_temperature(t, params);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = reflect_into(x[i] + vc.draw(tv, rng), lower[i], upper[i]);
    }
    return out;
}

GsaResult gsa_minimize(const BoxObjective& objective, std::vector<double> x0,
                       const GsaParams& params, std::uint64_t seed) {
    check_params(params);
    objective.validate();
    const std::size_t dim = objective.dimension();
    if (x0.size() != dim) throw InvalidInput("x0 dimension does not match the objective");
    for (std::size_t i = 0; i < dim; ++i) {
        if (x0[i] < objective.lower[i] || x0[i] > objective.upper[i])
            throw InvalidInput("x0 lies outside the bounds");
    }

    Rng rng(seed);
    const VisitConstants vc(params.qv);

    auto eval_checked = [&](std::span<const double> x) {
        const double e = objective.evaluate(x);
        if (!std::isfinite(e))
            throw Error("objective returned a non-finite value at x = " + format_vector(x));
        return e;
    };

    GsaResult result;
    std::vector<double> current = std::move(x0);
    double current_e = eval_checked(current);
    result.best_x = current;
    result.best_energy = current_e;
    result.evaluations = 1;
    if (params.record_trace) result.trace.reserve(static_cast<std::size_t>(params.max_iter));

    std::vector<double> proposal(dim);
    bool stop = result.best_energy <= params.stop_threshold;

    for (long t = 1; t <= params.max_iter && !stop; ++t) {
        const double tv = visiting_temperature(t, params);
        const double ta = tv / static_cast<double>(t);

        // one full-vector jump, then one single-coordinate jump per dimension
        for (std::size_t move = 0; move <= dim && !stop; ++move) {
            proposal = current;
            if (move == 0) {
                for (std::size_t i = 0; i < dim; ++i) {
                    proposal[i] = reflect_into(current[i] + vc.draw(tv, rng),
                                               objective.lower[i], objective.upper[i]);
                }
            } else {
                const std::size_t i = move - 1;
                proposal[i] = reflect_into(current[i] + vc.draw(tv, rng),
                                           objective.lower[i], objective.upper[i]);
            }

            const double e_new = eval_checked(proposal);
            ++result.evaluations;
            bool accept = e_new <= current_e;
            if (!accept) {
                const double p = acceptance_probability(e_new - current_e, ta, params.qa);
                accept = rng.uniform() < p;
            }
            if (accept) {
                current.swap(proposal);
                current_e = e_new;
                if (current_e < result.best_energy) {
                    result.best_energy = current_e;
                    result.best_x = current;
                    if (result.best_energy <= params.stop_threshold) stop = true;
                }
            }
        }

        result.iterations_used = t;
        if (params.record_trace) result.trace.push_back({tv, current_e});
    }
    return result;
}

}  // namespace scatgen
