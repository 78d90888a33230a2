#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "scatgen/types.hpp"

namespace scatgen {

struct GsaParams {
    double qv = 2.62;              // visiting-distribution parameter, 1 < qv < 3
    double qa = -5.0;              // acceptance parameter
    double t0 = 5230.0;            // initial visiting temperature
    int max_iter = 5000;
    double stop_threshold = 1e-4;  // stop once best energy <= this
    bool record_trace = false;
};

struct BoxObjective {
    std::vector<double> lower;
    std::vector<double> upper;
    std::function<double(std::span<const double>)> evaluate;

    std::size_t dimension() const { return lower.size(); }
    void validate() const;  // non-empty, lower < upper per coordinate
};

struct GsaTracePoint {
    double temperature{0.0};
    double energy{0.0};  // chain energy at the end of the iteration
};

struct GsaResult {
    std::vector<double> best_x;
    double best_energy{0.0};
    long iterations_used{0};
    long evaluations{0};
    std::vector<GsaTracePoint> trace;
};

// All randomness in a run flows through one of these, in a fixed draw order,
// so identical seeds give identical results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform();
    // standard normal via Box-Muller, no pair caching
    double normal();
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Stable seed mixer for deriving per-epoch / per-replicate streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// T_v(t) = t0 * (2^{qv-1} - 1) / ((1+t)^{qv-1} - 1), strictly decreasing in t.
double visiting_temperature(long t, const GsaParams& params);

// 1 for downhill; otherwise [1 + (qa-1) * delta_e / t_accept]^{-1/(qa-1)},
// and 0 when the bracket base is <= 0. qa == 1 falls back to the classical
// Boltzmann form exp(-delta_e / t_accept).
double acceptance_probability(double delta_e, double t_accept, double qa);

// One full-vector visiting proposal from x at iteration t; out-of-box
// coordinates are reflected back inside.
std::vector<double> visiting_step(std::span<const double> x, long t, const GsaParams& params,
                                  std::span<const double> lower, std::span<const double> upper,
                                  Rng& rng);

GsaResult gsa_minimize(const BoxObjective& objective, std::vector<double> x0,
                       const GsaParams& params, std::uint64_t seed);

}  // namespace scatgen
