#include "subprof/random.hpp"

#include <cmath>
#include <numeric>

#include "subprof/error.hpp"

namespace subprof {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw Error(Errc::InvalidArgument, "Rng::below: zero bound");
    // Reject the low residue class so the modulo is unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t x = engine_();
        if (x >= threshold) return x % bound;
    }
}

double Rng::normal() {
    // Marsaglia polar method; the second variate is discarded to keep the
    // generator stateless beyond the engine.
    for (;;) {
        double u = 2.0 * uniform() - 1.0;
        double v = 2.0 * uniform() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw Error(Errc::InvalidArgument, "Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        double u = uniform();
        while (u == 0.0) u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia & Tsang.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::vector<double> Rng::dirichlet(std::span<const double> concentration) {
    std::vector<double> out(concentration.size());
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = gamma(concentration[i]);
        total += out[i];
    }
    if (total <= 0.0) {
        // Every draw underflowed; fall back to the mode of a tiny-concentration
        // Dirichlet, a single random vertex.
        std::fill(out.begin(), out.end(), 0.0);
        out[below(out.size())] = 1.0;
        return out;
    }
    for (double& x : out) x /= total;
    return out;
}

std::size_t Rng::categorical(std::span<const double> weights) {
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double u = uniform() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    // Rounding left u at the top edge; return the last positive weight.
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return weights.size() - 1;
}

}  // namespace subprof
