#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace subprof {

/// Seeded generator with portable derived distributions.
///
/// The std:: distribution adaptors are implementation-defined, so everything
/// derived from the raw engine output is computed here to keep corpora,
/// partitions and models identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double normal();
    double gamma(double shape);
    std::vector<double> dirichlet(std::span<const double> concentration);

    /// Index drawn proportionally to the non-negative weights.
    std::size_t categorical(std::span<const double> weights);

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace subprof
