#pragma once

#include <cstdint>
#include <random>

namespace offpol {

/// Seeded random stream. Uniform draws take the top 53 bits of mt19937_64
/// output directly, so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Draws an index in [0, n) with probability prob(i), by inverse CDF over one
/// uniform draw. Roundoff at u ~ 1 falls back to the last positive-mass index.
template <class ProbFn>
int sample_categorical(Rng& rng, int n, ProbFn&& prob) {
    const double u = rng.uniform();
    double cum = 0.0;
    int last_positive = n - 1;
    for (int i = 0; i < n; ++i) {
        const double p = prob(i);
        if (p > 0.0) last_positive = i;
        cum += p;
        if (u < cum) return i;
    }
    return last_positive;
}

}  // namespace offpol
