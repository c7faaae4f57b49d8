// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

namespace pstts::synth {

/// Counter-based generator: draw n of stream s is a pure function of (seed, s, n), so results
/// do not depend on the standard library's distribution implementations.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : m_key(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

    std::uint64_t next() noexcept {
        return mix(m_key + 0x9E3779B97F4A7C15ULL * ++m_counter);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Poisson draw by multiplication of uniforms, split into chunks so exp(-lambda) stays representable.
    std::uint64_t poisson(double lambda) noexcept {
        constexpr double k_chunk = 16.0;
        std::uint64_t total = 0;
        while (lambda > 0.0) {
            const double part = lambda > k_chunk ? k_chunk : lambda;
            lambda -= part;
            const double limit = std::exp(-part);
            double prod = uniform();
            while (prod > limit) {
                ++total;
                prod *= uniform();
            }
        }
        return total;
    }

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t m_key;
    std::uint64_t m_counter = 0;
};

}  // namespace pstts::synth
