// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

// Straight-line reference for the first stage. Nothing here calls into the spatial module:
// every quantity is recomputed from its definition with plain nested loops.

#include <cmath>

#include "pstts/error.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::synth {

OracleStage1 oracle_stage1(const events::DensitySequence& density, const spatial::LifParams& lif,
                           const spatial::StcParams& stc, std::size_t patch_size) {
    if (!(lif.tau > 0.0) || !(lif.v_th > lif.v_reset) || stc.radius < 1 || !(stc.sigma_s > 0.0) || patch_size == 0) {
        throw ArgumentError("invalid oracle parameters");
    }
    const std::size_t h = density.height();
    const std::size_t w = density.width();
    OracleStage1 out;

    // Temporal continuity: one LIF neuron per pixel, stepped over the bins.
    out.tc = spatial::TcMap(h, w, 0);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            double v = lif.v_reset;
            std::uint32_t spikes = 0;
            for (std::size_t b = 0; b < density.bins(); ++b) {
                const double a = static_cast<double>(density.at(b, y, x));
                v = v + (a - (v - lif.v_reset)) / lif.tau;
                if (v >= lif.v_th) {
                    spikes += 1;
                    v = lif.v_reset;
                }
            }
            out.tc(y, x) = spikes;
        }
    }

    if (stc.sigma_t) {
        out.sigma_t = *stc.sigma_t;
    } else {
        double mean = 0.0;
        for (std::size_t y = 0; y < h; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                mean += out.tc(y, x);
            }
        }
        mean /= static_cast<double>(h * w);
        double var = 0.0;
        for (std::size_t y = 0; y < h; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                var += (out.tc(y, x) - mean) * (out.tc(y, x) - mean);
            }
        }
        var /= static_cast<double>(h * w);
        out.sigma_t = std::sqrt(var) > 1e-6 ? std::sqrt(var) : 1e-6;
    }

    // Spatio-temporal continuity: direct evaluation of the joint weight for every pair.
    out.stc = spatial::ScoreMap(h, w, 0.0);
    const long r = stc.radius;
    for (long yi = 0; yi < static_cast<long>(h); ++yi) {
        for (long xi = 0; xi < static_cast<long>(w); ++xi) {
            double num = 0.0;
            double den = 0.0;
            for (long yj = yi - r; yj <= yi + r; ++yj) {
                for (long xj = xi - r; xj <= xi + r; ++xj) {
                    if (yj < 0 || xj < 0 || yj >= static_cast<long>(h) || xj >= static_cast<long>(w)) {
                        continue;
                    }
                    const double tci = out.tc(static_cast<std::size_t>(yi), static_cast<std::size_t>(xi));
                    const double tcj = out.tc(static_cast<std::size_t>(yj), static_cast<std::size_t>(xj));
                    const double dist2 = static_cast<double>((xi - xj) * (xi - xj) + (yi - yj) * (yi - yj));
                    const double wij = std::exp(-dist2 / (2.0 * stc.sigma_s * stc.sigma_s) -
                                                (tci - tcj) * (tci - tcj) / (2.0 * out.sigma_t * out.sigma_t));
                    num += wij * tcj;
                    den += wij;
                }
            }
            out.stc(static_cast<std::size_t>(yi), static_cast<std::size_t>(xi)) = num / den;
        }
    }

    // Average pooling with implicit zero padding.
    const std::size_t gh = (h + patch_size - 1) / patch_size;
    const std::size_t gw = (w + patch_size - 1) / patch_size;
    out.stc_down = spatial::ScoreMap(gh, gw, 0.0);
    for (std::size_t gy = 0; gy < gh; ++gy) {
        for (std::size_t gx = 0; gx < gw; ++gx) {
            double sum = 0.0;
            for (std::size_t dy = 0; dy < patch_size; ++dy) {
                for (std::size_t dx = 0; dx < patch_size; ++dx) {
                    const std::size_t y = gy * patch_size + dy;
                    const std::size_t x = gx * patch_size + dx;
                    if (y < h && x < w) {
                        sum += out.stc(y, x);
                    }
                }
            }
            out.stc_down(gy, gx) = sum / static_cast<double>(patch_size * patch_size);
        }
    }

    // Mean threshold, clamped to the observed range; strictly-lower cells are removed.
    double total = 0.0;
    double lo = out.stc_down(0, 0);
    double hi = out.stc_down(0, 0);
    for (std::size_t gy = 0; gy < gh; ++gy) {
        for (std::size_t gx = 0; gx < gw; ++gx) {
            total += out.stc_down(gy, gx);
            lo = out.stc_down(gy, gx) < lo ? out.stc_down(gy, gx) : lo;
            hi = out.stc_down(gy, gx) > hi ? out.stc_down(gy, gx) : hi;
        }
    }
    double alpha = total / static_cast<double>(gh * gw);
    alpha = alpha < lo ? lo : (alpha > hi ? hi : alpha);
    out.mask.alpha = alpha;
    out.mask.kept = spatial::KeepMask(gh, gw, 0);
    for (std::size_t gy = 0; gy < gh; ++gy) {
        for (std::size_t gx = 0; gx < gw; ++gx) {
            if (!(out.stc_down(gy, gx) < alpha)) {
                out.mask.kept(gy, gx) = 1;
                out.mask.kept_count += 1;
            }
        }
    }
    return out;
}

}  // namespace pstts::synth
