#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lowzero/testfun.hpp"

namespace lowzero {

// Haar SO(2N) sampling configuration. Identical (seed, N, M) reproduce
// identical output bit-for-bit, for any worker count: every sample owns a
// counter-derived substream and all reductions run in sample-index order.
struct RmtConfig {
    int half_size = 50;       // N; matrices are 2N x 2N
    int samples = 20000;      // M
    std::uint64_t seed = 7;

    // eigenangle scale (2N)/(2 pi): unit mean spacing at the central point
    double normalization() const;
    void validate() const;
};

struct RmtDiagnostics {
    std::int64_t redraws = 0;  // orthogonalization breakdowns
};

// Eigenangles of one Haar-distributed SO(2N) draw, in (-pi, pi], as computed
// (unsorted); angles come in +- pairs.
std::vector<double> sample_so_even(const RmtConfig& cfg, std::uint64_t index,
                                   RmtDiagnostics* diag = nullptr);

// D = sum_j phi(theta_j (2N)/(2 pi)) over all 2N angles.
double statistic_d(const std::vector<double>& angles, const TestFunctionPair& tf,
                   int half_size);

struct MomentEstimates {
    double mean = 0.0;
    double se_mean = 0.0;
    // centered moments m[k] for k = 2..max_n with jackknife standard errors
    std::array<double, 7> m{};    // m[k], entries 2..6 used
    std::array<double, 7> se{};
    int max_n = 2;
    std::int64_t redraws = 0;
};

MomentEstimates empirical_moments(const RmtConfig& cfg, const TestFunctionPair& tf, int max_n);

// the D-values themselves, index-ordered (used by determinism checks)
std::vector<double> statistic_series(const RmtConfig& cfg, const TestFunctionPair& tf,
                                     RmtDiagnostics* diag = nullptr);

}  // namespace lowzero
