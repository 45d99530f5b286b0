// Haar sampling on SO(2N) and the eigenangle statistic.
//
// A square standard-Gaussian matrix is orthogonalized by Householder QR with
// the R-diagonal sign fix (Q <- Q diag(sign R_ii)), which makes Q exactly
// Haar on O(2N). Draws landing in the det = -1 component are moved to
// SO(2N) by a fixed reflection (negating row 0); left multiplication by a
// fixed orthogonal matrix preserves Haar measure, so the result is Haar on
// SO(2N). Gaussians come from an explicit Box-Muller on top of per-sample
// mt19937_64 substreams: std::normal_distribution is implementation-defined
// and would break bit-for-bit reproducibility.

#include "lowzero/rmt.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lowzero/parallel.hpp"
#include "lowzero/quad.hpp"

namespace lowzero {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::uint64_t index)
        : rng_(splitmix64(seed ^ splitmix64(index + 1))) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1]: keep log finite
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare_ = rad * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return rad * std::cos(2.0 * kPi * u2);
    }

  private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

Eigen::MatrixXd haar_so_even(const RmtConfig& cfg, std::uint64_t index, std::int64_t& redraws) {
    const int d = 2 * cfg.half_size;
    for (std::uint64_t attempt = 0;; ++attempt) {
        GaussianStream gs(cfg.seed, index + (attempt << 48));
        Eigen::MatrixXd A(d, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) A(i, j) = gs.next();

        Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        Eigen::MatrixXd Q = qr.householderQ();
        const Eigen::VectorXd rdiag = qr.matrixQR().diagonal();
        bool degenerate = false;
        for (int j = 0; j < d; ++j) {
            if (std::abs(rdiag(j)) < 1e-12) degenerate = true;
            if (rdiag(j) < 0.0) Q.col(j) = -Q.col(j);
        }
        if (degenerate) {
            ++redraws;
            continue;
        }
        if (Q.determinant() < 0.0) Q.row(0) = -Q.row(0);
        return Q;
    }
}
}  // namespace

double RmtConfig::normalization() const { return (2.0 * half_size) / (2.0 * kPi); }

void RmtConfig::validate() const {
    if (half_size < 2) throw std::invalid_argument("RmtConfig: half_size must be >= 2");
    if (samples < 1) throw std::invalid_argument("RmtConfig: samples must be >= 1");
}

std::vector<double> sample_so_even(const RmtConfig& cfg, std::uint64_t index,
                                   RmtDiagnostics* diag) {
    cfg.validate();
    std::int64_t redraws = 0;
    const Eigen::MatrixXd Q = haar_so_even(cfg, index, redraws);
    if (diag != nullptr) diag->redraws += redraws;

    Eigen::EigenSolver<Eigen::MatrixXd> es(Q, /*computeEigenvectors=*/false);
    const auto& ev = es.eigenvalues();
    std::vector<double> angles(ev.size());
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        angles[static_cast<std::size_t>(j)] = std::atan2(ev(j).imag(), ev(j).real());
    return angles;
}

double statistic_d(const std::vector<double>& angles, const TestFunctionPair& tf,
                   int half_size) {
    const double scale = (2.0 * half_size) / (2.0 * kPi);
    std::vector<double> terms(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) terms[j] = tf.phi(angles[j] * scale);
    return kahan_total(terms.data(), terms.size());
}

std::vector<double> statistic_series(const RmtConfig& cfg, const TestFunctionPair& tf,
                                     RmtDiagnostics* diag) {
    cfg.validate();
    const auto M = static_cast<std::size_t>(cfg.samples);
    std::vector<double> d_values(M);
    std::vector<std::int64_t> redraws(M, 0);
    parallel_for(M, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            std::int64_t rd = 0;
            const Eigen::MatrixXd Q = haar_so_even(cfg, i, rd);
            redraws[i] = rd;
            Eigen::EigenSolver<Eigen::MatrixXd> es(Q, false);
            const auto& ev = es.eigenvalues();
            std::vector<double> angles(ev.size());
            for (Eigen::Index j = 0; j < ev.size(); ++j)
                angles[static_cast<std::size_t>(j)] = std::atan2(ev(j).imag(), ev(j).real());
            d_values[i] = statistic_d(angles, tf, cfg.half_size);
        }
    });
    if (diag != nullptr)
        for (auto r : redraws) diag->redraws += r;
    return d_values;
}

MomentEstimates empirical_moments(const RmtConfig& cfg, const TestFunctionPair& tf, int max_n) {
    if (max_n < 2 || max_n > 6) throw std::invalid_argument("empirical_moments: max_n must be in [2, 6]");
    RmtDiagnostics diag;
    const std::vector<double> d = statistic_series(cfg, tf, &diag);
    const auto M = d.size();
    const double Md = static_cast<double>(M);

    MomentEstimates est;
    est.max_n = max_n;
    est.redraws = diag.redraws;
    est.mean = kahan_total(d.data(), M) / Md;

    // centered power sums in index order
    std::vector<double> c(M), buf(M);
    for (std::size_t i = 0; i < M; ++i) c[i] = d[i] - est.mean;
    std::array<double, 7> S{};  // S[k] = sum c^k
    S[0] = Md;
    for (int k = 1; k <= max_n; ++k) {
        for (std::size_t i = 0; i < M; ++i) buf[i] = std::pow(c[i], k);
        S[static_cast<std::size_t>(k)] = kahan_total(buf.data(), M);
    }
    est.se_mean = std::sqrt((S[2] - S[1] * S[1] / Md) / (Md - 1.0) / Md);
    for (int k = 2; k <= max_n; ++k)
        est.m[static_cast<std::size_t>(k)] = S[static_cast<std::size_t>(k)] / Md;

    // delete-1 jackknife of the plug-in centered moments, via the binomial
    // expansion over the precomputed power sums
    const double Mp = Md - 1.0;
    std::array<double, 7> cpow{};
    for (int k = 2; k <= max_n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < M; ++i) {
            cpow[0] = 1.0;
            for (int l = 1; l <= k; ++l) cpow[static_cast<std::size_t>(l)] =
                cpow[static_cast<std::size_t>(l - 1)] * c[i];
            const double mu_i = (S[1] - c[i]) / Mp;
            double acc = 0.0;
            for (int l = 0; l <= k; ++l) {
                const auto lu = static_cast<std::size_t>(l);
                acc += static_cast<double>(binomial(k, l)) * (S[lu] - cpow[lu]) *
                       std::pow(-mu_i, k - l);
            }
            buf[i] = acc / Mp;
        }
        const double jbar = kahan_total(buf.data(), M) / Md;
        double ss = 0.0;
        for (std::size_t i = 0; i < M; ++i) ss += (buf[i] - jbar) * (buf[i] - jbar);
        est.se[ku] = std::sqrt(ss * Mp / Md);
    }
    return est;
}

}  // namespace lowzero
