// Quadrature, grid convolution and the oscillatory inner integral.
//
// Conventions used throughout:
//   Fourier transform  F[phi](y) = int phi(x) e^{-2 pi i x y} dx,
//   so sin(2 pi c x)/(2 pi x) has transform (1/2) rect(y/(2c)).
// Grid sums run left to right with compensated accumulation so results are
// bit-identical across runs and worker counts.

#include "lowzero/quad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lowzero/parallel.hpp"

namespace lowzero {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGlN = 16;
constexpr double kGlX[kGlN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGlW[kGlN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

[[noreturn]] void throw_nonfinite(const char* who, double x) {
    std::ostringstream os;
    os << who << ": non-finite integrand sample at x = " << x;
    throw std::runtime_error(os.str());
}

double eval_checked(const std::function<double(double)>& f, double x, const char* who) {
    const double v = f(x);
    if (!std::isfinite(v)) throw_nonfinite(who, x);
    return v;
}

double rule_pass(const std::function<double(double)>& f, double lo, double hi,
                 QuadRule rule, int points) {
    Kahan acc;
    if (rule == QuadRule::MidpointRiemann) {
        const int n = std::max(points, 8);
        const double h = (hi - lo) / n;
        for (int i = 0; i < n; ++i)
            acc.add(eval_checked(f, lo + (i + 0.5) * h, "integrate_1d"));
        return acc.sum * h;
    }
    if (rule == QuadRule::Trapezoid) {
        const int n = std::max(points, 9) | 1;  // odd count, at least 9
        const double h = (hi - lo) / (n - 1);
        acc.add(0.5 * eval_checked(f, lo, "integrate_1d"));
        for (int i = 1; i + 1 < n; ++i)
            acc.add(eval_checked(f, lo + i * h, "integrate_1d"));
        acc.add(0.5 * eval_checked(f, hi, "integrate_1d"));
        return acc.sum * h;
    }
    // Gauss-Legendre: composite panels of the fixed 16-point rule.
    const int panels = std::max(1, points / kGlN);
    const double w = (hi - lo) / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double a = lo + pnl * w;
        const double mid = a + 0.5 * w;
        for (int k = 0; k < kGlN; ++k) {
            const double x = mid + 0.5 * w * kGlX[k];
            acc.add(kGlW[k] * 0.5 * w * eval_checked(f, x, "integrate_1d"));
        }
    }
    return acc.sum;
}

}  // namespace

QuadRule quad_rule_from_name(const std::string& name) {
    if (name == "midpoint-riemann" || name == "midpoint") return QuadRule::MidpointRiemann;
    if (name == "trapezoid") return QuadRule::Trapezoid;
    if (name == "gauss-legendre" || name == "gl") return QuadRule::GaussLegendre;
    throw std::invalid_argument("unknown quadrature rule: " + name);
}

std::string quad_rule_name(QuadRule rule) {
    switch (rule) {
        case QuadRule::MidpointRiemann: return "midpoint-riemann";
        case QuadRule::Trapezoid: return "trapezoid";
        case QuadRule::GaussLegendre: return "gauss-legendre";
    }
    return "?";
}

void QuadConfig::validate() const {
    if (points_per_dim < 8) throw std::invalid_argument("QuadConfig: points_per_dim must be >= 8");
    if (tolerance <= 0.0) throw std::invalid_argument("QuadConfig: tolerance must be positive");
    if (refinement < 0 || refinement > 12) throw std::invalid_argument("QuadConfig: refinement out of range");
}

double kahan_total(const double* v, std::size_t n) {
    Kahan acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(v[i]);
    return acc.sum;
}

GridFunction::GridFunction(double lo_, double hi_, std::vector<double> v)
    : lo(lo_), hi(hi_), values(std::move(v)) {
    if (values.size() < 2) throw std::invalid_argument("GridFunction: need at least 2 samples");
    if (!(hi > lo)) throw std::invalid_argument("GridFunction: hi must exceed lo");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("GridFunction: non-finite sample");
}

GridFunction GridFunction::sample(const std::function<double(double)>& f,
                                  double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("GridFunction::sample: count must be >= 2");
    std::vector<double> v(static_cast<std::size_t>(count));
    const double h = (hi - lo) / (count - 1);
    parallel_for(v.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) v[i] = f(lo + static_cast<double>(i) * h);
    });
    return GridFunction(lo, hi, std::move(v));
}

double GridFunction::eval(double x) const {
    if (x < lo || x > hi) return 0.0;
    const double h = step();
    const double idx = (x - lo) / h;
    auto i = static_cast<std::size_t>(idx);
    if (i + 1 >= values.size()) return values.back();
    const double fr = idx - static_cast<double>(i);
    return values[i] * (1.0 - fr) + values[i + 1] * fr;
}

double GridFunction::integral() const {
    Kahan acc;
    acc.add(0.5 * values.front());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) acc.add(values[i]);
    acc.add(0.5 * values.back());
    return acc.sum * step();
}

double GridFunction::integral_to(double x_upper) const {
    if (x_upper <= lo) return 0.0;
    if (x_upper >= hi) return integral();
    const double h = step();
    const double idx = (x_upper - lo) / h;
    const auto full = static_cast<std::size_t>(idx);
    Kahan acc;
    for (std::size_t i = 0; i < full; ++i) acc.add(0.5 * (values[i] + values[i + 1]));
    double result = acc.sum * h;
    // partial cell, linear within the cell
    const double frac = idx - static_cast<double>(full);
    if (frac > 0.0 && full + 1 < values.size()) {
        const double va = values[full];
        const double vb = va + (values[full + 1] - va) * frac;
        result += 0.5 * (va + vb) * frac * h;
    }
    return result;
}

QuadResult integrate_1d(const std::function<double(double)>& f,
                        double lo, double hi, const QuadConfig& cfg) {
    cfg.validate();
    if (!(lo < hi)) throw std::invalid_argument("integrate_1d: need lo < hi");
    int points = cfg.points_per_dim;
    double prev = rule_pass(f, lo, hi, cfg.rule, points);
    double cur = prev;
    for (int r = 0; r < std::max(1, cfg.refinement); ++r) {
        points = 2 * points - 1;
        cur = rule_pass(f, lo, hi, cfg.rule, points);
        if (std::abs(cur - prev) < 0.25 * cfg.tolerance && r > 0) break;
        if (r + 1 < std::max(1, cfg.refinement)) prev = cur;
    }
    // second-order rules gain ~4x per halving; report the Richardson residual
    const double denom = (cfg.rule == QuadRule::GaussLegendre) ? 1.0 : 3.0;
    return {cur, std::abs(cur - prev) / denom};
}

QuadResult integrate_nd(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<std::pair<double, double>>& box,
                        const QuadConfig& cfg) {
    cfg.validate();
    const std::size_t d = box.size();
    if (d == 0) throw std::invalid_argument("integrate_nd: empty box");
    if (d > 4) throw std::invalid_argument("integrate_nd: dimension > 4 rejected (cost guard)");
    for (const auto& [a, b] : box)
        if (!(a < b)) throw std::invalid_argument("integrate_nd: degenerate box interval");

    auto tensor_pass = [&](int n_per_dim) {
        // midpoint tensor rule; robust for the brute-force oracle role
        std::vector<double> h(d), x(d);
        std::size_t total = 1;
        for (std::size_t k = 0; k < d; ++k) {
            h[k] = (box[k].second - box[k].first) / n_per_dim;
            total *= static_cast<std::size_t>(n_per_dim);
        }
        double cell = 1.0;
        for (std::size_t k = 0; k < d; ++k) cell *= h[k];
        Kahan acc;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rest = idx;
            for (std::size_t k = 0; k < d; ++k) {
                const auto i = rest % static_cast<std::size_t>(n_per_dim);
                rest /= static_cast<std::size_t>(n_per_dim);
                x[k] = box[k].first + (static_cast<double>(i) + 0.5) * h[k];
            }
            const double v = f(x);
            if (!std::isfinite(v)) throw_nonfinite("integrate_nd", x[0]);
            acc.add(v);
        }
        return acc.sum * cell;
    };

    const int n1 = std::max(8, cfg.points_per_dim);
    const double coarse = tensor_pass(n1);
    const double fine = tensor_pass(2 * n1);
    return {fine, std::abs(fine - coarse) / 3.0};
}

GridFunction convolve_grid(const GridFunction& a, const GridFunction& b) {
    const double ha = a.step(), hb = b.step();
    if (std::abs(ha - hb) > 1e-9 * std::max(ha, hb))
        throw std::invalid_argument("convolve_grid: grids must share the step size");
    const double h = ha;
    const std::size_t na = a.size(), nb = b.size();

    // Half-weight the end samples of both factors: the t-quadrature for each
    // output is then the trapezoid rule over the support overlap, which keeps
    // O(step^2) accuracy even when a factor jumps at its support edge.
    std::vector<double> aw(a.values), bw(b.values);
    aw.front() *= 0.5; aw.back() *= 0.5;
    bw.front() *= 0.5; bw.back() *= 0.5;

    std::vector<double> out(na + nb - 1, 0.0);
    parallel_for(out.size(), [&](std::size_t ob, std::size_t oe) {
        for (std::size_t i = ob; i < oe; ++i) {
            const std::size_t jlo = (i >= nb - 1) ? i - (nb - 1) : 0;
            const std::size_t jhi = std::min(na - 1, i);
            Kahan acc;
            for (std::size_t j = jlo; j <= jhi; ++j) acc.add(aw[j] * bw[i - j]);
            out[i] = acc.sum * h;
        }
    });
    return GridFunction(a.lo + b.lo, a.hi + b.hi, std::move(out));
}

GridFunction abs_sum_density(const GridFunction& hat, int l) {
    if (l < 1)
        throw std::invalid_argument("abs_sum_density: l = 0 rejected; the empty product is the caller's case");
    if (std::abs(hat.lo + hat.hi) > 1e-9 * (hat.hi - hat.lo) || hat.size() % 2 == 0)
        throw std::invalid_argument("abs_sum_density: hat grid must be symmetric with a center node");

    const std::size_t mid = (hat.size() - 1) / 2;
    std::vector<double> folded(hat.size() - mid);
    for (std::size_t k = 0; k < folded.size(); ++k) folded[k] = 2.0 * hat.values[mid + k];
    GridFunction rho(0.0, hat.hi, std::move(folded));
    GridFunction rho1 = rho;
    for (int j = 2; j <= l; ++j) rho = convolve_grid(rho, rho1);
    return rho;
}

namespace {

struct SincGrid {
    double hx;
    std::size_t count;   // nodes 0..count-1 at x = j*hx
};

SincGrid sinc_grid(const PhiView& phi, int p, double max_shift, const QuadConfig& cfg) {
    // Nyquist: the integrand's transform lives in [-(1+shift) - p*band, ...].
    const double bandwidth = (1.0 + max_shift) + p * std::max(0.25, phi.band_radius);
    const double hx = std::min(0.02, 0.25 / bandwidth);
    // Truncation from the power-law tail: int_X^inf C^p x^{-pk}/(2 pi x) dx.
    const double pk = p * phi.tail_power;
    const double logC = p * std::log(std::max(phi.tail_coef, 1e-300));
    // solve C^p / (2 pi pk X^pk) = tol/2
    double X = std::exp((logC - std::log(kPi * pk * cfg.tolerance)) / pk);
    X = std::clamp(X, 50.0, 600.0);
    return {hx, static_cast<std::size_t>(std::ceil(X / hx)) + 1};
}

}  // namespace

std::vector<double> sinc_inner_table(const PhiView& phi, int p, double dt,
                                     std::size_t count, const QuadConfig& cfg) {
    cfg.validate();
    if (p < 1) throw std::invalid_argument("sinc_inner: power must be >= 1");
    if (count == 0) return {};
    const double max_shift = dt * static_cast<double>(count - 1);
    const auto [hx, nx] = sinc_grid(phi, p, max_shift, cfg);

    // phi samples are shared by the whole table; pure evaluators, so the
    // sampling may run on all workers.
    std::vector<double> core(nx);
    parallel_for(nx, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            const double x = static_cast<double>(j) * hx;
            double v = std::pow(phi.eval(x), p);
            if (!std::isfinite(v)) throw_nonfinite("sinc_inner", x);
            core[j] = (j == 0) ? 0.0 : v / (2.0 * kPi * x);
        }
    });
    core.back() *= 0.5;  // trapezoid end weight
    const double v0 = std::pow(phi.value_at_zero, p);

    // out[i] = 2 hx [ v0 (1+t_i)/2 + sum_j core_j sin(2 pi x_j (1+t_i)) ].
    // Fixed 512-wide shift blocks with direct-sin resync at each block start:
    // contributions to out[i] arrive in ascending j order with identical
    // arithmetic for every worker count.
    constexpr std::size_t kBlock = 512;
    std::vector<double> out(count, 0.0);
    const std::size_t nblocks = (count + kBlock - 1) / kBlock;
    parallel_for(nblocks, [&](std::size_t bb, std::size_t be) {
        std::vector<double> sum(kBlock), comp(kBlock);
        for (std::size_t blk = bb; blk < be; ++blk) {
            const std::size_t i0 = blk * kBlock;
            const std::size_t in = std::min(kBlock, count - i0);
            std::fill(sum.begin(), sum.begin() + in, 0.0);
            std::fill(comp.begin(), comp.begin() + in, 0.0);
            for (std::size_t j = 1; j < nx; ++j) {
                const double xj = static_cast<double>(j) * hx;
                const double theta0 = 2.0 * kPi * xj * (1.0 + dt * static_cast<double>(i0));
                const double dth = 2.0 * kPi * xj * dt;
                double s = std::sin(theta0), c = std::cos(theta0);
                const double sd = std::sin(dth), cd = std::cos(dth);
                const double cj = core[j];
                for (std::size_t i = 0; i < in; ++i) {
                    const double term = cj * s - comp[i];
                    const double t = sum[i] + term;
                    comp[i] = (t - sum[i]) - term;
                    sum[i] = t;
                    const double sn = s * cd + c * sd;
                    c = c * cd - s * sd;
                    s = sn;
                }
            }
            for (std::size_t i = 0; i < in; ++i) {
                const double shift = dt * static_cast<double>(i0 + i);
                out[i0 + i] = 2.0 * hx * (0.5 * v0 * (1.0 + shift) + sum[i]);
            }
        }
    });
    return out;
}

double sinc_inner(const PhiView& phi, int p, double shift, const QuadConfig& cfg) {
    if (shift < 0.0) throw std::invalid_argument("sinc_inner: shift must be >= 0");
    if (shift == 0.0) return sinc_inner_table(phi, p, 1.0, 1, cfg)[0];
    // the table's shift grid starts at 0, so place the target at entry 1
    return sinc_inner_table(phi, p, shift, 2, cfg)[1];
}

}  // namespace lowzero
