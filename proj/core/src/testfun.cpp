// Test-function construction.
//
// The omega pair is built on the transform side: f(y) = h(2yn/sigma),
// g = f*f, and phi_hat = g + (2 pi omega)^-2 g''. Both shipped kernels have
// h'(1) != 0, so the second derivative of g carries jump terms from the
// support edge of f'; g'' = f' * f' captures them (it is f * f'' with the
// distributional f''), and only then is phi_hat the genuine transform of
// phi(x) = fhat(x)^2 (1 - (x/omega)^2). The x-side factorization keeps the
// sign pattern of phi exact: fhat is real and even, so fhat^2 >= 0.

#include "lowzero/testfun.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace lowzero {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

// 16-point Gauss-Legendre on [-1, 1]
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

double sinc_sq(double z) {
    // (sin z / z)^2 with the removable singularity expanded
    if (std::abs(z) < 1e-6) {
        const double z2 = z * z;
        return 1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 45.0;
    }
    const double s = std::sin(z) / z;
    return s * s;
}
}  // namespace

PhiView TestFunctionPair::phi_view() const {
    PhiView v;
    v.eval = phi;
    v.value_at_zero = phi0;
    v.tail_coef = phi_tail_coef;
    v.tail_power = phi_tail_power;
    v.band_radius = hat_support_radius;
    return v;
}

GridFunction TestFunctionPair::hat_sampled(int count) const {
    if (hat_grid) return *hat_grid;
    const int n = count | 1;  // symmetric grid with a center node
    return GridFunction::sample(phi_hat, -hat_support_radius, hat_support_radius, n);
}

TestFunctionPair make_naive(double sigma_n) {
    if (!(sigma_n > 0.0)) throw std::invalid_argument("make_naive: sigma_n must be positive");
    TestFunctionPair tf;
    tf.kind = TestFunctionKind::Naive;
    tf.params.sigma_n = sigma_n;
    const double s = sigma_n;
    tf.phi = [s](double x) { return sinc_sq(kPi * s * x); };
    tf.phi_hat = [s](double y) {
        const double a = std::abs(y);
        return a < s ? (1.0 - a / s) / s : 0.0;
    };
    tf.hat_support_radius = s;
    tf.phi0 = 1.0;
    tf.phi_tail_coef = 1.0 / (kPi * s * kPi * s);
    tf.phi_tail_power = 2.0;
    return tf;
}

double kernel_fhat(const Kernel& k, double sigma, int n, double x) {
    // fhat(x) = (sigma/n) int_0^1 h(u) cos(pi sigma x u / n) du; the panel
    // count tracks the oscillation so each panel sees at most ~half a period.
    const double freq = std::abs(sigma * x) / (2.0 * n);  // cycles over [0, 1]
    const int panels = std::max(2, static_cast<int>(std::ceil(2.0 * freq)));
    const double w = 1.0 / panels;
    const double arg_scale = kPi * sigma * x / n;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * w;
        double acc = 0.0;
        for (int j = 0; j < kGlN; ++j) {
            const double u = mid + 0.5 * w * kGlX[j];
            acc += kGlW[j] * k.eval(u) * std::cos(arg_scale * u);
        }
        total += acc * 0.5 * w;
    }
    return (sigma / n) * total;
}

TestFunctionPair make_omega(const Kernel& k, double sigma, int n, double omega,
                            const QuadConfig& cfg) {
    cfg.validate();
    if (!(sigma > 0.0)) throw std::invalid_argument("make_omega: sigma must be positive");
    if (n < 1) throw std::invalid_argument("make_omega: n must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("make_omega: omega must be positive");
    {
        const auto bad = validate_kernel(k, 257);
        if (!bad.empty())
            throw std::invalid_argument("make_omega: kernel '" + k.name +
                                        "' is not admissible: " + bad.front());
    }

    const double s2 = sigma / (2.0 * n);          // support radius of f
    const double scale = 2.0 * n / sigma;         // chain-rule factor
    const int m = cfg.points_per_dim | 1;
    auto f = GridFunction::sample([&](double t) { return k.eval(t * scale); }, -s2, s2, m);
    auto fp = GridFunction::sample([&](double t) { return scale * k.eval_d1(t * scale); },
                                   -s2, s2, m);
    GridFunction g = convolve_grid(f, f);
    GridFunction g2 = convolve_grid(fp, fp);      // true g'' (distributional f*f'')
    const double c = 1.0 / (2.0 * kPi * omega * 2.0 * kPi * omega);
    std::vector<double> hat_values(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) hat_values[i] = g.values[i] + c * g2.values[i];

    TestFunctionPair tf;
    tf.kind = TestFunctionKind::Omega;
    tf.params.sigma = sigma;
    tf.params.n = n;
    tf.params.omega = omega;
    tf.params.kernel = k.name;
    tf.hat_support_radius = sigma / n;
    tf.hat_grid = GridFunction(g.lo, g.hi, std::move(hat_values));

    auto grid = std::make_shared<GridFunction>(*tf.hat_grid);
    tf.phi_hat = [grid](double y) { return grid->eval(y); };

    Kernel kc = k;  // capture by value; kernels are immutable
    tf.phi = [kc, sigma, n, omega](double x) {
        const double fh = kernel_fhat(kc, sigma, n, x);
        const double r = x / omega;
        return fh * fh * (1.0 - r * r);
    };
    const double fh0 = kernel_fhat(k, sigma, n, 0.0);
    tf.phi0 = fh0 * fh0;

    // |fhat| <= K / x^2 from the h'(1) edge jump; probe for K with margin.
    double K = 0.0;
    for (double x = 6.0; x <= 42.0; x += 1.37) {
        K = std::max(K, std::abs(kernel_fhat(k, sigma, n, x)) * x * x);
    }
    K = 1.6 * K + 1e-6;
    tf.phi_tail_coef = K * K * (1.0 / (omega * omega) + 1.0);
    tf.phi_tail_power = 2.0;
    return tf;
}

double hat_integral(const TestFunctionPair& tf, const QuadConfig& cfg) {
    if (tf.hat_grid) return tf.hat_grid->integral();
    const double r = tf.hat_support_radius;
    if (r <= 0.0) return 0.0;
    return integrate_1d(tf.phi_hat, -r, r, cfg).value;
}

}  // namespace lowzero
