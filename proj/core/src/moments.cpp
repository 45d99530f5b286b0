#include "lowzero/moments.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace lowzero {

void MomentSpec::validate() const {
    if (n < 1) throw std::invalid_argument("MomentSpec: n must be >= 1");
    if (a < 0) throw std::invalid_argument("MomentSpec: a must be >= 1 (or 0 for default)");
    if (a > n) throw std::invalid_argument("MomentSpec: a > n is rejected (zeroth powers would enter R)");
    if (sign != 1 && sign != -1) throw std::invalid_argument("MomentSpec: sign must be +1 or -1");
    if (!(sigma > 0.0)) throw std::invalid_argument("MomentSpec: sigma must be positive");
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

std::int64_t double_factorial(int n) {
    if (n <= 0) return 1;
    std::int64_t r = 1;
    for (int v = n; v > 0; v -= 2) r *= v;
    return r;
}

std::int64_t moment_perm_factor(int n, int l) {
    if (l < 0 || 2 * l > n) throw std::invalid_argument("moment_perm_factor: need 0 <= 2l <= n");
    std::int64_t r = 1;
    for (int v = n; v > n - 2 * l; --v) r *= v;  // n!/(n-2l)!
    for (int v = 2; v <= l; ++v) r /= v;
    return r;
}

double sigma_phi_sq(const TestFunctionPair& tf, const QuadConfig& cfg) {
    // 2 int |y| hat^2 = 4 int_0^R y hat(y)^2 dy
    if (tf.hat_grid) {
        const GridFunction& g = *tf.hat_grid;
        const std::size_t mid = (g.size() - 1) / 2;
        const double h = g.step();
        std::vector<double> v(g.size() - mid);
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double y = static_cast<double>(k) * h;
            v[k] = y * g.values[mid + k] * g.values[mid + k];
        }
        GridFunction half(0.0, g.hi, std::move(v));
        return 4.0 * half.integral();
    }
    QuadConfig c = cfg;
    c.rule = QuadRule::GaussLegendre;
    auto r = integrate_1d([&](double y) {
        const double hy = tf.phi_hat(y);
        return y * hy * hy;
    }, 0.0, tf.hat_support_radius, c);
    return 4.0 * r.value;
}

double big_r(int m, int i, const TestFunctionPair& tf, const QuadConfig& cfg) {
    if (m < 1) throw std::invalid_argument("big_r: m must be >= 1");
    if (i < 0) throw std::invalid_argument("big_r: i must be >= 0");
    if (i == 0) return 0.0;  // empty sum
    if (i > m)
        throw std::invalid_argument("big_r: i > m rejected (inner power m-l would reach zero)");
    cfg.validate();

    const PhiView phi = tf.phi_view();
    const double half_phi0_m = 0.5 * std::pow(tf.phi0, m);

    // rho_l tables share the hat grid's step, so each rho_l's nodes sit on
    // the uniform shift grid used for the J_p tabulation.
    std::vector<GridFunction> rho;  // rho[l-1] on [0, l R]
    double h = 0.0;
    if (i >= 2) {
        const GridFunction hat = tf.hat_sampled(cfg.points_per_dim);
        h = hat.step();
        for (int l = 1; l <= i - 1; ++l)
            rho.push_back(l == 1 ? abs_sum_density(hat, 1) : convolve_grid(rho.back(), rho.front()));
    }

    double total = 0.0;
    for (int l = 0; l < i; ++l) {
        double I;
        if (l == 0) {
            I = sinc_inner(phi, m, 0.0, cfg);
        } else {
            const GridFunction& rl = rho[static_cast<std::size_t>(l) - 1];
            const std::vector<double> J = sinc_inner_table(phi, m - l, h, rl.size(), cfg);
            std::vector<double> prod(rl.size());
            for (std::size_t k = 0; k < rl.size(); ++k) prod[k] = rl.values[k] * J[k];
            prod.front() *= 0.5;
            prod.back() *= 0.5;
            I = kahan_total(prod.data(), prod.size()) * h;
        }
        const double bracket = -half_phi0_m + I;
        const double term = static_cast<double>(binomial(m, l)) * bracket;
        total += (l % 2 == 0) ? term : -term;
    }
    const double lead = std::ldexp(1.0, m - 1) * ((m % 2 == 0) ? -1.0 : 1.0);
    return lead * total;
}

double big_s(int n, int a, const TestFunctionPair& tf, const QuadConfig& cfg) {
    if (n < 1 || a < 1) throw std::invalid_argument("big_s: n and a must be >= 1");
    if (a > n) throw std::invalid_argument("big_s: a > n rejected");
    const double half_var = 0.5 * sigma_phi_sq(tf, cfg);
    double total = 0.0;
    for (int l = 0; l <= (a - 1) / 2; ++l) {
        const double coeff = static_cast<double>(moment_perm_factor(n, l));
        total += coeff * big_r(n - 2 * l, a - 2 * l, tf, cfg) * std::pow(half_var, l);
    }
    return total;
}

double rhs_limit(const MomentSpec& spec, const TestFunctionPair& tf, const QuadConfig& cfg) {
    spec.validate();
    const int n = spec.n;
    double even_term = 0.0;
    if (n % 2 == 0) {
        const double var = sigma_phi_sq(tf, cfg);
        even_term = static_cast<double>(double_factorial(n - 1)) * std::pow(var, n / 2);
    }
    return even_term + spec.sign * big_s(n, spec.effective_a(), tf, cfg);
}

double mean_so_even(const TestFunctionPair& tf, const QuadConfig& cfg) {
    return tf.phi_hat(0.0) + 0.5 * hat_integral(tf, cfg);
}

}  // namespace lowzero
