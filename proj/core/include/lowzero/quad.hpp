#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lowzero {

enum class QuadRule { MidpointRiemann, Trapezoid, GaussLegendre };

QuadRule quad_rule_from_name(const std::string& name);
std::string quad_rule_name(QuadRule rule);

struct QuadConfig {
    QuadRule rule = QuadRule::Trapezoid;
    int points_per_dim = 4001;
    int refinement = 2;        // halving steps used for the error estimate
    double tolerance = 1e-8;   // target absolute error for truncation choices
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Uniform sample table on [lo, hi]. The workhorse of the convolution
// pipelines: grids sharing a step convolve exactly onto the sum interval.
struct GridFunction {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> values;

    GridFunction(double lo_, double hi_, std::vector<double> v);
    static GridFunction sample(const std::function<double(double)>& f,
                               double lo, double hi, int count);

    std::size_t size() const { return values.size(); }
    double step() const { return (hi - lo) / static_cast<double>(values.size() - 1); }
    double node(std::size_t i) const { return lo + static_cast<double>(i) * step(); }
    double eval(double x) const;   // linear interpolation, zero outside [lo, hi]
    double integral() const;       // trapezoid over the table, compensated sum
    // trapezoid over [lo, x_upper] with an exact partial last cell
    double integral_to(double x_upper) const;
};

double kahan_total(const double* v, std::size_t n);

QuadResult integrate_1d(const std::function<double(double)>& f,
                        double lo, double hi, const QuadConfig& cfg);

// Tensor-product rule over a finite box; brute-force oracle, d <= 4.
QuadResult integrate_nd(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<std::pair<double, double>>& box,
                        const QuadConfig& cfg);

// (a*b)(x) = int a(t) b(x-t) dt on the sum interval. Inputs must share the
// grid step. Endpoint samples of both factors are half-weighted, which keeps
// the trapezoid order for factors that jump at their support edges.
GridFunction convolve_grid(const GridFunction& a, const GridFunction& b);

// Reduces the l-dimensional outer integral of an even hat function against a
// kernel of |x_2|+...+|x_{l+1}| to one dimension:
//   rho_1(t) = 2 hat(t) on [0, s],  rho_l = rho_{l-1} * rho_1 on [0, l s],
//   total mass  int rho_l = (int hat)^l.
GridFunction abs_sum_density(const GridFunction& hat, int l);

// x-side view of a test function together with decay metadata used to pick
// the truncation radius of oscillatory integrals.
struct PhiView {
    std::function<double(double)> eval;
    double value_at_zero = 1.0;
    double tail_coef = 1.0;    // |phi(x)| <= tail_coef * |x|^-tail_power
    double tail_power = 2.0;
    double band_radius = 1.0;  // support radius of the Fourier transform
};

// int phi(x)^p sin(2 pi x (1+shift)) / (2 pi x) dx, integrand continued by
// phi(0)^p (1+shift) at x=0. Uniform x-grid summation; the integrand is
// band-limited, so the step only has to stay below the Nyquist limit and the
// error is set by the truncation radius.
double sinc_inner(const PhiView& phi, int p, double shift, const QuadConfig& cfg);

// sinc_inner tabulated on the uniform shift grid {0, dt, ..., (count-1) dt};
// the phi samples are shared across the table.
std::vector<double> sinc_inner_table(const PhiView& phi, int p, double dt,
                                     std::size_t count, const QuadConfig& cfg);

}  // namespace lowzero
