#include "lowzero/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "lowzero/bounds.hpp"
#include "lowzero/kernels.hpp"
#include "lowzero/moments.hpp"
#include "lowzero/parallel.hpp"
#include "lowzero/quad.hpp"
#include "lowzero/rmt.hpp"
#include "lowzero/testfun.hpp"

namespace lowzero {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

struct Runner {
    std::vector<SelftestResult> results;
    std::string suite;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        results.push_back({suite, name, ok, detail});
    }
    void near(const std::string& name, double got, double want, double tol) {
        std::ostringstream os;
        os << "got " << got << ", want " << want << " (tol " << tol << ")";
        check(name, std::abs(got - want) <= tol, os.str());
    }
};

void kernel_suite(Runner& r, bool quick) {
    r.suite = "kernels";
    const int pts = quick ? 401 : 2001;
    for (const auto& name : kernel_names()) {
        const Kernel k = kernel_by_name(name);
        r.check(name + " admissible", validate_kernel(k, pts).empty());
        // evenness on [-2, 2] and support
        bool even_ok = true, supp_ok = true;
        for (int i = 0; i <= pts; ++i) {
            const double u = -2.0 + 4.0 * i / pts;
            if (k.eval(u) != k.eval(-u)) even_ok = false;
            if (std::abs(u) > 1.0 && k.eval(u) != 0.0) supp_ok = false;
        }
        r.check(name + " even", even_ok);
        r.check(name + " supported in [-1,1]", supp_ok);
        // analytic derivatives against central differences
        double worst1 = 0.0, worst2 = 0.0;
        const double eps = 1e-5;
        for (int i = 0; i <= 64; ++i) {
            const double u = -0.99 + 1.98 * i / 64;
            const double d1 = (k.eval(u + eps) - k.eval(u - eps)) / (2.0 * eps);
            const double d2 = (k.eval(u + eps) - 2.0 * k.eval(u) + k.eval(u - eps)) / (eps * eps);
            worst1 = std::max(worst1, std::abs(d1 - k.eval_d1(u)));
            worst2 = std::max(worst2, std::abs(d2 - k.eval_d2(u)));
        }
        r.near(name + " d1 matches finite differences", worst1, 0.0, 1e-6);
        r.near(name + " d2 matches finite differences", worst2, 0.0, 1e-4);
    }
}

void quad_suite(Runner& r, bool quick) {
    r.suite = "quad";
    QuadConfig cfg;
    cfg.points_per_dim = quick ? 801 : 4001;

    auto one = integrate_1d([](double x) { return x; }, 0.0, 1.0, cfg);
    r.near("int_0^1 x dx", one.value, 0.5, 1e-10);

    // trapezoid convergence order ~4x per halving on int_0^1 e^x
    {
        QuadConfig c = cfg;
        c.rule = QuadRule::Trapezoid;
        const double exact = std::exp(1.0) - 1.0;
        double prev_err = 0.0;
        bool order_ok = true;
        int pts = 17;
        for (int step = 0; step < 3; ++step) {
            QuadConfig ci = c;
            ci.points_per_dim = pts;
            ci.refinement = 0;
            const double err = std::abs(
                integrate_1d([](double x) { return std::exp(x); }, 0.0, 1.0, ci).value - exact);
            if (step > 0 && !(prev_err / err > 3.0 && prev_err / err < 5.0)) order_ok = false;
            prev_err = err;
            pts = 2 * pts - 1;
        }
        r.check("trapezoid error ~/4 per halving", order_ok);
    }

    // convolution: box*box = triangle with peak 2, support doubling
    {
        const int m = quick ? 201 : 801;
        auto box = GridFunction::sample([](double) { return 1.0; }, -1.0, 1.0, m);
        auto tri = convolve_grid(box, box);
        r.near("box*box peak", tri.eval(0.0), 2.0, 1e-9);
        r.near("box*box support lo", tri.lo, -2.0, 0.0);
        r.near("box*box edge value", tri.eval(1.999999), 0.0, 1e-4);
        const Kernel k = make_cosine_kernel();
        auto h = GridFunction::sample(k.eval, -1.0, 1.0, m);
        auto hh = convolve_grid(h, h);
        double outside = 0.0;
        for (double x : {2.05, 2.5, 3.0}) outside = std::max(outside, std::abs(hh.eval(x)));
        r.near("support doubling (cos kernel)", outside, 0.0, 1e-12);
    }

    // Plancherel consistency: sinc_inner(p=1, shift=0) vs int_0^1 phi_hat
    {
        const TestFunctionPair tf = make_naive(2.0);
        QuadConfig c = cfg;
        const double lhs = sinc_inner(tf.phi_view(), 1, 0.0, c);
        const double rhs = integrate_1d(tf.phi_hat, 0.0, 1.0, c).value;
        r.near("Plancherel route (naive sigma=2)", lhs, rhs, 1e-5);
    }

    // abs_sum_density: mass conservation and the l=2 brute-force cross-check
    {
        const TestFunctionPair tf = make_naive(1.0);
        auto hat = tf.hat_sampled(quick ? 801 : 2001);
        auto rho2 = abs_sum_density(hat, 2);
        r.near("rho_2 mass = (int hat)^2", rho2.integral(), 1.0, 1e-6);
        QuadConfig c = cfg;
        c.points_per_dim = quick ? 64 : 128;
        auto nd = integrate_nd(
            [&](const std::vector<double>& x) {
                return tf.phi_hat(x[0]) * tf.phi_hat(x[1]) * (std::abs(x[0]) + std::abs(x[1]));
            },
            {{-1.0, 1.0}, {-1.0, 1.0}}, c);
        std::vector<double> tgrid(rho2.size());
        for (std::size_t i = 0; i < rho2.size(); ++i)
            tgrid[i] = rho2.values[i] * rho2.node(i);
        tgrid.front() *= 0.5;
        tgrid.back() *= 0.5;
        const double red = kahan_total(tgrid.data(), tgrid.size()) * rho2.step();
        r.near("rho_2 reduction vs tensor oracle (F=t)", red, nd.value, 1e-4);
    }
}

void testfun_suite(Runner& r, bool quick) {
    r.suite = "testfun";
    QuadConfig cfg;
    cfg.points_per_dim = quick ? 1001 : 4001;

    // naive pair: Fourier-pair consistency at sampled y
    {
        const TestFunctionPair tf = make_naive(1.0);
        const double tol = 1e-6;
        const double X = (1.0 / (kPi * kPi)) * 2.0 / (0.25 * tol);  // tail bound
        QuadConfig c = cfg;
        c.points_per_dim = quick ? 20001 : 80001;
        c.refinement = 1;
        double worst = 0.0;
        const int ny = quick ? 7 : 50;
        for (int i = 0; i < ny; ++i) {
            const double y = -1.2 + 2.4 * i / (ny - 1);
            const double num = integrate_1d(
                [&](double x) { return tf.phi(x) * std::cos(2.0 * kPi * x * y); }, -X, X, c).value;
            worst = std::max(worst, std::abs(num - tf.phi_hat(y)));
        }
        r.near("naive Fourier pair", worst, 0.0, tol);
    }

    // omega pair invariants
    {
        const Kernel k = make_cosine_kernel();
        QuadConfig c = cfg;
        const TestFunctionPair tf = make_omega(k, 2.0, 1, 0.5, c);
        r.near("hat vanishes outside support", tf.phi_hat(2.0001), 0.0, 1e-12);
        r.near("phi(omega) = 0", tf.phi(0.5), 0.0, 1e-12);
        r.near("hat integral = phi(0)", hat_integral(tf, c), tf.phi0, 1e-6);

        bool sign_ok = true;
        const int npts = quick ? 501 : 2001;
        for (int i = 0; i < npts; ++i) {
            const double x = -2.5 + 5.0 * i / (npts - 1);
            const double v = tf.phi(x);
            if (std::abs(x) <= 0.5 && v < -1e-12) sign_ok = false;
            if (std::abs(x) > 0.5 && v > 1e-12) sign_ok = false;
        }
        r.check("omega sign pattern", sign_ok);

        // g'' route consistency: hat grid second difference of g
        auto f = GridFunction::sample([&](double t) { return k.eval(t); }, -1.0, 1.0,
                                      cfg.points_per_dim | 1);
        auto g = convolve_grid(f, f);
        auto fp = GridFunction::sample([&](double t) { return k.eval_d1(t); }, -1.0, 1.0,
                                       cfg.points_per_dim | 1);
        auto g2 = convolve_grid(fp, fp);
        const double hh = g.step();
        double worst = 0.0;
        for (std::size_t i = g.size() / 4; i < 3 * g.size() / 4; ++i) {
            const double dd = (g.values[i + 1] - 2.0 * g.values[i] + g.values[i - 1]) / (hh * hh);
            worst = std::max(worst, std::abs(dd - g2.values[i]));
        }
        r.near("g'' = f'*f' matches D^2(f*f)", worst, 0.0, 5e-4);
    }
}

void moments_suite(Runner& r, bool quick) {
    r.suite = "moments";
    QuadConfig cfg;
    cfg.points_per_dim = quick ? 1001 : 4001;

    r.check("5!! = 15", double_factorial(5) == 15);
    r.check("6!! = 48", double_factorial(6) == 48);
    r.check("C(6,3) = 20", binomial(6, 3) == 20);
    r.check("6!/((6-4)! 2!) = 180", moment_perm_factor(6, 2) == 180);

    for (double s : {2.0, 1.0, 2.0 / 3.0, 0.5, 1.0 / 3.0}) {
        const TestFunctionPair tf = make_naive(s);
        std::ostringstream os;
        os << "sigma_phi^2 = 1/3 (naive s=" << s << ")";
        r.near(os.str(), sigma_phi_sq(tf, cfg), 1.0 / 3.0, 1e-6);
    }
    {
        const TestFunctionPair tf = make_naive(1.0);
        r.near("mu naive s=1", mean_so_even(tf, cfg), 1.5, 1e-6);
        r.near("int hat = phi(0)", hat_integral(tf, cfg), 1.0, 1e-9);
        r.near("S(1,1) = R(1,1)", big_s(1, 1, tf, cfg) - big_r(1, 1, tf, cfg), 0.0, 0.0);
        MomentSpec sp;
        sp.n = 3;
        sp.sigma = 3.0;
        const double plus = rhs_limit(sp, tf, cfg);
        sp.sign = -1;
        r.near("odd rhs_limit flips with the family sign", rhs_limit(sp, tf, cfg), -plus, 0.0);
    }
}

void determinism_suite(Runner& r, bool quick) {
    r.suite = "determinism";
    QuadConfig cfg;
    cfg.points_per_dim = quick ? 801 : 2001;
    const TestFunctionPair tf = make_naive(0.5);
    const int saved = worker_count();
    set_worker_count(1);
    const auto t1 = sinc_inner_table(tf.phi_view(), 2, 1e-3, quick ? 300 : 1500, cfg);
    set_worker_count(4);
    const auto t4 = sinc_inner_table(tf.phi_view(), 2, 1e-3, quick ? 300 : 1500, cfg);
    set_worker_count(saved);
    r.check("sinc table identical for 1 and 4 workers",
            std::equal(t1.begin(), t1.end(), t4.begin(), t4.end(),
                       [](double a, double b) { return a == b; }));

    RmtConfig rc;
    rc.half_size = 4;
    rc.samples = quick ? 20 : 200;
    rc.seed = 11;
    set_worker_count(1);
    const auto d1 = statistic_series(rc, tf);
    set_worker_count(3);
    const auto d2 = statistic_series(rc, tf);
    set_worker_count(saved);
    r.check("rmt series identical for 1 and 3 workers",
            std::equal(d1.begin(), d1.end(), d2.begin(), d2.end(),
                       [](double a, double b) { return a == b; }));
}

void rmt_suite(Runner& r, bool quick) {
    r.suite = "rmt";
    RmtConfig rc;
    rc.half_size = quick ? 6 : 20;
    rc.samples = 1;
    rc.seed = 3;
    const auto angles = sample_so_even(rc, 0);
    r.check("2N angles", angles.size() == static_cast<std::size_t>(2 * rc.half_size));
    // pairing theta <-> -theta
    std::vector<double> sorted(angles);
    std::sort(sorted.begin(), sorted.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size() / 2; ++i)
        worst = std::max(worst, std::abs(sorted[i] + sorted[sorted.size() - 1 - i]));
    r.near("angles come in +- pairs", worst, 0.0, 1e-8);

    const TestFunctionPair tf = make_naive(1.0);
    bool even_ok = true;
    std::vector<double> flipped(angles);
    for (auto& a : flipped) a = -a;
    if (statistic_d(angles, tf, rc.half_size) != statistic_d(flipped, tf, rc.half_size))
        even_ok = false;
    r.check("statistic is even in the angles", even_ok);
}

}  // namespace

std::vector<SelftestResult> run_selftest(bool quick) {
    Runner r;
    kernel_suite(r, quick);
    quad_suite(r, quick);
    testfun_suite(r, quick);
    moments_suite(r, quick);
    rmt_suite(r, quick);
    determinism_suite(r, quick);
    return r.results;
}

}  // namespace lowzero
