#include "lowzero/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lowzero/parallel.hpp"

namespace lowzero {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

// The two closed-form ingredients at a given resolution:
//   P = sigma I_{h^2} + (sigma^2/4) A,  Q/4 = (1/sigma) I_{h h''} + B/4,
// with A = int_0^{2/sigma} (h*h), B = int_0^{2/sigma} (h*h'').
std::pair<double, double> closed_form_ratio(const Kernel& k, double sigma,
                                            const QuadConfig& cfg, int points) {
    const int m = points | 1;
    auto hg = GridFunction::sample(k.eval, -1.0, 1.0, m);
    auto h2g = GridFunction::sample(k.eval_d2, -1.0, 1.0, m);
    const GridFunction hh = convolve_grid(hg, hg);
    const GridFunction hh2 = convolve_grid(hg, h2g);
    const double x_up = 2.0 / sigma;
    const double A = hh.integral_to(x_up) - hh.integral_to(0.0);
    const double B = hh2.integral_to(x_up) - hh2.integral_to(0.0);

    QuadConfig c1 = cfg;
    c1.rule = QuadRule::GaussLegendre;
    const double ih2 = integrate_1d([&](double u) {
        const double v = k.eval(u);
        return v * v;
    }, 0.0, 1.0, c1).value;
    const double ihh2 = integrate_1d([&](double u) {
        return k.eval(u) * k.eval_d2(u);
    }, 0.0, 1.0, c1).value;

    const double P = sigma * ih2 + 0.25 * sigma * sigma * A;
    const double Q4 = ihh2 / sigma + 0.25 * B;
    return {P, Q4};
}
}  // namespace

BoundReport omega_min_closed_form(const Kernel& k, double sigma, const QuadConfig& cfg) {
    if (!(sigma > 0.0)) throw std::invalid_argument("omega_min_closed_form: sigma must be positive");
    {
        const auto bad = validate_kernel(k, 257);
        if (!bad.empty())
            throw std::invalid_argument("omega_min_closed_form: kernel not admissible: " + bad.front());
    }
    const auto [P, Q4] = closed_form_ratio(k, sigma, cfg, cfg.points_per_dim);
    const double ratio = -P / Q4;
    if (!(ratio > 0.0)) {
        std::ostringstream os;
        os << "omega_min_closed_form: sign violation, -P/Q = " << ratio
           << " is not positive; kernel is not admissible for this bound";
        throw std::runtime_error(os.str());
    }
    const double value = 1.0 / (std::sqrt(ratio) * kPi);

    // error estimate: redo at half resolution
    const auto [P2, Q42] = closed_form_ratio(k, sigma, cfg, cfg.points_per_dim / 2);
    const double v2 = 1.0 / (std::sqrt(-P2 / Q42) * kPi);

    BoundReport rep;
    rep.kind = BoundKind::OmegaMin;
    rep.value = value;
    rep.quad_error = std::abs(value - v2) / 3.0;
    rep.provenance = BoundProvenance::ClosedForm;
    rep.n = 1;
    rep.a = 1;
    rep.sigma = sigma;
    rep.kernel = k.name;
    rep.conjectural_support = sigma > 2.0 + 1e-12;
    return rep;
}

BoundReport omega_min_solver(const MomentSpec& spec, const Kernel& k, const QuadConfig& cfg,
                             std::pair<double, double> bracket) {
    spec.validate();
    if (spec.n % 2 == 0)
        throw std::invalid_argument(
            "omega_min_solver: even n rejected; dropping the off-window zeros only "
            "bounds the moment from below for odd levels");
    if (!(bracket.first > 0.0 && bracket.second > bracket.first))
        throw std::invalid_argument("omega_min_solver: bracket must be positive and ordered");
    {
        const auto bad = validate_kernel(k, 257);
        if (!bad.empty())
            throw std::invalid_argument("omega_min_solver: kernel not admissible: " + bad.front());
    }
    const int a = spec.effective_a();

    auto G = [&](double w) {
        const TestFunctionPair tf = make_omega(k, spec.sigma, spec.n, w, cfg);
        const double mu = mean_so_even(tf, cfg);
        return big_s(spec.n, a, tf, cfg) + std::pow(mu, spec.n);
    };

    constexpr int kScan = 64;
    const double lr = std::log(bracket.first), ur = std::log(bracket.second);
    double wlo = bracket.first, glo = G(wlo);
    double whi = 0.0;
    bool found = glo > 0.0;
    if (found) whi = wlo;  // already positive at the bracket start
    for (int j = 1; j < kScan && !found; ++j) {
        const double w = std::exp(lr + (ur - lr) * static_cast<double>(j) / (kScan - 1));
        const double g = G(w);
        if (g > 0.0) {
            whi = w;
            found = true;
            break;
        }
        wlo = w;
        glo = g;
    }
    if (!found)
        throw std::runtime_error("omega_min_solver: no bound in range (no sign change of G in the bracket)");

    double root = whi;
    if (whi > wlo) {
        while (whi - wlo > 1e-3) {
            const double mid = 0.5 * (wlo + whi);
            if (G(mid) > 0.0) whi = mid; else wlo = mid;
        }
        root = 0.5 * (wlo + whi);
    }

    BoundReport rep;
    rep.kind = BoundKind::OmegaMin;
    rep.value = root;
    rep.quad_error = 1e-3;
    rep.provenance = BoundProvenance::RootSolve;
    rep.n = spec.n;
    rep.a = a;
    rep.sigma = spec.sigma;
    rep.kernel = k.name;
    rep.conjectural_support = spec.conjectural_support();
    return rep;
}

BoundReport percent_bound(const MomentSpec& spec, int r, double rho, const QuadConfig& cfg) {
    if (spec.n < 2 || spec.n % 2 != 0)
        throw std::invalid_argument("percent_bound: the moment level n must be even");
    const TestFunctionPair tf = make_naive(2.0 / spec.n);
    BoundReport rep = percent_bound(spec, r, rho, tf, cfg);
    rep.test_function = "naive(2/n)";
    return rep;
}

BoundReport percent_bound(const MomentSpec& spec, int r, double rho,
                          const TestFunctionPair& tf, const QuadConfig& cfg) {
    spec.validate();
    if (spec.n % 2 != 0)
        throw std::invalid_argument("percent_bound: odd n rejected; the drop of sub-threshold "
                                    "forms needs an even moment");
    if (r % 2 != 0 || r <= 0)
        throw std::invalid_argument("percent_bound: r must be a positive even count; zeros come "
                                    "in symmetric pairs 1/2 +- i gamma");
    if (!(rho > 0.0)) throw std::invalid_argument("percent_bound: rho must be positive");

    BoundReport rep;
    rep.kind = BoundKind::Percent;
    rep.provenance = BoundProvenance::Formula;
    rep.n = spec.n;
    rep.a = spec.effective_a();
    rep.sigma = spec.sigma;
    rep.r = r;
    rep.rho = rho;
    rep.conjectural_support = spec.conjectural_support();
    rep.test_function = "custom";

    const double mu = mean_so_even(tf, cfg);
    const double phir = tf.phi(rho);
    const double margin = r * phir - mu;
    if (margin < 0.0) {
        rep.applicable = false;
        rep.value = 0.0;
        std::ostringstream os;
        os << "N/A: r phi(rho) = " << r * phir << " < mu = " << mu
           << " (needs r >= " << mu / phir << ")";
        rep.note = os.str();
        return rep;
    }
    const double numerator = rhs_limit(spec, tf, cfg);
    const double denom = std::pow(margin, spec.n);
    rep.applicable = true;
    rep.value = numerator / denom;
    rep.quad_error = 1e-6 * std::abs(rep.value);  // dominated by the S tabulation
    return rep;
}

PercentTable percent_table(const std::vector<int>& levels, int r_min, int r_max,
                           double rho, int a, const QuadConfig& cfg) {
    if (levels.empty()) throw std::invalid_argument("percent_table: no levels");
    if (r_min % 2 != 0 || r_max % 2 != 0 || r_min <= 0 || r_max < r_min)
        throw std::invalid_argument("percent_table: r range must be positive even counts");
    PercentTable t;
    t.levels = levels;
    t.rho = rho;
    for (int r = r_min; r <= r_max; r += 2) t.r_values.push_back(r);
    t.cells.assign(t.r_values.size(), std::vector<BoundReport>(levels.size()));

    // cells are independent; worker split over rows, each cell index-addressed
    parallel_for(t.r_values.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            for (std::size_t j = 0; j < levels.size(); ++j) {
                MomentSpec spec;
                spec.n = levels[j];
                spec.a = a > 0 ? std::min(a, levels[j]) : 0;
                spec.sigma = 2.0;
                t.cells[i][j] = percent_bound(spec, t.r_values[i], rho, cfg);
            }
        }
    });
    return t;
}

std::string format_bound(double v) {
    char buf[40];
    if (std::abs(v) >= 1e-3)
        std::snprintf(buf, sizeof buf, "%.6f", v);
    else
        std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::string percent_table_csv(const PercentTable& t) {
    std::ostringstream os;
    os << "r";
    for (int lvl : t.levels) os << ",level" << lvl;
    os << "\n";
    for (std::size_t i = 0; i < t.r_values.size(); ++i) {
        os << t.r_values[i];
        for (std::size_t j = 0; j < t.levels.size(); ++j) {
            const BoundReport& c = t.cells[i][j];
            os << "," << (c.applicable ? format_bound(c.value) : "N/A");
        }
        os << "\n";
    }
    return os.str();
}

std::vector<std::string> write_figure_data(const PercentTable& t, const std::string& prefix) {
    std::vector<std::string> written;
    for (std::size_t j = 0; j < t.levels.size(); ++j) {
        const std::string path = prefix + "-level" + std::to_string(t.levels[j]) + ".csv";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("write_figure_data: cannot open " + path);
        out << "r,percent\n";
        for (std::size_t i = 0; i < t.r_values.size(); ++i) {
            const BoundReport& c = t.cells[i][j];
            if (c.applicable) out << t.r_values[i] << "," << format_bound(c.value) << "\n";
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace lowzero
