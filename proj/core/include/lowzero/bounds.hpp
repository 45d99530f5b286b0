#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowzero/kernels.hpp"
#include "lowzero/moments.hpp"
#include "lowzero/quad.hpp"
#include "lowzero/testfun.hpp"

namespace lowzero {

enum class BoundKind { OmegaMin, Percent };
enum class BoundProvenance { ClosedForm, RootSolve, Formula };

struct BoundReport {
    BoundKind kind = BoundKind::OmegaMin;
    double value = 0.0;
    bool applicable = true;
    double quad_error = 0.0;
    BoundProvenance provenance = BoundProvenance::Formula;
    bool conjectural_support = false;
    // inputs echo
    int n = 0;
    int a = 0;
    double sigma = 0.0;
    std::string kernel;
    std::string test_function;
    int r = 0;
    double rho = 0.0;
    std::string note;
};

// One-level closed form: the two double integrals are evaluated through the
// 1-D convolution route, with h(v-u) and h''(v-u) taken as 0 for |v-u| > 1.
BoundReport omega_min_closed_form(const Kernel& k, double sigma, const QuadConfig& cfg);

// Odd-level solver: smallest omega in the bracket with
//   G(omega) = S(n, a; phi_omega) + (phi_hat(0) + int phi_hat / 2)^n > 0,
// by a 64-point ascending log-spaced scan and bisection to 1e-3. Rebuilds
// phi_omega at every trial omega.
BoundReport omega_min_solver(const MomentSpec& spec, const Kernel& k, const QuadConfig& cfg,
                             std::pair<double, double> bracket = {0.05, 5.0});

// P_{r,rho} upper bound via the even centered moment; the default test
// function is the naive pair with support 2/n. Not applicable when
// r phi(rho) < mu.
BoundReport percent_bound(const MomentSpec& spec, int r, double rho, const QuadConfig& cfg);
BoundReport percent_bound(const MomentSpec& spec, int r, double rho,
                          const TestFunctionPair& tf, const QuadConfig& cfg);

struct PercentTable {
    std::vector<int> levels;
    std::vector<int> r_values;
    std::vector<std::vector<BoundReport>> cells;  // [row r][col level]
    double rho = 0.0;
};

PercentTable percent_table(const std::vector<int>& levels, int r_min, int r_max,
                           double rho, int a, const QuadConfig& cfg);

// paper-style cell: %.6f at >= 1e-3, %.6e below
std::string format_bound(double v);
std::string percent_table_csv(const PercentTable& t);
// two-column "r,percent" file per level, applicable rows only;
// returns the written file names
std::vector<std::string> write_figure_data(const PercentTable& t, const std::string& prefix);

}  // namespace lowzero
