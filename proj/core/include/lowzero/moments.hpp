#pragma once

#include <cstdint>

#include "lowzero/quad.hpp"
#include "lowzero/testfun.hpp"

namespace lowzero {

// Parameters of the centered-moment statistic: level n, the S-parameter a
// (defaults to n), family sign (+1 even, -1 odd), and the support budget
// sigma with supp(phi_hat) in (-sigma/n, sigma/n). sigma <= 2 is the proven
// range; larger values are flagged conjectural in reports.
struct MomentSpec {
    int n = 1;
    int a = 0;        // 0 means "default to n"
    int sign = +1;
    double sigma = 2.0;

    int effective_a() const { return a > 0 ? a : n; }
    bool conjectural_support() const { return sigma > 2.0 + 1e-12; }
    void validate() const;
};

// exact integer combinatorics
std::int64_t binomial(int n, int k);
std::int64_t double_factorial(int n);       // (-1)!! = 1
std::int64_t moment_perm_factor(int n, int l);  // n! / ((n-2l)! l!)

// sigma_phi^2 = 2 int |y| phi_hat(y)^2 dy over the compact support.
double sigma_phi_sq(const TestFunctionPair& tf, const QuadConfig& cfg);

// R(m, i; phi) = 2^{m-1} (-1)^{m+1} sum_{l=0}^{i-1} (-1)^l C(m,l)
//                [ -phi(0)^m / 2 + I_l ],
// I_0 the sinc inner integral of phi^m, and for l >= 1 the l-dimensional
// outer integral reduced by abs_sum_density to int rho_l(t) J_{m-l}(t) dt.
// Powers of phi are pointwise powers. Requires i <= m (larger i would put
// a zeroth power inside the inner integral; callers keep a <= n).
double big_r(int m, int i, const TestFunctionPair& tf, const QuadConfig& cfg);

// S(n, a; phi) = sum_{l=0}^{floor((a-1)/2)} n!/((n-2l)! l!)
//                R(n-2l, a-2l; phi) (sigma_phi^2 / 2)^l
double big_s(int n, int a, const TestFunctionPair& tf, const QuadConfig& cfg);

// 1_{n even} (n-1)!! (sigma_phi^2)^{n/2} + sign * S(n, a; phi)
double rhs_limit(const MomentSpec& spec, const TestFunctionPair& tf, const QuadConfig& cfg);

// mu(phi, F) = phi_hat(0) + (1/2) int phi_hat  (SO(even) family mean)
double mean_so_even(const TestFunctionPair& tf, const QuadConfig& cfg);

}  // namespace lowzero
