#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lowzero/kernels.hpp"
#include "lowzero/quad.hpp"

namespace lowzero {

enum class TestFunctionKind { Naive, Omega };

struct TestFunctionParams {
    double sigma_n = 0.0;   // naive: support radius of phi_hat
    double sigma = 0.0;     // omega: support budget, supp(phi_hat) in (-sigma/n, sigma/n)
    int n = 0;              // omega: moment level used in the scaling
    double omega = 0.0;     // omega: sign-change radius of phi
    std::string kernel;     // omega: seed kernel name
};

// Dual evaluators for a test function and its Fourier transform
// (F[phi](y) = int phi(x) e^{-2 pi i x y} dx). Immutable after construction;
// evaluators are pure and safe for concurrent use.
struct TestFunctionPair {
    TestFunctionKind kind = TestFunctionKind::Naive;
    TestFunctionParams params;
    std::function<double(double)> phi;
    std::function<double(double)> phi_hat;
    double hat_support_radius = 0.0;
    double phi0 = 1.0;               // phi(0)
    double phi_tail_coef = 1.0;      // |phi(x)| <= coef * |x|^-power
    double phi_tail_power = 2.0;
    std::optional<GridFunction> hat_grid;   // omega pairs carry their hat samples

    PhiView phi_view() const;
    // hat samples on a symmetric grid; omega pairs return their native grid
    GridFunction hat_sampled(int count) const;
};

// Fejer pair: phi(x) = (sin(pi s x)/(pi s x))^2, phi_hat(y) = (1/s)(1-|y|/s).
TestFunctionPair make_naive(double sigma_n);

// Omega construction: f(y) = h(2yn/sigma), g = f*f, g'' = f'*f' on a grid;
// phi_hat = g + (2 pi omega)^-2 g'', phi(x) = fhat(x)^2 (1 - (x/omega)^2).
TestFunctionPair make_omega(const Kernel& k, double sigma, int n, double omega,
                            const QuadConfig& cfg);

// F[f](x) for f(y) = h(2yn/sigma): oscillation-safe panel quadrature.
double kernel_fhat(const Kernel& k, double sigma, int n, double x);

// int phi_hat over its support; equals phi(0) by Fourier inversion.
double hat_integral(const TestFunctionPair& tf, const QuadConfig& cfg);

}  // namespace lowzero
